//! Subcommand implementations. Each returns `Ok(passed)`; errors map to
//! exit status 2 in `main`.

use std::fs;
use std::path::Path;

use clap::ValueEnum;
use geomplex::bottleneck::bottleneck_distance;
use geomplex::builders::{
    ambient_cech_filtration, cech_intrinsic_filtration, dowker_filtration, rips_complex_at, rips_filtration,
    witness_filtration,
};
use geomplex::complex::{CrossDissimilarity, FilteredComplex};
use geomplex::diagram::PersistenceDiagram;
use geomplex::field::PrimeField;
use geomplex::interleaving::verify_interleaving;
use geomplex::metric::{distortion, gh_exact, gh_upper_bound, hausdorff_distance, Correspondence};
use geomplex::persistence::{betti_at, compute_persistence};
use geomplex::suite::{self, ExampleParams, ExampleSpec, Generated, Pathology, TreeSpec, VerificationReport};
use geomplex::{Error, Result};
use serde_json::{json, Value};

use crate::io::{self, Space};
use crate::{BettiArgs, Cli, Command, ComplexKind, DistArgs, DistKind, GenArgs, InputArgs, PhArgs, Theorem, VerifyArgs};

pub fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Gen(a) => gen(a, cli.json),
        Command::Ph(a) => ph(a, cli.json),
        Command::Dist(a) => dist(a, cli.json),
        Command::Verify(a) => verify(a, cli.json),
        Command::Betti(a) => betti(a, cli.json),
    }
}

macro_rules! outln {
    ($($t:tt)*) => { io::emit(&(format!($($t)*) + "\n")) };
}

fn real(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn print_json(v: &Value) {
    io::emit(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"));
}

fn gen(args: &GenArgs, as_json: bool) -> Result<bool> {
    let params = ExampleParams {
        n: args.n,
        delta: args.delta,
        circumference: args.circumference,
        tree: args.tree.clone(),
        h: args.h,
    };
    let spec = ExampleSpec::from_name(&args.name, &params)?;
    let generated = suite::gen_example(&spec)?;
    let (text, kind, size) = match (&spec, generated) {
        (_, Generated::Witness(ex)) => return gen_witness(&ex, args.out.as_deref(), as_json),
        // geodesic examples are written as matrices
        (ExampleSpec::Circle { .. }, Generated::Cloud(pc)) => (pc.to_matrix().to_text(), "matrix", pc.len()),
        (_, Generated::Cloud(pc)) => (pc.to_csv(), "points", pc.len()),
        (_, Generated::Matrix(m)) => (m.to_text(), "matrix", m.len()),
    };
    if as_json {
        if let Some(out) = &args.out {
            fs::write(out, &text)?;
        }
        print_json(&json!({ "schema": 1, "name": args.name, "kind": kind, "size": size,
                            "file": args.out.as_ref().map(|p| p.display().to_string()),
                            "content": if args.out.is_none() { json!(text) } else { Value::Null } }));
    } else {
        io::write_or_print(args.out.as_deref(), &text)?;
    }
    Ok(true)
}

fn gen_witness(ex: &suite::WitnessExample, out: Option<&Path>, as_json: bool) -> Result<bool> {
    let dir = out.unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    for (name, pc) in ex.point_clouds() {
        let path = dir.join(format!("{name}.csv"));
        fs::write(&path, pc.to_csv())?;
        files.push(path);
    }
    for (name, lam) in [("L_W", ex.landmark_cross()), ("Lp_W", ex.perturbed_cross())] {
        let path = dir.join(format!("{name}.dowker"));
        fs::write(&path, lam.to_text())?;
        files.push(path);
    }
    let names: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    if as_json {
        print_json(&json!({ "schema": 1, "name": "witness-example", "delta": ex.delta, "files": names }));
    } else {
        for n in names {
            outln!("{n}");
        }
    }
    Ok(true)
}

/// The filtration named by `kind`, built up to dimension `top`.
fn build(input: &InputArgs, top: usize) -> Result<FilteredComplex> {
    let metric = io::parse_metric(&input.metric)?;
    let cross = || -> Result<CrossDissimilarity> {
        if let Some(w) = &input.witnesses {
            let l = io::load_cloud(&input.input, metric)?;
            let w = io::load_cloud(w, metric)?;
            let (amb, li, wi) = io::join_clouds(&l, &w)?;
            return CrossDissimilarity::from_ambient(&li, &wi, &amb);
        }
        match io::load_space(&input.input, metric)? {
            Space::Cross(lam) => Ok(lam),
            Space::Matrix(m) => Ok(CrossDissimilarity::from_square(&m)),
            Space::Cloud(pc) => Ok(CrossDissimilarity::from_square(&pc.to_matrix())),
        }
    };
    Ok(match input.kind {
        ComplexKind::Rips | ComplexKind::RipsOpen => rips_filtration(&io::load_matrix(&input.input, metric)?, top),
        ComplexKind::Cech => cech_intrinsic_filtration(&io::load_matrix(&input.input, metric)?, top),
        ComplexKind::AmbientCech => match &input.witnesses {
            Some(w) => {
                let l = io::load_cloud(&input.input, metric)?;
                let w = io::load_cloud(w, metric)?;
                let (amb, li, wi) = io::join_clouds(&l, &w)?;
                ambient_cech_filtration(&li, &wi, &amb, top)?
            }
            None => dowker_filtration(&cross()?, top),
        },
        ComplexKind::Dowker => dowker_filtration(&cross()?, top),
        ComplexKind::Witness => witness_filtration(&cross()?, top),
    })
}

fn ph(args: &PhArgs, as_json: bool) -> Result<bool> {
    let input = &args.input;
    let field = PrimeField::new(input.field)?;
    // one dimension more than reported, so the reported ones are exact
    let k = build(input, input.max_dim + 1)?;
    let full = compute_persistence(&k, field);
    let mut dgm = PersistenceDiagram::new(full.points().iter().filter(|p| p.dim <= input.max_dim).copied().collect())?;
    if args.h0_neg_inf {
        dgm = dgm.with_h0_births_at_neg_infinity();
    }
    let text = if as_json {
        let kind = input.kind.to_possible_value().unwrap();
        let v = json!({ "schema": 1, "kind": kind.get_name(), "field": input.field, "max_dim": input.max_dim,
                        "diagram": dgm.to_json() });
        serde_json::to_string_pretty(&v)? + "\n"
    } else {
        dgm.to_tsv()
    };
    io::write_or_print(args.out.as_deref(), &text)?;
    Ok(true)
}

fn betti(args: &BettiArgs, as_json: bool) -> Result<bool> {
    let input = &args.input;
    let field = PrimeField::new(input.field)?;
    let strict = args.strict || input.kind == ComplexKind::RipsOpen;
    let top = input.max_dim + 1;
    let k = match input.kind {
        ComplexKind::Rips | ComplexKind::RipsOpen => {
            let metric = io::parse_metric(&input.metric)?;
            rips_complex_at(&io::load_matrix(&input.input, metric)?, args.a, strict, top)
        }
        _ => build(input, top)?,
    };
    let mut b = betti_at(&k, args.a, strict, field);
    b.truncate(input.max_dim + 1);
    if as_json {
        print_json(&json!({ "schema": 1, "a": args.a, "strict": strict, "field": input.field, "betti": b }));
    } else {
        outln!("{}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
    }
    Ok(true)
}

fn dist(args: &DistArgs, as_json: bool) -> Result<bool> {
    let metric = io::parse_metric(&args.metric)?;
    let mut extra = Value::Null;
    let value = match args.kind {
        DistKind::Bottleneck => {
            let d1 = PersistenceDiagram::parse_any(&io::read(&args.a)?)?;
            let d2 = PersistenceDiagram::parse_any(&io::read(&args.b)?)?;
            let dims: Vec<usize> = match args.dim {
                Some(k) => vec![k],
                None => (0..=d1.max_dim().max(d2.max_dim()).unwrap_or(0)).collect(),
            };
            let mut value: f64 = 0.0;
            let mut certs = Vec::new();
            for k in dims {
                let (v, cert) = bottleneck_distance(&d1, &d2, k);
                value = value.max(v);
                certs.push(json!({ "dim": k, "value": real(v), "matching": cert.pairs }));
            }
            if args.certificate {
                extra = json!(certs);
            }
            value
        }
        DistKind::Hausdorff => {
            let a = io::load_cloud(&args.a, metric)?;
            let b = io::load_cloud(&args.b, metric)?;
            let (amb, l, lp) = io::join_clouds(&a, &b)?;
            hausdorff_distance(&l, &lp, &amb)?
        }
        DistKind::GhExact => gh_exact(&io::load_matrix(&args.a, metric)?, &io::load_matrix(&args.b, metric)?)?,
        DistKind::GhUpper => {
            let dx = io::load_matrix(&args.a, metric)?;
            let dy = io::load_matrix(&args.b, metric)?;
            let c = match &args.correspondence {
                Some(p) => Correspondence::parse(&io::read(p)?, dx.len(), dy.len())?,
                None => Correspondence::full(dx.len(), dy.len()),
            };
            gh_upper_bound(&dx, &dy, &c)?
        }
    };
    if as_json {
        let kind = args.kind.to_possible_value().unwrap();
        let mut v = json!({ "schema": 1, "kind": kind.get_name(), "value": real(value) });
        if !extra.is_null() {
            v["certificate"] = extra;
        }
        print_json(&v);
    } else {
        outln!("{value}");
        if !extra.is_null() {
            outln!("{}", serde_json::to_string(&extra)?);
        }
    }
    Ok(true)
}

fn default_sizes(which: Pathology) -> Vec<usize> {
    match which {
        Pathology::OpenRips => vec![3, 5, 7],
        Pathology::TwoRectangles => vec![4, 6, 8],
        _ => vec![10, 20, 40],
    }
}

fn verify(args: &VerifyArgs, as_json: bool) -> Result<bool> {
    let field = PrimeField::new(args.field)?;
    let metric = io::parse_metric(&args.metric)?;
    let given = || -> Result<Option<(_, _)>> {
        match (&args.x, &args.y) {
            (Some(x), Some(y)) => Ok(Some((io::load_matrix(x, metric)?, io::load_matrix(y, metric)?))),
            (None, None) => Ok(None),
            _ => Err(Error::InvalidParameter("--x and --y go together".into())),
        }
    };
    let max_dim = args.max_dim.unwrap_or(1);
    let reports: Vec<VerificationReport> = match args.theorem {
        Theorem::Dowker => suite::dowker_trials(args.trials, args.seed, 6, 7, args.max_dim.unwrap_or(2), field)?,
        Theorem::RipsStability => match given()? {
            Some((dx, dy)) => vec![suite::verify_rips_stability(&dx, &dy, max_dim, field)?],
            None => suite::rips_stability_trials(args.trials, args.seed, field)?,
        },
        Theorem::CechStability => match given()? {
            Some((dx, dy)) => vec![suite::verify_cech_stability(&dx, &dy, max_dim, field)?],
            None => suite::cech_stability_trials(args.trials, args.seed, field)?,
        },
        Theorem::AmbientCechStability => suite::ambient_cech_trials(args.trials, args.seed, args.n.unwrap_or(10), field)?,
        Theorem::WitnessStability => suite::witness_stability_trials(args.trials, args.seed, field)?,
        Theorem::WitnessCounterexample => vec![suite::witness_counterexample_report(args.delta, field)?],
        Theorem::Pathology => {
            let which = Pathology::from_name(&args.example)?;
            let sizes = if args.sizes.is_empty() { default_sizes(which) } else { args.sizes.clone() };
            vec![suite::verify_pathology_growth(which, &sizes, args.a.unwrap_or(which.default_scale()), field)?]
        }
        Theorem::PathMetric => vec![suite::verify_path_metric_theorem(args.n.unwrap_or(100), field)?],
        Theorem::Hyperbolic => vec![suite::verify_hyperbolic_theorem(&TreeSpec::parse(&args.tree)?, args.h, field)?],
        Theorem::Interleaving => match given()? {
            Some((dx, dy)) => return interleave(args, &dx, &dy, field, as_json),
            None => suite::interleaving_trials(args.trials, args.seed, field)?,
        },
        Theorem::Bottleneck => suite::bottleneck_trials(args.trials, args.seed)?,
        Theorem::Densify => {
            let counts = if args.counts.is_empty() { vec![2, 3, 5, 9, 17, 33] } else { args.counts.clone() };
            let points = suite::witness_densify_experiment(args.delta, &counts, field)?;
            if as_json {
                print_json(&json!({ "schema": 1, "theorem": "densify", "delta": args.delta, "points": points }));
            } else {
                outln!("witnesses\tbottleneck_h0\thausdorff");
                for p in points {
                    outln!("{}\t{}\t{}", p.witnesses, p.bottleneck_h0, p.hausdorff);
                }
            }
            return Ok(true);
        }
    };
    let name = args.theorem.to_possible_value().unwrap().get_name().to_string();
    let failures = reports.iter().filter(|r| !r.passed).count();
    let passed = failures == 0;
    if as_json {
        print_json(&json!({ "schema": 1, "theorem": name, "seed": args.seed, "passed": passed,
                            "total": reports.len(), "failures": failures, "reports": reports }));
    } else {
        for r in reports.iter().filter(|r| args.verbose || !r.passed) {
            let trial = r.trial.map_or(String::new(), |t| format!(" trial={t}"));
            outln!("{} {}{trial} lhs={} rhs={}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.lhs, r.rhs);
            if !r.passed {
                outln!("  {}", r.details);
            }
        }
        if reports.len() == 1 && !args.verbose && passed {
            let r = &reports[0];
            outln!("PASS {} lhs={} rhs={}", r.name, r.lhs, r.rhs);
        }
        outln!("{name}: {}/{} passed", reports.len() - failures, reports.len());
    }
    Ok(passed)
}

/// Interleaving of the Rips filtrations of two given spaces.
fn interleave(
    args: &VerifyArgs,
    dx: &geomplex::metric::DissimilarityMatrix,
    dy: &geomplex::metric::DissimilarityMatrix,
    field: PrimeField,
    as_json: bool,
) -> Result<bool> {
    let c = match &args.correspondence {
        Some(p) => Correspondence::parse(&io::read(p)?, dx.len(), dy.len())?,
        None => Correspondence::full(dx.len(), dy.len()),
    };
    let eps = match args.eps {
        Some(e) => e,
        None => distortion(&c, dx, dy)?,
    };
    let max_dim = args.max_dim.unwrap_or(1);
    let (s, t) = (rips_filtration(dx, max_dim + 1), rips_filtration(dy, max_dim + 1));
    let v = verify_interleaving(&c, &s, &t, eps, field, max_dim)?;
    let failure = v.failure.as_ref().map(|f| json!({ "a": real(f.a), "dim": f.dim, "side": f.side }));
    if as_json {
        print_json(&json!({ "schema": 1, "theorem": "interleaving", "eps": eps, "applicable": v.applicable,
                            "verified": v.verified, "failure": failure, "obstruction": v.obstruction,
                            "levels_checked": v.levels_checked }));
    } else {
        outln!(
            "interleaving eps={eps}: applicable={} verified={} levels={}{}",
            v.applicable,
            v.verified,
            v.levels_checked,
            failure.map_or(String::new(), |f| format!(" failure={f}"))
        );
    }
    Ok(v.verified)
}
