//! Theorem checks on finite instances, and seeded batch drivers.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::generators::{self, random_plane_points, TreeSpec, WitnessExample};
use super::{trial_rng, VerificationReport};
use crate::bottleneck::{bottleneck_bruteforce, bottleneck_distance};
use crate::builders::{
    ambient_cech_filtration, cech_intrinsic_filtration, dowker_filtration, dowker_transpose, rips_complex_at,
    rips_filtration, witness_filtration,
};
use crate::complex::{CrossDissimilarity, FilteredComplex};
use crate::diagram::{DiagramPoint, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::interleaving::{
    critical_grid, induced_homology_map_at, induced_level_map, is_eps_simplicial, verify_interleaving,
    FiltrationHomology, SubordinateMap,
};
use crate::metric::{distortion, gh_exact, hausdorff_distance, Correspondence, DissimilarityMatrix, MetricKind, PointCloud, TOL};
use crate::naive;
use crate::persistence::{betti_at, compute_persistence, rips_betti_at};

fn matrix_json(d: &DissimilarityMatrix) -> Value {
    json!((0..d.len()).map(|i| d.row(i).to_vec()).collect::<Vec<_>>())
}

fn cross_json(lam: &CrossDissimilarity) -> Value {
    json!((0..lam.landmark_count()).map(|l| lam.row(l).to_vec()).collect::<Vec<_>>())
}

/// Bottleneck distance in each dimension `0..=max_dim`, and their maximum.
fn bottleneck_per_dim(d1: &PersistenceDiagram, d2: &PersistenceDiagram, max_dim: usize) -> (f64, Vec<f64>) {
    let per: Vec<f64> = (0..=max_dim).map(|k| bottleneck_distance(d1, d2, k).0).collect();
    (per.iter().copied().fold(0.0, f64::max), per)
}

fn json_real(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(crate::diagram::fmt_value(v))
    }
}

fn stability_vs_gh(
    name: &str,
    build: fn(&DissimilarityMatrix, usize) -> FilteredComplex,
    dx: &DissimilarityMatrix,
    dy: &DissimilarityMatrix,
    max_dim: usize,
    field: PrimeField,
) -> Result<VerificationReport> {
    let gh = gh_exact(dx, dy)?;
    // one extra dimension so every reported dimension is exact
    let d1 = compute_persistence(&build(dx, max_dim + 1), field);
    let d2 = compute_persistence(&build(dy, max_dim + 1), field);
    let (lhs, per_dim) = bottleneck_per_dim(&d1, &d2, max_dim);
    let rhs = 2.0 * gh;
    let ratio = if rhs > 0.0 { json!(lhs / rhs) } else { Value::Null };
    Ok(VerificationReport::new(
        name,
        lhs,
        rhs,
        lhs <= rhs + TOL,
        json!({ "per_dim": per_dim.into_iter().map(json_real).collect::<Vec<_>>(), "gh": gh, "ratio": ratio,
                "dx": matrix_json(dx), "dy": matrix_json(dy) }),
    ))
}

/// `d_b(Rips X, Rips Y) ≤ 2 d_GH(X, Y)` in dimensions `0..=max_dim`.
pub fn verify_rips_stability(
    dx: &DissimilarityMatrix,
    dy: &DissimilarityMatrix,
    max_dim: usize,
    field: PrimeField,
) -> Result<VerificationReport> {
    stability_vs_gh("rips_stability", rips_filtration, dx, dy, max_dim, field)
}

/// `d_b(Čech X, Čech Y) ≤ 2 d_GH(X, Y)` in dimensions `0..=max_dim`.
pub fn verify_cech_stability(
    dx: &DissimilarityMatrix,
    dy: &DissimilarityMatrix,
    max_dim: usize,
    field: PrimeField,
) -> Result<VerificationReport> {
    stability_vs_gh("cech_stability", cech_intrinsic_filtration, dx, dy, max_dim, field)
}

/// `d_b(Čech(L, W), Čech(L', W)) ≤ d_H(L, L')`, all inside `ambient`.
pub fn verify_ambient_cech_stability(
    l: &[usize],
    lp: &[usize],
    w: &[usize],
    ambient: &DissimilarityMatrix,
    max_dim: usize,
    field: PrimeField,
) -> Result<VerificationReport> {
    let d1 = compute_persistence(&ambient_cech_filtration(l, w, ambient, max_dim + 1)?, field);
    let d2 = compute_persistence(&ambient_cech_filtration(lp, w, ambient, max_dim + 1)?, field);
    let (lhs, per_dim) = bottleneck_per_dim(&d1, &d2, max_dim);
    let rhs = hausdorff_distance(l, lp, ambient)?;
    Ok(VerificationReport::new(
        "ambient_cech_stability",
        lhs,
        rhs,
        lhs <= rhs + TOL,
        json!({ "per_dim": per_dim.into_iter().map(json_real).collect::<Vec<_>>(), "L": l, "Lp": lp, "W": w,
                "ambient": matrix_json(ambient) }),
    ))
}

/// `dgm Dow(Λ) = dgm Dow(Λᵀ)` as exact multisets in dimensions `0..=max_dim`.
pub fn verify_dowker_duality(lam: &CrossDissimilarity, max_dim: usize, field: PrimeField) -> Result<VerificationReport> {
    let restrict = |d: PersistenceDiagram| -> Vec<DiagramPoint> {
        d.points().iter().filter(|p| p.dim <= max_dim).copied().collect()
    };
    let d1 = compute_persistence(&dowker_filtration(lam, max_dim + 1), field);
    let d2 = compute_persistence(&dowker_filtration(&dowker_transpose(lam), max_dim + 1), field);
    let (lhs, _) = bottleneck_per_dim(&d1, &d2, max_dim);
    let (p1, p2) = (restrict(d1), restrict(d2));
    let equal = p1 == p2;
    Ok(VerificationReport::new(
        "dowker_duality",
        lhs,
        0.0,
        equal,
        json!({ "points": p1.len(), "points_transpose": p2.len(), "lambda": cross_json(lam) }),
    ))
}

/// `sup_l sup_{(w, w') ∈ C} |Λ(l, w) − Λ'(l, w')|`.
pub fn witness_distortion(lam: &CrossDissimilarity, lam_p: &CrossDissimilarity, c: &Correspondence) -> Result<f64> {
    if !c.is_correspondence() {
        return Err(Error::NotCorrespondence { left_total: c.left_total(), right_total: c.right_total() });
    }
    if lam.landmark_count() != lam_p.landmark_count()
        || c.source_len() != lam.witness_count()
        || c.target_len() != lam_p.witness_count()
    {
        return Err(Error::DimensionMismatch("witness matrices and correspondence disagree in size".into()));
    }
    let mut dis: f64 = 0.0;
    for l in 0..lam.landmark_count() {
        for &(w, wp) in c.pairs() {
            dis = dis.max((lam.get(l, w) - lam_p.get(l, wp)).abs());
        }
    }
    Ok(dis)
}

/// `d_b(Wit(L, W), Wit(L, W')) ≤ 2 dis(C)` for a correspondence `C`
/// between the witness sets.
pub fn verify_witness_stability(
    lam: &CrossDissimilarity,
    lam_p: &CrossDissimilarity,
    c: &Correspondence,
    max_dim: usize,
    field: PrimeField,
) -> Result<VerificationReport> {
    let dis = witness_distortion(lam, lam_p, c)?;
    let d1 = compute_persistence(&witness_filtration(lam, max_dim + 1), field);
    let d2 = compute_persistence(&witness_filtration(lam_p, max_dim + 1), field);
    let (lhs, per_dim) = bottleneck_per_dim(&d1, &d2, max_dim);
    let rhs = 2.0 * dis;
    Ok(VerificationReport::new(
        "witness_stability",
        lhs,
        rhs,
        lhs <= rhs + TOL,
        json!({ "per_dim": per_dim.into_iter().map(json_real).collect::<Vec<_>>(), "dis": dis,
                "lambda": cross_json(lam), "lambda_p": cross_json(lam_p), "C": c.pairs() }),
    ))
}

/// Vertex and edge values of `Wit(L, W)` and `Wit(L', W)` for the
/// landmark-perturbation example, with `L' = {−δ, 0, 1, 1 + δ}` indexed
/// in that order.
pub fn counterexample_expected(delta: f64) -> (Vec<(Vec<usize>, f64)>, Vec<(Vec<usize>, f64)>) {
    let l = vec![(vec![0], -1.0), (vec![1], -1.0), (vec![0, 1], -1.0)];
    let lp = vec![
        (vec![0], delta),
        (vec![1], -delta),
        (vec![2], -delta),
        (vec![3], delta),
        (vec![0, 1], delta),
        (vec![2, 3], delta),
        (vec![1, 2], 1.0 - delta),
        (vec![0, 2], 1.0),
        (vec![1, 3], 1.0),
        (vec![0, 3], 1.0 + delta),
    ];
    (l, lp)
}

/// Witness complexes of `L = {0, 1}` and `L' = {−δ, 0, 1, 1 + δ}` with
/// `W = {0, 1}`: checks their simplices against the explicit lists, and
/// reports `d_b` of `H_0` (lhs) against `d_H(L, L') = δ` (rhs). Passes when
/// the lists match and `lhs > rhs`, i.e. the instability is reproduced.
pub fn witness_counterexample_report(delta: f64, field: PrimeField) -> Result<VerificationReport> {
    let ex = WitnessExample::new(delta)?;
    let k = witness_filtration(&ex.landmark_cross(), 1);
    let kp = witness_filtration(&ex.perturbed_cross(), 3);
    let (exp_l, exp_lp) = counterexample_expected(delta);
    let values_match = |k: &FilteredComplex, exp: &[(Vec<usize>, f64)]| {
        exp.iter().all(|(s, v)| k.value_of(s).is_some_and(|x| (x - v).abs() <= TOL))
    };
    let set = |xs: &[&[usize]]| xs.iter().map(|s| s.to_vec()).collect::<BTreeSet<_>>();

    let l_levels = [0.0, 0.3, 5.0];
    let l_set = set(&[&[0], &[1], &[0, 1]]);
    let l_lists = l_levels.iter().all(|&a| k.simplex_set_at(a, false) == l_set);

    let lp_set = set(&[&[0], &[1], &[2], &[3], &[0, 1], &[2, 3]]);
    let span = 1.0 - 2.0 * delta;
    // `1 + δ − 1` is not exactly `δ` in floating point, hence the nudge
    let mut lp_levels: Vec<f64> = (0..8).map(|i| delta + TOL + span * i as f64 / 8.0).collect();
    lp_levels.push(1.0 - delta - span * 1e-6);
    let lp_lists = lp_levels.iter().all(|&a| kp.simplex_set_at(a, false) == lp_set);
    // nothing enters strictly inside the window, so the samples cover it
    let window_clear = kp.critical_values().iter().all(|&v| !(v > delta + TOL && v < 1.0 - delta - TOL));
    let components = lp_levels.iter().all(|&a| betti_at(&kp, a, false, field)[0] == 2);

    let d1 = compute_persistence(&k, field);
    let d2 = compute_persistence(&kp, field);
    let lhs = bottleneck_distance(&d1, &d2, 0).0;
    let (amb, li, lpi) = ex.ambient();
    let rhs = hausdorff_distance(&li, &lpi, &amb)?;
    let lists = l_lists && lp_lists && window_clear && values_match(&k, &exp_l) && values_match(&kp, &exp_lp);
    Ok(VerificationReport::new(
        "witness_counterexample",
        lhs,
        rhs,
        lists && components && lhs > rhs + TOL,
        json!({ "delta": delta, "lists_match": lists, "two_components": components,
                "interleaving_lower_bound": 1.0 - 2.0 * delta,
                "dgm_L": d1.to_json(), "dgm_Lp": d2.to_json() }),
    ))
}

/// One `H_1` measurement in a pathology sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathologyPoint {
    pub size: usize,
    pub betti1: usize,
    pub oracle: usize,
}

/// Which complex a pathology sweep measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pathology {
    /// Rips of `parallel_segments(n)` at scale `a` (closed).
    ParallelSegments,
    /// Rips of `two_rectangles(n)` at scale `a` (closed).
    TwoRectangles,
    /// Rips of `open_rips(N)` strictly below `a`.
    OpenRips,
    /// Intrinsic Čech of `parallel_segments(n)` at scale `a`.
    ParallelSegmentsCech,
}

impl Pathology {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name.replace('-', "_").as_str() {
            "parallel_segments" => Pathology::ParallelSegments,
            "two_rectangles" => Pathology::TwoRectangles,
            "open_rips" => Pathology::OpenRips,
            "parallel_segments_cech" | "cech_parallel_segments" => Pathology::ParallelSegmentsCech,
            _ => return Err(Error::UnknownName(name.to_string())),
        })
    }

    /// Default scale for the sweep.
    pub fn default_scale(self) -> f64 {
        match self {
            Pathology::TwoRectangles => 1.5,
            _ => 1.0,
        }
    }

    /// `β_1` at scale `a` from the reduction engine and from the naive
    /// oracle, in that order.
    pub fn betti1(self, size: usize, a: f64, field: PrimeField) -> Result<(usize, usize)> {
        let (cloud, strict) = match self {
            Pathology::ParallelSegments | Pathology::ParallelSegmentsCech => (generators::parallel_segments(size)?, false),
            Pathology::TwoRectangles => (generators::two_rectangles(size)?, false),
            Pathology::OpenRips => (generators::open_rips(size)?, true),
        };
        let d = cloud.to_matrix();
        let (engine, slice) = if self == Pathology::ParallelSegmentsCech {
            let k = cech_intrinsic_filtration(&d, 2);
            let b = betti_at(&k, a, strict, field)[1];
            (b, k.slice(a, strict).iter().map(|s| s.vertices.clone()).collect::<Vec<_>>())
        } else {
            let b = rips_betti_at(&d, a, strict, 1, field)[1];
            let k = rips_complex_at(&d, a, strict, 2);
            (b, k.simplices().iter().map(|s| s.vertices.clone()).collect())
        };
        let oracle = naive::betti_numbers(&slice, field).get(1).copied().unwrap_or(0);
        Ok((engine, oracle))
    }
}

/// `β_1` across discretization sizes. Rips sweeps pass when `β_1` is
/// strictly increasing; the Čech sweep passes when it is constant. Every
/// value must also agree with the naive oracle.
pub fn verify_pathology_growth(
    which: Pathology,
    sizes: &[usize],
    a: f64,
    field: PrimeField,
) -> Result<VerificationReport> {
    if sizes.is_empty() {
        return Err(Error::Empty("size list"));
    }
    let points = sizes
        .par_iter()
        .map(|&size| which.betti1(size, a, field).map(|(betti1, oracle)| PathologyPoint { size, betti1, oracle }))
        .collect::<Result<Vec<_>>>()?;
    let agree = points.iter().all(|p| p.betti1 == p.oracle);
    let shape = if which == Pathology::ParallelSegmentsCech {
        points.windows(2).all(|w| w[0].betti1 == w[1].betti1)
    } else {
        points.windows(2).all(|w| w[0].betti1 < w[1].betti1)
    };
    let (first, last) = (points[0].betti1 as f64, points[points.len() - 1].betti1 as f64);
    Ok(VerificationReport::new(
        "pathology_growth",
        last,
        first,
        agree && shape,
        json!({ "example": which, "a": a, "points": points, "oracle_agrees": agree }),
    ))
}

/// Largest `min(birth, persistence)` over the points of one dimension,
/// the quantity the mesh-size bounds control.
fn max_small_side(d: &PersistenceDiagram, dim: usize) -> f64 {
    d.in_dim(dim).map(|p| p.birth.max(0.0).min(p.persistence())).fold(0.0, f64::max)
}

/// `n` points on a circle of circumference `2π`: every `H_1` point has
/// birth or persistence at most `2π/n`, and `H_1(Rips_{2π/n}) → H_1(Rips_1)`
/// is onto.
pub fn verify_path_metric_theorem(n: usize, field: PrimeField) -> Result<VerificationReport> {
    if n < 8 {
        return Err(Error::InvalidParameter(format!("need at least 8 circle points, got {n}")));
    }
    let h = 2.0 * PI / n as f64;
    let d = generators::circle(n, 2.0 * PI)?.to_matrix();
    let k = rips_filtration(&d, 2);
    let dgm = compute_persistence(&k, field);
    let lhs = max_small_side(&dgm, 1);
    let significant = dgm.in_dim(1).filter(|p| p.persistence() > 0.5).count();
    let rank = dgm.count_containing(1, h + TOL, 1.0);
    let betti_b = betti_at(&k, 1.0, false, field)[1];
    Ok(VerificationReport::new(
        "path_metric",
        lhs,
        h,
        lhs <= h + TOL && rank == betti_b,
        json!({ "n": n, "significant_h1": significant, "surjectivity_rank": rank, "betti1_at_1": betti_b,
                "h1": dgm.restricted(1).to_json() }),
    ))
}

/// Subdivided metric tree at step `h`: every `H_2` point has birth or
/// persistence at most `h`.
pub fn verify_hyperbolic_theorem(tree: &TreeSpec, h: f64, field: PrimeField) -> Result<VerificationReport> {
    let d = tree.subdivided(h)?;
    let dgm = compute_persistence(&rips_filtration(&d, 3), field);
    let lhs = max_small_side(&dgm, 2);
    Ok(VerificationReport::new(
        "hyperbolic",
        lhs,
        h,
        lhs <= h + TOL,
        json!({ "tree": tree, "h": h, "points": d.len(), "h2": dgm.restricted(2).to_json() }),
    ))
}

fn run_trials(
    trials: usize,
    seed: u64,
    f: impl Fn(&mut rand_chacha::ChaCha8Rng) -> Result<VerificationReport> + Sync,
) -> Result<Vec<VerificationReport>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| f(&mut trial_rng(seed, t)).map(|r| r.with_seed(seed, t)))
        .collect()
}

fn random_small_pair(rng: &mut impl Rng) -> (DissimilarityMatrix, DissimilarityMatrix) {
    let nx = rng.gen_range(1..=4);
    let ny = rng.gen_range(1..=4);
    (random_plane_points(nx, rng).to_matrix(), random_plane_points(ny, rng).to_matrix())
}

/// Rips stability on random pairs of at most 4 planar points, dims 0–1.
pub fn rips_stability_trials(trials: usize, seed: u64, field: PrimeField) -> Result<Vec<VerificationReport>> {
    run_trials(trials, seed, |rng| {
        let (dx, dy) = random_small_pair(rng);
        verify_rips_stability(&dx, &dy, 1, field)
    })
}

/// Čech stability on random pairs of at most 4 planar points, dims 0–1.
pub fn cech_stability_trials(trials: usize, seed: u64, field: PrimeField) -> Result<Vec<VerificationReport>> {
    run_trials(trials, seed, |rng| {
        let (dx, dy) = random_small_pair(rng);
        verify_cech_stability(&dx, &dy, 1, field)
    })
}

fn random_subset(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if s.is_empty() {
        s.push(rng.gen_range(0..n));
    }
    s
}

/// Ambient Čech stability for random `(L, L', W)` inside a random
/// `size`-point planar space, dims 0–1.
pub fn ambient_cech_trials(trials: usize, seed: u64, size: usize, field: PrimeField) -> Result<Vec<VerificationReport>> {
    if size == 0 {
        return Err(Error::InvalidParameter("ambient space needs at least one point".into()));
    }
    run_trials(trials, seed, |rng| {
        let amb = random_plane_points(size, rng).to_matrix();
        let (l, lp, w) = (random_subset(size, rng), random_subset(size, rng), random_subset(size, rng));
        verify_ambient_cech_stability(&l, &lp, &w, &amb, 1, field)
    })
}

/// Dowker duality on random `rows × cols` matrices with entries in `[0, 1)`.
pub fn dowker_trials(
    trials: usize,
    seed: u64,
    rows: usize,
    cols: usize,
    max_dim: usize,
    field: PrimeField,
) -> Result<Vec<VerificationReport>> {
    run_trials(trials, seed, |rng| {
        let lam = CrossDissimilarity::from_rows((0..rows).map(|_| (0..cols).map(|_| rng.gen()).collect()).collect())?;
        verify_dowker_duality(&lam, max_dim, field)
    })
}

/// Witness stability: 5 random landmarks, 6 random witnesses, and a copy
/// of the witnesses jittered by at most `0.05` per coordinate.
pub fn witness_stability_trials(trials: usize, seed: u64, field: PrimeField) -> Result<Vec<VerificationReport>> {
    run_trials(trials, seed, |rng| {
        let (nl, nw) = (5, 6);
        let l = random_plane_points(nl, rng);
        let w = random_plane_points(nw, rng);
        let wp: Vec<Vec<f64>> = w
            .points()
            .iter()
            .map(|p| p.iter().map(|x| x + rng.gen_range(-0.05..=0.05)).collect())
            .collect();
        let all: Vec<Vec<f64>> = l.points().iter().chain(w.points()).cloned().chain(wp).collect();
        let amb = PointCloud::new(all, MetricKind::Euclidean)?.to_matrix();
        let li: Vec<usize> = (0..nl).collect();
        let lam = CrossDissimilarity::from_ambient(&li, &(nl..nl + nw).collect::<Vec<_>>(), &amb)?;
        let lam_p = CrossDissimilarity::from_ambient(&li, &(nl + nw..nl + 2 * nw).collect::<Vec<_>>(), &amb)?;
        verify_witness_stability(&lam, &lam_p, &Correspondence::identity(nw), 1, field)
    })
}

fn random_diagram(count: usize, rng: &mut impl Rng) -> PersistenceDiagram {
    // quarter-grid values make ties common
    let q = |rng: &mut dyn rand::RngCore| rng.gen_range(0..=8) as f64 / 4.0;
    let points = (0..count)
        .map(|_| {
            let birth = q(rng);
            let death = if rng.gen_bool(0.15) { f64::INFINITY } else { birth + q(rng) };
            DiagramPoint::new(0, birth, death)
        })
        .collect();
    PersistenceDiagram::new(points).expect("valid points")
}

/// Bottleneck distance against the brute-force oracle on random diagram
/// pairs with at most 8 points in total; equality is exact.
pub fn bottleneck_trials(trials: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    run_trials(trials, seed, |rng| {
        let total = rng.gen_range(0..=8);
        let left = rng.gen_range(0..=total);
        let (d1, d2) = (random_diagram(left, rng), random_diagram(total - left, rng));
        let (fast, cert) = bottleneck_distance(&d1, &d2, 0);
        let brute = bottleneck_bruteforce(&d1, &d2, 0)?;
        let same = fast == brute || (fast.is_infinite() && brute.is_infinite());
        Ok(VerificationReport::new(
            "bottleneck_oracle",
            fast,
            brute,
            same && cert.is_valid_for(&d1, &d2, 0),
            json!({ "d1": d1.to_json(), "d2": d2.to_json() }),
        ))
    })
}

/// Interleaving identities on one random pair of Rips filtrations:
/// `ΨΦ` and `ΦΨ` are the `2ε` shifts, maps subordinate to the same
/// correspondence induce equal homology maps, a sub-correspondence
/// induces the same maps, and `H(g ∘ f) = H(g) H(f)` through a third
/// space.
pub fn interleaving_trial(rng: &mut impl Rng, field: PrimeField) -> Result<VerificationReport> {
    let space = |rng: &mut dyn rand::RngCore| {
        let n = rng.gen_range(1..=8);
        random_plane_points(n, rng).to_matrix()
    };
    let (dx, dy, dz) = (space(rng), space(rng), space(rng));
    let (s, t, u) = (rips_filtration(&dx, 2), rips_filtration(&dy, 2), rips_filtration(&dz, 2));
    let c = Correspondence::full(dx.len(), dy.len());
    let d = Correspondence::full(dy.len(), dz.len());
    let eps = distortion(&c, &dx, &dy)?;
    let delta = distortion(&d, &dy, &dz)?;

    let verdict = verify_interleaving(&c, &s, &t, eps, field, 1)?;
    let grid = critical_grid(&s, &t, eps);

    // independence of the subordinate map, and of shrinking C
    let reference = induced_homology_map_at(&SubordinateMap::smallest(&c)?, &s, &t, eps, field, &grid, 1)?;
    let mut independent = true;
    for _ in 0..3 {
        let f = SubordinateMap::random(&c, rng)?;
        independent &= induced_homology_map_at(&f, &s, &t, eps, field, &grid, 1)? == reference;
    }
    let sub = {
        let mut pairs: Vec<(usize, usize)> = c.pairs().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        pairs.extend((0..dx.len()).map(|x| (x, rng.gen_range(0..dy.len()))));
        Correspondence::new(dx.len(), dy.len(), pairs)?
    };
    let sub_invariant = is_eps_simplicial(&sub, &s, &t, eps)?.holds()
        && induced_homology_map_at(&SubordinateMap::random(&sub, rng)?, &s, &t, eps, field, &grid, 1)? == reference;

    // functoriality through Z
    let f = SubordinateMap::random(&c, rng)?;
    let g = SubordinateMap::random(&d, rng)?;
    let gf = f.then(&g)?;
    let mut hs = FiltrationHomology::new(&s, field);
    let mut ht = FiltrationHomology::new(&t, field);
    let mut hu = FiltrationHomology::new(&u, field);
    let mut functorial = true;
    let mut levels = critical_grid(&s, &u, eps + delta);
    levels.extend(&grid);
    for &a in &levels {
        let (mid, end) = (a + eps, a + eps + delta);
        for dim in 0..=1 {
            let first = induced_level_map(&f, &mut hs, &mut ht, a, mid, dim)?;
            let second = induced_level_map(&g, &mut ht, &mut hu, mid, end, dim)?;
            let direct = induced_level_map(&gf, &mut hs, &mut hu, a, end, dim)?;
            functorial &= second.mul(&first, field)? == direct;
        }
    }

    let passed = verdict.verified && independent && sub_invariant && functorial;
    Ok(VerificationReport::new(
        "interleaving",
        if verdict.verified { 0.0 } else { 1.0 },
        0.0,
        passed,
        json!({ "eps": eps, "delta": delta, "verdict": verdict, "subordinate_independent": independent,
                "subcorrespondence_invariant": sub_invariant, "functorial": functorial,
                "dx": matrix_json(&dx), "dy": matrix_json(&dy), "dz": matrix_json(&dz) }),
    ))
}

/// [`interleaving_trial`] over seeded random spaces of at most 8 points.
pub fn interleaving_trials(trials: usize, seed: u64, field: PrimeField) -> Result<Vec<VerificationReport>> {
    run_trials(trials, seed, |rng| interleaving_trial(rng, field))
}

/// One sample of [`witness_densify_experiment`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensifyPoint {
    pub witnesses: usize,
    pub bottleneck_h0: f64,
    pub hausdorff: f64,
}

/// Landmark-perturbation example with `k` witnesses spread evenly over
/// `[−δ, 1 + δ]`, for each `k`. Records how `d_b(H_0)` behaves as the
/// witness set gets denser; asserts nothing.
pub fn witness_densify_experiment(delta: f64, counts: &[usize], field: PrimeField) -> Result<Vec<DensifyPoint>> {
    let ex = WitnessExample::new(delta)?;
    counts
        .iter()
        .map(|&k| {
            if k < 2 {
                return Err(Error::InvalidParameter("need at least two witnesses".into()));
            }
            let ws: Vec<f64> = (0..k).map(|i| -delta + (1.0 + 2.0 * delta) * i as f64 / (k - 1) as f64).collect();
            let cross = |ls: &[f64]| {
                CrossDissimilarity::from_rows(ls.iter().map(|l| ws.iter().map(|w| (l - w).abs()).collect()).collect())
            };
            let d1 = compute_persistence(&witness_filtration(&cross(&ex.landmarks)?, 1), field);
            let d2 = compute_persistence(&witness_filtration(&cross(&ex.perturbed)?, 3), field);
            Ok(DensifyPoint { witnesses: k, bottleneck_h0: bottleneck_distance(&d1, &d2, 0).0, hausdorff: delta })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_spaces_are_zero() {
        let d = DissimilarityMatrix::from_rows(vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.5], vec![2.0, 1.5, 0.0]]).unwrap();
        for r in [verify_rips_stability(&d, &d, 1, PrimeField::Z2).unwrap(), verify_cech_stability(&d, &d, 1, PrimeField::Z2).unwrap()] {
            assert_eq!((r.lhs, r.rhs, r.passed), (0.0, 0.0, true));
        }
    }

    #[test]
    fn scaled_copy_records_ratio() {
        let d = DissimilarityMatrix::from_rows(vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.5], vec![2.0, 1.5, 0.0]]).unwrap();
        let r = verify_rips_stability(&d, &d.scaled(1.5).unwrap(), 1, PrimeField::Z2).unwrap();
        assert!(r.passed);
        assert!(r.details["ratio"].as_f64().unwrap() > 0.0);
    }

    #[test]
    fn ambient_extra_point() {
        let pts = PointCloud::new(vec![vec![0.0], vec![1.0], vec![3.0]], MetricKind::Euclidean).unwrap();
        let amb = pts.to_matrix();
        let r = verify_ambient_cech_stability(&[0, 1], &[0, 1, 2], &[0, 1, 2], &amb, 1, PrimeField::Z2).unwrap();
        assert!(r.passed);
        assert_eq!(r.rhs, 2.0);
    }

    #[test]
    fn counterexample() {
        let r = witness_counterexample_report(0.1, PrimeField::Z2).unwrap();
        assert!(r.passed, "{r:?}");
        assert!((r.lhs - 0.9).abs() < 1e-12);
        assert!((r.rhs - 0.1).abs() < 1e-12);
    }

    #[test]
    fn trials_are_reproducible() {
        let a = rips_stability_trials(5, 7, PrimeField::Z2).unwrap();
        let b = rips_stability_trials(5, 7, PrimeField::Z2).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.passed && r.seed == Some(7)));
    }

    #[test]
    fn path_small() {
        let r = verify_path_metric_theorem(8, PrimeField::Z2).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(verify_path_metric_theorem(7, PrimeField::Z2).is_err());
    }

    #[test]
    fn interval_has_no_h2() {
        let r = verify_hyperbolic_theorem(&TreeSpec::path(1.0).unwrap(), 0.25, PrimeField::Z2).unwrap();
        assert!(r.passed);
        assert_eq!(r.details["h2"].as_array().map_or(0, Vec::len), 0);
    }

    #[test]
    fn densify_runs() {
        let pts = witness_densify_experiment(0.1, &[2, 5], PrimeField::Z2).unwrap();
        assert_eq!(pts.len(), 2);
    }
}
