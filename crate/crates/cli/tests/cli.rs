use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use geomplex::complex::CrossDissimilarity;
use serde_json::Value;

fn geomplex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geomplex")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = geomplex(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_examples() {
    let dir = tempfile::tempdir().unwrap();
    let circle = dir.path().join("circle.txt");
    ok(&["gen", "circle", "--n", "100", "--circumference", "6.2832", "--out", p(&circle)]);
    let text = fs::read_to_string(&circle).unwrap();
    assert!(text.starts_with("dist 100"));
    assert_eq!(text.lines().count(), 101);

    let cloud = ok(&["gen", "open-rips", "--N", "5"]);
    assert_eq!(cloud.lines().count(), 10);

    let o = geomplex(&["gen", "spiral", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn witness_example_files_and_hausdorff() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["gen", "witness-example", "--delta", "0.1", "--out", p(dir.path())]);
    for f in ["L.csv", "Lp.csv", "W.csv", "L_W.dowker", "Lp_W.dowker"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let d: f64 = ok(&["dist", "hausdorff", p(&dir.path().join("L.csv")), p(&dir.path().join("Lp.csv"))])
        .trim()
        .parse()
        .unwrap();
    assert!((d - 0.1).abs() < 1e-9);
}

#[test]
fn ph_single_point() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("one.csv");
    fs::write(&f, "0.5,0.5\n").unwrap();
    assert_eq!(ok(&["ph", "-i", p(&f), "--kind", "rips"]), "0\t0\tinf\n");
    assert_eq!(ok(&["ph", "-i", p(&f), "--kind", "rips", "--h0-neg-inf"]), "0\t-inf\tinf\n");
    let v: Value = serde_json::from_str(&ok(&["--json", "ph", "-i", p(&f)])).unwrap();
    assert_eq!(v["schema"], 1);
}

#[test]
fn dowker_duality_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let rows: Vec<Vec<f64>> = (0..4).map(|i| (0..5).map(|j| ((i * 7 + j * 3) % 11) as f64 / 10.0).collect()).collect();
    let lam = CrossDissimilarity::from_rows(rows).unwrap();
    let (a, b) = (dir.path().join("lam.txt"), dir.path().join("lamt.txt"));
    fs::write(&a, lam.to_text()).unwrap();
    fs::write(&b, lam.transpose().to_text()).unwrap();
    let da = ok(&["ph", "-i", p(&a), "--kind", "dowker", "--max-dim", "2"]);
    let db = ok(&["ph", "-i", p(&b), "--kind", "dowker", "--max-dim", "2"]);
    assert_eq!(da, db);
    assert!(!da.is_empty());
}

#[test]
fn cech_equals_dowker_with_all_centres() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("pts.csv");
    fs::write(&f, "0,0\n1,0\n0.4,0.9\n1.2,1.1\n").unwrap();
    let cech = ok(&["ph", "-i", p(&f), "--kind", "cech", "--max-dim", "1"]);
    let dow = ok(&["ph", "-i", p(&f), "--kind", "dowker", "--max-dim", "1"]);
    let amb = ok(&["ph", "-i", p(&f), "--kind", "ambient-cech", "--witnesses", p(&f), "--max-dim", "1"]);
    assert_eq!(cech, dow);
    assert_eq!(cech, amb);
}

#[test]
fn self_distances_are_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("pts.csv");
    fs::write(&f, "0,0\n1,0\n0,1\n").unwrap();
    let dgm = dir.path().join("d.tsv");
    ok(&["ph", "-i", p(&f), "--out", p(&dgm)]);
    assert_eq!(ok(&["dist", "bottleneck", p(&dgm), p(&dgm)]).trim(), "0");
    assert_eq!(ok(&["dist", "gh-exact", p(&f), p(&f)]).trim(), "0");
    let v: Value = serde_json::from_str(&ok(&["--json", "dist", "bottleneck", p(&dgm), p(&dgm), "--certificate"])).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["value"], 0.0);
    assert!(v["certificate"].is_array());
}

#[test]
fn betti_strict_and_closed() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("two.csv");
    fs::write(&f, "0\n1\n").unwrap();
    assert_eq!(ok(&["betti", "-i", p(&f), "--a", "1", "--max-dim", "0"]).trim(), "1");
    assert_eq!(ok(&["betti", "-i", p(&f), "--a", "1", "--max-dim", "0", "--strict"]).trim(), "2");
}

#[test]
fn verify_pass_fail_and_usage() {
    assert!(geomplex(&["verify", "dowker", "--trials", "50", "--seed", "7"]).status.success());
    assert!(geomplex(&["verify", "rips-stability", "--trials", "200", "--seed", "7"]).status.success());
    assert!(geomplex(&["verify", "path-metric", "--n", "100"]).status.success());
    assert_eq!(geomplex(&["verify", "no-such-theorem"]).status.code(), Some(2));

    // an interleaving parameter below the distortion is rejected: exit 1
    let dir = tempfile::tempdir().unwrap();
    let (x, y) = (dir.path().join("x.csv"), dir.path().join("y.csv"));
    fs::write(&x, "0\n1\n").unwrap();
    fs::write(&y, "0\n3\n").unwrap();
    let corr = dir.path().join("c.txt");
    fs::write(&corr, "0 0\n1 1\n").unwrap();
    let args = ["verify", "interleaving", "--x", p(&x), "--y", p(&y), "--correspondence", p(&corr)];
    assert!(geomplex(&args).status.success());
    let mut small = args.to_vec();
    small.extend(["--eps", "0.5", "--json"]);
    let o = geomplex(&small);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["schema"].clone(), v["applicable"].clone()), (Value::from(1), Value::from(false)));
}

#[test]
fn verify_json_is_deterministic() {
    let run = || {
        let o = Command::new(env!("CARGO_BIN_EXE_geomplex"))
            .args(["--json", "verify", "cech-stability", "--trials", "20", "--seed", "3"])
            .env("GEOMPLEX_THREADS", "3")
            .output()
            .unwrap();
        assert!(o.status.success());
        o.stdout
    };
    let a = run();
    assert_eq!(a, run());
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["reports"].as_array().unwrap().len(), 20);
}

#[test]
fn bad_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    fs::write(&f, "dist 2\n0 1\n2 0\n").unwrap();
    assert_eq!(geomplex(&["ph", "-i", p(&f)]).status.code(), Some(2));
    assert_eq!(geomplex(&["ph", "-i", p(&dir.path().join("missing"))]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_geomplex"))
        .args(["verify", "bottleneck", "--trials", "5"])
        .env("GEOMPLEX_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
