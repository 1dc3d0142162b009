use std::path::Path;
use std::process::{Command, Output};

use cliffwave::cwt::CoefficientField;

const BIN: &str = env!("CARGO_BIN_EXE_cliffwave");

const CONFIG: &str = "dim = 2\nell = 2\nalpha = -2\nbeta = -5\nn = 45\nh = 0.25\na_min = 0.625\na_max = 5.0\nn_scales = 10\n";

const WIDE: &str = "dim = 2\nell = 2\nalpha = -2\nbeta = -5\nn = 129\nh = 0.25\na_min = 0.625\na_max = 10.0\nn_scales = 16\n";

fn cli(dir: &Path, args: &[&str]) -> Output {
    cli_env(dir, args, &[])
}

fn cli_env(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.current_dir(dir).args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.toml"), CONFIG).unwrap();
    let o = cli(dir.path(), &["--config", "run.toml", "field", "sample", "--sigma", "1.5", "--k0", "2.4", "--out-dir", "f"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    dir
}

fn manifest_exit(dir: &Path) -> i64 {
    let text = std::fs::read_to_string(dir.join("manifest.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["exit_code"].as_i64().unwrap()
}

#[test]
fn wavelet_build_and_guard() {
    let dir = tempfile::tempdir().unwrap();
    let ok = cli(dir.path(), &["wavelet", "build", "--dim", "2", "--ell", "2", "--alpha=-2", "--beta=-5", "--out-dir", "ok"]);
    assert_eq!(code(&ok), 0);
    let text = std::fs::read_to_string(dir.path().join("ok/wavelet.txt")).unwrap();
    assert!(text.contains("psi = "));
    assert!(text.contains("form_defect = 0e0"));

    let bad = cli(dir.path(), &["wavelet", "build", "--dim", "2", "--ell", "1", "--alpha=-3", "--beta=-3", "--out-dir", "bad"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("pole"));
    assert_eq!(manifest_exit(&dir.path().join("bad")), 2);
}

#[test]
fn moments_and_admissibility() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--dim", "2", "--ell", "2", "--alpha=-2", "--beta=-5"];
    let o = cli(dir.path(), &[&["wavelet", "moments", "--k-max", "3", "--out-dir", "m"][..], &args].concat());
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(dir.path().join("m/moments.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.lines().nth(1).unwrap().starts_with("0,true,true"));

    let o = cli(
        dir.path(),
        &[&["wavelet", "admissibility", "--grid", "--n", "129", "--h", "0.15", "--out-dir", "a"][..], &args].concat(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("a/admissibility.csv")).unwrap();
    let values: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 2);
    assert!((values[0] - values[1]).abs() < 1e-2 * values[0], "{values:?}");
}

#[test]
fn fast_and_direct_forward_agree() {
    let dir = setup();
    let d = dir.path();
    for (flag, out) in [("--fast", "fast"), ("--direct", "direct")] {
        let o = cli(d, &["--config", "run.toml", "cwt", "forward", "--field", "f/field.csv", flag, "--out-dir", out]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let read = |name: &str| {
        CoefficientField::<f64>::from_csv(&std::fs::read_to_string(d.join(name).join("coefficients.csv")).unwrap()).unwrap()
    };
    let (a, b) = (read("fast"), read("direct"));
    let scale = a.data().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let gap = a.data().iter().zip(b.data()).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    assert!(gap <= 1e-6 * scale, "gap {gap:e}, scale {scale:e}");
}

#[test]
fn inverse_round_trip_and_checks() {
    let dir = setup();
    let d = dir.path();
    // The narrow fixture leaves too much energy at the smallest scale.
    let o = cli(d, &["--config", "run.toml", "verify", "reconstruction", "--field", "f/field.csv", "--out-dir", "gate"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("truncation gate"));

    std::fs::write(d.join("wide.toml"), WIDE).unwrap();
    let o = cli(d, &["--config", "wide.toml", "field", "sample", "--sigma", "3", "--k0", "1.2", "--angle", "0.3", "--out-dir", "w"]);
    assert_eq!(code(&o), 0);
    let o = cli(d, &["--config", "wide.toml", "cwt", "forward", "--field", "w/field.csv", "--out-dir", "c"]);
    assert_eq!(code(&o), 0);
    let o = cli(d, &["--config", "wide.toml", "cwt", "inverse", "--coeffs", "c/coefficients.csv", "--like", "w/field.csv", "--out-dir", "i"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = cli(d, &["--config", "wide.toml", "verify", "reconstruction", "--field", "w/field.csv", "--out-dir", "r"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = cli(d, &["--config", "wide.toml", "verify", "plancherel", "--field", "w/field.csv", "--out-dir", "p"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    // The same run against an impossible tolerance is a failed check, not an input error.
    let o = cli(
        d,
        &["--config", "wide.toml", "verify", "plancherel", "--field", "w/field.csv", "--plancherel-tol", "1e-9", "--out-dir", "p2"],
    );
    assert_eq!(code(&o), 1);
    assert_eq!(manifest_exit(&d.join("p2")), 1);
}

#[test]
fn corrupt_inputs_exit_2() {
    let dir = setup();
    let d = dir.path();
    let text = std::fs::read_to_string(d.join("f/field.csv")).unwrap();
    let cut: String = text.lines().take(20).collect::<Vec<_>>().join("\n");
    std::fs::write(d.join("cut.csv"), cut).unwrap();
    let o = cli(d, &["--config", "run.toml", "cwt", "forward", "--field", "cut.csv", "--out-dir", "x"]);
    assert_eq!(code(&o), 2);
    std::fs::write(d.join("junk.csv"), "not,a,field\n1,2\n").unwrap();
    let o = cli(d, &["--config", "run.toml", "field", "norm", "--field", "junk.csv", "--out-dir", "y"]);
    assert_eq!(code(&o), 2);

    std::fs::write(d.join("empty.json"), r#"{"configurations": []}"#).unwrap();
    let o = cli(d, &["--config", "run.toml", "verify", "donoho-stark", "--field", "f/field.csv", "--regions", "empty.json", "--out-dir", "z"]);
    assert_eq!(code(&o), 2);
    assert_eq!(manifest_exit(&d.join("z")), 2);
}

#[test]
fn uncertainty_commands() {
    let dir = setup();
    let d = dir.path();
    let regions = r#"{"configurations": [
        {"label": "box", "t": {"boxes": [{"lo": [-3, -3], "hi": [3, 3]}]},
         "omega": {"kind": "box", "a_min": 0.625, "a_max": 5, "lo": [-3, -3], "hi": [3, 3]}},
        {"label": "band", "t": {"balls": [{"center": [0, 0], "radius": 3}]},
         "omega": {"kind": "band", "alpha": 1.0, "lo": [-4, -4], "hi": [4, 4]}}
    ]}"#;
    std::fs::write(d.join("regions.json"), regions).unwrap();
    let o = cli(d, &["--config", "run.toml", "verify", "donoho-stark", "--field", "f/field.csv", "--regions", "regions.json", "--out-dir", "ds"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(d.join("ds/concentration.csv")).unwrap();
    assert!(csv.contains("band,band_corollary_measure,true"));
    assert!(d.join("ds/summary.txt").exists());

    let o = cli(
        d,
        &["--config", "run.toml", "sweep", "--nest", "T", "--factors", "0.5,1,2", "--field", "f/field.csv", "--regions", "regions.json", "--out-dir", "sw"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(d.join("sw/sweep.csv")).unwrap();
    for k in ["box@0.500000", "box@1.000000", "box@2.000000"] {
        assert!(csv.contains(k));
    }
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let dir = setup();
    let d = dir.path();
    let mut outputs = Vec::new();
    for threads in ["1", "3", "8"] {
        let out = format!("t{threads}");
        let o = cli_env(
            d,
            &["--config", "run.toml", "cwt", "forward", "--field", "f/field.csv", "--out-dir", &out],
            &[("CLIFFWAVE_THREADS", threads)],
        );
        assert_eq!(code(&o), 0);
        outputs.push(std::fs::read(d.join(&out).join("coefficients.csv")).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn manifest_detects_tampering() {
    let dir = setup();
    let d = dir.path();
    let o = cli(d, &["manifest", "f"]);
    assert_eq!(code(&o), 0);
    let path = d.join("f/field.csv");
    let mut text = std::fs::read_to_string(&path).unwrap();
    text.push('\n');
    std::fs::write(&path, text).unwrap();
    let o = cli(d, &["manifest", "f"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("field.csv"));
}
