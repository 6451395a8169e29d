use std::path::Path;
use std::process::{Command, Output};

use icewave::output::parse_csv;

fn icewave(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icewave"))
        .current_dir(dir)
        .env_remove("ICEWAVE_OUT_DIR")
        .args(args)
        .output()
        .expect("failed to run icewave")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(o)))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("terminated by signal")
}

fn read(p: impl AsRef<Path>) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn classify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = icewave(dir.path(), &["classify", "--beta", "4", "--gamma", "0.5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["region"], "ON_D2");

    let o = icewave(
        dir.path(),
        &[
            "classify", "--beta", "1", "--gamma", "10", "--json", "c.json",
        ],
    );
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["region"], "ABOVE_D2");
    let angle = v["origin_angle"].as_f64().unwrap();
    assert!((angle - 99f64.sqrt().atan()).abs() < 1e-12);
    assert_eq!(read(dir.path().join("c.json")), stdout(&o));

    let o = icewave(dir.path(), &["classify", "--beta", "-1", "--gamma", "1"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("beta"));
}

#[test]
fn trace_below_d1_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = icewave(
        dir.path(),
        &["trace", "--beta", "1", "--gamma", "0.5", "--svg", "t.svg"],
    );
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(read(dir.path().join("trace.csv")), "a,l1,l2,branch\n");
    assert!(read(dir.path().join("t.svg")).ends_with("</svg>\n"));
}

#[test]
fn trace_rows_validate_and_match_classify() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "trace",
        "--beta",
        "0.5",
        "--gamma",
        "2.5",
        "--n",
        "600",
        "--csv",
        "out/t.csv",
        "--svg",
        "out/t.svg",
    ];
    assert_eq!(code(&icewave(dir.path(), &args)), 0);
    let csv = read(dir.path().join("out/t.csv"));
    assert!(!csv.contains('\r'));
    let rows = parse_csv(&csv);
    assert_eq!(rows[0], ["a", "l1", "l2", "branch"]);
    assert!(rows.len() > 500);

    let v = icewave(
        dir.path(),
        &[
            "validate",
            "--trace",
            "out/t.csv",
            "--beta",
            "0.5",
            "--gamma",
            "2.5",
        ],
    );
    assert_eq!(code(&v), 0, "{}", stdout(&v));
    assert_eq!(json(&v)["violations"].as_array().unwrap().len(), 0);

    // axis end points of the trace and the SVG markers agree with classify
    let class = json(&icewave(
        dir.path(),
        &["classify", "--beta", "0.5", "--gamma", "2.5"],
    ));
    let roots: Vec<f64> = class["axis_roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_f64().unwrap())
        .collect();
    assert!(!roots.is_empty());
    let ends: Vec<f64> = rows[1..]
        .iter()
        .filter(|r| r[2].parse::<f64>().unwrap() == 0.0)
        .map(|r| r[1].parse().unwrap())
        .collect();
    for r in &roots {
        assert!(
            ends.iter().any(|e| (e - r).abs() <= 1e-9 * r),
            "root {r} not among {ends:?}"
        );
    }
    let svg = read(dir.path().join("out/t.svg"));
    for r in &roots {
        assert!(svg.contains(&format!("data-l1=\"{r:e}\"")));
    }
    assert_eq!(svg.matches("class=\"branch\"").count() % 4, 0);
}

#[test]
fn validate_rejects_corrupted_trace() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bad.csv"),
        "a,l1,l2,branch\n1.0,0.6,0.8,0\n1.0,0.6,0.9,0\n",
    )
    .unwrap();
    let o = icewave(dir.path(), &["validate", "--trace", "bad.csv"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["violations"][0]["row"], 2);

    std::fs::write(dir.path().join("hdr.csv"), "a,l1,l2\n").unwrap();
    assert_eq!(
        code(&icewave(dir.path(), &["validate", "--trace", "hdr.csv"])),
        2
    );
    assert_eq!(
        code(&icewave(
            dir.path(),
            &["validate", "--trace", "missing.csv"]
        )),
        2
    );
}

#[test]
fn resonance_orthogonal_axes_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let (beta, s, nu0) = (1.0f64, 0.4f64, 2.0f64);
    let dtheta = std::f64::consts::FRAC_PI_2.to_string();
    let o = icewave(
        dir.path(),
        &[
            "resonance",
            "--beta",
            "1",
            "--s",
            "0.4",
            "--nu0",
            "2",
            "--dtheta",
            &dtheta,
            "--out",
            "r.json",
        ],
    );
    let v = json(&o);
    let sigma = (s * s + nu0 * nu0).sqrt();
    let radial = (1.0 + sigma.powi(4)) * sigma * (sigma / beta).tanh();
    let expect = radial.sqrt() / nu0;
    assert!((v["gamma"].as_f64().unwrap() - expect).abs() < 1e-12 * expect);
    assert_eq!(v["margins"].as_array().unwrap().len(), 9);
    if v["passed"].as_bool().unwrap() {
        assert_eq!(code(&o), 0);
        assert!(v["transversality"].as_f64().unwrap().abs() > 1e-8);
    } else {
        assert_eq!(code(&o), 3);
    }
}

#[test]
fn resonance_certified_and_crowded() {
    let dir = tempfile::tempdir().unwrap();
    let o = icewave(
        dir.path(),
        &[
            "resonance",
            "--beta",
            "0.5",
            "--s",
            "0.6",
            "--nu0",
            "1.6",
            "--dtheta",
            "1.6",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert!(v["transversality"].as_f64().unwrap().abs() > 1e-3);
    for key in ["theta1", "theta2", "gamma"] {
        assert!(v[key].is_f64());
    }

    let o = icewave(
        dir.path(),
        &[
            "resonance",
            "--beta",
            "1",
            "--s",
            "0.3",
            "--nu0",
            "0.25",
            "--dtheta",
            "1.5",
        ],
    );
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["passed"], false);
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(
        err.contains("offending modes") && err.contains("k=2 "),
        "{err}"
    );

    let o = icewave(
        dir.path(),
        &[
            "resonance",
            "--beta",
            "1",
            "--s",
            "0.3",
            "--nu0",
            "1",
            "--dtheta",
            "0",
        ],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn spectrum_modes() {
    let dir = tempfile::tempdir().unwrap();
    let o = icewave(
        dir.path(),
        &[
            "resonance",
            "--beta",
            "0.5",
            "--s",
            "0.6",
            "--nu0",
            "1.6",
            "--dtheta",
            "1.6",
            "--out",
            "cfg.json",
        ],
    );
    assert_eq!(code(&o), 0);

    let o = icewave(
        dir.path(),
        &["spectrum", "--config", "cfg.json", "--mode", "1"],
    );
    assert_eq!(code(&o), 0);
    let rows = parse_csv(&read(dir.path().join("spectrum_mode1.csv")));
    assert_eq!(
        rows[0],
        [
            "k",
            "s",
            "sigma",
            "b_sign",
            "chain_length",
            "mechanism",
            "residual",
            "chain_residual"
        ]
    );
    assert_eq!(rows.len(), 3);
    let ss: Vec<f64> = rows[1..].iter().map(|r| r[1].parse().unwrap()).collect();
    assert!((ss[0] + 0.6).abs() < 1e-10 && (ss[1] - 0.6).abs() < 1e-10);
    for r in &rows[1..] {
        assert!(r[6].parse::<f64>().unwrap() <= 1e-10);
    }

    let o = icewave(
        dir.path(),
        &[
            "spectrum", "--config", "cfg.json", "--mode", "0", "--csv", "m0.csv",
        ],
    );
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["zero_chain"]["length"], 2);
    for r in v["zero_chain"]["residuals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() <= 1e-10);
    }
    assert_eq!(parse_csv(&read(dir.path().join("m0.csv"))).len(), 1);

    let o = icewave(
        dir.path(),
        &["spectrum", "--config", "cfg.json", "--mode", "3"],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["eigenvalues"], 0);
    assert_eq!(
        parse_csv(&read(dir.path().join("spectrum_mode3.csv"))).len(),
        1
    );
}

#[test]
fn spectrum_rejects_unknown_config_keys() {
    let dir = tempfile::tempdir().unwrap();
    icewave(
        dir.path(),
        &[
            "resonance",
            "--beta",
            "0.5",
            "--s",
            "0.6",
            "--nu0",
            "1.6",
            "--dtheta",
            "1.6",
            "--out",
            "c.json",
        ],
    );
    let mut v: serde_json::Value = serde_json::from_str(&read(dir.path().join("c.json"))).unwrap();
    v["extra"] = 1.into();
    std::fs::write(dir.path().join("c.json"), v.to_string()).unwrap();
    let o = icewave(
        dir.path(),
        &["spectrum", "--config", "c.json", "--mode", "1"],
    );
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("extra"));
}

#[test]
fn centre_basic_branch_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = icewave(
        dir.path(),
        &[
            "centre", "--system", "BASIC_4D", "--grid", "3", "--eps", "0.06", "--out", "run",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = json(&o);
    assert_eq!(report["converged"], 9);
    assert_eq!(read(dir.path().join("run/coefficients.json")), stdout(&o));

    let branch = parse_csv(&read(dir.path().join("run/branch.csv")));
    assert_eq!(
        branch[0],
        [
            "t1",
            "t2",
            "mu1",
            "mu2",
            "p",
            "period",
            "closure_residual",
            "reversibility_residual",
            "energy_drift",
            "status"
        ]
    );
    assert_eq!(branch.len(), 10);
    for r in &branch[1..] {
        assert_eq!(r[9], "converged");
        assert!(r[6].parse::<f64>().unwrap() <= 1e-7);
    }
    let ver = parse_csv(&read(dir.path().join("run/verification.csv")));
    assert_eq!(ver[0][5], "oracle_error");
    assert_eq!(
        code(&icewave(
            dir.path(),
            &["validate", "--branch", "run/branch.csv"]
        )),
        0
    );

    // a corrupted residual is caught by the validator
    let text = read(dir.path().join("run/branch.csv"));
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut cells: Vec<String> = lines[5].split(',').map(String::from).collect();
    cells[6] = "1e-3".into();
    lines[5] = cells.join(",");
    std::fs::write(dir.path().join("bad.csv"), lines.join("\n") + "\n").unwrap();
    assert_eq!(
        code(&icewave(dir.path(), &["validate", "--branch", "bad.csv"])),
        3
    );
}

#[test]
fn centre_translation_and_zero_grid() {
    let dir = tempfile::tempdir().unwrap();
    let o = icewave(
        dir.path(),
        &[
            "centre",
            "--system",
            "TRANSLATION_6D",
            "--eps",
            "0",
            "--out",
            "z",
        ],
    );
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!((v["s002_00"].as_f64().unwrap() + 0.5).abs() < 1e-4);
    assert_eq!(v["points"], 1);
    let rows = parse_csv(&read(dir.path().join("z/branch.csv")));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][2].parse::<f64>().unwrap(), 0.0);

    let o = icewave(dir.path(), &["centre", "--system", "NO_SUCH", "--out", "z"]);
    assert_eq!(code(&o), 2);
}

const BASIC_FILE: &str = r#"{
  "name": "basic from file",
  "dim": 4,
  "monomials": [
    {"exponents": [2, 0, 0, 0], "coeff": 0.5},
    {"exponents": [0, 0, 2, 0], "coeff": 0.5},
    {"exponents": [2, 0, 0, 0], "coeff": 0.25, "mu_degree": 1},
    {"exponents": [0, 0, 2, 0], "coeff": 0.25, "mu_degree": 1},
    {"exponents": [0, 2, 0, 0], "coeff": 0.5},
    {"exponents": [0, 0, 0, 2], "coeff": 0.5},
    {"exponents": [0, 2, 0, 0], "coeff": -0.25, "mu_degree": 1},
    {"exponents": [0, 0, 0, 2], "coeff": -0.25, "mu_degree": 1},
    {"exponents": [2, 2, 0, 0], "coeff": 1.0}
  ],
  "J": [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]],
  "R": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
  "kappa": 1.0,
  "e1": [[1, 0], [0, 0], [0, 1], [0, 0]],
  "e2": [[0, 0], [1, 0], [0, 0], [0, 1]]
}"#;

#[test]
fn system_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("sys.json"), BASIC_FILE).unwrap();
    let args = ["--grid", "2", "--eps", "0.04", "--parallelism", "2"];
    let a = icewave(
        dir.path(),
        &[&["centre", "--system", "sys.json", "--out", "a"][..], &args].concat(),
    );
    let b = icewave(
        dir.path(),
        &[&["centre", "--system", "BASIC_4D", "--out", "b"][..], &args].concat(),
    );
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(code(&b), 0);
    assert_eq!(
        read(dir.path().join("a/branch.csv")),
        read(dir.path().join("b/branch.csv"))
    );

    let bad = BASIC_FILE.replace("\"kappa\"", "\"kapa\"");
    std::fs::write(dir.path().join("bad.json"), bad).unwrap();
    assert_eq!(
        code(&icewave(
            dir.path(),
            &["centre", "--system", "bad.json", "--out", "c"]
        )),
        2
    );

    // R = identity is not a reverser: the hypothesis check refuses the system
    let not_rev = BASIC_FILE.replace(
        "[0, 0, -1, 0], [0, 0, 0, -1]]",
        "[0, 0, 1, 0], [0, 0, 0, 1]]",
    );
    std::fs::write(dir.path().join("nr.json"), not_rev).unwrap();
    let o = icewave(dir.path(), &["centre", "--system", "nr.json", "--out", "d"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("hypotheses"));
}

#[test]
fn scan_output_and_strict_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"target": "classify", "axes": [{"name": "beta", "values": [1.0, 4.0]},
        {"name": "gamma", "values": [0.5, 10.0, -1.0]}], "output": "scan.csv", "parallelism": 3}"#;
    std::fs::write(dir.path().join("s.json"), cfg).unwrap();
    let o = icewave(dir.path(), &["scan", "--config", "s.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = parse_csv(&read(dir.path().join("scan.csv")));
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0][..2], ["beta", "gamma"]);
    assert_eq!(rows[0].last().unwrap(), "status");
    // lexicographic: first axis outermost
    let order: Vec<(f64, f64)> = rows[1..]
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();
    assert_eq!(
        order,
        [
            (1.0, 0.5),
            (1.0, 10.0),
            (1.0, -1.0),
            (4.0, 0.5),
            (4.0, 10.0),
            (4.0, -1.0)
        ]
    );
    assert_eq!(rows[2][2], "ABOVE_D2");
    assert_eq!(rows[4][2], "ON_D2");
    assert!(rows[3].last().unwrap().starts_with("error:"));

    for bad in [
        r#"{"target": "classify", "axes": [{"name": "beta", "values": [1.0]}], "fixed": {"gamma": 1.0}, "colour": 1}"#,
        r#"{"target": "classify", "axes": [{"name": "beta", "values": []}], "fixed": {"gamma": 1.0}}"#,
        r#"{"target": "classify", "axes": [{"name": "beta", "values": [1.0]}]}"#,
        r#"{"target": "classify", "axes": [{"name": "beta", "values": [1.0]}], "fixed": {"gamma": 1.0, "s": 2.0}}"#,
        r#"{"target": "fourier", "axes": [{"name": "beta", "values": [1.0]}]}"#,
    ] {
        std::fs::write(dir.path().join("bad.json"), bad).unwrap();
        let o = icewave(
            dir.path(),
            &["scan", "--config", "bad.json", "--output", "x.csv"],
        );
        assert_eq!(code(&o), 2, "{bad}");
    }
}

#[test]
fn out_dir_environment_variable() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_icewave"))
        .current_dir(dir.path())
        .env("ICEWAVE_OUT_DIR", "results")
        .args(["trace", "--beta", "1", "--gamma", "3", "--n", "50"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(dir.path().join("results/trace.csv").exists());
}
