use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use layered_erasure::report::AnalysisReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_layered-erasure"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn analyze_json(name: &str) -> AnalysisReport {
    let o = run(&["analyze", fixture(name).to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    serde_json::from_slice(&o.stdout).expect("report parses")
}

/// `(success1, success2)` of each summary row.
fn successes(csv_text: &str) -> Vec<(f64, f64)> {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = r.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let (c1, c2) = (col("success1"), col("success2"));
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            (rec[c1].parse().unwrap(), rec[c2].parse().unwrap())
        })
        .collect()
}

#[test]
fn examples_pass_on_a_fresh_build() {
    let o = run(&["examples"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("all examples passed"));
    assert!(out.contains("expected 7/2") && out.contains("computed 7/2"));
}

#[test]
fn corrupted_fixture_fails_the_regression() {
    let dir = tempfile::tempdir().unwrap();
    for i in 1..=4 {
        let name = format!("example{i}.json");
        fs::copy(fixture(&name), dir.path().join(&name)).unwrap();
    }
    let corrupted = r#"{"q": 4, "kind": "ifc", "states": [
        {"n11": 2, "n21": 1, "n22": 2, "p": "1/3"},
        {"n11": 3, "n21": 4, "n22": 1, "p": "2/3"}]}"#;
    fs::write(dir.path().join("example3.json"), corrupted).unwrap();
    let o = run(&["examples", "--fixtures-dir", dir.path().to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(2), "{out}");
    assert!(out.contains("example3: outer bound (sum)"), "{out}");
    assert!(!out.contains("example2: "), "{out}");
}

#[test]
fn missing_fixture_dir_is_an_input_error() {
    let o = run(&["examples", "--fixtures-dir", "/nonexistent/fixtures"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn analyze_reports_the_known_values() {
    let r2 = analyze_json("example2.json").ifc.unwrap();
    assert_eq!(r2.regime.chosen_regime.as_deref(), Some("ErgodicVeryStrong"));
    assert_eq!(r2.regime.sum_capacity.unwrap().exact, "4");

    let r3 = analyze_json("example3.json").ifc.unwrap();
    assert!(r3.regime.satisfied.contains(&"MixedLemma".to_string()));
    assert_eq!(r3.regime.sum_capacity.unwrap().exact, "7/2");

    let r4 = analyze_json("example4.json").ifc.unwrap();
    assert_eq!((r4.regime.lower.exact.as_str(), r4.regime.upper.exact.as_str()), ("5/2", "3"));
    assert_eq!(r4.private_split.unwrap().total.exact, "3");

    let r1 = analyze_json("example1.json").mac.unwrap();
    assert_eq!([r1.corner[0].exact.as_str(), r1.corner[1].exact.as_str()], ["1/2", "7/2"]);
}

#[test]
fn analyze_json_round_trips() {
    for i in 1..=4 {
        let o = run(&["analyze", fixture(&format!("example{i}.json")).to_str().unwrap(), "--format", "json"]);
        let report: AnalysisReport = serde_json::from_slice(&o.stdout).unwrap();
        let again = serde_json::to_string_pretty(&report).unwrap();
        assert_eq!(again.trim_end(), stdout(&o).trim_end());
    }
}

#[test]
fn analyze_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"q": 2, "states": [{"n11": 1, "n21": 1, "n22": 1, "p": "1/2"}]}"#).unwrap();
    assert_eq!(run(&["analyze", path.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "/nonexistent.json"]).status.code(), Some(1));
}

#[test]
fn simulate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let ex2 = fixture("example2.json");
    let mut outputs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let path = dir.path().join(name);
        let o = run(&[
            "simulate",
            ex2.to_str().unwrap(),
            "--scheme",
            "ergodic-vs",
            "--T",
            "500",
            "--trials",
            "4",
            "--seed",
            "11",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        outputs.push((fs::read(&path).unwrap(), o.stdout));
    }
    assert_eq!(outputs[0], outputs[1]);
    let log = String::from_utf8(outputs[0].0.clone()).unwrap();
    assert_eq!(
        log.lines().next().unwrap(),
        "trial,scheme,T,epsilon,ok1,ok2,rate1,rate2,clean_slots_rx1,clean_slots_rx2"
    );
    assert_eq!(log.lines().count(), 1 + 4);
    let summary = String::from_utf8(outputs[0].1.clone()).unwrap();
    assert_eq!(summary.lines().next().unwrap(), "scheme,epsilon,T,trials,success1,success2,mean_rate1,mean_rate2");
}

#[test]
fn simulate_flag_errors() {
    let ex2 = fixture("example2.json");
    let ex2 = ex2.to_str().unwrap();
    for args in [
        vec!["simulate", ex2, "--trials", "0"],
        vec!["simulate", ex2, "--scheme", "weak"],
        vec!["simulate", ex2, "--scheme", "teleport"],
        vec!["simulate", ex2, "--epsilon", "1.5"],
        vec!["simulate", ex2, "--T", "abc"],
        vec!["simulate", ex2, "--scheme", "private-split"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn simulate_example2_summary() {
    let o = run(&["simulate", fixture("example2.json").to_str().unwrap(), "--scheme", "ergodic-vs"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let (s1, s2) = successes(&out)[0];
    assert!(s1 >= 0.95 && s2 >= 0.95, "{out}");
    // (1 − ε) · 4 with T = 2000 floors to exactly 3.6
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let rate: f64 = row[6].parse::<f64>().unwrap() + row[7].parse::<f64>().unwrap();
    assert!((rate - 3.6).abs() < 1e-9);
}

#[test]
fn auto_scheme_uses_the_private_split_on_example4() {
    let o = run(&["simulate", fixture("example4.json").to_str().unwrap(), "--trials", "2", "--T", "400"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("private-split:2:strong-joint"));
}

#[test]
fn sweep_over_epsilon_is_monotone() {
    let o = run(&[
        "sweep",
        fixture("example2.json").to_str().unwrap(),
        "--vary",
        "epsilon",
        "--values",
        "0.05,0.1,0.2",
        "--scheme",
        "ergodic-vs",
        "--seed",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = successes(&stdout(&o));
    assert_eq!(rows.len(), 3);
    for w in rows.windows(2) {
        assert!(w[1].0 >= w[0].0 && w[1].1 >= w[0].1, "{rows:?}");
    }
}

#[test]
fn sweep_over_block_length_improves_within_noise() {
    let trials = 20.0;
    let o = run(&[
        "sweep",
        fixture("example2.json").to_str().unwrap(),
        "--vary",
        "T",
        "--values",
        "500,1000,2000",
        "--epsilon",
        "0.05",
        "--scheme",
        "ergodic-vs",
        "--trials",
        "20",
        "--seed",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = successes(&stdout(&o));
    for w in rows.windows(2) {
        for (a, b) in [(w[0].0, w[1].0), (w[0].1, w[1].1)] {
            let p = (a + b) / 2.0;
            let sigma = (2.0 * p * (1.0 - p) / trials).sqrt();
            assert!(b >= a - 3.0 * sigma, "{rows:?}");
        }
    }
}

#[test]
fn sweep_flag_errors() {
    let ex2 = fixture("example2.json");
    let ex2 = ex2.to_str().unwrap();
    for args in [
        vec!["sweep", ex2, "--vary", "epsilon", "--values", ""],
        vec!["sweep", ex2, "--vary", "epsilon"],
        vec!["sweep", ex2, "--vary", "rate", "--values", "1"],
        vec!["sweep", ex2, "--vary", "T", "--values", "10,x"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn help_and_usage_exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}
