use std::process::{Command, Output};

fn carlitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carlitz")).args(args).env_remove("CARLITZ_CONFIG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_names_every_suite() {
    let o = carlitz(&["list", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert!(names.len() >= 15);
    for want in ["pellarin-identity", "gamma-torsion", "omega-eigen", "skew-algebra"] {
        assert!(names.contains(&want), "{want}");
    }
    assert!(stdout(&carlitz(&["list"])).contains("pellarin-identity"));
}

#[test]
fn omega_eigen_example_passes() {
    let o = carlitz(&["verify", "--suite", "omega-eigen", "--q", "3", "--u-prec", "60", "--t-prec", "16"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["suites"][0]["name"], "omega-eigen");
    assert_eq!(doc["summary"]["fail"], 0);
}

#[test]
fn usage_errors_exit_two_before_running() {
    for args in [
        &["verify", "--suite", "bogus"][..],
        &["verify", "--suite", "leibniz,bogus"],
        &["verify", "--q", "6"],
        &["verify", "--u-prec", "0"],
        &["verify", "--format", "xml"],
        &["frobnicate"],
    ] {
        let o = carlitz(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn failing_suite_exits_one() {
    let o = carlitz(&["verify", "--suite", "jacobi-theta", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("FAIL  jacobi-theta"));
    assert!(text.contains("pass    phi(x)(x_2) = -x_1"));
}

#[test]
fn exp_coeffs_both_ways() {
    let o = carlitz(&["compute", "exp-coeffs", "--q", "2", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for k in 0..=6 {
        assert!(text.contains(&format!("d_{k}\n")) && text.contains(&format!("l_{k}\n")), "{k}");
    }
    assert!(text.contains("recursion    θ^2 + θ\n  closed_form  θ^2 + θ"));
    assert!(!text.contains("false"));

    let o = carlitz(&["compute", "exp-coeffs", "--q", "3", "--n", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["coefficients"].as_array().unwrap().len(), 6);
    assert!(doc["first_mismatch"].is_null());
}

#[test]
fn config_file_from_env_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let out = dir.path().join("report.csv");
    std::fs::write(&cfg, "suites = [\"phi-tables\", \"leibniz\"]\nformat = \"csv\"\ntau_order = 4\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_carlitz"))
        .args(["verify", "--tau-order", "5", "--out"])
        .arg(&out)
        .env("CARLITZ_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let mut rd = csv::Reader::from_path(&out).unwrap();
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert!(rows.iter().all(|r| &r[3] == "pass"));
    let suites: Vec<&str> = rows.iter().map(|r| r.get(0).unwrap()).collect();
    assert_eq!(suites.first(), Some(&"leibniz"));
    assert_eq!(suites.last(), Some(&"phi-tables"));
    assert!(rows.iter().any(|r| r[1].contains("\"k_max\":5")));
}

#[test]
fn timings_are_opt_in() {
    let plain = stdout(&carlitz(&["verify", "--suite", "classical-relations"]));
    assert!(!plain.contains("elapsed_ms"));
    let timed = stdout(&carlitz(&["verify", "--suite", "classical-relations", "--timings"]));
    assert!(timed.contains("elapsed_ms"));
}
