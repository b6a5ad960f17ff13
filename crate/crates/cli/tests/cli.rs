use assert_cmd::Command;

fn oddeven() -> Command {
    let mut c = Command::cargo_bin("oddeven").unwrap();
    c.env_remove("ODDEVEN_PRECISION");
    c
}

fn stdout_of(args: &[&str]) -> String {
    let out = oddeven().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn count_column(csv: &str) -> Vec<String> {
    csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect()
}

#[test]
fn compute_oe_table() {
    let out = stdout_of(&["compute", "--kind", "oe", "--n-max", "8", "--method", "series"]);
    assert_eq!(out.lines().next(), Some("n,count"));
    assert_eq!(count_column(&out), ["1", "1", "0", "2", "0", "2", "1", "3", "1"]);
}

#[test]
fn compute_oebar_by_enumeration() {
    let out = stdout_of(&["compute", "--kind", "oebar", "--n-max", "4", "--method", "enum"]);
    assert_eq!(count_column(&out), ["1", "2", "0", "4", "2"]);
}

#[test]
fn methods_agree() {
    for kind in ["oe", "oebar"] {
        let a = stdout_of(&["compute", "--kind", kind, "--n-max", "25", "--method", "series"]);
        let b = stdout_of(&["compute", "--kind", kind, "--n-max", "25", "--method", "enum"]);
        assert_eq!(a, b, "{kind}");
    }
    let a = stdout_of(&["compute", "--kind", "oebar", "--n-max", "60", "--method", "series"]);
    let b = stdout_of(&["compute", "--kind", "oebar", "--n-max", "60", "--method", "watson-product"]);
    assert_eq!(a, b);
}

#[test]
fn enumeration_guard() {
    let out = oddeven().args(["compute", "--kind", "oe", "--n-max", "51", "--method", "enum"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
    oddeven().args(["compute", "--kind", "oe", "--n-max", "51", "--method", "enum", "--force"]).assert().success();
    oddeven().args(["compute", "--kind", "oe", "--n-max", "5", "--method", "watson-product"]).assert().failure();
}

#[test]
fn invalid_flags() {
    oddeven().args(["compute", "--kind", "nope", "--n-max", "5"]).assert().failure();
    oddeven().args(["--prec", "32", "compute", "--kind", "oe", "--n-max", "5"]).assert().failure();
    oddeven().args(["gf-eval", "--eps-grid", "0.001"]).assert().failure();
    oddeven().args(["ratio", "--kind", "oe", "--n", "0"]).assert().failure();
}

#[test]
fn precision_from_environment() {
    let out = oddeven().env("ODDEVEN_PRECISION", "16").args(["ratio", "--kind", "oe", "--n", "10"]).output().unwrap();
    assert!(!out.status.success());
    let out = oddeven().env("ODDEVEN_PRECISION", "80").args(["ratio", "--kind", "oe", "--n", "10"]).output().unwrap();
    assert!(out.status.success());
}

#[test]
fn verify_identities_passes() {
    let out = oddeven().args(["verify", "--suite", "identities", "--order", "200"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
    assert!(text.contains("rogers_ramanujan"));
}

#[test]
fn verify_asymptotics_passes() {
    oddeven().args(["--prec", "128", "verify", "--suite", "asymptotics"]).assert().success();
}

#[test]
fn verify_failure_sets_exit_code() {
    let out = oddeven().args(["verify", "--suite", "identities", "--order", "30", "--inject-fault"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ratio_rows() {
    let text = stdout_of(&["--format", "json", "ratio", "--kind", "oe", "--n", "100,1000"]);
    let rows: serde_json::Value = serde_json::from_str(&text).unwrap();
    let r: Vec<f64> = rows.as_array().unwrap().iter().map(|r| r["ratio"].as_f64().unwrap()).collect();
    assert!((r[1] - 1.0).abs() < (r[0] - 1.0).abs());
    let single = stdout_of(&["ratio", "--kind", "oebar", "--n", "4"]);
    assert!(single.lines().nth(1).unwrap().starts_with("4,2,"));
}

#[test]
fn gf_eval_rows() {
    let text = stdout_of(&["--prec", "128", "--format", "json", "gf-eval"]);
    let rows: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let full: Vec<f64> = rows.iter().filter(|r| r["branch"] == "full").map(|r| r["ratio"].as_f64().unwrap()).collect();
    assert!(full.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs()));
}

#[test]
fn circle_report_and_warning() {
    let text = stdout_of(&["--prec", "80", "--format", "json", "circle", "--n", "100"]);
    let r: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["recovered_coefficient"], r["exact_coefficient"]);
    assert_eq!(r["M"], 6.0);
    assert!(r["empirical_max"].as_f64().unwrap() <= r["minor_bound"].as_f64().unwrap());

    let text = stdout_of(&["--prec", "80", "--format", "json", "circle", "--n", "400"]);
    let r4: serde_json::Value = serde_json::from_str(&text).unwrap();
    let dev = |v: &serde_json::Value| (v["ratio"].as_f64().unwrap() - 1.0).abs();
    assert!(dev(&r4) < dev(&r));
    assert!(r4["recovered_coefficient"].is_null());

    let out = oddeven().args(["--prec", "80", "circle", "--n", "100", "--M", "1"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("below the threshold"));
}

#[test]
fn output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        oddeven()
            .args(["--format", "json", "--output", p.to_str().unwrap(), "ratio", "--kind", "oebar", "--n", "50,200"])
            .assert()
            .success()
            .stdout("");
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
