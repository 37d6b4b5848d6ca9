use std::process::{Command, Output};

fn gcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn spectrum_csv_for_c3() {
    let o = gcm(&["spectrum", "--group", "C3", "--m", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "6,1\n0,6\n-3,2\n");
}

#[test]
fn non_abelian_spectrum_reports_lambda_min() {
    let o = gcm(&["spectrum", "--group", "S3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["exact"], false);
    assert!((v["lambda_min"].as_f64().unwrap() + 3.0).abs() < 1e-6);
    let csv = gcm(&["spectrum", "--group", "S3", "--m", "2", "--format", "csv"]);
    assert_eq!(csv.status.code(), Some(2));
}

#[test]
fn aut_orders_for_s3() {
    let o = gcm(&["aut", "--group", "S3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in ["predicted", "generated", "canonical"] {
        assert_eq!(v[key], "1296", "{key}");
    }
    assert_eq!(v["match"], true);
}

#[test]
fn aut_mismatch_exits_one() {
    let o = gcm(&["aut", "--group", "C2xC2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["generated"], "576");
    assert_eq!(v["canonical"], "1152");
    assert_eq!(v["match"], false);
}

#[test]
fn shipped_identity_and_perturbation() {
    assert_eq!(gcm(&["verify-identity"]).status.code(), Some(0));
    let o = gcm(&["verify-identity", "--perturb", "3", "-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["holds"], false);
}

#[test]
fn identity_from_file() {
    let dir = std::env::temp_dir().join(format!("gcm-fixture-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("example23.json");
    std::fs::write(&path, gcm::fixture::EXAMPLE_FIXTURE).unwrap();
    let o = gcm(&["verify-identity", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gcm(&["spectrum", "--group", "C3"]).status.code(), Some(2));
    assert_eq!(
        gcm(&["spectrum", "--group", "C3", "--m", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gcm(&["spectrum", "--group", "Z9", "--m", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(gcm(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        gcm(&["build", "--group", "C3", "--m", "2", "--cap-ir", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn table_groups_are_accepted() {
    let dir = std::env::temp_dir().join(format!("gcm-table-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z3.csv");
    std::fs::write(&path, "0,1,2\n1,2,0\n2,0,1\n").unwrap();
    let spec = format!("table:{}", path.display());
    let o = gcm(&["iso", "--group", &spec, "--m", "2", "--with", "C3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["graphs_isomorphic"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn regularity_and_cliques() {
    let o = gcm(&["regularity", "--group", "C4", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["degree"], 18);
    let o = gcm(&["cliques", "--group", "C2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["clique_number"], 4);
}

#[test]
fn trace_rank_and_express() {
    let o = gcm(&["trace-rank", "--group", "C3", "--m", "3"]);
    assert_eq!(json(&o)["rank"], 27);
    let o = gcm(&[
        "express", "--group", "C3", "--m", "3", "--target", "(e,e,e)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["feasible"], true);
    let o = gcm(&["express", "--group", "C3", "--m", "2", "--target", "(e,e)"]);
    assert_eq!(json(&o)["feasible"], false);
}

#[test]
fn build_outputs_and_determinism() {
    let dot = gcm(&["build", "--group", "C2", "--m", "2", "--format", "dot"]);
    let text = stdout(&dot);
    assert!(text.starts_with("graph "));
    assert_eq!(text.matches(" -- ").count(), 6);
    let csv = gcm(&["build", "--group", "C2", "--m", "2", "--format", "csv"]);
    assert_eq!(stdout(&csv), "0,1,1,1\n1,0,1,1\n1,1,0,1\n1,1,1,0\n");
    let a = gcm(&["probe-q26", "--group", "S3", "--m", "3", "--seed", "7"]);
    let b = gcm(&["probe-q26", "--group", "S3", "--m", "3", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("gcm-out-{}.csv", std::process::id()));
    let o = gcm(&[
        "spectrum",
        "--group",
        "C2",
        "--m",
        "2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "3,1\n-1,3\n");
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn exceptional_orders_come_from_the_search() {
    let o = gcm(&["aut", "--group", "C3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["canonical"], "1296");
    assert_eq!(v["predicted"], "1296");
    assert!(v["generated"].is_null());
    // no formula for this exponent-2 case: only the search reports an order
    let o = gcm(&["aut", "--group", "C2xC2", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["canonical"], "9216");
    assert!(v["match"].is_null());
}
