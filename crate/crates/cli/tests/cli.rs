use assert_cmd::Command;
use serde_json::Value;

fn mub() -> Command {
    let mut cmd = Command::cargo_bin("mub").unwrap();
    cmd.env_remove("MUB_DEFAULT_TOL");
    cmd
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let out = mub().args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, code)
}

fn records(v: &Value) -> &Vec<Value> {
    v["records"].as_array().unwrap()
}

#[test]
fn build_qubit_family() {
    let (v, code) = json_of(&["build", "--dim", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "mub-family/1");
    assert_eq!(v["recipe"], "DTwo");
    assert_eq!(v["bases"].as_array().unwrap().len(), 3);
}

#[test]
fn build_prime_family() {
    let (v, code) = json_of(&["build", "--dim", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["recipe"], "Prime");
    let bases = v["bases"].as_array().unwrap();
    assert_eq!(bases.len(), 8);
    for b in bases {
        assert_eq!(b["entries"].as_array().unwrap().len(), 7);
    }
}

#[test]
fn build_rejects_small_dimension() {
    mub().args(["build", "--dim", "1"]).assert().code(2);
}

#[test]
fn verify_range_passes() {
    let (v, code) = json_of(&["verify", "--dims", "2..30", "--tol", "1e-9"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "mub-report/1");
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["summary"]["total"].as_u64().unwrap() > 100);
}

#[test]
fn verify_even_negative_probe() {
    let (v, code) = json_of(&["verify", "--dims", "4", "--expect-negative", "r-squared"]);
    assert_eq!(code, 0);
    let recs = records(&v);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["check"], "negative.r_squared_not_hadamard");
    assert_eq!(recs[0]["anchor"], "Rem5.3");
}

#[test]
fn verify_rejects_bad_range() {
    mub().args(["verify", "--dims", "0..3"]).assert().code(2);
    mub().args(["verify", "--dims", "5..2"]).assert().code(2);
}

#[test]
fn gauss_identity_sweep() {
    let (v, code) = json_of(&["gauss", "identity", "--d", "3..99"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn gauss_even_sweep() {
    let (v, code) = json_of(&["gauss", "even", "--d", "2..100"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["total"], 50);
}

#[test]
fn gauss_reciprocity_negative_a() {
    let (v, code) = json_of(&["gauss", "reciprocity", "--a", "-4..4", "--d", "1..12"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn gauss_noncoprime_needs_flag() {
    mub()
        .args(["gauss", "identity", "--d", "9", "--l", "3"])
        .assert()
        .code(2);
    let (v, code) = json_of(&["gauss", "identity", "--d", "9", "--l", "3", "--allow-noncoprime"]);
    assert_eq!(code, 0);
    assert!(records(&v)
        .iter()
        .all(|r| r["check"] == "gauss.identity_probe"));
}

#[test]
fn gauss_trace_alias() {
    let (v, code) = json_of(&["gauss", "traceD", "--d", "3..15"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn seq_gauss_coprime_and_not() {
    let (v, code) = json_of(&["seq", "gauss", "--d", "11", "--k", "1..10"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["passed"], 10);

    let (v, code) = json_of(&["seq", "gauss", "--d", "9", "--k", "3"]);
    assert_eq!(code, 0);
    let detail = records(&v)[0]["detail"].as_str().unwrap();
    assert!(detail.starts_with("not bi-unimodular"), "{detail}");
}

#[test]
fn search_finds_gauss_orbit() {
    let (v, code) = json_of(&["search", "--d", "3", "--alphabet", "3"]);
    assert_eq!(code, 0);
    let recs = records(&v);
    let hits = recs.iter().find(|r| r["check"] == "search.hits").unwrap();
    assert!(hits["detail"].as_str().unwrap().starts_with("18 sequences"));
    assert!(recs.iter().any(|r| r["check"] == "search.gauss_orbit"));
}

#[test]
fn search_rejects_oversized_space() {
    mub()
        .args(["search", "--d", "9", "--alphabet", "12"])
        .assert()
        .code(2);
}

#[test]
fn csv_header() {
    let out = mub()
        .args(["--format", "csv", "gauss", "even", "--d", "2..8"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "check,anchor,inputs,deviation,tolerance,passed,elapsed_us,detail"
    );
    assert_eq!(lines.count(), 4);
}

#[test]
fn tolerance_from_environment() {
    let out = mub()
        .env("MUB_DEFAULT_TOL", "1e-3")
        .args(["gauss", "even", "--d", "4"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(records(&v)[0]["tolerance"], 1e-3);

    let out = mub()
        .env("MUB_DEFAULT_TOL", "1e-3")
        .args(["--tol", "1e-6", "gauss", "even", "--d", "4"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(records(&v)[0]["tolerance"], 1e-6);

    mub()
        .env("MUB_DEFAULT_TOL", "abc")
        .args(["gauss", "even", "--d", "4"])
        .assert()
        .code(2);
    mub()
        .args(["--tol", "-1", "gauss", "even", "--d", "4"])
        .assert()
        .code(2);
}

#[test]
fn tight_tolerance_fails_with_exit_one() {
    mub()
        .args(["--tol", "1e-300", "gauss", "even", "--d", "2..20"])
        .assert()
        .code(1);
}

#[test]
fn records_independent_of_parallelism() {
    let run = |p: &str| {
        let (v, code) = json_of(&["--no-timings", "--parallelism", p, "sweep", "--dims", "2..10"]);
        assert_eq!(code, 0);
        assert!(v.get("total_ms").is_none());
        v["records"].clone()
    };
    let one = run("1");
    assert_eq!(one, run("2"));
    assert!(one.as_array().unwrap().iter().all(|r| r.get("elapsed_us").is_none()));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    mub()
        .args(["--output", path.to_str().unwrap(), "seq", "square", "--d", "6"])
        .assert()
        .success()
        .stdout("");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["passed"], 1);
}
