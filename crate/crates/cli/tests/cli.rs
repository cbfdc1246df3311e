use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nekrasov(args: &[&str], threads: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nekrasov"));
    c.args(args);
    match threads {
        Some(t) => c.env("NEKRASOV_THREADS", t),
        None => c.env_remove("NEKRASOV_THREADS"),
    };
    c.output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/v1")
        .join(name)
}

/// Compares stdout with a stored report; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let out = nekrasov(args, None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = fixture(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing fixture {}", path.display()));
    assert_eq!(String::from_utf8_lossy(&out.stdout), want, "{name} drifted");
}

#[test]
fn golden_partition_functions() {
    golden(
        "compute-z_r1_o3_exact.json",
        &["compute-z", "--rank", "1", "--order", "3", "--mode", "exact"],
    );
    golden(
        "compute-z_r2_o2_exact.json",
        &["compute-z", "--rank", "2", "--order", "2", "--mode", "exact"],
    );
    golden(
        "compute-z_r2_o2_randomized.json",
        &["compute-z", "--rank", "2", "--order", "2", "--seed", "7"],
    );
}

#[test]
fn golden_special_series() {
    golden("qseries_eta_o12.json", &["qseries", "eta", "--order", "12"]);
    golden(
        "qseries_theta-deriv_o12.json",
        &["qseries", "theta-deriv", "--order", "12"],
    );
}

#[test]
fn full_suite_passes_and_is_thread_independent() {
    let args = ["all", "--rank", "2", "--order", "2", "--seed", "7"];
    let one = nekrasov(&args, Some("1"));
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stdout));
    let four = nekrasov(&args, Some("4"));
    assert_eq!(one.stdout, four.stdout);
    let rep = json_of(&one);
    assert_eq!(rep["pass"], true);
    assert!(rep["checks"].as_array().unwrap().len() > 20);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nekrasov(&["all", "--bogus"], None).status.code(), Some(2));
    assert_eq!(
        nekrasov(&["compute-z", "--rank", "4", "--order", "1"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nekrasov(&["compute-z", "--rank", "2", "--order", "6"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nekrasov(&["verify-blowup", "--rank", "2", "--k", "2", "--order", "1"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nekrasov(&["verify-blowup", "--rank", "2", "--order", "x/y"], None)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn blowup_report_carries_d0_normalization() {
    let out = nekrasov(
        &["verify-blowup", "--rank", "2", "--k", "1", "--d", "0", "--order", "5/4"],
        None,
    );
    assert!(out.status.success());
    let rep = json_of(&out);
    let check = &rep["checks"][0];
    assert_eq!(check["id"], "blowup-k1-d0");
    let exp = &check["details"]["expected"];
    assert_eq!(exp["q_exponent"], "1/4");
    // 𝔮^{1/4}(t₁t₂)^{−1/4}: no (t₁t₂)^{k(r−k)/2} factor at d = 0
    assert_eq!(
        exp["prefactor"]["unit"],
        serde_json::json!({ "t1": "-1/4", "t2": "-1/4" })
    );
    let vanishing = json_of(&nekrasov(
        &["verify-blowup", "--rank", "2", "--k", "1", "--d", "1", "--order", "5/4"],
        None,
    ));
    assert_eq!(vanishing["checks"][0]["details"]["expected"], "vanishing");
}

#[test]
fn recursion_at_rank_one_is_skipped() {
    let out = nekrasov(
        &["solve-recursion", "--rank", "1", "--order", "2", "--format", "text"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("SKIP"));
}

#[test]
fn bench_emits_csv() {
    let out = nekrasov(&["bench", "--ranks", "2", "--max-n", "2", "--threads", "1,2"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header = rows.headers().unwrap().clone();
    assert_eq!(&header[0], "rank");
    let recs: Vec<_> = rows.records().map(|r| r.unwrap()).collect();
    assert_eq!(recs.len(), 2);
    assert!(recs.iter().all(|r| &r[6] == "true"));
}
