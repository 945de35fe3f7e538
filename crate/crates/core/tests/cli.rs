use std::process::{Command, Output};

fn homcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homcat")).args(args).env_remove("HOMCAT_THREADS").output().unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn rows(out: &Output) -> Vec<serde_json::Value> {
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    v["rows"].as_array().unwrap().clone()
}

#[test]
fn colour_two_unknot_rows() {
    let out = homcat(&["eval-braid", "--colours", "2", "--word", "", "--qmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&out);
    let first = &r[0];
    assert_eq!((first["h2"].as_i64(), first["hh2"].as_i64(), first["q2"].as_i64(), first["dim"].as_u64()), (Some(0), Some(-4), Some(8), Some(1)));
    assert_eq!(r.len(), 6);
}

#[test]
fn cancelling_pair_matches_identity_closure() {
    let a = homcat(&["eval-braid", "--colours", "1,1", "--word", "1,-1", "--qmax", "4"]);
    let b = homcat(&["eval-braid", "--colours", "1,1", "--word", "", "--qmax", "4"]);
    assert_eq!(rows(&a), rows(&b));
}

#[test]
fn tsv_is_deterministic() {
    let args = ["eval-braid", "--colours", "2,2", "--word", "1,1", "--qmax", "3", "--format", "tsv"];
    let (a, b) = (homcat(&args), homcat(&args));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.lines().any(|l| l == "h2\thh2\tq2\tdim"));
}

#[test]
fn bracket_modes() {
    for mode in ["bracket", "normalized-bracket", "h12"] {
        let out = homcat(&["eval-braid", "--colours", "1,1", "--word", "1", "--qmax", "3", "--mode", mode]);
        assert_eq!(out.status.code(), Some(0), "{mode}");
        assert!(!rows(&out).is_empty(), "{mode}");
    }
}

#[test]
fn input_errors() {
    let out = homcat(&["eval-braid", "--colours", "1,1", "--word", "1,z"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("'z'"));
    assert_eq!(homcat(&["eval-braid", "--colours", "2", "--qmax", "0"]).status.code(), Some(3));
    assert_eq!(homcat(&["eval-braid", "--colours", "1,2", "--word", "1"]).status.code(), Some(2));
    let out = homcat(&["eval-web", &fixture("invalid_label5.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("slice 0"));
}

#[test]
fn identity_web_is_the_unknot() {
    let web = homcat(&["eval-web", &fixture("identity_1.json"), "--qmax", "4"]);
    assert_eq!(web.status.code(), Some(0));
    let braid = homcat(&["eval-braid", "--colours", "1", "--qmax", "4"]);
    let from_web: Vec<_> = rows(&web).iter().map(|r| (r["hh2"].as_i64(), r["q2"].as_i64(), r["dim"].as_u64())).collect();
    let from_braid: Vec<_> = rows(&braid).iter().map(|r| (r["hh2"].as_i64(), r["q2"].as_i64(), r["dim"].as_u64())).collect();
    assert_eq!(from_web, from_braid);
}

#[test]
fn verify_exit_codes() {
    let out = homcat(&["verify", "a2", "--qmax", "8", "--threads", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let out = homcat(&["verify", "lemmas", "--qmax", "8"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report[0]["status"], "fail");
}
