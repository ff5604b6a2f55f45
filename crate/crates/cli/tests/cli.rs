use std::io::Write;
use std::process::{Command, Output, Stdio};

fn exalg(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_exalg"))
        .args(args)
        .env_remove("EXALG_PRIME")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("exalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn construct_into_betti() {
    let m = stdout(&exalg(&["construct", "mxi", "--n", "2", "--xi", "1,0,0"], None));
    let table = stdout(&exalg(&["betti", "-", "--depth", "6"], Some(&m)));
    let total = table.lines().find(|l| l.trim_start().starts_with("total:")).unwrap();
    assert_eq!(total.trim_start().trim_start_matches("total:").trim(), "1 1 1 1 1 1 1");
}

#[test]
fn ext_of_mxi_with_itself() {
    let m = stdout(&exalg(&["construct", "mxi", "--n", "2"], None));
    let a = tmp("mxi_a.json", &m);
    let b = tmp("mxi_b.json", &m);
    assert_eq!(stdout(&exalg(&["ext", &a, &b, "-k", "1"], None)).trim(), "2");
    assert_eq!(stdout(&exalg(&["hom", &a, &b], None)).trim(), "1");
}

#[test]
fn verify_small_suite() {
    let out = stdout(&exalg(&["verify", "--suite", "lemma2.1", "--n", "2"], None));
    assert!(out.contains("lemma2.1.stable_hom_table  expected [0,0,1,2,1,0,0]"), "{out}");
    assert!(out.contains("0 failed"));
}

#[test]
fn verify_json_is_deterministic() {
    let args = ["verify", "--suite", "all", "--n", "2", "--json"];
    let a = exalg(&args, None);
    let b = exalg(&args, None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["p"], 32003);
}

#[test]
fn pipeline_matches_in_process() {
    let m = stdout(&exalg(&["construct", "pd", "--n", "2", "--d", "2"], None));
    let via_cli = stdout(&exalg(&["syzygy", "-", "-k", "2"], Some(&m)));
    let p = exalg::constructions::build_p_inductive(exalg::Fp::default_field(), 3, 2, 0).unwrap();
    let direct = exalg::modfile::to_json(&exalg::homology::syzygy(&p, 2));
    assert_eq!(via_cli, direct);
}

#[test]
fn exit_codes_and_diagnostics() {
    assert_eq!(exalg(&["betti"], None).status.code(), Some(2));
    assert_eq!(exalg(&["verify", "--suite", "nope"], None).status.code(), Some(2));
    let bad = r#"{"version":"1","p":32003,"n_plus_1":2,"min_deg":0,"max_deg":2,
        "dims":{"0":1,"1":1,"2":1},"actions":[{"0":[[1]],"1":[[1]]},{"0":[[1]],"1":[[1]]}]}"#;
    let o = exalg(&["validate", "-"], Some(bad));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("square-zero"));
    let o = exalg(&["betti", "-"], Some("{\"version\": 1}"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn modulus_mismatch_is_rejected() {
    let a = tmp("p7.json", &stdout(&exalg(&["construct", "mxi", "--n", "1"], None)));
    let seven = Command::new(env!("CARGO_BIN_EXE_exalg"))
        .args(["construct", "mxi", "--n", "1"])
        .env("EXALG_PRIME", "7")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&seven.stdout).contains("\"p\": 7"));
    let b = tmp("p7b.json", &String::from_utf8(seven.stdout).unwrap());
    let o = exalg(&["hom", &a, &b], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("modulus mismatch"));
}

#[test]
fn shift_round_trip() {
    let m = stdout(&exalg(&["construct", "kron", "--i", "-2", "--j", "1"], None));
    let s = stdout(&exalg(&["shift", "-", "-i", "-3"], Some(&m)));
    let back = stdout(&exalg(&["shift", "-", "-i", "3"], Some(&s)));
    assert_eq!(back, m);
}
