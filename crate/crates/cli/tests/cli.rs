use std::io::Write;
use std::process::{Command, Output, Stdio};

fn polyiter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyiter"))
        .args(args)
        .env_remove("POLYITER_ENUM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn verify_identity_target() {
    let out = polyiter(&["verify", "--field", "Q", "--r", "2", "--poly", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["passed"], true);
    assert_eq!(report["key_congruence"]["iterate_degree"], 9);
    let checks = report["lemmas"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true));
    assert!(checks
        .iter()
        .any(|c| c["name"] == "derivative_at_orbit[k=1]"));
}

#[test]
fn verify_over_prime_field() {
    let out = polyiter(&["verify", "--field", "Fp:5", "--r", "3", "--poly", "1,0,1"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn word_power() {
    let out = polyiter(&["word", "--word", "x1^2 x2^3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["power"], 5);
}

#[test]
fn word_delegates_to_power() {
    let out = polyiter(&["word", "--word", "x2x2", "--poly", "3,1", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["key_congruence"]["r"], 2);
}

#[test]
fn census_row() {
    let out = polyiter(&["census", "--q", "2", "--r", "2", "--d", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "q,r,d,count,total,ratio_num,ratio_den,bound\n2,2,4,6,32,3,16,8\n"
    );
}

#[test]
fn census_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_polyiter"))
        .args(["census", "--q", "3", "--d", "16"])
        .env("POLYITER_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let ok = polyiter(&["census", "--q", "3", "--d", "16", "--limit", "1000"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn construct_round_trip() {
    let args = [
        "construct",
        "--field",
        "Q",
        "--r",
        "3",
        "--poly",
        "1,-2,1/3",
    ];
    let first = polyiter(&args);
    let second = polyiter(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "outputs are byte-identical");

    let mut child = Command::new(env!("CARGO_BIN_EXE_polyiter"))
        .args(["verify", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&first.stdout)
        .unwrap();
    let verified = child.wait_with_output().unwrap();
    assert_eq!(verified.status.code(), Some(0));
    assert_eq!(json(&verified)["passed"], true);
}

#[test]
fn tampered_document_fails_verification() {
    let built = polyiter(&["construct", "--r", "2", "--poly", "0,1", "--no-residual"]);
    let mut doc = json(&built);
    doc["p"]["coeffs"][0]["terms"][0][1] = "2".into();
    let path = std::env::temp_dir().join(format!("polyiter-tampered-{}.json", std::process::id()));
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = polyiter(&["verify", "--input", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--field", "Fp:4", "--r", "2", "--poly", "1"],
        vec!["verify", "--r", "2", "--poly", "1,x"],
        vec!["verify", "--poly", "1"],
        vec!["word", "--word", ""],
        vec!["construct", "--field", "Fp:2", "--r", "3", "--poly", "1"],
        vec![
            "approx", "--r", "2", "--poly", "0,1", "--place", "p:6", "--eps", "1/10",
        ],
    ] {
        let out = polyiter(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn approx_table_and_search() {
    let out = polyiter(&[
        "approx",
        "--r",
        "2",
        "--poly",
        "0,1",
        "--place",
        "inf",
        "--eps",
        "1/1000,1/10000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("epsilon,place,error_norm,ratio"));
    assert_eq!(lines.count(), 2);

    let out = polyiter(&[
        "approx",
        "--r",
        "2",
        "--poly",
        "1,0,1",
        "--places",
        "inf,p:3,p:5",
        "--eta",
        "1/100",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let res = json(&out);
    assert_eq!(res["base"], 15);
    assert_eq!(res["s"], 2);
    assert!(res["p_degree"].as_u64() <= res["degree_bound"].as_u64());
}

#[test]
fn negative_literals_are_accepted() {
    let out = polyiter(&["verify", "--r", "2", "--poly", "-1,2", "--anchors", "-3"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
