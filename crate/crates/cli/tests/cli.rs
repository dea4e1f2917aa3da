use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.json"));
    p.to_str().unwrap().to_string()
}

fn tjr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tjr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, body: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_reports_the_jr_witness() {
    let out = tjr(&[
        "check",
        "--election",
        &corpus("E1"),
        "--picks",
        "a,a,a,a",
        "--axiom",
        "JR",
        "--witness",
    ]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["group"], serde_json::json!([4, 5, 6]));
}

#[test]
fn check_designated_outcome_holds() {
    let e6 = corpus("E6");
    let out = tjr(&["check", "--election", &e6, "--outcome", &e6, "--axiom", "sCore"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn usage_errors_exit_2() {
    let e6 = corpus("E6");
    assert_eq!(
        code(&tjr(&[
            "check",
            "--election",
            &e6,
            "--outcome",
            &e6,
            "--axiom",
            "EJR++"
        ])),
        2
    );
    assert_eq!(
        code(&tjr(&["check", "--election", &e6, "--picks", "a,a", "--axiom", "EJR"])),
        2
    );
    assert_eq!(
        code(&tjr(&[
            "check",
            "--election",
            "/nonexistent.json",
            "--picks",
            "a",
            "--axiom",
            "EJR"
        ])),
        2
    );
    assert_eq!(
        code(&tjr(&["solve", "--election", &e6, "--rule", "sdr", "--epsilon", "1/8"])),
        2
    );
    assert_eq!(
        code(&tjr(&[
            "solve",
            "--election",
            &e6,
            "--rule",
            "lspav",
            "--epsilon",
            "1/0"
        ])),
        2
    );
    assert_eq!(code(&tjr(&["probe", "--axiom", "JR"])), 2);
}

#[test]
fn solve_sdr_on_e0() {
    let out = tjr(&["solve", "--election", &corpus("E0"), "--rule", "sdr", "--trace"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["picks"], serde_json::json!(["a", "a", "a", "b", "b", "b"]));
    assert_eq!(v["trace"]["dictators"], serde_json::json!([1, 2, 3, 4, 5, 6]));
}

#[test]
fn solve_lspav_on_unanimous_election() {
    let path = scratch(
        "unanimous.json",
        r#"{"candidates": ["a", "b"], "voters": 2, "rounds": 3,
            "approvals": [[["a"], ["a"], ["a"]], [["a"], ["a"], ["a"]]]}"#,
    );
    let out = tjr(&["solve", "--election", &path, "--rule", "lspav"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["picks"], serde_json::json!(["a", "a", "a"]));
}

#[test]
fn sdr_rejects_empty_ballots() {
    let path = scratch(
        "general.json",
        r#"{"candidates": ["a", "b"], "voters": 2, "rounds": 2,
            "approvals": [[["a"], ["b"]], [["a"], []]]}"#,
    );
    let out = tjr(&["solve", "--election", &path, "--rule", "sdr"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("voter 2") && err.contains("round 2"), "{err}");
}

#[test]
fn enumerate_finds_no_sjr_outcome() {
    let out = tjr(&[
        "enumerate",
        "--election",
        &corpus("sjr_unsatisfiable"),
        "--axiom",
        "sJR",
    ]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["found"].is_null());
}

#[test]
fn enumerate_all_reports_a_failure() {
    let out = tjr(&[
        "enumerate",
        "--all",
        "--election",
        &corpus("E1"),
        "--axiom",
        "JR",
        "--witness",
    ]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["failure"]["report"]["witness"]["group"].is_array());
}

#[test]
fn tiny_work_budget_exits_3() {
    let out = tjr(&[
        "--max-work",
        "10",
        "enumerate",
        "--election",
        &corpus("sjr_unsatisfiable"),
        "--axiom",
        "sJR",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn corpus_verifies() {
    let out = tjr(&["corpus", "verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["results"].as_array().unwrap().len(), 27);
    assert_eq!(code(&tjr(&["corpus", "verify", "nope"])), 2);
    let listed = json(&tjr(&["corpus", "list"]));
    assert_eq!(listed.as_array().unwrap().len(), 12);
}

#[test]
fn probe_finds_no_counterexample() {
    let out = tjr(&[
        "probe",
        "--axiom",
        "sFJR",
        "--implies",
        "sEJR",
        "--trials",
        "500",
        "--seed",
        "11",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["trials"], 500);
    assert!(v["counterexample"].is_null());
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["probe", "--trials", "200", "--seed", "3"],
        vec!["solve", "--election", "", "--rule", "gcr", "--trace"],
    ];
    let e5 = corpus("E5");
    for args in runs {
        let args: Vec<&str> = args
            .iter()
            .map(|a| if a.is_empty() { e5.as_str() } else { a })
            .collect();
        let (a, b) = (tjr(&args), tjr(&args));
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn reported_witnesses_replay() {
    let cases = [
        ("E1", "JR"),
        ("E3", "wPJR"),
        ("E4", "wFPJR"),
        ("E5", "wCore"),
        ("E6", "wEJR+"),
        ("E7", "wFJR"),
        ("E8", "wEJR+"),
        ("E9", "EJR"),
        ("E0", "wEJR"),
        ("droop_gap", "Droop-EJR"),
    ];
    for (entry, axiom) in cases {
        let path = corpus(entry);
        let out = tjr(&[
            "check",
            "--election",
            &path,
            "--outcome",
            &path,
            "--axiom",
            axiom,
            "--witness",
        ]);
        assert_eq!(code(&out), 1, "{entry} {axiom}");
        let w = scratch(
            &format!("{entry}-witness.json"),
            std::str::from_utf8(&out.stdout).unwrap(),
        );
        let replayed = tjr(&[
            "check",
            "--election",
            &path,
            "--outcome",
            &path,
            "--axiom",
            axiom,
            "--replay",
            &w,
        ]);
        assert_eq!(
            code(&replayed),
            0,
            "{entry} {axiom}: {}",
            String::from_utf8_lossy(&replayed.stdout)
        );
    }
}

#[test]
fn human_output_is_plain_text() {
    let e7 = corpus("E7");
    let out = tjr(&[
        "--human",
        "check",
        "--election",
        &e7,
        "--outcome",
        &e7,
        "--axiom",
        "sFPJR",
    ]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("sFPJR holds on ("));
}
