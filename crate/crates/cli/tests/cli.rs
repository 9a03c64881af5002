use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clutterforge"))
        .args(args)
        .env_remove("CLUTTERFORGE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn field_tables() {
    let o = run(&["field", "--q", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("modulus x^2 + x + 1"));
    assert!(text.contains("a | a b 0 1"), "{text}");
    assert!(text.contains("a | 0 a b 1"), "{text}");
    let o = run(&["field", "--q", "6"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn analyze_example_space() {
    let o = run(&["analyze", path(&data("ex92.json")), "--ideal", "--minors"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("mult(S): 16 members on 12 elements"));
    assert!(text.contains("IDEAL (") && !text.contains("NOT IDEAL"), "{text}");
    assert!(text.contains("Q6 minor: I="), "{text}");
    assert!(text.contains("Delta3 minor: none"), "{text}");
}

#[test]
fn analyze_reports_delta3() {
    let o = run(&["analyze", path(&data("delta3.txt")), "--minors", "--ideal"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("Delta3 minor: I="), "{text}");
    assert!(text.contains("NOT IDEAL"), "{text}");
}

#[test]
fn malformed_input_is_a_parse_error() {
    let o = run(&["analyze", path(&data("bad.txt"))]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3, column 3"), "{err}");
}

#[test]
fn exhausted_budget_gives_unknown() {
    let o = run(&["--budget", "10", "analyze", path(&data("ex92.json")), "--minors"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("UNKNOWN"));
    let o = Command::new(env!("CARGO_BIN_EXE_clutterforge"))
        .args(["analyze", path(&data("ex92.json")), "--minors"])
        .env("CLUTTERFORGE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certificates_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("r11.json");
    let o = run(&["analyze", path(&data("r11.txt")), "--mfmc", "--theorem", "1.4", "--cert-out", cert.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("MFMC VIOLATED (tau = 2 > nu = 1"));
    let o = run(&["--check-cert", cert.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().count() >= 3 && text.lines().all(|l| l.ends_with("valid")), "{text}");

    // a tampered claim must be rejected
    let json = std::fs::read_to_string(&cert).unwrap().replacen("\"nu\": 1", "\"nu\": 2", 1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, json).unwrap();
    let o = run(&["--check-cert", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("INVALID"));
}

#[test]
fn c5sq_witness_replays() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c5.json");
    let o = run(&["witness", "c5sq", path(&data("zero_sum_gf8.json")), "--alpha", "1,0,0", "--cert-out", cert.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("result: 5 members on 5 elements"), "{text}");
    let matrix_rows = text
        .lines()
        .filter(|l| {
            let cells: Vec<&str> = l.split_whitespace().collect();
            cells.len() == 7 && cells.iter().all(|c| *c == "0" || *c == "1")
        })
        .count();
    assert_eq!(matrix_rows, 5);
    let o = run(&["--check-cert", cert.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("MinorChain valid"));
    let o = run(&["witness", "c5sq", path(&data("zero_sum_gf8.json")), "--alpha", "1,1,0"]);
    assert_eq!(o.status.code(), Some(1), "alpha inside S is rejected");
}

#[test]
fn theorem_at_gf8_labels_derivation() {
    let o = run(&["--json", "analyze", path(&data("zero_sum_gf8.json")), "--theorem", "1.3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["theorem"]["agreement"], "Agree");
    let method = v["theorem"]["conditions"][0]["method"].as_str().unwrap();
    assert!(method.starts_with("derived"), "{method}");
}

#[test]
fn sweep_is_deterministic_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "4"] {
        let out = dir.path().join(format!("s{jobs}.csv"));
        let o = run(&["sweep", "--q", "3", "--n", "3", "--theorem", "1.1", "--jobs", jobs, "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(stdout(&o).contains("28 subspaces, 28 agree, 0 incomplete (0 unknown verdicts), 0 disagree"));
        outputs.push(std::fs::read_to_string(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let rows: Vec<&str> = outputs[0].lines().collect();
    assert!(rows[0].starts_with('#'));
    assert_eq!(rows.len(), 2 + 28);
    assert!(rows[2..].iter().all(|r| r.contains(",agree,")));
}

#[test]
fn sweep_over_gf4_second_theorem() {
    let o = run(&["--json", "sweep", "--q", "4", "--n", "3", "--theorem", "1.2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["subspaces"], 44);
    assert_eq!(v["disagree"], 0);
}

#[test]
fn sweep_rejects_bad_fields() {
    let o = run(&["sweep", "--q", "6", "--n", "2", "--theorem", "1.1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a prime power"));
    let o = run(&["sweep", "--q", "4", "--n", "2", "--theorem", "1.1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn localizations_and_matroid() {
    let o = run(&["localize", path(&data("ex92.json")), "--all"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("localizations: 64 ideal, 0 not ideal"));
    let o = run(&["localize", path(&data("ex92.json")), "--alpha", "1,0,0"]);
    assert!(stdout(&o).contains("components of size-2 members: 1"));
    let o = run(&["matroid", path(&data("delta3.txt")), "--minor", "a3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("A3 minor: delete"));
    let o = run(&["matroid", path(&data("r11.txt")), "--minor", "u24"]);
    assert!(stdout(&o).contains("U24 minor: none"));
}
