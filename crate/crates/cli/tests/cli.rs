use std::io::Write;
use std::process::{Command, Output, Stdio};

fn squares(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squares"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn squares_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_squares"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn roots(json: &str) -> Vec<String> {
    let value: serde_json::Value = serde_json::from_str(json).unwrap();
    let mut roots: Vec<String> = value["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap().to_string())
        .collect();
    roots.sort_by_key(|r| (r.len(), r.clone()));
    roots
}

#[test]
fn gen_method2_five_squares() {
    let out = squares(&["gen", "--n", "5", "--method", "2", "--params", "1,2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"3023249\""));
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["n"], 5);
    assert_eq!(value["reduced"], true);
    assert!(value["s"].is_string());
}

#[test]
fn gen_method1_six_squares() {
    let out = squares(&["gen", "--n", "6", "--method", "1", "--t", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(
        roots(&stdout(&out)),
        [
            "15095604154947000",
            "37271037420836643",
            "43162876561115524",
            "252608637530397000",
            "492116002633350000",
            "669794768570400000",
        ]
    );
}

#[test]
fn gen_rejects_degenerate_and_bad_input() {
    let out = squares(&["gen", "--n", "5", "--method", "1", "--t", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!stderr(&out).is_empty());
    let out = squares(&["gen", "--n", "5", "--method", "2", "--params", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = squares(&["gen", "--n", "9", "--method", "2", "--params", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = squares(&["gen", "--n", "5", "--method", "2", "--t", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = squares(&["gen", "--n", "5", "--method", "3", "--t", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_output_verifies() {
    for args in [
        ["gen", "--n", "5", "--method", "1", "--t", "3"],
        ["gen", "--n", "7", "--method", "2", "--params", "2,1"],
    ] {
        let generated = stdout(&squares(&args));
        let out = squares_with_stdin(&["verify"], &generated);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
}

#[test]
fn verify_reports_planted_fault() {
    let generated = stdout(&squares(&["gen", "--n", "5", "--method", "2", "--params", "1,2"]));
    let edited = generated.replacen("\"3023249\"", "\"3023250\"", 1);
    let out = squares_with_stdin(&["verify"], &edited);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("root"));
}

#[test]
fn verify_repeats_need_flag() {
    let repeated = r#"{"n":5,"roots":["2","2","2","2","2"],"certificates":["4","4","4","4","4"],"s":"20"}"#;
    assert_eq!(squares_with_stdin(&["verify"], repeated).status.code(), Some(1));
    assert_eq!(
        squares_with_stdin(&["verify", "--allow-repeats"], repeated).status.code(),
        Some(0)
    );
    // Plain numbers and a missing `s` are accepted too.
    let bare = r#"{"roots":[240,240,240,33,156]}"#;
    assert_eq!(
        squares_with_stdin(&["verify", "--allow-repeats"], bare).status.code(),
        Some(0)
    );
}

#[test]
fn verify_rejects_malformed_json() {
    assert_eq!(squares_with_stdin(&["verify"], "{not json").status.code(), Some(3));
    assert_eq!(
        squares_with_stdin(&["verify"], r#"{"roots":["1.5"]}"#).status.code(),
        Some(3)
    );
    assert_eq!(squares(&["verify", "/nonexistent/file.json"]).status.code(), Some(3));
}

#[test]
fn verify_reads_file() {
    let dir = std::env::temp_dir().join(format!("squares-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("system.json");
    let generated = stdout(&squares(&["gen", "--n", "6", "--method", "2", "--params", "1,2"]));
    std::fs::write(&path, generated).unwrap();
    let out = squares(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_commands() {
    let out = squares(&["catalog", "list"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().count() >= 3);

    let out = squares(&["catalog", "eval", "n6-method2-deg38", "--params", "1,2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(
        roots(&stdout(&out)),
        [
            "3039928895652",
            "3205366606047",
            "3341350001384",
            "3520435290636",
            "4996634759436",
            "5429263880052",
        ]
    );

    let out = squares(&["catalog", "cross-check", "n5-method2-deg30"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "OK (10 points)");

    assert_eq!(squares(&["catalog", "eval", "nope", "--t", "2"]).status.code(), Some(2));
    assert_eq!(squares(&["catalog", "cross-check", "nope"]).status.code(), Some(2));
}

#[test]
fn sweep_method1_lines_verify() {
    let out = squares(&["sweep", "--n", "5", "--method", "1", "--from", "2", "--to", "20"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 19);
    for line in lines {
        assert_eq!(squares_with_stdin(&["verify"], line).status.code(), Some(0));
    }
}

#[test]
fn sweep_method2_skips_and_verifies() {
    let out = squares(&["sweep", "--n", "6", "--method", "2", "--from", "2", "--to", "10"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for line in text.lines() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(value["params"].is_array());
        assert_eq!(squares_with_stdin(&["verify"], line).status.code(), Some(0));
    }
    let emitted = text.lines().count();
    let skipped = stderr(&out).lines().filter(|l| l.starts_with("skip")).count();
    // Coprime pairs with positive entries and sum at most 10.
    assert_eq!(emitted + skipped, 31);
    assert!(emitted > 0);
}

#[test]
fn sweep_is_deterministic() {
    let args = ["sweep", "--n", "7", "--method", "2", "--from", "2", "--to", "9"];
    let sequential = squares(&args);
    let mut parallel_args = args.to_vec();
    parallel_args.push("--parallel");
    let parallel = squares(&parallel_args);
    assert!(sequential.status.success() && parallel.status.success());
    assert_eq!(sequential.stdout, parallel.stdout);
    assert_eq!(sequential.stderr, parallel.stderr);
    assert_eq!(squares(&args).stdout, sequential.stdout);
}

#[test]
fn empty_sweep() {
    let out = squares(&["sweep", "--n", "5", "--method", "1", "--from", "5", "--to", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}
