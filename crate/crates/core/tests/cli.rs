use std::io::Write;
use std::process::{Command, Stdio};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ruzsa(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ruzsa"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn lines(values: impl IntoIterator<Item = u128>) -> String {
    values.into_iter().map(|v| format!("{v}\n")).collect()
}

fn fib(n: usize) -> String {
    let mut v = vec![0u128, 1];
    while v.len() < n {
        v.push(v[v.len() - 1] + v[v.len() - 2]);
    }
    lines(v)
}

#[test]
fn invariance_holds_for_fibonacci() {
    let run = ruzsa(&["hankel", "verify-invariance"], &fib(30));
    assert_eq!(run.code, 0, "{}", run.stderr);
}

#[test]
fn powers_of_two_violate_congruences() {
    let run = ruzsa(&["check", "congruences", "--format", "json"], &lines((0..12).map(|n| 1u128 << n)));
    assert_eq!(run.code, 1);
    let body: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert!(!body["violations"].as_array().unwrap().is_empty());
}

#[test]
fn detects_fibonacci_generating_function() {
    let run = ruzsa(&["rational", "detect", "--format", "json"], &fib(40));
    assert_eq!(run.code, 0, "{}", run.stderr);
    let body: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(body["rational"], true);
    assert_eq!(body["function"]["numerator"], "x");
    assert_eq!(body["function"]["denominator"], "1 − x − x²");
}

#[test]
fn polynomial_generation_feeds_the_audit() {
    let gen = ruzsa(&["gen", "poly", "--n", "40"], r#"["2", "-7", "0", "1"]"#);
    assert_eq!(gen.code, 0, "{}", gen.stderr);
    assert!(gen.stdout.starts_with("2\n-4\n-4\n8\n38\n"));
    let audit = ruzsa(&["audit", "--format", "json"], &gen.stdout);
    assert_eq!(audit.code, 0, "{}", audit.stderr);
    let body: serde_json::Value = serde_json::from_str(&audit.stdout).unwrap();
    assert_eq!(body["verdict"]["kind"], "polynomial");
    assert_eq!(body["verdict"]["degree"], 3);
}

#[test]
fn transforms_round_trip() {
    let input = lines([3, 1, 4, 1, 5, 9, 2, 6]);
    let forward = ruzsa(&["transform", "forward"], &input);
    assert_eq!(forward.code, 0);
    let back = ruzsa(&["transform", "inverse"], &forward.stdout);
    assert_eq!(back.stdout, input);
}

#[test]
fn unknown_subcommand_is_an_input_error() {
    let run = ruzsa(&["frobnicate"], "");
    assert_eq!(run.code, 2);
    assert!(!run.stderr.is_empty());
}

#[test]
fn malformed_sequences_are_input_errors() {
    assert_eq!(ruzsa(&["hankel", "table"], "1\n2.5\n3\n").code, 2);
    assert_eq!(ruzsa(&["check", "congruences"], "7\n").code, 2);
}

#[test]
fn theta_table_is_csv() {
    let run = ruzsa(&["theta", "table", "--n-max", "20"], "");
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout.lines().next(), Some("n,theta,partial_sum,ratio"));
}

#[test]
fn dubinin_bound_for_a_two_spike_hedgehog() {
    let run = ruzsa(&["capacity", "bound", "--format", "json"], "[[1, 0], [-1, 0]]");
    assert_eq!(run.code, 0, "{}", run.stderr);
    let body: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(body["dubinin_bound"], 0.5);
    assert_eq!(body["spikes"], 2);
}
