use std::io::Write;
use std::process::Command;

use infval_cli::{run, Outcome, EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE};
use serde_json::{json, Value};
use tempfile::NamedTempFile;

const MAIN: &str = include_str!("../../core/tests/fixtures/main_example.lp");
const MAIN_TRACE: &str = include_str!("../../core/tests/fixtures/main_example_trace.json");

fn run_stdin(args: &[&str], input: &str) -> Outcome {
    let argv = std::iter::once("infval").chain(args.iter().copied());
    run(argv, &mut input.as_bytes())
}

fn temp(content: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn parse(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn solve_main_example() {
    let out = run_stdin(&["solve"], MAIN);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v = parse(&out);
    assert_eq!(
        v["model"],
        json!({"p": "F2", "q": "T1", "r": "F0", "s": "0"})
    );
    assert_eq!(v["depth"], 3);
    assert!(v.get("stages").is_none());
}

#[test]
fn solve_trace_matches_fixture() {
    let file = temp(MAIN);
    let out = run_stdin(&["solve", "--trace", file.path().to_str().unwrap()], "");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, MAIN_TRACE);
}

#[test]
fn wfm_main_example_agrees() {
    let out = run_stdin(&["wfm"], MAIN);
    assert_eq!(out.code, EXIT_OK);
    let expected = json!({"p": "false", "q": "true", "r": "false", "s": "undefined"});
    let v = parse(&out);
    assert_eq!(v["collapsed"], expected);
    assert_eq!(v["well_founded"], expected);
    assert_eq!(v["agree"], true);
}

#[test]
fn check_rejects_non_model() {
    let interp = temp(r#"{"p": "F0", "q": "F0"}"#);
    let out = run_stdin(
        &["check", "--interp", interp.path().to_str().unwrap()],
        "p :- not q.\nq :- false.\n",
    );
    assert_eq!(out.code, EXIT_FAILED);
    let v = parse(&out);
    assert_eq!(v["model"], false);
    assert_eq!(v["violations"], json!(["p :- not q."]));
}

#[test]
fn solve_then_check_round_trip() {
    let programs = [
        MAIN.to_string(),
        "works :- not tired.\ntired :- false.\n".to_string(),
        "p.\nr :- not p.\ns :- not q.\nq :- false.\n".to_string(),
        "e(a,b). e(b,a).\nr(X) :- e(X,Y), not r(Y).\n".to_string(),
    ];
    let generated: Vec<String> = (0..10)
        .map(|seed| run_stdin(&["generate", "--seed", &seed.to_string()], "").stdout)
        .collect();
    for text in programs.iter().chain(&generated) {
        let solved = run_stdin(&["solve"], text);
        assert_eq!(solved.code, EXIT_OK, "{text}");
        let interp = temp(&solved.stdout);
        let checked = run_stdin(
            &["check", "--interp", interp.path().to_str().unwrap()],
            text,
        );
        assert_eq!(checked.code, EXIT_OK, "{text}\n{}", checked.stdout);
        assert_eq!(parse(&checked)["model"], true);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["solve", "--trace"],
        vec!["wfm"],
        vec!["ground"],
        vec!["verify"],
        vec!["intersect"],
        vec!["--format", "text", "solve", "--trace"],
    ] {
        let a = run_stdin(&args, MAIN);
        let b = run_stdin(&args, MAIN);
        assert_eq!(a, b, "{args:?}");
    }
    let g1 = run_stdin(&["generate", "--seed", "9", "--atoms", "6"], "");
    let g2 = run_stdin(&["generate", "--seed", "9", "--atoms", "6"], "");
    assert_eq!(g1, g2);
}

#[test]
fn ground_prints_canonical_program() {
    let out = run_stdin(
        &["--format", "text", "ground"],
        "q :- not p(a).\np(X) :- r(X).\n",
    );
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(
        out.stdout,
        "p(a) :- r(a).\nq :- not p(a).\nr(a) :- false.\n"
    );
    let json = parse(&run_stdin(&["ground"], "p.\n"));
    assert_eq!(json, json!({"base": ["p"], "clauses": ["p."]}));
}

#[test]
fn verify_and_intersect_main_example() {
    let v = run_stdin(&["verify"], MAIN);
    assert_eq!(v.code, EXIT_OK);
    let j = parse(&v);
    assert_eq!(j["k"], 5);
    assert_eq!(j["minimal"], true);
    assert_eq!(j["counterexample"], Value::Null);

    let i = run_stdin(&["intersect", "--k", "5"], MAIN);
    assert_eq!(i.code, EXIT_OK);
    let j = parse(&i);
    assert_eq!(j["intersection"]["singleton"], true);
    assert_eq!(
        j["intersection"]["model"],
        json!({"p": "F2", "q": "T1", "r": "F0", "s": "0"})
    );
}

#[test]
fn verify_resource_guard() {
    let out = run_stdin(&["verify", "--k", "5", "--max-candidates", "100"], MAIN);
    assert_eq!(out.code, EXIT_RESOURCE);
    assert!(out.stderr.contains("limit is 100"), "{}", out.stderr);
}

#[test]
fn parse_error_reports_position() {
    let out = run_stdin(&["solve"], "p :- q(f(X)).\n");
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("<stdin>:1:8"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_arguments_and_missing_files() {
    assert_eq!(run_stdin(&["frobnicate"], "").code, EXIT_INPUT);
    assert_eq!(
        run_stdin(&["solve", "/nonexistent/prog.lp"], "").code,
        EXIT_INPUT
    );
    let bad = temp(r#"{"p": "T"}"#);
    let out = run_stdin(&["check", "--interp", bad.path().to_str().unwrap()], "p.\n");
    assert_eq!(out.code, EXIT_INPUT);
    let help = run_stdin(&["--help"], "");
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("solve"));
}

#[test]
fn text_format_is_aligned() {
    let out = run_stdin(&["--format", "text", "solve"], MAIN);
    assert_eq!(
        out.stdout,
        "depth: 3\natom  value  wfm\np     F2     false\nq     T1     true\nr     F0     false\ns     0      undefined\n"
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_infval");
    let file = temp(MAIN);
    let ok = Command::new(bin)
        .arg("wfm")
        .arg(file.path())
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = temp("p :- .\n");
    let err = Command::new(bin)
        .arg("solve")
        .arg(bad.path())
        .output()
        .unwrap();
    assert_eq!(err.status.code(), Some(EXIT_INPUT));
    assert!(!err.stderr.is_empty());
}
