//! End-to-end runs of the compiled binary against the shipped fixtures.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn gwpkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwpkit"))
        .args(args)
        .env("GWPKIT_FIXTURES", fixtures_dir())
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn query_exit_codes_and_record_output() {
    let member = gwpkit(&["query", "--group", "free:2", "--sub", "a.sub", "--decider", "pda", "a", "a", "a"]);
    assert_eq!(member.status.code(), Some(0));
    assert!(stdout_of(&member).contains("verdict=member"));

    let non = gwpkit(&["query", "--group", "free:2", "--sub", "a.sub", "--decider", "eda", "b", "a", "b^-1"]);
    assert_eq!(non.status.code(), Some(1));
    assert!(stdout_of(&non).contains("verdict=non-member"));

    let err = gwpkit(&["query", "--group", "free:0", "--sub", "a.sub", "a"]);
    assert_eq!(err.status.code(), Some(2));
}

#[test]
fn deciders_agree_on_the_same_query() {
    for word in [vec!["a", "a"], vec!["b", "a", "b^-1"], vec!["a", "b", "b^-1", "a"]] {
        let mut verdicts = Vec::new();
        for decider in ["pda", "eda", "oracle"] {
            let mut args = vec!["query", "--group", "free:2", "--sub", "a.sub", "--decider", decider];
            args.extend(word.iter().copied());
            let out = gwpkit(&args);
            verdicts.push(out.status.code());
        }
        assert_eq!(verdicts[0], verdicts[1], "word {word:?}");
        assert_eq!(verdicts[1], verdicts[2], "word {word:?}");
    }
}

#[test]
fn vf_query_uses_spec_subgroup_by_default() {
    let member = gwpkit(&["query", "--group", "vf:z2z2.vf", "x", "y", "y", "x"]);
    assert_eq!(member.status.code(), Some(0));
    let non = gwpkit(&["query", "--group", "vf:z2z2.vf", "x"]);
    assert_eq!(non.status.code(), Some(1));
    let square = gwpkit(&["query", "--group", "vf:z2z2_square.vf", "x", "y", "x", "y"]);
    assert_eq!(square.status.code(), Some(0));
    let square_non = gwpkit(&["query", "--group", "vf:z2z2_square.vf", "x", "y"]);
    assert_eq!(square_non.status.code(), Some(1));
}

#[test]
fn generated_rules_round_trip_through_stream() {
    let dehn = gwpkit(&["gen-dehn", "--group", "free:2", "--k", "2"]);
    let anchored = gwpkit(&["gen-anchored", "--group", "free:2", "--sub", "a.sub", "--R", "6"]);
    let rules = format!("{}{}", stdout_of(&dehn), stdout_of(&anchored));
    assert_eq!(rules.lines().count(), 6);
    assert!(rules.lines().any(|l| l.starts_with("H a ->")));

    let dir = std::env::temp_dir().join(format!("gwpkit-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let rules_path = dir.join("rules.txt");
    std::fs::write(&rules_path, rules).unwrap();

    let mut child = Command::new(env!("CARGO_BIN_EXE_gwpkit"))
        .args([
            "stream",
            "--alphabet",
            "f2.alphabet",
            "--rules",
            rules_path.to_str().unwrap(),
        ])
        .env("GWPKIT_FIXTURES", fixtures_dir())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"b b^-1 a a")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let tapes: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("cmd=stream "))
        .map(|l| l.split("tape=").nth(1).unwrap())
        .collect();
    assert_eq!(tapes, vec!["b", "\"\"", "\"\"", "\"\""]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_suites_pass_on_fixtures() {
    for suite in [
        vec!["verify", "pde"],
        vec!["verify", "realtime", "--maxlen", "8"],
        vec!["verify", "star", "--maxlen", "6"],
        vec!["verify", "equivalence", "--maxlen", "7", "--jobs", "3"],
    ] {
        let out = gwpkit(&suite);
        assert_eq!(out.status.code(), Some(0), "suite {suite:?}: {}", stdout_of(&out));
        assert!(stdout_of(&out).contains("result=pass"));
    }
}

#[test]
fn gib_suite_distinguishes_the_two_fixtures() {
    let out = gwpkit(&["verify", "gib", "--fixture", "both"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("fixture=free-rank2-cyclic"));
    assert!(text.contains("fixture=abelian-rank2-cyclic"));

    let raw = gwpkit(&["gib-check", "--group", "abelian:2", "--sub", "a.sub", "--k", "1", "--K", "1", "--limit", "3"]);
    assert_eq!(raw.status.code(), Some(1));
    let text = stdout_of(&raw);
    assert!(text.contains("passed=false"));
    assert!(text.contains("witness_symbol=a"));
}

#[test]
fn run_pda_trace_matches_transition_table() {
    let out = gwpkit(&["run-pda", "--alphabet", "f2.alphabet", "--sub", "a.sub", "--trace", "b", "b^-1", "a"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("state=s1 input=b popped=\"\" pushed=(b,s1) state_after=out"));
    assert!(text.contains("state=out input=b^-1 popped=(b,s1) pushed=\"\" state_after=s1"));
    assert!(text.contains("verdict=accept"));

    let reject = gwpkit(&["run-pda", "--alphabet", "f2.alphabet", "--sub", "a.sub", "b", "a", "b^-1"]);
    assert_eq!(reject.status.code(), Some(1));
}

#[test]
fn graph_dumps_flow_through_the_cli() {
    // consume: decide membership from a core given as a dump
    let acc = gwpkit(&["run-pda", "--alphabet", "f2.alphabet", "--core", "a2_b.xg", "a", "a", "b"]);
    assert_eq!(acc.status.code(), Some(0));
    let rej = gwpkit(&["run-pda", "--alphabet", "f2.alphabet", "--core", "a2_b.xg", "a", "b"]);
    assert_eq!(rej.status.code(), Some(1));

    // produce: the reference ball written by gib-check parses back
    let dir = std::env::temp_dir().join(format!("gwpkit-dump-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dump = dir.join("cayley.xg");
    let out = gwpkit(&[
        "gib-check", "--group", "free:2", "--sub", "a.sub",
        "--k", "1", "--K", "2", "--limit", "3",
        "--dump-cayley", dump.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&dump).unwrap();
    assert!(text.starts_with("xgraph 5 0"));
    assert_eq!(text.lines().count(), 1 + 8); // header + a directed edge pair per petal
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn oracle_dump_lists_words_with_lengths() {
    let out = gwpkit(&["oracle-dump", "--group", "free:2", "--sub", "a.sub", "--radius", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("0"));
    // every line ends with its BFS distance; `a a b` collapses to coset `b`
    assert!(text.lines().any(|l| l == "b 1"));
    assert!(text.lines().all(|l| {
        let len: usize = l.split_whitespace().last().unwrap().parse().unwrap();
        len <= 3
    }));
}

#[test]
fn bench_reports_bounded_work() {
    let random = gwpkit(&[
        "bench", "--group", "free:2", "--sub", "a.sub", "--decider", "eda",
        "--random", "50", "--len", "200", "--seed", "0",
    ]);
    assert_eq!(random.status.code(), Some(0));
    let text = stdout_of(&random);
    assert!(text.contains("work_bound_ok=true"));
    assert!(text.contains("max_cascade=1"));

    let corpus = gwpkit(&[
        "bench", "--group", "free:2", "--sub", "a.sub", "--decider", "pda",
        "--corpus", "sample.corpus",
    ]);
    assert_eq!(corpus.status.code(), Some(0));
    assert!(stdout_of(&corpus).contains("steps_per_letter=1.0000"));

    // identical seeds give identical reports apart from timing
    let again = gwpkit(&[
        "bench", "--group", "free:2", "--sub", "a.sub", "--decider", "eda",
        "--random", "50", "--len", "200", "--seed", "0",
    ]);
    let strip = |s: &str| {
        s.split_whitespace()
            .filter(|f| !f.starts_with("elapsed_ms"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    assert_eq!(strip(&stdout_of(&random)), strip(&stdout_of(&again)));
}

#[test]
fn replaying_a_witness_reproduces_the_verdict() {
    // take a non-member witness from a query and feed it back
    let out = gwpkit(&["query", "--group", "free:2", "--sub", "a.sub", "--decider", "eda", "b", "a"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    let word_field = text.split("word=\"").nth(1).unwrap().split('"').next().unwrap();
    let tokens: Vec<&str> = word_field.split_whitespace().collect();
    let mut args = vec!["query", "--group", "free:2", "--sub", "a.sub", "--decider", "eda"];
    args.extend(tokens);
    let replay = gwpkit(&args);
    assert_eq!(replay.status.code(), Some(1));
}
