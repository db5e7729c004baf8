//! Golden invocations for the command-line surface: exit codes, witnesses,
//! JSON stability, and generator output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const ENDS_A: &str = "alphabet: a b\nstates: e0 e1\ninitial: e0\nfinal: e1\n\
e0 a e1\ne0 b e0\ne1 a e1\ne1 b e0\n";
const ENDS_B: &str = "alphabet: a b\nstates: e0 e1\ninitial: e0\nfinal: e1\n\
e0 a e0\ne0 b e1\ne1 a e0\ne1 b e1\n";
const CONTAINS_A: &str = "alphabet: a b\nstates: c0 c1\ninitial: c0\nfinal: c1\n\
c0 a c1\nc0 b c0\nc1 a c1\nc1 b c1\n";
const PERMUTATION: &str = "alphabet: a b\nstates: 0 1\n\
0 a 1\n0 b 0\n1 a 0\n1 b 1\n";
const CERNY_4: &str = "alphabet: a b\nstates: 0 1 2 3\n\
0 a 1\n0 b 1\n1 a 2\n1 b 1\n2 a 3\n2 b 2\n3 a 0\n3 b 3\n";

fn synckit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synckit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gadget_b(dir: &TempDir) -> PathBuf {
    let out = dir.path().join("gadget-b.dfa");
    let run = synckit(&["gen", "gadget-b", "--sigma", "a b", "-o", path_str(&out)]);
    assert_eq!(code(&run), 0);
    out
}

#[test]
fn check_reports_shortest_reset_word() {
    let dir = TempDir::new().unwrap();
    let b = gadget_b(&dir);
    let run = synckit(&["check", path_str(&b)]);
    assert_eq!(code(&run), 0);
    assert!(stdout(&run).contains("shortest reset word: y"));

    let json_run = synckit(&["--json", "check", path_str(&b)]);
    let payload: serde_json::Value = serde_json::from_str(stdout(&json_run).trim()).unwrap();
    assert_eq!(payload["verdict"], "synchronizing");
    assert_eq!(payload["witness"], serde_json::json!(["y"]));

    let no_word = synckit(&["--json", "check", path_str(&b), "--no-word"]);
    let payload: serde_json::Value = serde_json::from_str(stdout(&no_word).trim()).unwrap();
    assert!(payload.get("witness").is_none());
}

#[test]
fn check_rejects_non_synchronizing_and_malformed_input() {
    let dir = TempDir::new().unwrap();
    let perm = write_file(&dir, "perm.dfa", PERMUTATION);
    let run = synckit(&["check", path_str(&perm)]);
    assert_eq!(code(&run), 1);
    assert!(stdout(&run).contains("not synchronizing"));

    let broken = write_file(&dir, "broken.dfa", "alphabet: a\nstates: q\n");
    let run = synckit(&["check", path_str(&broken)]);
    assert_eq!(code(&run), 2);
}

#[test]
fn member_accepts_both_word_spellings() {
    let dir = TempDir::new().unwrap();
    let b = gadget_b(&dir);
    assert_eq!(code(&synckit(&["member", path_str(&b), "--word", "z a"])), 0);
    assert_eq!(code(&synckit(&["member", path_str(&b), "--word", "za"])), 0);
    assert_eq!(code(&synckit(&["member", path_str(&b), "--word", "z"])), 1);
    assert_eq!(code(&synckit(&["member", path_str(&b), "--word", "q"])), 2);
}

#[test]
fn equality_tracks_instance_emptiness_and_witness_round_trips() {
    let dir = TempDir::new().unwrap();
    let b = gadget_b(&dir);
    let ends_a = write_file(&dir, "ends-a.dfa", ENDS_A);
    let ends_b = write_file(&dir, "ends-b.dfa", ENDS_B);
    let contains_a = write_file(&dir, "contains-a.dfa", CONTAINS_A);

    let empty_gadget = dir.path().join("gadget-empty.dfa");
    let run = synckit(&[
        "gen",
        "gadget-a",
        path_str(&ends_a),
        path_str(&ends_b),
        "-o",
        path_str(&empty_gadget),
    ]);
    assert_eq!(code(&run), 0);
    let run = synckit(&["equal", path_str(&empty_gadget), path_str(&b)]);
    assert_eq!(code(&run), 0);
    assert!(stdout(&run).contains("holds"));

    let nonempty_gadget = dir.path().join("gadget-nonempty.dfa");
    let run = synckit(&[
        "gen",
        "gadget-a",
        path_str(&ends_a),
        path_str(&contains_a),
        "-o",
        path_str(&nonempty_gadget),
    ]);
    assert_eq!(code(&run), 0);
    let run = synckit(&["--json", "equal", path_str(&nonempty_gadget), path_str(&b)]);
    assert_eq!(code(&run), 1);
    let payload: serde_json::Value = serde_json::from_str(stdout(&run).trim()).unwrap();
    assert_eq!(payload["verdict"], "fails");
    assert_eq!(payload["direction"], "left");
    let witness: Vec<String> = payload["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();

    // The printed witness feeds back through `member`: reset for the gadget,
    // not reset for the 3-state automaton.
    let word = witness.join(" ");
    assert_eq!(
        code(&synckit(&["member", path_str(&nonempty_gadget), "--word", &word])),
        0
    );
    assert_eq!(code(&synckit(&["member", path_str(&b), "--word", &word])), 1);
}

#[test]
fn strict_inclusion_of_a_language_in_itself_fails() {
    let dir = TempDir::new().unwrap();
    let b = gadget_b(&dir);
    let run = synckit(&["strict", path_str(&b), path_str(&b)]);
    assert_eq!(code(&run), 1);
}

#[test]
fn include_direction_matters() {
    let dir = TempDir::new().unwrap();
    let b = gadget_b(&dir);
    let ends_a = write_file(&dir, "ends-a.dfa", ENDS_A);
    let contains_a = write_file(&dir, "contains-a.dfa", CONTAINS_A);
    let gadget = dir.path().join("gadget.dfa");
    synckit(&[
        "gen",
        "gadget-a",
        path_str(&ends_a),
        path_str(&contains_a),
        "-o",
        path_str(&gadget),
    ]);
    // Syn(B) = I is included in the gadget's language, not conversely.
    assert_eq!(code(&synckit(&["include", path_str(&b), path_str(&gadget)])), 0);
    assert_eq!(code(&synckit(&["include", path_str(&gadget), path_str(&b)])), 1);
    assert_eq!(code(&synckit(&["strict", path_str(&b), path_str(&gadget)])), 0);
}

#[test]
fn generated_gadget_b_has_fifteen_transitions() {
    let dir = TempDir::new().unwrap();
    let b = gadget_b(&dir);
    let text = std::fs::read_to_string(&b).unwrap();
    let transition_lines = text
        .lines()
        .filter(|l| !l.is_empty() && !l.contains(':'))
        .count();
    assert_eq!(transition_lines, 15);
    assert!(text.lines().next().unwrap().starts_with("alphabet: y z a b x"));
}

#[test]
fn binarize_of_gadget_b_has_eleven_states() {
    let dir = TempDir::new().unwrap();
    let b = gadget_b(&dir);
    let lifted = dir.path().join("lift.dfa");
    let run = synckit(&[
        "gen",
        "binarize",
        path_str(&b),
        "--order",
        "y z a b x",
        "-o",
        path_str(&lifted),
    ]);
    assert_eq!(code(&run), 0);
    let text = std::fs::read_to_string(&lifted).unwrap();
    let states_line = text.lines().nth(1).unwrap();
    assert_eq!(states_line.split_whitespace().count() - 1, 11);
}

#[test]
fn gadget_generation_rejects_clashing_letters() {
    let dir = TempDir::new().unwrap();
    let run = synckit(&["gen", "gadget-b", "--sigma", "a x"]);
    assert_eq!(code(&run), 2);
    let clash = write_file(
        &dir,
        "clash.dfa",
        "alphabet: x\nstates: q\ninitial: q\nfinal:\nq x q\n",
    );
    let run = synckit(&["gen", "gadget-a", path_str(&clash)]);
    assert_eq!(code(&run), 2);
}

#[test]
fn rc_and_sc_on_the_three_state_gadget() {
    let dir = TempDir::new().unwrap();
    let b = gadget_b(&dir);
    let run = synckit(&["--json", "rc", path_str(&b), "--max", "3"]);
    assert_eq!(code(&run), 0);
    let payload: serde_json::Value = serde_json::from_str(stdout(&run).trim()).unwrap();
    assert_eq!(payload["verdict"], "exact");
    assert_eq!(payload["rc_upper"], 3);
    assert_eq!(payload["sc"], 3);
    assert_eq!(payload["method"], "exhaustive");

    let run = synckit(&["sc", path_str(&b)]);
    assert_eq!(code(&run), 0);
    assert!(stdout(&run).contains("sc = 3"));
}

#[test]
fn ideal_distinguishes_closed_languages() {
    let dir = TempDir::new().unwrap();
    let witness = dir.path().join("witness-i.dfa");
    synckit(&["gen", "witness-i", "--sigma", "a b", "-o", path_str(&witness)]);
    assert_eq!(code(&synckit(&["ideal", path_str(&witness)])), 0);

    let ends_a = write_file(&dir, "ends-a.dfa", ENDS_A);
    assert_eq!(code(&synckit(&["ideal", path_str(&ends_a)])), 1);
}

#[test]
fn intersect_reports_witness_or_emptiness() {
    let dir = TempDir::new().unwrap();
    let ends_a = write_file(&dir, "ends-a.dfa", ENDS_A);
    let ends_b = write_file(&dir, "ends-b.dfa", ENDS_B);
    let contains_a = write_file(&dir, "contains-a.dfa", CONTAINS_A);

    let run = synckit(&["intersect", path_str(&ends_a), path_str(&ends_b)]);
    assert_eq!(code(&run), 1);
    assert!(stdout(&run).contains("empty"));

    let run = synckit(&["--json", "intersect", path_str(&ends_a), path_str(&contains_a)]);
    assert_eq!(code(&run), 0);
    let payload: serde_json::Value = serde_json::from_str(stdout(&run).trim()).unwrap();
    assert_eq!(payload["witness"], serde_json::json!(["a"]));
}

#[test]
fn json_output_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let b = gadget_b(&dir);
    let first = synckit(&["--json", "equal", path_str(&b), path_str(&b)]);
    let second = synckit(&["--json", "equal", path_str(&b), path_str(&b)]);
    assert_eq!(first.stdout, second.stdout);
    // stats are opt-in so the default payload stays reproducible
    assert!(!stdout(&first).contains("stats"));
    let with_stats = synckit(&["--json", "--stats", "equal", path_str(&b), path_str(&b)]);
    let payload: serde_json::Value = serde_json::from_str(stdout(&with_stats).trim()).unwrap();
    assert!(payload["stats"]["nodes_expanded"].is_u64());
    assert!(payload["stats"]["elapsed_ms"].is_u64());
}

#[test]
fn caps_are_reported_as_usage_errors() {
    let dir = TempDir::new().unwrap();
    let cerny = write_file(&dir, "cerny.dfa", CERNY_4);
    let run = synckit(&["--subset-cap", "2", "check", path_str(&cerny)]);
    assert_eq!(code(&run), 2);
    let err = String::from_utf8_lossy(&run.stderr);
    assert!(err.contains("cap"), "stderr: {err}");
}

#[test]
fn synlang_writes_a_parseable_minimal_acceptor() {
    let dir = TempDir::new().unwrap();
    let b = gadget_b(&dir);
    let out = dir.path().join("syn.dfa");
    let run = synckit(&["synlang", path_str(&b), "-o", path_str(&out)]);
    assert_eq!(code(&run), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let states_line = text.lines().nth(1).unwrap();
    assert_eq!(states_line.split_whitespace().count() - 1, 3);
}
