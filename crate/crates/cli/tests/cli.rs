use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn mqr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mqr"))
        .current_dir(crate_dir())
        .args(args)
        .output()
        .expect("run mqr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&mqr(&["check", "corpus/msqr/outcome_stable.prf", "--system", "msqr"])), 0);
    assert_eq!(code(&mqr(&["check", "corpus/mspqr/classical_settled.prf", "--system", "mspqr"])), 0);
    assert_eq!(code(&mqr(&["check", "corpus/msqr/box_truth.prf"])), 0);

    let out = mqr(&["check", "corpus/msqr/outcome_stable.prf", "--system", "mspqr", "--reasons"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("[wrong-system]"));

    let out = mqr(&["check", "corpus/negative/box_not_fresh.prf", "--reasons"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("[freshness-violation]"), "{}", stdout(&out));
}

#[test]
fn check_reports_parse_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.prf");
    std::fs::write(&bad, "system MSQR\n1. x : r0 ->\n").unwrap();
    let out = mqr(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
    assert_eq!(code(&mqr(&["check", "no/such/file.prf"])), 2);
}

#[test]
fn check_lists_open_assumptions_of_derivations() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("d.prf");
    std::fs::write(&p, "system MSQR\n1. x M y ; hyp\n2. x U y ; UIfromM 1\n").unwrap();
    let out = mqr(&["check", p.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("open assumptions:\n  x M y"), "{}", stdout(&out));
}

#[test]
fn eval_exit_codes() {
    let model = "tests/fixtures/two_worlds.model";
    let out = mqr(&["eval", model, "x : <M> r0"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "true"));
    assert_eq!(code(&mqr(&["eval", model, "x : bot"])), 1);
    assert_eq!(code(&mqr(&["eval", model, "x : [] r0"])), 1);
    assert_eq!(code(&mqr(&["eval", model, "x M y"])), 0);
    assert_eq!(code(&mqr(&["eval", model, "[M] r0", "--world", "v"])), 0);
    assert_eq!(code(&mqr(&["eval", model, "r0", "--world", "v"])), 1);

    let out = mqr(&["eval", model, "z : r0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unbound-label"));
    let out = mqr(&["eval", model, "x : [P] r0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("wrong-system"));
    assert_eq!(code(&mqr(&["eval", model, "r0", "--world", "nowhere"])), 2);
}

#[test]
fn invalid_frames_need_an_override() {
    let model = "tests/fixtures/unreduced.model";
    let out = mqr(&["eval", model, "x : r0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not-serial [w]"), "{}", stderr(&out));
    assert!(stderr(&out).contains("not-shift-reflexive [v, w]"));
    assert_eq!(code(&mqr(&["eval", model, "x : <M> r0", "--allow-invalid"])), 0);

    let out = mqr(&["frame", "validate", model]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "not-serial [w]\nnot-shift-reflexive [v, w]\n");
    assert_eq!(code(&mqr(&["frame", "validate", "tests/fixtures/two_worlds.model"])), 0);
}

#[test]
fn countermodel_exit_codes() {
    let out = mqr(&["countermodel", "x : r0 -> [] r0", "--system", "msqr", "--max-worlds", "2"]);
    assert_eq!(code(&out), 0);
    let printed = stdout(&out);
    assert!(printed.starts_with("system MSQR\nworlds w0 w1\n"), "{printed}");

    // the printed structure is a loadable model refuting the formula
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cm.model");
    std::fs::write(&p, &printed).unwrap();
    assert_eq!(code(&mqr(&["eval", p.to_str().unwrap(), "x : r0 -> [] r0"])), 1);

    let out = mqr(&["countermodel", "x : [M] r0 -> <M> r0", "--system", "msqr", "--max-worlds", "3"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("frames checked"));

    let out = mqr(&["countermodel", "x : r0", "--max-worlds", "9"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("bound-too-large"));
    assert_eq!(code(&mqr(&["countermodel", "x : r0 ->"])), 2);
}

#[test]
fn countermodel_with_assumptions() {
    let args = ["countermodel", "x U y", "--assumptions", "tests/fixtures/membership.assumptions", "--max-worlds", "3"];
    assert_eq!(code(&mqr(&args)), 1);
    let args = ["countermodel", "y M x", "--assumptions", "tests/fixtures/membership.assumptions"];
    assert_eq!(code(&mqr(&args)), 0);
}

#[test]
fn random_frames_follow_the_seed() {
    let a = mqr(&["frame", "random", "--seed", "42", "--max-worlds", "3", "--system", "msqr"]);
    let b = mqr(&["frame", "random", "--seed", "42", "--max-worlds", "3", "--system", "msqr"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.model");
    std::fs::write(&p, stdout(&a)).unwrap();
    assert_eq!(code(&mqr(&["frame", "validate", p.to_str().unwrap()])), 0);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&mqr(&[])), 2);
    assert_eq!(code(&mqr(&["check"])), 2);
    assert_eq!(code(&mqr(&["check", "x.prf", "--system", "s5"])), 2);
}

fn copy_corpus(to: &Path) {
    let from = crate_dir().join("corpus");
    for sub in ["", "msqr", "mspqr", "negative"] {
        std::fs::create_dir_all(to.join(sub)).unwrap();
        for entry in std::fs::read_dir(from.join(sub)).unwrap() {
            let entry = entry.unwrap();
            if entry.file_type().unwrap().is_file() {
                std::fs::copy(entry.path(), to.join(sub).join(entry.file_name())).unwrap();
            }
        }
    }
}

#[test]
fn corpus_run_passes_and_is_reproducible() {
    let a = mqr(&["corpus", "run"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    let text = stdout(&a);
    assert!(text.contains("9 accepted theorems, 0 countermodels with at most 3 worlds"), "{text}");
    assert_eq!(stdout(&mqr(&["corpus", "run"])), text);
}

#[test]
fn corpus_run_reports_a_mutated_eigenvariable() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let script = dir.path().join("msqr/box_four.prf");
    let src = std::fs::read_to_string(&script).unwrap();
    std::fs::write(&script, src.replace("discharge 2 fresh y", "discharge 2 fresh x")).unwrap();
    let manifest = dir.path().join("manifest.toml");
    let out = mqr(&["corpus", "run", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let line = stdout(&out).lines().find(|l| l.starts_with("box_four ")).unwrap().to_string();
    assert!(line.contains("rejected:freshness-violation") && line.ends_with("FAIL"), "{line}");
}

#[test]
fn corpus_run_with_a_missing_script() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    std::fs::remove_file(dir.path().join("mspqr/projection_four.prf")).unwrap();
    let manifest = dir.path().join("manifest.toml");
    let out = mqr(&["corpus", "run", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("projection_four.prf"));
}
