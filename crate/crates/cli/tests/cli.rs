//! End-to-end tests of the `cyclefst` binary: output bytes, exit codes,
//! report redirection, and the fuzz reproducer loop.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const FIGURE_PERM: &str = "n=11\n1 3 6 4 2 8 11 5 10 7 9\n";

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cyclefst"));
    cmd.env_remove("CYCLEFST_REPORT");
    cmd
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary must launch")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout must be utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr must be utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process must exit, not die on a signal")
}

#[test]
fn run_prints_golden_outputs_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("perm.txt"), FIGURE_PERM).unwrap();
    fs::write(
        dir.path().join("script.txt"),
        "# queries, one update, one snapshot\n\
         cycles\napply 6\npower 7 3\nsame 2 5\ndist 7 9\ndist 1 2\n\
         transpose-val 1 4\noneline\n",
    )
    .unwrap();
    let args = ["run", "--perm", "perm.txt", "--script", "script.txt"];
    let first = run_in(dir.path(), &args);
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));
    assert_eq!(
        stdout(&first),
        "4\n8\n10\ntrue\n2\ninf\nok 3\n4 3 6 1 2 8 11 5 10 7 9\n"
    );
    let second = run_in(dir.path(), &args);
    assert_eq!(first.stdout, second.stdout, "stdout must be byte-identical across runs");
}

#[test]
fn run_gives_identical_answers_on_every_store() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("perm.txt"), FIGURE_PERM).unwrap();
    fs::write(
        dir.path().join("script.txt"),
        "apply 2\ninverse 2\npower 9 -5\nsize 10\ntranspose-at 2 3\noneline\nflip 2 8\noneline\n",
    )
    .unwrap();
    let outputs: Vec<String> = ["fst", "oneline", "oneline-inv"]
        .iter()
        .map(|kind| {
            let out = run_in(
                dir.path(),
                &["run", "--perm", "perm.txt", "--script", "script.txt", "--impl", kind],
            );
            assert_eq!(code(&out), 0, "{kind} stderr: {}", stderr(&out));
            stdout(&out)
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
}

#[test]
fn static_script_errors_exit_two_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("perm.txt"), FIGURE_PERM).unwrap();
    for (script, needle) in [
        ("apply 1\napply 12\n", "script.txt:2: element 12 out of range 1..=11"),
        ("transpose-at 4 4\n", "script.txt:1: transpose arguments must differ"),
        ("apply 1\n\nfrotz 3\n", "script.txt:3: unknown command `frotz`"),
        ("apply\n", "takes 1 argument(s), got 0"),
    ] {
        fs::write(dir.path().join("script.txt"), script).unwrap();
        let out = run_in(dir.path(), &["run", "--perm", "perm.txt", "--script", "script.txt"]);
        assert_eq!(code(&out), 2, "script {script:?}");
        assert!(stderr(&out).contains(needle), "script {script:?} stderr: {}", stderr(&out));
        assert_eq!(stdout(&out), "", "nothing may print before validation passes");
    }
}

#[test]
fn bad_permutation_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("script.txt"), "cycles\n").unwrap();
    for (perm, needle) in [
        ("1 2 3\n", "want `n=<count>`"),
        ("n=3\n1 2\n", "n=3 but 2 values follow"),
        ("n=3\n1 1 3\n", "value 1 already appeared"),
        ("n=3\n1 2 9\n", "out of range"),
    ] {
        fs::write(dir.path().join("perm.txt"), perm).unwrap();
        let out = run_in(dir.path(), &["run", "--perm", "perm.txt", "--script", "script.txt"]);
        assert_eq!(code(&out), 2, "perm {perm:?}");
        assert!(stderr(&out).contains(needle), "perm {perm:?} stderr: {}", stderr(&out));
    }
    let out = run_in(dir.path(), &["run", "--perm", "missing.txt", "--script", "script.txt"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn runtime_domain_errors_exit_three_with_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("perm.txt"), FIGURE_PERM).unwrap();
    fs::write(dir.path().join("script.txt"), "cycles\napply 1\nflip 1 2\ncycles\n").unwrap();
    let out = run_in(dir.path(), &["run", "--perm", "perm.txt", "--script", "script.txt"]);
    assert_eq!(code(&out), 3);
    assert!(
        stderr(&out).contains("script.txt:3: elements 1 and 2 are in different cycles"),
        "stderr: {}",
        stderr(&out)
    );
    assert_eq!(stdout(&out), "4\n1\n", "output up to the failing line is kept");
}

#[test]
fn fuzz_clean_run_exits_zero_and_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let out = bin()
        .current_dir(dir.path())
        .env("CYCLEFST_REPORT", &report)
        .args(["fuzz", "--n", "32", "--len", "5000", "--seed", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "fuzz: ok, 5000 ops, fst matches oneline-inv\n");
    assert_eq!(stderr(&out), "", "report must go to the file, not stderr");
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.contains("ops 5000"), "report: {text}");
    assert!(text.contains("counters rotations="), "report: {text}");
    assert!(text.ends_with("verdict PASS\n"), "report: {text}");
}

#[test]
fn fuzz_detects_corruption_and_replays_from_the_reproducer() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["fuzz", "--n", "24", "--len", "3000", "--seed", "5", "--corrupt", "100"],
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("fuzz: divergence at op"), "stdout: {}", stdout(&out));
    assert!(stderr(&out).contains("wrote minimal reproducer"), "stderr: {}", stderr(&out));
    let reproducer = dir.path().join("cyclefst-failure-seed5-n24.opscript");
    assert!(reproducer.exists());
    assert!(dir.path().join("cyclefst-failure-seed5-n24.perm").exists());

    // with the same injected bug the reproducer diverges again...
    let replay = run_in(
        dir.path(),
        &["fuzz", "--replay", "cyclefst-failure-seed5-n24.opscript", "--corrupt", "100"],
    );
    assert_eq!(code(&replay), 1, "stderr: {}", stderr(&replay));
    assert!(stdout(&replay).contains("fuzz: divergence at op"));

    // ...and on healthy stores it agrees, proving the store itself is fine
    let healthy = run_in(dir.path(), &["fuzz", "--replay", "cyclefst-failure-seed5-n24.opscript"]);
    assert_eq!(code(&healthy), 0, "stderr: {}", stderr(&healthy));
}

#[test]
fn bench_smoke_on_an_oracle_writes_scaling_rows() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("bench.txt");
    let out = bin()
        .current_dir(dir.path())
        .env("CYCLEFST_REPORT", &report)
        .args([
            "bench", "--impl", "oneline", "--sizes", "512,1024", "--reps", "2", "--ops", "300",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "bench: ok, 2 sizes x 300 ops on oneline\n");
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.contains("scaling n=512 build_median_ns="), "report: {text}");
    assert!(text.contains("scaling n=1024 build_median_ns="), "report: {text}");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["fuzz", "--mix", "nonsense", "--len", "10"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown mix `nonsense`"), "stderr: {}", stderr(&out));
    let out = run_in(dir.path(), &["run", "--no-such-flag"]);
    assert_eq!(code(&out), 2, "clap usage errors share the static-error code");
    let out = run_in(dir.path(), &["bench", "--impl", "bogus"]);
    assert_eq!(code(&out), 2);
}
