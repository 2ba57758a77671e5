//! End-to-end checks of the command-line contract: exit codes, report
//! emission, and flag parsing.

use std::process::Command;

fn cliffcheck() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cliffcheck"))
}

#[test]
fn passing_suite_exits_zero_and_emits_a_parsable_report() {
    let dir = std::env::temp_dir().join(format!("cliffcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("algebra.json");
    let status = cliffcheck()
        .args(["--suite", "algebra", "--n", "3", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let report = cliffcheck::report::VerificationReport::parse_structured(&text).unwrap();
    assert!(report.passed);
    assert_eq!(report.config.n, 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_failure_exits_one() {
    let status = cliffcheck()
        .args([
            "--suite",
            "algebra",
            "--tol-override",
            "associativity_float=1e-30",
        ])
        .stdout(std::process::Stdio::null())
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["--suite", "no-such-suite"],
        vec!["--refine", "4..2"],
        vec!["--n", "9"],
        vec!["--lambda", "pancake"],
    ] {
        let status = cliffcheck()
            .args(&args)
            .stdout(std::process::Stdio::null())
            .stderr(std::process::Stdio::null())
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn tabular_format_is_one_row_per_check() {
    let output = cliffcheck()
        .args(["--suite", "meanvalue", "--format", "tabular", "--out", "-"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let table = String::from_utf8(output.stdout).unwrap();
    let mut lines = table.lines();
    assert!(lines.next().unwrap().starts_with("suite\tcheck"));
    assert!(lines.all(|row| row.split('\t').count() == 7));
}

#[test]
fn identical_config_and_seed_reproduce_report_bytes() {
    let run = || {
        cliffcheck()
            .args(["--suite", "taylor", "--seed", "99", "--out", "-"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}
