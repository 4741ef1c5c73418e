//! End-to-end checks of the `qrook` binary: flags, formats, exit codes, and
//! the file-format contracts scripts rely on.

use std::path::Path;
use std::process::{Command, Output};

use qrook_cli::output::{CheckOutput, ComputeOutput};
use qrook_cli::records::Record;

fn qrook(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrook"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qrook_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrook"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_prints_descending_powers() {
    let out = qrook(&["compute", "--partition", "4,1", "--rank", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "R_1(4,1; q) = q^4 + 2*q^3 + q^2 + q\n");
}

#[test]
fn compute_all_ranks_of_empty_partition() {
    let out = qrook(&["compute", "--partition", "", "--rank", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "R_0((empty); q) = 1\n");
}

#[test]
fn compute_json_round_trips_to_the_text_rendering() {
    let text = stdout(&qrook(&["compute", "--partition", "10,9", "--all-ranks"]));
    let json = stdout(&qrook(&[
        "compute",
        "--partition",
        "10,9",
        "--all-ranks",
        "--format",
        "json",
    ]));
    let parsed: ComputeOutput = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed.to_text(), text);
}

#[test]
fn check_json_round_trips_to_the_text_rendering() {
    let text = stdout(&qrook(&[
        "check",
        "--partition",
        "2,1",
        "--total",
        "--test",
        "log-concave",
    ]));
    let json = stdout(&qrook(&[
        "check",
        "--partition",
        "2,1",
        "--total",
        "--test",
        "log-concave",
        "--format",
        "json",
    ]));
    let parsed: CheckOutput = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed.to_text(), text);
}

#[test]
fn compute_methods_agree_and_verify_passes() {
    for method in ["auto", "recurrence", "enumerate"] {
        let out = qrook(&[
            "compute",
            "--partition",
            "3,2,1",
            "--rank",
            "2",
            "--method",
            method,
        ]);
        assert!(out.status.success(), "method {method}");
        assert!(
            stdout(&out).contains("= q^3 + 3*q^2 + 3*q"),
            "method {method}: {}",
            stdout(&out)
        );
    }
    let out = qrook(&["compute", "--partition", "3,2,1", "--all-ranks", "--verify"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verified: all methods agree"));
}

#[test]
fn usage_errors_exit_2() {
    // Unknown flag (clap).
    assert_eq!(qrook(&["compute", "--nope"]).status.code(), Some(2));
    // Missing required rank.
    assert_eq!(
        qrook(&["compute", "--partition", "2,1"]).status.code(),
        Some(2)
    );
    // Malformed partition.
    assert_eq!(
        qrook(&["compute", "--partition", "3,5", "--rank", "1"])
            .status
            .code(),
        Some(2)
    );
    // Enumeration bound.
    let big = "9,9,9"; // 27 cells
    assert_eq!(
        qrook(&[
            "compute",
            "--partition",
            big,
            "--rank",
            "1",
            "--method",
            "enumerate"
        ])
        .status
        .code(),
        Some(2)
    );
    // Closed form for a middle rank.
    assert_eq!(
        qrook(&[
            "compute",
            "--partition",
            "4,3,2,1",
            "--rank",
            "2",
            "--method",
            "closed-form"
        ])
        .status
        .code(),
        Some(2)
    );
    // Sizes starting at zero.
    assert_eq!(qrook(&["search", "--sizes", "0..5"]).status.code(), Some(2));
    // Ranks with total target.
    assert_eq!(
        qrook(&["search", "--sizes", "1..5", "--target", "total", "--ranks", "2"])
            .status
            .code(),
        Some(2)
    );
    // k beyond n.
    assert_eq!(
        qrook(&["stirling", "--n", "3", "--k", "7"]).status.code(),
        Some(2)
    );
    // Unsupported field order.
    assert_eq!(
        qrook(&[
            "matrix-count",
            "--partition",
            "2,1",
            "--q",
            "6",
            "--rank",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    // Full-rank staircase polynomial is 1: trivially unimodal.
    let holds = qrook(&[
        "check",
        "--partition",
        "3,2,1",
        "--rank",
        "3",
        "--test",
        "unimodal",
    ]);
    assert_eq!(holds.status.code(), Some(0));

    let fails = qrook(&[
        "check",
        "--partition",
        "10,9,3,2,1",
        "--rank",
        "2",
        "--test",
        "unimodal",
    ]);
    assert_eq!(fails.status.code(), Some(1));
    let text = stdout(&fails);
    assert!(text.contains("unimodal: false"));
    assert!(text.contains("a[14]=21 > a[15]=20 < a[16]=22"));

    let total = qrook(&[
        "check",
        "--partition",
        "2,1",
        "--total",
        "--test",
        "log-concave",
    ]);
    assert_eq!(total.status.code(), Some(1));
    assert!(stdout(&total).contains("R(2,1; q) = q^3 + q^2 + 2*q + 1"));
}

#[test]
fn search_fail_on_find_controls_the_exit_code() {
    let clean = qrook(&[
        "-q",
        "search",
        "--sizes",
        "1..10",
        "--ranks",
        "2",
        "--fail-on-find",
    ]);
    assert_eq!(clean.status.code(), Some(0));

    let found = qrook(&[
        "-q",
        "search",
        "--sizes",
        "25",
        "--ranks",
        "2",
        "--fail-on-find",
    ]);
    assert_eq!(found.status.code(), Some(1));

    let default_exit = qrook(&["-q", "search", "--sizes", "25", "--ranks", "2"]);
    assert_eq!(default_exit.status.code(), Some(0));
}

#[test]
fn search_reports_are_valid_jsonl() {
    let out = qrook(&["-q", "search", "--sizes", "1..25", "--ranks", "2"]);
    assert!(out.status.success());
    let mut class_reports = 0;
    let mut summaries = 0;
    for line in stdout(&out).lines() {
        match serde_json::from_str::<Record>(line).unwrap() {
            Record::ClassReport(r) => {
                class_reports += 1;
                assert_eq!(r.n, 25);
                assert_eq!(r.partition, vec![10, 9, 3, 2, 1]);
            }
            Record::SizeSummary(s) => {
                summaries += 1;
                if s.n == 25 {
                    assert_eq!(s.failures, 1);
                    assert_eq!(s.classes, Some(142));
                }
            }
            other => panic!("unexpected record {:?}", other),
        }
    }
    assert_eq!(class_reports, 1);
    assert_eq!(summaries, 25);
}

#[test]
fn checkpoint_mismatch_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let run = |ranks: &str| {
        qrook_in(
            dir.path(),
            &[
                "-q",
                "search",
                "--sizes",
                "1..8",
                "--ranks",
                ranks,
                "--report",
                "report.jsonl",
                "--checkpoint",
                "ckpt.jsonl",
            ],
        )
    };
    assert_eq!(run("2").status.code(), Some(0));
    let second = run("3");
    assert_eq!(second.status.code(), Some(4));
    let err = String::from_utf8(second.stderr).unwrap();
    // Both fingerprints are printed.
    assert!(err.contains("expected fingerprint"), "{err}");
}

#[test]
fn finished_checkpointed_run_reruns_to_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "-q",
        "search",
        "--sizes",
        "1..12",
        "--ranks",
        "all",
        "--report",
        "report.jsonl",
        "--checkpoint",
        "ckpt.jsonl",
    ];
    assert!(qrook_in(dir.path(), &args).status.success());
    let first = std::fs::read(dir.path().join("report.jsonl")).unwrap();
    // Resuming a finished run is a no-op that leaves the report intact.
    assert!(qrook_in(dir.path(), &args).status.success());
    let second = std::fs::read(dir.path().join("report.jsonl")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn stirling_scan_writes_row_records_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "-q",
        "stirling",
        "--scan-log-concave",
        "--max-n",
        "15",
        "--report",
        "rows.jsonl",
        "--checkpoint",
        "rows.ckpt",
    ];
    assert!(qrook_in(dir.path(), &args).status.success());
    let first = std::fs::read_to_string(dir.path().join("rows.jsonl")).unwrap();
    let rows = first
        .lines()
        .filter(|l| l.contains("\"stirling_row\""))
        .count();
    assert_eq!(rows, 15);
    assert!(first.ends_with("\"failures\":0}\n"));

    // Truncate the checkpoint to mid-scan and resume; bytes must match.
    let ckpt_path = dir.path().join("rows.ckpt");
    let ckpt = std::fs::read_to_string(&ckpt_path).unwrap();
    let keep: Vec<&str> = ckpt.lines().take(7).collect();
    std::fs::write(&ckpt_path, format!("{}\n", keep.join("\n"))).unwrap();
    let report_bytes: u64 = serde_json::from_str::<Record>(keep[6])
        .map(|r| match r {
            Record::StirlingCheckpoint(c) => c.report_bytes,
            _ => panic!("expected stirling checkpoint"),
        })
        .unwrap();
    let report_path = dir.path().join("rows.jsonl");
    let full = std::fs::read(&report_path).unwrap();
    std::fs::write(&report_path, &full[..report_bytes as usize]).unwrap();

    assert!(qrook_in(dir.path(), &args).status.success());
    let second = std::fs::read_to_string(&report_path).unwrap();
    assert_eq!(first, second);

    // A different max-n refuses the checkpoint.
    let other = qrook_in(
        dir.path(),
        &[
            "-q",
            "stirling",
            "--scan-log-concave",
            "--max-n",
            "20",
            "--report",
            "rows.jsonl",
            "--checkpoint",
            "rows.ckpt",
        ],
    );
    assert_eq!(other.status.code(), Some(4));
}

#[test]
fn matrix_count_verify_agrees() {
    let out = qrook(&[
        "matrix-count",
        "--partition",
        "2,1",
        "--q",
        "2",
        "--rank",
        "2",
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains(": 2\n"), "{text}");
    assert!(text.contains("agreement: yes"));
}

#[test]
fn output_goes_to_files_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let out = qrook(&[
        "compute",
        "--partition",
        "2,1",
        "--rank",
        "1",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "R_1(2,1; q) = q^2 + 2*q\n"
    );
}

#[test]
fn csv_format_lists_coefficients() {
    let out = qrook(&[
        "compute",
        "--partition",
        "4,1",
        "--rank",
        "1",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("rank,exponent,coefficient\n"));
    assert!(text.contains("1,4,1\n"));
    assert!(text.contains("1,3,2\n"));
    assert!(text.ends_with("1,0,0\n"));
}

#[test]
fn stirling_row_without_k_prints_every_entry() {
    let out = qrook(&["stirling", "--n", "3"]);
    let text = stdout(&out);
    assert_eq!(
        text,
        "S_q(3, 0) = 0\nS_q(3, 1) = 1\nS_q(3, 2) = q^2 + 2*q\nS_q(3, 3) = q^3\n"
    );
}

#[test]
fn workers_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_qrook"))
        .env("QROOK_WORKERS", "3")
        .args(["-q", "search", "--sizes", "1..10", "--ranks", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_qrook"))
        .env("QROOK_WORKERS", "zero")
        .args(["-q", "search", "--sizes", "1..10", "--ranks", "2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
