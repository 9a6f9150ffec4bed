use std::process::{Command, Output};

use sds_cli::CsvDocument;

fn sds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn parse_stdout(out: &Output) -> CsvDocument {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let doc: CsvDocument = text.parse().unwrap();
    assert_eq!(doc.render(), text);
    doc
}

#[test]
fn every_command_emits_roundtrippable_csv() {
    let cases: [(&[&str], &str); 6] = [
        (&["model", "--p-minus", "0.2"], "model"),
        (&["table2"], "table2"),
        (&["table1", "--iterations", "300", "--burn-in", "50"], "table1"),
        (&["sweep", "--quantity", "normalized_mean"], "sweep"),
        (&["simulate", "--p-minus", "0.2", "--iterations", "200", "--burn-in", "50", "--emit", "band"], "simulate"),
        (&["ergodicity", "--p-minus", "0.5", "--iterations", "100"], "ergodicity"),
    ];
    for (args, command) in cases {
        let doc = parse_stdout(&sds(args));
        assert_eq!(doc.meta_value("command"), Some(command), "{args:?}");
        assert!(!doc.rows.is_empty(), "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let path = std::env::temp_dir().join(format!("sds-out-{}.csv", std::process::id()));
    let to_file = sds(&["table2", "--out", path.to_str().unwrap()]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, sds(&["table2"]).stdout);
}

#[test]
fn invalid_arguments_exit_with_two() {
    for args in [
        &["model", "--p-minus", "2"][..],
        &["model", "--p-m", "-0.1"],
        &["simulate", "--n-agents", "0"],
        &["sweep", "--grid-p-minus", "1:0:0.1"],
        &["no-such-command"],
    ] {
        let out = sds(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn unwritable_output_exits_with_one() {
    let out = sds(&["table2", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seed_changes_simulated_output() {
    let a = sds(&["simulate", "--p-minus", "0.2", "--iterations", "100", "--burn-in", "10", "--seed", "1"]).stdout;
    let b = sds(&["simulate", "--p-minus", "0.2", "--iterations", "100", "--burn-in", "10", "--seed", "2"]).stdout;
    assert_ne!(a, b);
}
