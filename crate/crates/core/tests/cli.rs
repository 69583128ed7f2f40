//! End-to-end checks of the `wrideal` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn wrideal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wrideal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Rows as strings keyed by header, whatever the output format.
fn table(args: &[&str], format: &str) -> Vec<Vec<(String, String)>> {
    let mut full = args.to_vec();
    full.extend(["--format", format]);
    let out = wrideal(&full);
    assert!(
        out.status.success(),
        "{full:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    match format {
        "jsonl" => text
            .lines()
            .map(|line| {
                let Value::Object(map) = serde_json::from_str(line).unwrap() else {
                    panic!("not an object: {line}");
                };
                map.into_iter()
                    .map(|(k, v)| {
                        let v = match v {
                            Value::Null => String::new(),
                            Value::String(s) => s,
                            other => other.to_string(),
                        };
                        (k, v)
                    })
                    .collect()
            })
            .collect(),
        _ => {
            let delim = if format == "tsv" { b'\t' } else { b',' };
            let mut rdr = csv::ReaderBuilder::new()
                .delimiter(delim)
                .from_reader(text.as_bytes());
            let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
            rdr.records()
                .map(|rec| {
                    headers
                        .iter()
                        .cloned()
                        .zip(rec.unwrap().iter().map(String::from))
                        .collect()
                })
                .collect()
        }
    }
}

#[test]
fn solve_21() {
    let out = wrideal(&["solve", "--D", "21"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "D,r,p,q\n21,1,2,5\n");
}

#[test]
fn table1_has_four_rows() {
    let out = wrideal(&["table1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    let ds: Vec<&str> = rows.iter().map(|r| r.split(',').next().unwrap()).collect();
    assert_eq!(ds, ["21", "77", "133", "209"]);
}

#[test]
fn non_squarefree_is_a_domain_error() {
    let out = wrideal(&["solve", "--D", "12"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("D must be squarefree"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(wrideal(&["solve"]).status.code(), Some(2));
    assert_eq!(wrideal(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wrideal(&["reduce", "--form", "1,2"]).status.code(), Some(2));
    assert_eq!(wrideal(&["--help"]).status.code(), Some(0));
}

#[test]
fn formats_carry_the_same_rows() {
    let cases: &[&[&str]] = &[
        &["solve", "--D", "1155"],
        &["table1"],
        &["construct", "--D", "105"],
        &["classify", "--field", "-21", "--a-max", "40"],
        &["reduce", "--form", "18,18,15"],
        &["scan", "--max", "60"],
        &["density", "--max", "500"],
        &["classnumber", "--max", "40"],
        &["principal", "--field", "-3", "--height", "3"],
        &["nearsquare", "--D", "30"],
        &["ideals", "--field", "5", "--a-max", "12"],
    ];
    for args in cases {
        let csv = table(args, "csv");
        assert!(!csv.is_empty(), "{args:?} printed nothing");
        assert_eq!(csv, table(args, "tsv"), "{args:?} csv vs tsv");
        let mut jsonl = table(args, "jsonl");
        let mut csv_sorted = csv.clone();
        // JSON objects carry no column order of their own
        for rows in [&mut jsonl, &mut csv_sorted] {
            for row in rows.iter_mut() {
                row.sort();
            }
        }
        assert_eq!(csv_sorted, jsonl, "{args:?} csv vs jsonl");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["scan", "--max", "20000"][..],
        &["classify", "--field", "-1155", "--a-max", "600"],
        &[
            "principal",
            "--field",
            "-1",
            "--height",
            "20",
            "--format",
            "jsonl",
        ],
    ] {
        let first = wrideal(args);
        let second = wrideal(args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn scan_rows_are_ascending_and_squarefree() {
    let rows = table(&["scan", "--max", "5000"], "csv");
    let ds: Vec<u64> = rows
        .iter()
        .filter(|r| r[0].1 == "record")
        .map(|r| r[1].1.parse().unwrap())
        .collect();
    assert!(ds.windows(2).all(|w| w[0] < w[1]));
    assert!(ds
        .iter()
        .all(|&d| wrideal::arith::is_squarefree(d).unwrap()));
    assert_eq!(ds.len(), 3_042);
}
