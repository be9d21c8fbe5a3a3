use std::process::{Command, Output};

use orbit_codes::algebra::FieldSpec;
use orbit_codes::groups::{matrix_order, signature_conjugacy_test};
use orbit_codes::text::{parse_divisors, parse_matrix};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbit-codes")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const CODE: [&str; 9] =
    ["code", "--field", "2", "--n", "5", "--divisors", "1,1,0,1;1,1,1", "--subspace", "1,0,0,0,0;0,0,0,1,0"];

#[test]
fn classify_csv_reparses() {
    let f = FieldSpec::prime(3).unwrap();
    let text = stdout(&["classify", "--field", "3", "--n", "2", "--format", "csv"]);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 7);
    let gens: Vec<_> = rows.iter().map(|r| parse_matrix(&f, &r[4]).unwrap()).collect();
    for (row, g) in rows.iter().zip(&gens) {
        assert_eq!(row[1].parse::<u64>().unwrap(), matrix_order(g).unwrap());
        let divisors = parse_divisors(&f, &row[3]).unwrap();
        assert_eq!(divisors.iter().map(|d| d.degree()).sum::<usize>(), 2);
    }
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            assert_eq!(signature_conjugacy_test(a, b).unwrap(), i == j);
        }
    }
}

#[test]
fn code_json_and_csv_agree() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&CODE)).unwrap();
    assert_eq!(json["cardinality"], 21);
    assert_eq!(json["min_distance"], 2);
    assert_eq!(json["distance_distribution"], serde_json::json!([1, 8, 12]));

    let mut args = CODE.to_vec();
    args.extend(["--format", "csv"]);
    let text = stdout(&args);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let row = reader.records().next().unwrap().unwrap();
    assert_eq!(&row[4], "21");
    assert_eq!(&row[6], "1 8 12");
    assert_eq!((&row[7], &row[8], &row[9]), ("4", "2", "21"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut args = CODE.to_vec();
    args.extend(["--out", path.to_str().unwrap()]);
    assert!(stdout(&args).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&CODE));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "codes", "--trials", "20", "--seed", "7", "--format", "json"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let report: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(report["seed"], 7);
    let other = stdout(&["verify", "--suite", "codes", "--trials", "20", "--seed", "8", "--format", "json"]);
    assert_ne!(first, other);
}

#[test]
fn examples_pass() {
    let text = stdout(&["examples"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 6, "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify", "--n", "30"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--field", "6", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["code", "--n", "2", "--divisors", "1,1,1", "--subspace", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let err = String::from_utf8(run(&["code", "--n", "2", "--divisors", "1,1,1", "--subspace", "1,2"]).stderr).unwrap();
    assert!(err.contains("position 2"), "{err}");
}
