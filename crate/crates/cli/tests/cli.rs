use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fastsyrk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_prime_field() {
    let o = run(&["verify", "--field", "fp", "--prime", "131071", "--n", "96", "--threshold", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().last().unwrap().starts_with("PASS"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_other_fields() {
    for args in [
        &["verify", "--field", "complex", "--n", "64"][..],
        &["verify", "--field", "gf2k", "--k", "5", "--n", "24", "--cols", "18"],
        &["verify", "--field", "fp2", "--prime", "11", "--n", "12"],
        &["verify", "--field", "fp", "--prime", "7", "--n", "9", "--cols", "13", "--alpha", "3", "--beta", "6"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["verify", "--prime", "4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--threshold", "1"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--n", "12", "--rec", "1"]).status.code(), Some(2));
    assert_eq!(run(&["count"]).status.code(), Some(2));
    assert_eq!(run(&["nrsyf", "--prime", "7", "2", "5"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn table_matches_golden_file() {
    let o = run(&["count", "--table5"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = include_str!("../../core/tests/golden/table5.csv");
    assert_eq!(stdout(&o), golden);
    assert!(golden.contains("syrk,0,32,33264\n") && golden.contains("G0,2,8,651\n"));
}

#[test]
fn single_count_reports_both() {
    let o = run(&["count", "--n", "4", "--rec", "1", "--prime", "5", "--csv"]);
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!((row[6], row[7]), ("92", "92"));
}

#[test]
fn sums_of_squares_and_factors() {
    assert_eq!(stdout(&run(&["sos", "--prime", "7", "6"])), "3 2\n");
    assert_eq!(stdout(&run(&["sos", "--prime", "13", "4"])), "2 0\n");
    assert_eq!(stdout(&run(&["nrsyf", "--prime", "7", "3", "5"])), "1 3\n1 2\n");
}

#[test]
fn syrk_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("a.txt");
    let output = dir.path().join("c.txt");
    fs::write(&input, "2 2\n1 2\n3 4\n").unwrap();
    let o = run(&["syrk", input.to_str().unwrap(), "--prime", "101", "-o", output.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&output).unwrap(), "2 2\n5 0\n11 25\n");

    let o = run(&["syrk", input.to_str().unwrap(), "--prime", "101", "--mirror"]);
    assert_eq!(stdout(&o), "2 2\n5 11\n11 25\n");

    let scaling = dir.path().join("d.txt");
    fs::write(&scaling, "S 1\nS 1\n").unwrap();
    let o = run(&["syrk", input.to_str().unwrap(), "--prime", "101", "--scaling", scaling.to_str().unwrap()]);
    assert_eq!(stdout(&o), "2 2\n5 0\n11 25\n");

    // A D A^T with D = [[0, 1], [1, 0]]: 2 * a_i0 * a_j1
    fs::write(&scaling, "T 1 0\n").unwrap();
    let o = run(&["syrk", input.to_str().unwrap(), "--prime", "101", "--scaling", scaling.to_str().unwrap()]);
    assert_eq!(stdout(&o), "2 2\n4 0\n10 24\n");
}

#[test]
fn syrk_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("a.txt");
    fs::write(&input, "2 2\n1 2\n3\n").unwrap();
    let o = run(&["syrk", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&["syrk", "/definitely/missing"]).status.code(), Some(2));
    let o = run(&["syrk", input.to_str().unwrap(), "--field", "complex", "--scaling", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_csv_shape() {
    let o = run(&["bench", "--start", "8", "--n", "32", "--csv", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("algorithm,n,seconds,effective_gfops"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 12);
    let ns: Vec<usize> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(ns.windows(2).all(|w| w[0] <= w[1]));
    assert!(rows.iter().all(|r| r[3].parse::<f64>().unwrap() > 0.0));
}
