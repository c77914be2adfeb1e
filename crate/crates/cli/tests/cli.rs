//! End-to-end tests driving the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn xorca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xorca"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = xorca(args);
    assert!(
        out.status.success(),
        "xorca {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("ascii output")
}

fn tmp_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn evolve_identity_rule_renders_a_single_seed() {
    let out = stdout(&["evolve", "--rule", "1"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 80);
    assert!(lines.iter().all(|l| l.len() == 80));
    assert_eq!(out.matches('#').count(), 1);
    assert_eq!(lines[40].find('#'), Some(40));
}

#[test]
fn evolve_shift_rule_moves_the_seed() {
    let out = stdout(&["evolve", "--rule", "2"]);
    assert_eq!(out.lines().nth(40).unwrap().find('#'), Some(25));

    // --k 4 is sugar for --n 15.
    let sugared = stdout(&["evolve", "--rule", "2", "--k", "4"]);
    assert_eq!(out, sugared);
}

#[test]
fn evolve_pbm_round_trips_through_the_parser() {
    let out = stdout(&["evolve", "--rule", "3", "--format", "pbm"]);
    assert!(out.starts_with("P1\n80 80\n"));
    let grid = xorca::Grid::from_pbm(&out).unwrap();
    assert_eq!(grid.count_ones(), 16);
    let expected: Vec<(usize, usize)> = (25..=40).map(|c| (40, c)).collect();
    assert_eq!(
        grid.snapshot(0, xorca::RuleMask::new(3).unwrap(), false)
            .coords,
        expected
    );
}

#[test]
fn evolve_writes_to_a_file() {
    let path = tmp_path("rule21.pbm");
    stdout(&[
        "evolve",
        "--rule",
        "21",
        "--format",
        "pbm",
        "--out",
        path.to_str().unwrap(),
    ]);
    let grid = xorca::Grid::from_pbm(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(grid.count_ones() > 16); // triangle, not a line
}

#[test]
fn classify_verdict_lines() {
    assert_eq!(
        stdout(&["classify", "--rule", "1"]),
        "1,1,point,continuous,1\n"
    );
    assert_eq!(stdout(&["classify", "--rule", "0"]), "0,0,empty,empty,0\n");
    assert_eq!(
        stdout(&["classify", "--rule", "18"]),
        "18,2,line,discrete,16\n"
    );
    // 81 cells: one per pair of disjoint bit-submasks of 15 distributed
    // over rule 21's two non-center displacement vectors.
    assert_eq!(
        stdout(&["classify", "--rule", "21"]),
        "21,3,triangle,continuous,81\n"
    );
}

#[test]
fn census_defaults_to_all_rules_on_stdout() {
    let out = stdout(&["census"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 513);
    assert_eq!(
        lines[0],
        "rule,group,shape,connectivity,cell_count,touched_boundary"
    );
    assert_eq!(lines[1], "0,0,empty,empty,0,false");
    assert_eq!(lines[4], "3,2,line,continuous,16,false");
}

#[test]
fn classify_matches_the_census_row() {
    let census = stdout(&["census", "--rules", "21,18,239", "--n", "7"]);
    for line in census.lines().skip(1) {
        let rule = line.split(',').next().unwrap();
        let verdict = stdout(&["classify", "--rule", rule, "--n", "7"]);
        let row_prefix = line.rsplit_once(',').unwrap().0; // drop touched_boundary
        assert_eq!(verdict.trim_end(), row_prefix, "rule {rule}");
    }
}

#[test]
fn census_of_the_group_1_rules_is_all_points() {
    let out = stdout(&["census", "--rules", "1,2,4,8,16,32,64,128,256"]);
    let lines: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(lines.len(), 9);
    for line in lines {
        assert!(line.contains(",point,"), "{line}");
        assert!(line.ends_with(",1,false"), "{line}");
    }
}

#[test]
fn census_rule_ranges_normalize() {
    let out = stdout(&["census", "--rules", "18-20,5,3,5"]);
    let rules: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(rules, vec!["3", "5", "18", "19", "20"]);
}

#[test]
fn census_runs_are_byte_identical() {
    let a = stdout(&["census"]);
    let b = stdout(&["census"]);
    assert_eq!(a, b);
}

#[test]
fn census_with_reference_table_writes_a_diff() {
    let csv_path = tmp_path("census.csv");
    let table_path = tmp_path("conn_table.txt");
    std::fs::write(&table_path, xorca::census::CONNECTIVITY_TABLE_TEXT).unwrap();

    let out = stdout(&[
        "census",
        "--out",
        csv_path.to_str().unwrap(),
        "--paper-table",
        table_path.to_str().unwrap(),
    ]);
    assert!(out.contains("connectivity:"));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 513);

    let diff_path = tmp_path("census.conn_table.diff.json");
    let diff: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&diff_path).unwrap()).unwrap();
    assert_eq!(diff["table"], "connectivity");
    assert!(!diff["disagreements"].as_array().unwrap().is_empty());
}

#[test]
fn diff_subcommand_uses_the_bundled_tables() {
    let out = stdout(&["diff", "--table", "connectivity"]);
    let diff: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(diff["agreements"], 184);
    assert_eq!(diff["clean_listed"], 235);
    let anomalies: Vec<u64> = diff["paper_anomalies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["rule"].as_u64().unwrap())
        .collect();
    assert_eq!(anomalies, vec![87, 104, 232, 257, 279, 292]);

    let out = stdout(&["diff", "--table", "shape"]);
    let diff: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(diff["row_consensus"]["row-3"], "triangle");
}

#[test]
fn count_subcommands_print_exact_decimals() {
    assert_eq!(
        stdout(&["count", "uniform", "--states", "2", "--neighborhood", "8"]),
        "115792089237316195423570985008687907853269984665640564039457584007913129639936\n\
         ~ 1.16e77\n"
    );
    assert_eq!(stdout(&["count", "linear", "--neighborhood", "9"]), "512\n");
    assert_eq!(
        stdout(&["count", "uniform", "--states", "1", "--neighborhood", "5"]),
        "1\n"
    );
    assert_eq!(
        stdout(&[
            "count",
            "hybrid-time",
            "--states",
            "2",
            "--neighborhood",
            "3",
            "--length",
            "2",
            "--time",
            "2"
        ]),
        "4294967296\n~ 4.29e9\n"
    );
    assert_eq!(
        stdout(&[
            "count",
            "heterogeneous",
            "--cell",
            "2,1",
            "--cell",
            "3,1",
            "--time",
            "2"
        ]),
        "11664\n"
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["evolve", "--rule", "512"] as &[&str],
        &["evolve"],
        &["evolve", "--rule", "1", "--n", "3", "--k", "2"],
        &["census", "--paper-table", "x.txt"], // requires --out
        &["diff", "--table", "nonsense"],
    ] {
        let out = xorca(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn data_errors_exit_1() {
    let bad_table = tmp_path("bad_table.txt");
    std::fs::write(&bad_table, "group-2 discrete: 3, banana\n").unwrap();
    let csv_path = tmp_path("unused.csv");
    let out = xorca(&[
        "census",
        "--out",
        csv_path.to_str().unwrap(),
        "--paper-table",
        bad_table.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 1"), "{stderr}");

    // Missing table file and unwritable output are I/O errors too.
    let out = xorca(&["diff", "--table", "shape", "--file", "/no/such/file.txt"]);
    assert_eq!(out.status.code(), Some(1));
    let out = xorca(&["census", "--out", "/no/such/dir/census.csv"]);
    assert_eq!(out.status.code(), Some(1));

    // Bad rule inside a --rules list is a data error.
    let out = xorca(&["census", "--rules", "900"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn count_budget_errors_exit_1() {
    let out = xorca(&["count", "uniform", "--states", "2", "--neighborhood", "40"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("digit"));
}
