//! End-to-end checks of the command-line surface: formats, exit codes,
//! parse errors and byte-level determinism.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gammafilt"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn genus_report_for_crossing_pair() {
    let dir = std::env::temp_dir().join("gammafilt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("crossing.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "n=4;arcs=(1,3)(2,4)").unwrap();
    let out = run(&["genus", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("genus: 1"));
    assert!(text.contains("boundary_components: 1"));
    assert!(text.contains("gamma1=true"));
}

#[test]
fn genus_single_arc_has_empty_shadow() {
    let dir = std::env::temp_dir().join("gammafilt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("single.txt");
    std::fs::write(&path, "n=2;arcs=(1,2)").unwrap();
    let out = run(&["genus", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("genus: 0"));
    assert!(text.contains("shadow: n=0;arcs="));
}

#[test]
fn genus_reports_parse_position() {
    let dir = std::env::temp_dir().join("gammafilt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("malformed.txt");
    std::fs::write(&path, "n=4;arcs=(1,").unwrap();
    let out = run(&["genus", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 1"), "stderr: {}", err);
    assert!(err.contains("column"), "stderr: {}", err);
}

#[test]
fn series_csv_contains_known_row() {
    let out = run(&[
        "series", "--gamma", "1", "--tau", "1", "--terms", "5", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("n,g,count\n"));
    assert!(text.lines().any(|l| l == "3,0,2"), "{}", text);
    assert!(text.ends_with('\n'));
}

#[test]
fn series_json_parses() {
    let out = run(&[
        "series", "--gamma", "1", "--tau", "2", "--terms", "6", "--format", "json",
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(rows.iter().any(|r| {
        r["n"] == 5 && r["g"] == 0 && r["count"] == "2"
    }));
}

#[test]
fn series_output_is_deterministic() {
    let a = stdout(&run(&[
        "series", "--gamma", "2", "--tau", "1", "--terms", "8",
    ]));
    let b = stdout(&run(&[
        "series", "--gamma", "2", "--tau", "1", "--terms", "8",
    ]));
    assert_eq!(a, b);
    // and under forced sequential enumeration
    let c = stdout(&run(&[
        "series", "--gamma", "2", "--tau", "1", "--terms", "8", "--threads", "1",
    ]));
    assert_eq!(a, c);
}

#[test]
fn enumerate_shadows_catalog_layout() {
    let out = run(&["enumerate-shadows", "--genus", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["genus"], 1);
    assert_eq!(
        v["coefficient_vector"],
        serde_json::json!([[2, 1], [3, 2], [4, 1]])
    );
    assert_eq!(v["layers"][0]["diagrams"][0], "n=4;arcs=(1,3)(2,4)");
}

#[test]
fn oracle_check_passes_and_exits_zero() {
    let out = run(&["oracle-check", "--gamma", "1", "--tau", "2", "--max-n", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("structures tau=2 gamma=1 n=8: PASS"));
    assert!(text.trim_end().ends_with("RESULT: PASS"));
}

#[test]
fn clt_table_matches_published_row() {
    let out = run(&["clt-table", "--gamma", "1", "--tau-max", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "tau,gamma,mu,sigma2,theta0,rho0");
    let row = lines.next().unwrap();
    assert!(row.starts_with("1,1,0.0912402"), "{}", row);
    assert!(row.contains(",0.0210668"), "{}", row);
}

#[test]
fn distribution_rows_and_normalization() {
    let out = run(&[
        "distribution", "--n", "40", "--tau", "2", "--gamma", "1", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "g,exact_prob,gaussian_prob");
    assert_eq!(lines.len(), 1 + 21); // header + g = 0..20
    let sum: f64 = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((sum - 1.0).abs() < 1e-9, "sum = {}", sum);
}

#[test]
fn precision_below_thirty_rejected() {
    let out = run(&["clt-table", "--gamma", "1", "--tau-max", "1", "--precision", "20"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("at least 30"));
}

#[test]
fn precision_env_var_is_honored() {
    let out = bin()
        .args(["clt-table", "--gamma", "1", "--tau-max", "1"])
        .env("GAMMAFILT_PRECISION", "25")
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("at least 30"));
}

#[test]
fn flag_ranges_enforced_with_usage() {
    let out = run(&["series", "--gamma", "3", "--tau", "1", "--terms", "5"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("gamma"), "{}", err);
}
