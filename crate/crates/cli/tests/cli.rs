use std::process::{Command, Output};

fn dwtap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwtap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dwtap(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn kv<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn eval_reports_known_rates() {
    let out = stdout(&["eval", "--p", "10", "--c", "1.5", "--g", "0.1"]);
    assert_eq!(kv(&out, "ub2.rate"), "1.49403");
    assert_eq!(kv(&out, "lb2"), "1.49403");
    assert_eq!(kv(&out, "ub2.rho"), "0.678189");

    let out = stdout(&["eval", "--p", "10", "--c", "10", "--g", "0.1", "--scenario", "1"]);
    assert_eq!(kv(&out, "ub1.rate"), "1.51781");
    assert!(!out.contains("ub2"));
}

#[test]
fn invalid_input_exits_with_one() {
    for args in [
        &["eval", "--p", "10", "--c", "1", "--g", "1"][..],
        &["eval", "--p", "-1", "--c", "1", "--g", "0.1"],
        &["eval", "--p", "10", "--g", "0.1"],
        &["eval", "--p", "10", "--c", "1", "--g", "0.1", "--rprime", "-2"],
        &[
            "sweep", "--p", "10", "--g", "0.1", "--param", "c", "--from", "0", "--to", "1", "--steps", "0",
        ],
        &[
            "sweep", "--p", "10", "--g", "0.1", "--param", "c", "--from", "0", "--to", "1", "--steps", "2",
            "--format", "kv",
        ],
        &["capacity", "--p1", "10", "--p2", "5", "--c", "1", "--g", "0.1"],
        &["nonsense"],
    ] {
        let out = dwtap(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn help_exits_cleanly() {
    let out = dwtap(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("sweep"));
}

#[test]
fn single_step_sweep_matches_eval() {
    let base = [
        "--p1", "10", "--p2", "3", "--c1", "0.7", "--c2", "1.2", "--g", "0.3",
    ];
    let mut args = vec!["eval", "--format", "csv"];
    args.extend(base);
    let (eval_header, eval_rows) = csv_rows(&stdout(&args));

    let mut args = vec![
        "sweep", "--param", "g", "--from", "0.3", "--to", "0.3", "--steps", "1",
    ];
    args.extend(base);
    let (header, rows) = csv_rows(&stdout(&args));
    assert_eq!(header[0], "g");
    assert_eq!(header[1..], eval_header[..]);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "0.3");
    assert_eq!(rows[0][1..], eval_rows[0][..]);
}

#[test]
fn silent_eavesdropper_bounds_match_no_secrecy() {
    let out = stdout(&[
        "sweep", "--p", "5", "--g", "0", "--param", "c", "--from", "0", "--to", "3", "--steps", "7",
    ]);
    let (header, rows) = csv_rows(&out);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    for r in &rows {
        assert_eq!(r[col("ub1")], r[col("nosecrecy_ub")]);
        assert_eq!(r[col("lb1")], r[col("nosecrecy_lb")]);
    }
}

#[test]
fn thresholds_at_unit_power() {
    let out = stdout(&["thresholds", "--p", "1", "--g", "0.1", "--scenario", "1"]);
    assert_eq!(kv(&out, "scenario1.wins.1"), "0.330482 0.887486");
    assert!(!out.contains("scenario2"));

    let out = stdout(&[
        "thresholds",
        "--p",
        "1",
        "--g",
        "0.1",
        "--lhs",
        "lb1_pdfm",
        "--rhs",
        "lb1_pdf,lb1_df",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let wins = &v[0]["winning_intervals"][0];
    assert!((wins[0].as_f64().unwrap() - 0.330482).abs() < 1e-5);
    assert!((wins[1].as_f64().unwrap() - 0.887486).abs() < 1e-5);
}

#[test]
fn capacity_inside_and_outside_the_window() {
    let out = stdout(&["capacity", "--p", "10", "--c", "1.5", "--g", "0.1"]);
    assert_eq!(kv(&out, "applies"), "true");
    assert_eq!(kv(&out, "capacity"), "1.49403");
    assert_eq!(kv(&out, "window.lo"), "1.09808");
    assert_eq!(kv(&out, "window.hi"), "2.17922");

    let out = stdout(&["capacity", "--p", "10", "--c", "3", "--g", "0.1"]);
    assert_eq!(kv(&out, "applies"), "false");
}

#[test]
fn oracle_check_passes() {
    let out = stdout(&["oracle-check", "--trials", "200", "--seed", "7"]);
    assert_eq!(kv(&out, "result"), "pass");
    assert_eq!(kv(&out, "failures"), "0");
}

#[test]
fn oracle_check_failure_exits_with_two() {
    let out = dwtap(&["oracle-check", "--trials", "50", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dmc_document_from_file() {
    // X1 reaches Y noiselessly, X2 is ignored, Z is constant.
    let doc = serde_json::json!({
        "alphabet_sizes": [2, 2, 2, 1],
        "transition": [1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0],
        "input_pmf": [0.25, 0.25, 0.25, 0.25],
        "c1": 0.5,
        "c2": 2.0,
    });
    let path = std::env::temp_dir().join(format!("dwtap-dmc-{}.json", std::process::id()));
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = stdout(&["dmc", "--path", path.to_str().unwrap()]);
    std::fs::write(&path, "{\"alphabet_sizes\": [2]}").unwrap();
    let bad = dwtap(&["dmc", "--path", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();

    assert_eq!(kv(&out, "info.sum_y"), "1");
    assert_eq!(kv(&out, "info.sum_z"), "0");
    assert_eq!(kv(&out, "df"), "0.5");
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(
        dwtap(&["dmc", "--path", "/nonexistent/dmc.json"]).status.code(),
        Some(1)
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "sweep",
        "--p1",
        "10",
        "--p2",
        "1",
        "--g",
        "0.2",
        "--param",
        "c",
        "--from",
        "0",
        "--to",
        "2",
        "--steps",
        "9",
        "--c2-offset",
        "0.5",
        "--rprime",
        "1",
        "--format",
        "json",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}
