use std::path::Path;
use std::process::{Command, Output};

fn gravatom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gravatom"))
        .args(args)
        .env_remove("GRAVATOM_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn meta<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    let prefix = format!("# {key}: ");
    text.lines().find_map(|l| l.strip_prefix(prefix.as_str()))
}

#[test]
fn decompose_closed_form_3s() {
    let o = gravatom(&["decompose", "--n", "3", "--l", "0", "--strain", "1e-3", "--method", "closed-form"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# schema: "));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 2);
    let c0: f64 = rows[0][3].parse().unwrap();
    assert!((c0 - (1.0 - 1e-3 / 3.0 * 64.0)).abs() < 1e-15);
    assert_eq!((rows[1][0].as_str(), rows[1][1].as_str()), ("3", "2"));
}

#[test]
fn decompose_ground_state_unstrained() {
    let o = gravatom(&["decompose", "--n", "1", "--l", "0", "--strain", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][3], "1");
}

#[test]
fn invalid_state_exits_2() {
    let o = gravatom(&["decompose", "--n", "2", "--l", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("l must satisfy"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gravatom(&["decompose", "--n", "x", "--l", "0"]).status.code(), Some(2));
    assert_eq!(gravatom(&["detuning", "--lower", "1j", "--upper", "2p"]).status.code(), Some(2));
    assert_eq!(gravatom(&["rabi", "--omega", "47", "--detuning", "1Hz", "--cycles", "3"]).status.code(), Some(2));
    assert_eq!(gravatom(&["decompose", "--n", "3", "--l", "0", "--strain", "0.7"]).status.code(), Some(2));
    assert_eq!(gravatom(&["bogus"]).status.code(), Some(2));
}

#[test]
fn non_convergence_exits_3() {
    let o = gravatom(&["decompose", "--n", "8", "--l", "0", "--strain", "1e-3", "--method", "numeric", "--radial-nodes", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn detuning_1s_2p_matches_golden() {
    let o = gravatom(&["detuning", "--lower", "1s", "--upper", "2p", "--strain", "1e-20", "--species", "hydrogen"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = data_rows(&stdout(&o));
    let slope: f64 = rows[0][6].parse().unwrap();
    let delta: f64 = rows[0][7].parse().unwrap();
    assert!((slope - 88.0 / 15.0).abs() < 1e-14);
    assert_eq!(delta, slope * 1e-20);
}

#[test]
fn detuning_zero_strain() {
    let o = gravatom(&["detuning", "--lower", "1s", "--upper", "2p"]);
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows[0][7], "0");
}

#[test]
fn detuning_with_defect_file_reports_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("rb.cfg");
    std::fs::write(&cfg, "[rb]\nlabel = test rubidium\ns = 3.1311804\np = 2.6548849\n").unwrap();
    let o = gravatom(&[
        "detuning",
        "--lower",
        "50s",
        "--upper",
        "51p",
        "--strain",
        "1e-20",
        "--species",
        "rb",
        "--defects",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(meta(&text, "energy_model").unwrap().contains("quantum defects"));
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert!(header.ends_with("ratio_to_hydrogen_1s2p"));
    let ratio: f64 = data_rows(&text)[0][9].parse().unwrap();
    assert!(ratio > 0.0 && ratio.is_finite());
}

#[test]
fn species_from_search_path() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("gravatom.cfg"), "[cs]\ns = 4.05\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_gravatom"))
        .args(["detuning", "--lower", "40s", "--upper", "41p", "--species", "cs"])
        .env("GRAVATOM_CONFIG", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(meta(&stdout(&o), "species_origin").unwrap().ends_with("gravatom.cfg"));
    assert_eq!(gravatom(&["detuning", "--lower", "40s", "--upper", "41p", "--species", "cs"]).status.code(), Some(2));
}

#[test]
fn figure2_zero_cycles_is_header_only() {
    let o = gravatom(&["figure2", "--cycles", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# schema: N [1], deltaP [1], regime\n"));
    let non_meta: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(non_meta, vec!["N,deltaP,regime"]);
}

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

#[test]
fn rabi_from_transition_has_n_squared_growth() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rabi.csv");
    let o = gravatom(&[
        "rabi",
        "--omega",
        "47kHz",
        "--detuning-from",
        "50s:51p",
        "--strain",
        "1e-20",
        "--cycles",
        "1e6",
        "--species",
        "rb-example",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1_000_000);
    for col in [2usize, 5] {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .step_by(1009)
            .map(|r| (r[0].parse::<f64>().unwrap().log10(), r[col].parse::<f64>().unwrap().abs().log10()))
            .collect();
        let slope = fit_slope(&pts);
        assert!((slope - 2.0).abs() <= 1e-3, "column {col}: slope {slope}");
    }
}

#[test]
fn rabi_direct_detuning_times() {
    let o = gravatom(&["rabi", "--omega", "1rad/s", "--detuning", "0.1rad/s", "--times", "0,6.283185307179586"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][2], "0");
    let v: f64 = rows[1][2].parse().unwrap();
    assert!((v + 2.4306334139097539e-4).abs() < 1e-15);
    assert!(text.lines().find(|l| !l.starts_with('#')).unwrap().starts_with("t,"));
}

fn run_to_file(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.push("--output");
    all.push(&p);
    let o = gravatom(&all);
    assert!(o.status.success() || o.status.code() == Some(1));
    std::fs::read(path).unwrap()
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["decompose", "--n", "4", "--l", "0", "--strain", "1e-3", "--method", "numeric"],
        &["figure2", "--cycles", "500", "--format", "json"],
        &["verify", "--suite", "basis"],
        &["claims"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let a = run_to_file(dir.path(), &format!("a{i}"), args);
        let b = run_to_file(dir.path(), &format!("b{i}"), args);
        assert_eq!(a, b, "{args:?}");
        assert!(a.starts_with(b"# schema: ") || a.starts_with(b"{"));
    }
}

#[test]
fn stamp_only_touches_metadata() {
    let plain = stdout(&gravatom(&["figure2", "--cycles", "3"]));
    let stamped = stdout(&gravatom(&["figure2", "--cycles", "3", "--stamp"]));
    assert!(meta(&stamped, "stamp").is_some());
    let strip = |s: &str| s.lines().filter(|l| !l.starts_with("# stamp:")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&plain), strip(&stamped));
}

#[test]
fn json_mirrors_csv() {
    let csv = stdout(&gravatom(&["decompose", "--n", "5", "--l", "2", "--strain", "1e-4"]));
    let json = stdout(&gravatom(&["decompose", "--n", "5", "--l", "2", "--strain", "1e-4", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows = data_rows(&csv);
    assert_eq!(v["rows"].as_array().unwrap().len(), rows.len());
    for (j, r) in v["rows"].as_array().unwrap().iter().zip(&rows) {
        assert_eq!(j[3].as_f64().unwrap(), r[3].parse::<f64>().unwrap());
    }
    assert_eq!(v["schema"][3]["name"], "coefficient");
    assert_eq!(v["metadata"]["method"], "closed_form");
}

#[test]
fn verify_table1_reports_ten_rows_and_fails_on_the_misprint() {
    let o = gravatom(&["verify", "--suite", "table1"]);
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows.len(), 10);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_passing_suite_exits_0() {
    for suite in ["parity", "basis", "closed-form", "parseval", "detuning", "figure2", "claims"] {
        assert_eq!(gravatom(&["verify", "--suite", suite]).status.code(), Some(0), "{suite}");
    }
}
