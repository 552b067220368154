use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use smallgon::{validate, SmallPolygon};
use smallgon_cli::format::parse_csv;
use smallgon_cli::record::PolygonRecord;

fn smallgon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smallgon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = smallgon(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn text_field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(|v| v.trim().parse().unwrap()))
        .unwrap_or_else(|| panic!("no field {key} in\n{text}"))
}

fn write_record(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut full = args.to_vec();
    full.extend(["--format", "json", "--out", path.to_str().unwrap()]);
    ok(&full);
    path
}

#[test]
fn bound_prints_bound_and_regular_area() {
    let t = ok(&["bound", "--n", "6"]);
    assert!((text_field(&t, "upper_bound") - 0.6877007594).abs() <= 5e-11);
    assert!((text_field(&t, "regular_area") - 0.6495190528).abs() <= 5e-11);
    let t = ok(&["bound", "--n", "30"]);
    assert!((text_field(&t, "upper_bound") - 0.7817597927).abs() <= 5e-11);
    assert!((text_field(&t, "regular_area") - 0.7796688406).abs() <= 5e-11);
    let v = json(&["bound", "--n", "30", "--format", "json"]);
    let gap = v["upper_bound"].as_f64().unwrap() - v["regular_area"].as_f64().unwrap();
    assert_eq!(v["gap"].as_f64().unwrap(), gap);
}

#[test]
fn bound_rejects_odd_n() {
    assert_eq!(smallgon(&["bound", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(smallgon(&["bound", "--m", "6"]).status.code(), Some(2));
    assert_eq!(smallgon(&["construct", "--n", "x"]).status.code(), Some(2));
    assert_eq!(
        smallgon(&["bound", "--n", "6", "--format", "svg"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn construct_twelve_four_json() {
    let v = json(&["construct", "--n", "12", "--r", "4", "--format", "json"]);
    assert!((v["area"].as_f64().unwrap() - 0.7607298734487962).abs() <= 1e-12);
    assert_eq!(v["method"], "reduced");
    assert_eq!(v["r"], 4);
    assert_eq!(v["angles"].as_array().unwrap().len(), 6);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 12);
    assert_eq!(v["valid"]["is_small"], true);
    assert_eq!(v["diagnostics"]["converged"], true);
}

#[test]
fn construct_regular_plus_one() {
    let t = ok(&["construct", "--n", "6", "--r", "0"]);
    assert!((text_field(&t, "area") - 0.6722882584).abs() <= 5e-11);
}

#[test]
fn construct_rejects_small_n_for_r() {
    let out = smallgon(&["construct", "--n", "8", "--r", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2r + 4"));
}

#[test]
fn construct_without_r_uses_piecewise_choice() {
    let v = json(&["construct", "--n", "40", "--format", "json"]);
    assert_eq!(v["method"], "theorem");
    assert_eq!(v["r"], 16);
    let v = json(&["construct", "--n", "20", "--format", "json"]);
    assert_eq!(v["r"], 8);
}

#[test]
fn construct_regular_polygon() {
    let v = json(&["construct", "--n", "12", "--regular", "--format", "json"]);
    assert_eq!(v["method"], "regular");
    assert!((v["area"].as_f64().unwrap() - 0.75).abs() <= 1e-15);
    assert!((v["diameter"].as_f64().unwrap() - 1.0).abs() <= 1e-15);
    assert_eq!(v["valid"]["is_symmetric"], true);
}

#[test]
fn optimize_areas() {
    let t = ok(&["optimize", "--n", "14"]);
    assert!((text_field(&t, "area") - 0.7675310111).abs() <= 1e-9);
    let t = ok(&["optimize", "--n", "60"]);
    assert!((text_field(&t, "area") - 0.7844842796).abs() <= 1e-9);
}

#[test]
fn optimize_hexagon_angles() {
    let v = json(&["optimize", "--n", "6", "--format", "json"]);
    let angles: Vec<f64> = v["angles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.as_f64().unwrap())
        .collect();
    for (a, printed) in angles.iter().zip([0.350930, 0.653342, 0.566524]) {
        assert!((a - printed).abs() <= 5e-7, "{a} vs {printed}");
    }
    assert_eq!(v["method"], "full-nlp");
    assert!(v["r"].is_null());
}

#[test]
fn iteration_cap_reports_non_convergence() {
    assert_eq!(
        smallgon(&["optimize", "--n", "40", "--max-iter", "1"])
            .status
            .code(),
        Some(3)
    );
}

fn max_delta(report: &Value, cell: Option<&str>) -> f64 {
    report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["cells"].as_array().unwrap())
        .filter(|c| cell.is_none_or(|name| c["name"] == name))
        .map(|c| c["delta"].as_f64().unwrap().abs())
        .fold(0.0, f64::max)
}

#[test]
fn table5_small_n() {
    let v = json(&[
        "table",
        "--which",
        "table5",
        "--n",
        "6,8,10,12",
        "--format",
        "json",
    ]);
    let keys: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["key"].as_str().unwrap())
        .collect();
    assert_eq!(keys, ["n=6", "n=8", "n=10", "n=12"]);
    assert!(max_delta(&v, None) <= 1e-9);
    assert_eq!(v["pass"], true);
}

#[test]
fn table5_largest_n() {
    let v = json(&[
        "table", "--which", "table5", "--n", "120", "--format", "json",
    ]);
    assert!(max_delta(&v, Some("P_star")) <= 1e-8);
}

#[test]
fn table2_cubic_rows() {
    let v = json(&[
        "table", "--which", "table2", "--r", "1,2,3", "--format", "json",
    ]);
    assert!(max_delta(&v, Some("q")) <= 1e-12);
    assert_eq!(v["pass"], true);
}

#[test]
fn table3_all_rows() {
    let t = ok(&["table", "--which", "table3"]);
    assert!(t.contains("all within tolerance"));
    assert_eq!(t.lines().filter(|l| l.contains(" area ")).count(), 4);
}

#[test]
fn table_rejects_unknown_rows_and_selectors() {
    assert_eq!(
        smallgon(&["table", "--which", "table5", "--n", "26"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        smallgon(&["table", "--which", "table2", "--n", "6"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        smallgon(&["table", "--which", "table4"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_emitted_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_record(
        dir.path(),
        "q61.json",
        &["construct", "--n", "6", "--r", "1"],
    );
    let out = ok(&["verify", path.to_str().unwrap(), "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    for flag in ["is_convex", "is_symmetric", "is_small"] {
        assert_eq!(v[flag], true, "{flag}");
    }
    let record: PolygonRecord =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let oracle = validate(&SmallPolygon::from_vertices(record.points()));
    assert_eq!(v["diameter"].as_f64().unwrap(), oracle.diameter);
    assert_eq!(v["area"].as_f64().unwrap(), oracle.area);
}

#[test]
fn verify_tampered_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let csv = ok(&["construct", "--n", "10", "--r", "3", "--format", "csv"]);
    let mut lines: Vec<String> = csv.lines().map(String::from).collect();
    let last = lines.len() - 1;
    lines[last] = format!("{},0,1.01", last - 1);
    let path = dir.path().join("tampered.csv");
    std::fs::write(&path, lines.join("\n")).unwrap();
    let out = smallgon(&["verify", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["is_small"], false);
}

#[test]
fn verify_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "x,y\n0,0\n").unwrap();
    assert_eq!(
        smallgon(&["verify", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        smallgon(&["verify", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn csv_reingestion_keeps_diameter() {
    for (n, r) in [("6", "1"), ("12", "4"), ("40", "16")] {
        let v = json(&["construct", "--n", n, "--r", r, "--format", "json"]);
        let csv = ok(&["construct", "--n", n, "--r", r, "--format", "csv"]);
        assert!(csv.starts_with("index,x,y\n"));
        let pts = parse_csv(&csv).unwrap();
        let d = SmallPolygon::from_vertices(pts).diameter();
        assert!((d - v["diameter"].as_f64().unwrap()).abs() <= 1e-15);
    }
}

#[test]
fn render_twelve_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_record(
        dir.path(),
        "q124.json",
        &["construct", "--n", "12", "--r", "4"],
    );
    let svg_path = dir.path().join("q124.svg");
    ok(&[
        "render",
        path.to_str().unwrap(),
        "--out",
        svg_path.to_str().unwrap(),
    ]);
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.contains(r#"viewBox="-0.6 -0.05 1.2 1.15""#));
    assert!(svg.contains("matrix(1 0 0 -1 0 1.05)"));
    assert_eq!(svg.matches("<line ").count(), 12);
    assert_eq!(svg.matches("<circle ").count(), 1);
    let path_d = svg
        .lines()
        .find(|l| l.starts_with(r#"<path class="polygon""#))
        .unwrap();
    assert_eq!(path_d.matches('L').count(), 11);
    assert!(path_d.contains('Z'));

    let direct = ok(&["construct", "--n", "12", "--r", "4", "--format", "svg"]);
    assert_eq!(svg, direct);
}

#[test]
fn record_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_record(dir.path(), "p16.json", &["optimize", "--n", "16"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let record: PolygonRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(smallgon_cli::format::to_json(&record).unwrap(), text);
}
