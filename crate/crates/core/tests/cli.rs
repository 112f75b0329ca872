//! Command-line behavior: outputs, exit codes and determinism.

use std::path::{Path, PathBuf};

use g2spiral::cli::{run_with, EXIT_NO_SOLUTION, EXIT_OK, EXIT_VALIDATION};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["g2spiral"];
    full.extend_from_slice(args);
    let code = run_with(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn family_writes_json_with_theta_zero_member() {
    let (code, out, _) = run(&["family", "--input", path(&data("long_case.json")), "--samples", "20"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let members = v["members"].as_array().unwrap();
    assert_eq!(members.len(), 27);
    assert!(members.iter().any(|m| m["theta"]["deg"].as_f64().unwrap().abs() < 1e-12));
    assert!(members.iter().all(|m| m["samples"].as_array().unwrap().len() == 20));
    assert_eq!(v["schema"], "g2spiral.output/1");
    let thetas: Vec<f64> = members.iter().map(|m| m["theta"]["rad"].as_f64().unwrap()).collect();
    assert!(thetas.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn family_svg_has_a_curve_per_member() {
    let dir = tempfile::tempdir().unwrap();
    let (json, svg) = (dir.path().join("f.json"), dir.path().join("f.svg"));
    let (code, out, _) =
        run(&["family", "--input", path(&data("long_case.json")), "--out", path(&json), "--svg", path(&svg)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let n = v["members"].as_array().unwrap().len();
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2 * n);
}

#[test]
fn rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let (json, svg) = (dir.path().join(format!("{i}.json")), dir.path().join(format!("{i}.svg")));
        let (code, _, _) = run(&[
            "family",
            "--input",
            path(&data("long_case.json")),
            "--out",
            path(&json),
            "--svg",
            path(&svg),
        ]);
        assert_eq!(code, EXIT_OK);
        outputs.push((std::fs::read(json).unwrap(), std::fs::read(svg).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn circle_data_exit_with_no_solution() {
    let (code, out, _) = run(&["family", "--input", path(&data("circle.json"))]);
    assert_eq!(code, EXIT_NO_SOLUTION);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "NoSpiralExists");
}

#[test]
fn wide_lens_exits_with_no_solution() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("wide.json");
    std::fs::write(
        &f,
        r#"{"start": {"x": -1, "y": 0, "tau": 100, "k": -3}, "end": {"x": 1, "y": 0, "tau": 100, "k": 3}}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["cubic", "--input", path(&f)]);
    assert_eq!(code, EXIT_NO_SOLUTION);
    assert!(out.contains("WideLens"));
}

#[test]
fn malformed_input_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, "{\"start\": 1}").unwrap();
    let (code, out, _) = run(&["family", "--input", path(&f)]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(out.contains("InvalidInput"));
    let (code, _, _) = run(&["family", "--input", path(&dir.path().join("missing.json"))]);
    assert_eq!(code, EXIT_VALIDATION);
    let (code, _, err) = run(&["family"]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(err.contains("--input"));
}

#[test]
fn cubic_reports_accepted_root_and_dispositions() {
    let (code, out, _) = run(&["cubic", "--input", path(&data("short_case.json")), "--samples", "11"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let cubics = v["cubics"].as_array().unwrap();
    assert_eq!(cubics.len(), 1);
    assert_eq!(cubics[0]["degree"], 3);
    assert!((cubics[0]["T"].as_f64().unwrap() + 0.0612).abs() < 5e-5);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 4);
    assert_eq!(roots.iter().filter(|r| r["disposition"] == "Accepted").count(), 1);
    assert_eq!(v["polynomial"].as_array().unwrap().len(), 7);
}

#[test]
fn unit_flag_overrides_file_unit() {
    let (code, out, _) =
        run(&["family", "--input", path(&data("short_case.json")), "--degrees", "--samples", "2"]);
    let (code_rad, out_rad, _) =
        run(&["family", "--input", path(&data("short_case.json")), "--samples", "2"]);
    assert_eq!(code_rad, EXIT_OK);
    assert_ne!((code, out), (code_rad, out_rad));
    let (code, _, err) =
        run(&["family", "--input", path(&data("short_case.json")), "--degrees", "--radians"]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(err.contains("cannot be used with"));
}
