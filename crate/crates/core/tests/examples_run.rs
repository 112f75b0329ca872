//! Runs each example as a test and checks what it reports.

#[allow(dead_code)]
#[path = "../examples/family_sweep.rs"]
mod family_sweep;

#[allow(dead_code)]
#[path = "../examples/golden_cubic.rs"]
mod golden_cubic;

#[allow(dead_code)]
#[path = "../examples/long_spiral_split.rs"]
mod long_spiral_split;

#[allow(dead_code)]
#[path = "../examples/user_frame.rs"]
mod user_frame;

#[allow(dead_code)]
#[path = "../examples/cubic_existence_scan.rs"]
mod cubic_existence_scan;

#[allow(dead_code)]
#[path = "../examples/locus.rs"]
mod locus;

#[allow(dead_code)]
#[path = "../examples/write_svg.rs"]
mod write_svg;

#[test]
fn family_sweep_has_27_members() {
    assert_eq!(family_sweep::run_example().unwrap(), 27);
}

#[test]
fn golden_cubic_finds_one_cubic() {
    assert_eq!(golden_cubic::run_example().unwrap(), 1);
}

#[test]
fn long_spiral_splits_into_two_intervals() {
    let runs = long_spiral_split::run_example().unwrap();
    assert_eq!(runs.len(), 2);
    assert!(runs[0].1 < 0.0 && runs[1].0 > 0.0);
}

#[test]
fn user_frame_meets_end_conditions() {
    assert!(user_frame::run_example().unwrap() < 1e-9);
}

#[test]
fn existence_scan_finds_cubics_only_near_the_known_data() {
    let rows = cubic_existence_scan::run_example().unwrap();
    for r in &rows[..4] {
        assert!(r.2 > 0);
        assert_eq!(r.3, 0, "{r:?}");
    }
    assert!(rows[4..].iter().any(|r| r.3 == 1));
}

#[test]
fn locus_prints_rows() {
    assert!(locus::run_example().unwrap() > 10);
}

#[test]
fn write_svg_writes_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let files = write_svg::run_example(dir.path()).unwrap();
    assert_eq!(files.len(), 2);
    for f in files {
        let text = std::fs::read_to_string(f).unwrap();
        assert!(text.contains("<svg") && text.contains("<polyline"));
    }
}
