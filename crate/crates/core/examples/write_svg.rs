//! Writes the family and the cubic solutions as two-panel SVG plots.

use std::error::Error;
use std::path::{Path, PathBuf};

use g2spiral::io::{cubic_report, family_report, ProblemFile};
use g2spiral::svg::render;

pub fn run_example(dir: &Path) -> Result<Vec<PathBuf>, Box<dyn Error>> {
    let mut written = Vec::new();
    let (a, b) = ProblemFile::parse(include_str!("../data/long_case.json"))?.points(None)?;
    let family = family_report(&a, &b, 2f64.to_radians(), 200)?;
    let path = dir.join("family.svg");
    std::fs::write(&path, render(&family.members, &a, &b))?;
    written.push(path);

    let (a, b) = ProblemFile::parse(include_str!("../data/short_case.json"))?.points(None)?;
    let cubics = cubic_report(&a, &b, 200)?;
    let path = dir.join("cubic.svg");
    std::fs::write(&path, render(&cubics.cubics, &a, &b))?;
    written.push(path);
    Ok(written)
}

fn main() -> Result<(), Box<dyn Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    for p in run_example(&dir)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}
