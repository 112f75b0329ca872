//! Counts cubic spirals over grids of end curvatures.

use std::error::Error;

use g2spiral::cubic::find_cubics;
use g2spiral::problem::{compute_invariants, NormalizedProblem};

fn count(alpha: f64, beta: f64, data: impl Iterator<Item = (f64, f64)>) -> (usize, usize) {
    let (mut problems, mut found) = (0, 0);
    for (a, b) in data {
        let raw = NormalizedProblem::from_normalized(alpha, beta, a, b);
        let Ok(p) = compute_invariants(&raw) else { continue };
        problems += 1;
        found += find_cubics(&p).cubics.len();
    }
    (problems, found)
}

/// `(alpha, beta or a, problems, cubics)` per scanned row.
pub type ScanRow = (f64, f64, usize, usize);

pub fn run_example() -> Result<Vec<ScanRow>, Box<dyn Error>> {
    let mut rows = Vec::new();
    let grid = || {
        (0..144)
            .map(|i| (-2.0 + 0.35 * (i / 12) as f64, -1.9 + 0.35 * (i / 12) as f64 + 0.8 * (i % 12) as f64))
    };
    for (alpha, beta) in [(60.0, 60.0), (80.0, 40.0), (100.0, 20.0), (120.0, 0.0)] {
        let (problems, found) = count(f64::to_radians(alpha), f64::to_radians(beta), grid());
        println!("alpha = {alpha:>5.1} deg, beta = {beta:>5.1} deg: {problems:>3} problems, {found} cubics");
        rows.push((alpha, beta, problems, found));
    }
    println!("alpha = -0.1 rad, beta = 1.5 rad, b = 8.26:");
    for i in -6..=6 {
        let a = 0.002 * i as f64;
        let (problems, found) = count(-0.1, 1.5, std::iter::once((a, 8.26)));
        println!(
            "  a = {a:+.3}: {}",
            if problems == 0 { "no spiral".to_string() } else { format!("{found} cubics") }
        );
        rows.push((-0.1, a, problems, found));
    }
    Ok(rows)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
