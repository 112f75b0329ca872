//! Symmetric long-spiral data whose family splits into two intervals around a discontinuous member.

use std::error::Error;

use g2spiral::family::build_family;
use g2spiral::io::ProblemFile;
use g2spiral::problem::NormalizedProblem;

/// Groups sorted parameter values into runs separated by more than one step.
pub fn intervals(thetas: &[f64], step: f64) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for &t in thetas {
        match out.last_mut() {
            Some(last) if t - last.1 <= step * 1.5 => last.1 = t,
            _ => out.push((t, t)),
        }
    }
    out
}

pub fn run_example() -> Result<Vec<(f64, f64)>, Box<dyn Error>> {
    let (a, b) = ProblemFile::parse(include_str!("../data/symmetric_case.json"))?.points(None)?;
    let p = NormalizedProblem::prepare(&a, &b)?;
    let step = 2f64.to_radians();
    let fam = build_family(&p, step)?;
    let runs = intervals(&fam.thetas(), step);
    for (lo, hi) in &runs {
        println!("accepted theta in [{:.1}, {:.1}] deg", lo.to_degrees(), hi.to_degrees());
    }
    for r in fam.rejected.iter().filter(|r| r.reason != "NonSpiral") {
        println!("rejected theta = {:.1} deg: {} ({})", r.theta.to_degrees(), r.reason, r.detail);
    }
    Ok(runs)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
