//! Sweeps the family parameter for a long-spiral problem and prints one line per member.

use std::error::Error;

use g2spiral::family::build_family;
use g2spiral::io::ProblemFile;
use g2spiral::problem::NormalizedProblem;
use g2spiral::sampling::sample;

pub fn run_example() -> Result<usize, Box<dyn Error>> {
    let (a, b) = ProblemFile::parse(include_str!("../data/long_case.json"))?.points(None)?;
    let p = NormalizedProblem::prepare(&a, &b)?;
    println!("sigma = {:.3} deg, Q = {:.6}, long = {}", p.sigma.to_degrees(), p.q, p.long_spiral);
    let fam = build_family(&p, 2f64.to_radians())?;
    println!("{:>8} {:>3} {:>12} {:>12} {:>10} {:>10}", "theta", "j", "w", "r0", "k(0)", "k(1)");
    for m in &fam.members {
        let s = sample(&m.quartic, 2)?;
        println!(
            "{:>8.2} {:>3} {:>12.6} {:>12.6} {:>10.5} {:>10.5}",
            m.theta().to_degrees(),
            m.candidate.j.as_i8(),
            m.candidate.w,
            m.map.r0,
            s[0].k,
            s[1].k
        );
    }
    println!("{} members, {} rejected", fam.members.len(), fam.rejected.len());
    Ok(fam.members.len())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
