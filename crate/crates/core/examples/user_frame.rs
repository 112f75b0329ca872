//! Interpolates G2 data given in an arbitrary frame and checks the end conditions in that frame.

use std::error::Error;

use g2spiral::family::member;
use g2spiral::io::ProblemFile;
use g2spiral::problem::{denormalize, NormalizedProblem};
use g2spiral::sampling::sample;

pub fn run_example() -> Result<f64, Box<dyn Error>> {
    let (a, b) = ProblemFile::parse(include_str!("../data/user_frame.json"))?.points(None)?;
    let p = NormalizedProblem::prepare(&a, &b)?;
    let t = p.transform;
    println!("scale = {:.6}, rotation = {:.4} rad, reflected = {}", t.scale, t.rotation, t.reflect);
    let sols = member(&p, 0.0, None).map_err(g2spiral::Error::from)?;
    let s = denormalize(&sample(&sols[0].quartic, 101)?, &t);
    let (first, last) = (&s[0], &s[s.len() - 1]);
    let (start, end) = if t.reflect { (last, first) } else { (first, last) };
    let err = [
        (start.x - a.x).hypot(start.y - a.y),
        (end.x - b.x).hypot(end.y - b.y),
        (start.k - a.k).abs(),
        (end.k - b.k).abs(),
    ];
    println!("start ({:.6}, {:.6}) k = {:.6}", start.x, start.y, start.k);
    println!("end   ({:.6}, {:.6}) k = {:.6}", end.x, end.y, end.k);
    println!("arc length {:.6}", last.s);
    let worst = err.iter().cloned().fold(0.0, f64::max);
    println!("worst endpoint error {worst:.2e}");
    Ok(worst)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
