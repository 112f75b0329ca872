//! Prints the control-point locus, the discriminant and the weight roots across the parameter range.

use std::error::Error;

use g2spiral::family::{discriminants, locus_point, solve_n, theta_range};
use g2spiral::problem::NormalizedProblem;

pub fn run_example() -> Result<usize, Box<dyn Error>> {
    let p = NormalizedProblem::from_normalized(-0.1, 1.5, 0.0, 8.26);
    let r = theta_range(&p);
    println!(
        "Theta = {:.4} deg (D0 root {:.4}, lens bound {:.4})",
        r.theta.to_degrees(),
        r.theta0.to_degrees(),
        r.theta1.to_degrees()
    );
    let mut rows = 0;
    for i in -8..=8 {
        let theta = r.theta * i as f64 / 8.0;
        let d = discriminants(theta, &p);
        let Ok((x, y)) = locus_point(theta, p.sigma) else {
            println!("{:>9.3}  control point at infinity", theta.to_degrees());
            continue;
        };
        let roots: Vec<String> =
            solve_n(theta, &p)?.iter().map(|w| format!("j={:+} N={:.6}", w.j.as_i8(), w.n)).collect();
        println!("{:>9.3}  p=({x:+.5}, {y:+.5})  D0={:+.5e}  {}", theta.to_degrees(), d.d0, roots.join(", "));
        rows += 1;
    }
    Ok(rows)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
