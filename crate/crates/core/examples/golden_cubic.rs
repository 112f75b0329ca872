//! Solves the cubic-reduction sextic for a short-spiral problem and prints the accepted cubic.

use std::error::Error;

use g2spiral::cubic::find_cubics;
use g2spiral::problem::NormalizedProblem;

pub fn run_example() -> Result<usize, Box<dyn Error>> {
    let p = NormalizedProblem::from_normalized(-0.1, 1.5, 0.0, 8.26);
    let search = find_cubics(&p);
    println!("monic sextic coefficients (constant first):");
    for (i, c) in search.equation.poly.coeffs().iter().enumerate() {
        println!("  v^{i}: {c:+.6}");
    }
    for r in &search.roots {
        println!("root v = {:+.9} theta = {:+.4} -> {:?}", r.v, r.theta, r.disposition);
    }
    for c in &search.cubics {
        let k = &c.candidate;
        println!(
            "cubic: theta = {:.4}, N = {:.8}, w = {:.6}, pw = {:.6}, qw = {:.6}",
            k.theta, k.n, k.w, k.pw, k.qw
        );
        println!("  lambda0 = {:.6}, r0 = {:.6}, T = {:.4}", c.map.lambda0, c.map.r0, c.t_cancel);
        println!("  X3 = {:?}\n  Y3 = {:?}\n  W3 = {:?}", c.x3, c.y3, c.w3);
        println!("  {:?} reduction, deviation from quartic {:.2e}", c.reduction, c.residual);
    }
    Ok(search.cubics.len())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
