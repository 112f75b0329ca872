//! Family members that reduce to rational cubics.
//!
//! When the center of inversion of the Moebius map lies on the conic, the
//! quartic numerators and denominator share a linear factor `(t - T)`. With
//! `v = tan(theta / 2)` this happens at the real roots of a sextic.

use serde::{Deserialize, Serialize};

use crate::conic::{ConicArc, Sign};
use crate::error::{Error, Result};
use crate::family::{
    audit_curve, build_quartic, make_candidate, moebius_params, solve_n, spirality_test, theta_range,
    weight_residual, Audit, FamilyCandidate, FamilySolution, MoebiusMap, Weight, WeightRoot,
};
use crate::poly::{real_roots, Poly, RealRoot};
use crate::problem::NormalizedProblem;
use crate::sampling::RationalCurve;

/// `sum a_i (1-x)^(n-i) x^i`, without binomial factors.
///
/// This is not the usual Bernstein basis: `bernstein(2, x, &[a, b, c])` weights
/// the middle coefficient by `(1-x) x`, not `2 (1-x) x`.
pub fn bernstein(n: usize, x: f64, coeffs: &[f64]) -> Result<f64> {
    if coeffs.len() != n + 1 {
        return Err(Error::InvalidInput(format!(
            "degree {n} needs {} coefficients, got {}",
            n + 1,
            coeffs.len()
        )));
    }
    Ok(eval_basis(x, coeffs))
}

fn eval_basis(x: f64, coeffs: &[f64]) -> f64 {
    let n = coeffs.len() - 1;
    coeffs.iter().enumerate().map(|(i, a)| a * (1.0 - x).powi((n - i) as i32) * x.powi(i as i32)).sum()
}

/// Power-basis polynomial of `sum a_i (1-t)^(n-i) t^i`.
pub fn basis_to_poly(coeffs: &[f64]) -> Poly {
    let n = coeffs.len().saturating_sub(1);
    let one_minus = Poly::linear(1.0, -1.0);
    let t = Poly::linear(0.0, 1.0);
    let mut out = Poly::zero();
    for (i, &a) in coeffs.iter().enumerate() {
        let mut term = Poly::constant(a);
        for _ in 0..n - i {
            term = &term * &one_minus;
        }
        for _ in 0..i {
            term = &term * &t;
        }
        out = &out + &term;
    }
    out
}

/// Product of two polynomials given in the unnormalized basis.
fn basis_product(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Sextic in `v = tan(theta / 2)` whose roots give cubic family members.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicEquation {
    pub a1: f64,
    pub b1: f64,
    pub c1: f64,
    pub a2: f64,
    pub c2: f64,
    /// Monic, lowest degree first.
    pub poly: Poly,
}

impl CubicEquation {
    /// Weight `N` at `v`, or `None` where the expression is singular.
    pub fn weight_at(&self, v: f64, p: &NormalizedProblem) -> Option<(Sign, f64)> {
        let theta = 2.0 * v.atan();
        let j = if theta.abs() - p.sigma >= 0.0 { Sign::Pos } else { Sign::Neg };
        let (c2, s2) = (p.omega.cos().powi(2), p.omega.sin().powi(2));
        let den = (v * v * c2 - s2) * (self.a2 * v * v + self.c2);
        if den == 0.0 {
            return None;
        }
        let num = (1.0 + v * v) * (self.a1 * v * v + self.b1 * v + self.c1);
        let n = num / den / (4.0 * j.value());
        n.is_finite().then_some((j, n))
    }
}

pub fn build_equation(p: &NormalizedProblem) -> CubicEquation {
    let gg = p.g1 * p.g2;
    let (sa, sb) = (p.alpha.sin(), p.beta.sin());
    let (c2w, s2w) = (p.omega.cos().powi(2), p.omega.sin().powi(2));
    let bracket = gg + p.g1 * sb - p.g2 * sa;
    let b1 = gg * (p.alpha - p.beta).sin() + (p.g1 * sb + p.g2 * sa) * (p.alpha + p.beta).sin();
    let a_diff = 2.0 * gg * sa * sb;
    let a_sum = 2.0 * c2w * bracket;
    let c_diff = 2.0 * s2w * bracket;
    let c_sum = -a_diff;
    let (a1, a2) = (0.5 * (a_sum + a_diff), 0.5 * (a_sum - a_diff));
    let (c1, c2) = (0.5 * (c_sum + c_diff), 0.5 * (c_sum - c_diff));

    let v2 = Poly::new(vec![0.0, 0.0, 1.0]);
    let quad = |a: f64, c: f64| Poly::new(vec![c, b1, a]);
    let sq = |q: &Poly| q * q;
    let first = &(&sq(&quad(a_diff, c_diff)) * &v2) * c2w;
    let second = &sq(&quad(a_sum, c_sum)) * s2w;
    let third = &(&sq(&quad(a1, c1)) * &Poly::new(vec![1.0, 0.0, 1.0])) * gg;
    let full = &(&first - &second) - &third;
    let poly = full.trim_relative(1e-14).monic();
    CubicEquation { a1, b1, c1, a2, c2, poly }
}

/// What happened to one real root of the sextic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum RootDisposition {
    Accepted,
    OutsideRange,
    ExcludedPoint,
    NonPositiveWeight,
    InconsistentWeight,
    NonSpiral,
    Rejected { reason: String, detail: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootCandidate {
    pub v: f64,
    pub multiplicity: usize,
    pub theta: f64,
    pub j: Sign,
    pub n: Option<f64>,
    pub candidate: Option<FamilyCandidate>,
    pub disposition: RootDisposition,
}

/// Classifies each root; candidates that pass the weight and spirality filters
/// are attached with disposition `Accepted`.
pub fn candidates_from_roots(
    eq: &CubicEquation,
    roots: &[RealRoot],
    p: &NormalizedProblem,
) -> Vec<RootCandidate> {
    let limit = (0.5 * theta_range(p).theta).tan();
    roots
        .iter()
        .map(|r| {
            let v = r.value;
            let theta = 2.0 * v.atan();
            let j = if theta.abs() - p.sigma >= 0.0 { Sign::Pos } else { Sign::Neg };
            let mut out = RootCandidate {
                v,
                multiplicity: r.multiplicity,
                theta,
                j,
                n: None,
                candidate: None,
                disposition: RootDisposition::Accepted,
            };
            if v.abs() >= limit {
                out.disposition = RootDisposition::OutsideRange;
                return out;
            }
            let Some((j, n)) = eq.weight_at(v, p) else {
                out.disposition = RootDisposition::ExcludedPoint;
                return out;
            };
            out.n = Some(n);
            if n <= 0.0 {
                out.disposition = RootDisposition::NonPositiveWeight;
                return out;
            }
            let Some(root) = matching_root(theta, j, n, p) else {
                out.disposition = RootDisposition::InconsistentWeight;
                return out;
            };
            let c = make_candidate(theta, Weight { j, n, root }, p);
            out.candidate = Some(c);
            if !spirality_test(&c, p) {
                out.disposition = RootDisposition::NonSpiral;
            }
            out
        })
        .collect()
}

/// Which weight root `n` approximates, if it solves the weight equation.
fn matching_root(theta: f64, j: Sign, n: f64, p: &NormalizedProblem) -> Option<WeightRoot> {
    let probe = Weight { j, n, root: WeightRoot::Second };
    if weight_residual(theta, &probe, p) > 1e-9 {
        return None;
    }
    let weights = solve_n(theta, p).ok()?;
    weights
        .iter()
        .filter(|w| w.j == j)
        .min_by(|a, b| (a.n - n).abs().total_cmp(&(b.n - n).abs()))
        .map(|w| w.root)
}

/// Homogeneous center of inversion `(X1, Y1, W1)`.
pub fn inversion_center(m: &MoebiusMap) -> (f64, f64, f64) {
    let ri = 1.0 / m.r0;
    let (s, c) = m.lambda0.sin_cos();
    (ri - m.r0, 2.0 * s, ri + m.r0 - 2.0 * c)
}

/// Conic parameter of the inversion center.
pub fn compute_t(c: &FamilyCandidate, m: &MoebiusMap) -> Result<f64> {
    let (s, co) = m.lambda0.sin_cos();
    let (j, w, pw, qw, ri) = (c.j.value(), c.w, c.pw, c.qw, 1.0 / m.r0);
    let num = (pw + w - j) * s + qw * (co - ri);
    let parts = [(pw + w - j * (pw - w + 2.0)) * s, qw * (1.0 + j) * co, -qw * (ri + j * m.r0)];
    let den: f64 = parts.iter().sum();
    let scale = parts.iter().map(|x| x.abs()).sum::<f64>();
    if den.abs() <= 1e-14 * scale.max(f64::MIN_POSITIVE) || !(num / den).is_finite() {
        return Err(Error::CenterAtParameterInfinity);
    }
    Ok(num / den)
}

/// How the cubic was obtained from the quartic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reduction {
    /// Closed-form coefficients in `T`.
    ClosedForm,
    /// Division of the expanded quartic by `(t - T)`.
    Deflation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicSpiral {
    pub candidate: FamilyCandidate,
    pub map: MoebiusMap,
    /// Cancelled parameter `T`.
    pub t_cancel: f64,
    /// Coefficients in the unnormalized basis, see [`bernstein`].
    pub x3: [f64; 4],
    pub y3: [f64; 4],
    pub w3: [f64; 4],
    pub curve: RationalCurve,
    pub reduction: Reduction,
    /// Largest distance to the quartic at the check nodes, relative to its size.
    pub residual: f64,
    pub audit: Option<Audit>,
}

/// Closed-form cubic coefficients `(X3, Y3, W3)` in the unnormalized basis.
pub fn cubic_coefficients(c: &FamilyCandidate, t: f64) -> ([f64; 4], [f64; 4], [f64; 4]) {
    let (j, w, pw, qw) = (c.j.value(), c.w, c.pw, c.qw);
    let conic = ConicArc::new(w, c.j, pw, qw);
    let (h1, h2) = conic.weighted_sides();
    let (h1s, h2s) = (h1 * h1, h2 * h2);
    let b = |cs: &[f64]| eval_basis(t, cs);
    let jp = 2.0 * j * (pw + w);
    let dm = -2.0 * (pw - w);
    let x3 = [
        b(&[0.0, h1s, jp, 1.0]),
        b(&[1.0, dm]) * b(&[h1s, jp, 1.0]),
        b(&[jp, 1.0]) * b(&[1.0, dm, h2s]),
        b(&[1.0, dm, h2s, 0.0]),
    ];
    let y3 = [
        0.0,
        2.0 * qw * b(&[0.0, j - h1s, -2.0 * j * pw, 0.0]),
        2.0 * qw * b(&[0.0, -2.0 * j * pw, j * h2s - 1.0, 0.0]),
        0.0,
    ];
    let inner = [
        b(&[h1s, jp, 1.0]),
        2.0 * b(&[j * (pw + w), 1.0 - j * (pw * pw + qw * qw - w * w), -(pw - w)]),
        b(&[1.0, dm, h2s]),
    ];
    let w3v = basis_product(&[-t, 1.0 - t], &inner);
    (x3, y3, [w3v[0], w3v[1], w3v[2], w3v[3]])
}

fn chebyshev_nodes(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| 0.5 - 0.5 * ((2 * k + 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos())
        .chain([0.0, 1.0])
        .collect()
}

/// Largest pointwise distance between two curves at Chebyshev nodes, divided
/// by the diameter of the reference.
pub fn relative_deviation(curve: &RationalCurve, reference: &RationalCurve) -> f64 {
    let nodes = chebyshev_nodes(33);
    let pts: Vec<(f64, f64)> = nodes.iter().filter_map(|t| reference.point(*t).ok()).collect();
    let (mut xmin, mut xmax, mut ymin, mut ymax) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in &pts {
        xmin = xmin.min(*x);
        xmax = xmax.max(*x);
        ymin = ymin.min(*y);
        ymax = ymax.max(*y);
    }
    let diameter = (xmax - xmin).hypot(ymax - ymin).max(f64::MIN_POSITIVE);
    nodes
        .iter()
        .map(|t| match (curve.point(*t), reference.point(*t)) {
            (Ok((a, b)), Ok((x, y))) => (a - x).hypot(b - y),
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max)
        / diameter
}

const REDUCTION_TOLERANCE: f64 = 1e-9;

/// Cubic form of a family member whose center of inversion is at `t`.
pub fn build_cubic(sol: &FamilySolution, t: f64) -> Result<CubicSpiral> {
    let (x3, y3, w3) = cubic_coefficients(&sol.candidate, t);
    let closed = RationalCurve::new(basis_to_poly(&x3), basis_to_poly(&y3), basis_to_poly(&w3));
    let residual = relative_deviation(&closed, &sol.quartic);
    let spiral = |curve, reduction, residual, (x3, y3, w3)| CubicSpiral {
        candidate: sol.candidate,
        map: sol.map,
        t_cancel: t,
        x3,
        y3,
        w3,
        curve,
        reduction,
        residual,
        audit: None,
    };
    if residual <= REDUCTION_TOLERANCE {
        return Ok(spiral(closed, Reduction::ClosedForm, residual, (x3, y3, w3)));
    }
    let q = &sol.quartic;
    let (x, _) = q.x.deflate(t);
    let (y, _) = q.y.deflate(t);
    let (w, _) = q.w.deflate(t);
    let deflated = RationalCurve::new(x, y, w);
    let residual_d = relative_deviation(&deflated, &sol.quartic);
    if residual_d <= REDUCTION_TOLERANCE {
        let coeffs = (poly_to_basis(&deflated.x), poly_to_basis(&deflated.y), poly_to_basis(&deflated.w));
        return Ok(spiral(deflated, Reduction::Deflation, residual_d, coeffs));
    }
    Err(Error::ReductionFailed { residual: residual.min(residual_d) })
}

/// Unnormalized-basis coefficients of a polynomial of degree at most 3.
fn poly_to_basis(p: &Poly) -> [f64; 4] {
    // a_i = sum_k c_k * [coefficient of (1-t)^(3-i) t^i in t^k (1-t+t)^(3-k)]
    let c = |k| p.coeff(k);
    let binom = [[1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0], [1.0, 2.0, 1.0, 0.0], [1.0, 3.0, 3.0, 1.0]];
    let mut out = [0.0; 4];
    for (k, row) in (0..4).map(|k| (k, binom[3 - k])) {
        for (m, b) in row.iter().enumerate().take(4 - k) {
            out[k + m] += c(k) * b;
        }
    }
    out
}

/// All cubic members with their root bookkeeping.
#[derive(Clone, Debug)]
pub struct CubicSearch {
    pub equation: CubicEquation,
    pub roots: Vec<RootCandidate>,
    pub cubics: Vec<CubicSpiral>,
}

pub fn find_cubics(p: &NormalizedProblem) -> CubicSearch {
    let equation = build_equation(p);
    let roots = real_roots(&equation.poly);
    let mut candidates = candidates_from_roots(&equation, &roots, p);
    let mut cubics = Vec::new();
    for rc in candidates.iter_mut() {
        if rc.disposition != RootDisposition::Accepted {
            continue;
        }
        let c = rc.candidate.expect("accepted roots carry a candidate");
        match cubic_for_candidate(&c, p) {
            Ok(cubic) => cubics.push(cubic),
            Err(d) => rc.disposition = d,
        }
    }
    CubicSearch { equation, roots: candidates, cubics }
}

fn cubic_for_candidate(
    c: &FamilyCandidate,
    p: &NormalizedProblem,
) -> std::result::Result<CubicSpiral, RootDisposition> {
    let reject = |e: Error| RootDisposition::Rejected { reason: e.kind().to_string(), detail: e.to_string() };
    let m = moebius_params(c, p).map_err(reject)?;
    let sol = build_quartic(c, &m).map_err(reject)?;
    let t = compute_t(c, &m).map_err(reject)?;
    let mut cubic = build_cubic(&sol, t).map_err(reject)?;
    let audit = audit_curve(&cubic.curve, p).map_err(reject)?;
    cubic.audit = Some(audit);
    if !audit.passed {
        return Err(RootDisposition::Rejected {
            reason: "AuditFailed".into(),
            detail: format!(
                "worst curvature decrease {:e}, curvature errors {:e}/{:e}",
                audit.worst_violation, audit.curvature_error[0], audit.curvature_error[1]
            ),
        });
    }
    Ok(cubic)
}
