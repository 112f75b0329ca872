//! The one-parameter family of rational quartic spirals.
//!
//! Control points of conics sharing the lens angle of the data lie on a
//! hyperbola parametrized by `theta`. For each `theta` the weight is fixed by
//! matching the second invariant, and a Moebius map sends the conic onto a
//! quartic that interpolates the data.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conic::{ConicArc, Sign};
use crate::error::{Error, Result};
use crate::problem::{reduce_angle, NormalizedProblem};
use crate::sampling::{monotonicity_audit, sample, RationalCurve, AUDIT_SAMPLES};

/// Default scan step, 2 degrees.
pub const DEFAULT_DTHETA: f64 = PI / 90.0;
/// Parameters closer than this to `+-sigma` are skipped.
pub const SIGMA_EXCLUSION: f64 = 1e-6;
/// A quartic whose denominator dips below this fraction of its maximum on
/// `[0, 1]` is treated as passing through infinity.
pub const DENOMINATOR_TOUCH: f64 = 1e-12;

const RATIO_TOLERANCE: f64 = 1e-8;
const TANGENT_TOLERANCE: f64 = 1e-8;
const CURVATURE_TOLERANCE: f64 = 1e-7;

/// Which root of the weight equation produced a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeightRoot {
    /// `N = j / (2 (D1 + sqrt D0))`.
    First,
    /// `N = (D1 + sqrt D0) / (2 j D2 D3)`.
    Second,
}

impl WeightRoot {
    pub fn index(self) -> u8 {
        match self {
            WeightRoot::First => 1,
            WeightRoot::Second => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<WeightRoot> {
        match i {
            1 => Some(WeightRoot::First),
            2 => Some(WeightRoot::Second),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Weight {
    pub j: Sign,
    pub n: f64,
    pub root: WeightRoot,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discriminants {
    pub d0: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

pub fn discriminants(theta: f64, p: &NormalizedProblem) -> Discriminants {
    let (cs, ct) = (p.sigma.cos(), theta.cos());
    let d1 = 1.0 - cs * ct;
    let d2 = cs - ct;
    let d3 = 1.0 - 2.0 * p.q - ct;
    Discriminants { d0: d1 * d1 - d2 * d3, d1, d2, d3 }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaRange {
    /// Admissible half-width, the smaller of the two bounds below.
    pub theta: f64,
    /// Where the weight discriminant vanishes.
    pub theta0: f64,
    /// Where the locus leaves the spirality region.
    pub theta1: f64,
}

pub fn theta_range(p: &NormalizedProblem) -> ThetaRange {
    let g = p.g1 * p.g2;
    let (s, c) = p.sigma.sin_cos();
    let s2 = s * s;
    let cos0 = (2.0 * g * c + s2) / (g - (g * g + 2.0 * g * s2 * c + s2 * s2).sqrt());
    let theta0 = cos0.clamp(-1.0, 1.0).acos();
    let theta1 = FRAC_PI_2.min(PI - p.sigma);
    ThetaRange { theta: theta0.min(theta1), theta0, theta1 }
}

/// Control point `(p, q)` on the locus of conics with lens angle `sigma`.
pub fn locus_point(theta: f64, sigma: f64) -> Result<(f64, f64)> {
    if is_excluded(theta, sigma) {
        return Err(Error::ExcludedPoint { theta });
    }
    let s = theta.sin();
    if s == 0.0 {
        return Err(Error::InvalidInput("the locus point for theta = 0 is at infinity".into()));
    }
    Ok((sigma.sin() / s, -(sigma.cos() - theta.cos()) / s))
}

/// `H(p, q; sigma)`, zero on the locus.
pub fn locus_residual(p: f64, q: f64, sigma: f64) -> f64 {
    sigma.sin() * (1.0 - p * p + q * q) + 2.0 * p * q * sigma.cos()
}

fn is_excluded(theta: f64, sigma: f64) -> bool {
    (theta.abs() - sigma).abs() < SIGMA_EXCLUSION
}

/// Positive roots of `4 N^2 D2 D3 - 4 j N D1 + 1 = 0` for the sign of `j`
/// implied by `theta`.
pub fn solve_n(theta: f64, p: &NormalizedProblem) -> Result<Vec<Weight>> {
    if is_excluded(theta, p.sigma) {
        return Err(Error::ExcludedPoint { theta });
    }
    let d = discriminants(theta, p);
    if d.d0 < 0.0 {
        return Err(Error::NoRealSolution { theta, d0: d.d0 });
    }
    let root = d.d1 + d.d0.sqrt();
    let second = |j: Sign| Weight { j, n: root / (2.0 * j.value() * d.d2 * d.d3), root: WeightRoot::Second };
    let out = if theta.abs() < p.sigma {
        vec![second(Sign::Neg)]
    } else {
        vec![second(Sign::Pos), Weight { j: Sign::Pos, n: 1.0 / (2.0 * root), root: WeightRoot::First }]
    };
    Ok(out.into_iter().filter(|w| w.n.is_finite() && w.n > 0.0).collect())
}

/// Residual of the weight equation, relative to the size of its terms.
pub fn weight_residual(theta: f64, w: &Weight, p: &NormalizedProblem) -> f64 {
    let d = discriminants(theta, p);
    let terms = [4.0 * w.n * w.n * d.d2 * d.d3, -4.0 * w.j.value() * w.n * d.d1, 1.0];
    let scale = terms.iter().map(|t| t.abs()).fold(0.0, f64::max);
    terms.iter().sum::<f64>().abs() / scale
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyCandidate {
    pub theta: f64,
    pub nu: f64,
    pub j: Sign,
    pub n: f64,
    pub root: WeightRoot,
    pub w: f64,
    pub pw: f64,
    pub qw: f64,
    pub nw: Sign,
}

impl FamilyCandidate {
    pub fn conic(&self) -> ConicArc {
        ConicArc::new(self.w, self.j, self.pw, self.qw)
    }
}

/// Weighted control point for `theta`, finite also at `theta = 0`.
pub fn make_candidate(theta: f64, weight: Weight, p: &NormalizedProblem) -> FamilyCandidate {
    let nw = if theta - p.sigma >= 0.0 { Sign::Pos } else { Sign::Neg };
    let root_n = weight.n.sqrt() * nw.value();
    FamilyCandidate {
        theta,
        nu: 0.5 * theta,
        j: weight.j,
        n: weight.n,
        root: weight.root,
        w: theta.sin() * root_n,
        pw: p.sigma.sin() * root_n,
        qw: -(p.sigma.cos() - theta.cos()) * root_n,
        nw,
    }
}

/// Vertex-free test for the conic of a candidate.
pub fn spirality_test(c: &FamilyCandidate, p: &NormalizedProblem) -> bool {
    let (om, nu, th, n) = (p.omega, c.nu, c.theta, c.n);
    match c.j {
        Sign::Pos => {
            let f1 = 2.0 * n * (om + nu).sin() * th.sin() - (om - nu).cos();
            let f2 = 2.0 * n * (om - nu).sin() * th.sin() + (om + nu).cos();
            f1 * f2 >= 0.0 && 2.0 * n * th.sin().powi(2) >= 1.0
        }
        Sign::Neg => 2.0 * n * (om - nu.abs()).sin() * th.abs().sin() - (om + nu.abs()).cos() <= 0.0,
    }
}

/// Moebius map `z -> (z0 + z) / (1 + z0 z)` with `z0 = (r0 e^{i l} - 1) / (r0 e^{i l} + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    pub r0: f64,
    pub lambda0: f64,
    /// The two estimates whose geometric mean is `r0`.
    pub r01: f64,
    pub r02: f64,
}

impl MoebiusMap {
    pub fn new(r0: f64, lambda0: f64) -> Self {
        MoebiusMap { r0, lambda0, r01: r0, r02: r0 }
    }

    pub fn identity() -> Self {
        MoebiusMap::new(1.0, 0.0)
    }

    pub fn x0(&self) -> f64 {
        self.r0 - 1.0 / self.r0
    }

    pub fn y0(&self) -> f64 {
        2.0 * self.lambda0.sin()
    }

    pub fn w0(&self) -> f64 {
        self.r0 + 1.0 / self.r0 + 2.0 * self.lambda0.cos()
    }

    pub fn w1(&self) -> f64 {
        self.r0 + 1.0 / self.r0 - 2.0 * self.lambda0.cos()
    }

    pub fn z0(&self) -> Complex64 {
        Complex64::new(self.x0(), self.y0()) / self.w0()
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let z0 = self.z0();
        (z0 + z) / (1.0 + z0 * z)
    }
}

pub fn moebius_params(c: &FamilyCandidate, p: &NormalizedProblem) -> Result<MoebiusMap> {
    let (om, nu, j) = (p.omega, c.nu, c.j.value());
    let lambda0 = (j * (p.gamma + nu).sin()).atan2(j * (p.gamma + nu).cos());
    let (sp, sm) = ((om + nu).sin(), (om - nu).sin());
    let g1 = sm * (j - 1.0 / (4.0 * c.n * sp * sp));
    let g2 = sp * (-j + 1.0 / (4.0 * c.n * sm * sm));
    let (r01, r02) = (g1 / p.g1, p.g2 / g2);
    let prod = r01 * r02;
    if !prod.is_finite() || prod <= 0.0 || r01 < 0.0 {
        return Err(Error::InconsistentSolution { r01, r02 });
    }
    if (r01 - r02).abs() > RATIO_TOLERANCE * r01.abs().max(r02.abs()) {
        return Err(Error::InconsistentSolution { r01, r02 });
    }
    Ok(MoebiusMap { r0: prod.sqrt(), lambda0, r01, r02 })
}

/// Numerators and denominator of the Moebius image of a conic, expanded in
/// the power basis.
pub fn quartic_curve(conic: &ConicArc, m: &MoebiusMap) -> RationalCurve {
    let [x, y, w] = conic.basis_polys();
    let (s, c) = m.lambda0.sin_cos();
    let (r, ri) = (m.r0, 1.0 / m.r0);
    let yy = &y * &y;
    let plus = &(&(&x + &w) * &(&x + &w)) + &yy;
    let minus = &(&(&x - &w) * &(&x - &w)) + &yy;
    let lens = &(&w * &w) - &(&(&x * &x) + &yy);
    let yw = &y * &w;
    let nx = &(&plus * r) - &(&minus * ri);
    let ny = &(&(&lens * s) + &(&yw * (2.0 * c))) * 2.0;
    let d = &(&(&plus * r) + &(&minus * ri)) + &(&(&(&lens * c) - &(&yw * (2.0 * s))) * 2.0);
    RationalCurve::new(nx, ny, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Audit {
    pub monotone: bool,
    pub worst_violation: f64,
    /// Tangent angle errors at both ends, reduced modulo `2 pi`.
    pub tangent_error: [f64; 2],
    /// Curvature errors at both ends.
    pub curvature_error: [f64; 2],
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilySolution {
    pub candidate: FamilyCandidate,
    pub conic: ConicArc,
    pub map: MoebiusMap,
    pub quartic: RationalCurve,
    pub audit: Option<Audit>,
}

impl FamilySolution {
    pub fn theta(&self) -> f64 {
        self.candidate.theta
    }
}

pub fn build_quartic(c: &FamilyCandidate, m: &MoebiusMap) -> Result<FamilySolution> {
    let conic = c.conic();
    let quartic = quartic_curve(&conic, m);
    if quartic.relative_denominator_min() <= DENOMINATOR_TOUCH {
        return Err(Error::NonSpiralArtifact);
    }
    Ok(FamilySolution { candidate: *c, conic, map: *m, quartic, audit: None })
}

/// Monotone curvature and endpoint G² agreement on a dense grid.
pub fn audit_curve(curve: &RationalCurve, p: &NormalizedProblem) -> Result<Audit> {
    let samples = sample(curve, AUDIT_SAMPLES)?;
    let mono = monotonicity_audit(&samples);
    let (s0, s1) = (samples[0], samples[samples.len() - 1]);
    let tangent_error = [reduce_angle(s0.tau - p.alpha).abs(), reduce_angle(s1.tau - p.beta).abs()];
    let curvature_error = [(s0.k - p.a).abs(), (s1.k - p.b).abs()];
    let passed = mono.monotone
        && tangent_error.iter().all(|e| *e <= TANGENT_TOLERANCE)
        && curvature_error[0] <= CURVATURE_TOLERANCE * p.a.abs().max(1.0)
        && curvature_error[1] <= CURVATURE_TOLERANCE * p.b.abs().max(1.0);
    Ok(Audit {
        monotone: mono.monotone,
        worst_violation: mono.worst_violation,
        tangent_error,
        curvature_error,
        passed,
    })
}

/// Why a family candidate was dropped.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rejection {
    pub theta: f64,
    pub j: Option<Sign>,
    pub root: Option<WeightRoot>,
    pub reason: String,
    pub detail: String,
}

impl From<Rejection> for Error {
    fn from(r: Rejection) -> Error {
        Error::MemberRejected { theta: r.theta, reason: r.reason, detail: r.detail }
    }
}

impl Rejection {
    fn new(theta: f64, weight: Option<&Weight>, reason: &str, detail: String) -> Self {
        Rejection {
            theta,
            j: weight.map(|w| w.j),
            root: weight.map(|w| w.root),
            reason: reason.into(),
            detail,
        }
    }
}

/// Outcome for one weight root at one parameter value.
pub fn construct(theta: f64, weight: Weight, p: &NormalizedProblem) -> Result<FamilySolution, Rejection> {
    let c = make_candidate(theta, weight, p);
    if !spirality_test(&c, p) {
        return Err(Rejection::new(theta, Some(&weight), "NonSpiral", "spirality test failed".into()));
    }
    let reject = |e: Error| Rejection::new(theta, Some(&weight), e.kind(), e.to_string());
    let m = moebius_params(&c, p).map_err(reject)?;
    let mut sol = build_quartic(&c, &m).map_err(reject)?;
    let audit = audit_curve(&sol.quartic, p).map_err(reject)?;
    sol.audit = Some(audit);
    if !audit.passed {
        return Err(Rejection::new(
            theta,
            Some(&weight),
            "AuditFailed",
            format!(
                "worst curvature decrease {:e}, tangent errors {:e}/{:e}, curvature errors {:e}/{:e}",
                audit.worst_violation,
                audit.tangent_error[0],
                audit.tangent_error[1],
                audit.curvature_error[0],
                audit.curvature_error[1]
            ),
        ));
    }
    Ok(sol)
}

#[derive(Clone, Debug)]
pub struct Family {
    pub problem: NormalizedProblem,
    pub range: ThetaRange,
    pub dtheta: f64,
    /// Accepted members ordered by `(theta, root)`.
    pub members: Vec<FamilySolution>,
    pub rejected: Vec<Rejection>,
}

impl Family {
    pub fn thetas(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.theta()).collect()
    }
}

/// The scanned grid `{0, +-dtheta, +-2 dtheta, ...}` within the admissible range.
pub fn theta_grid(range: &ThetaRange, dtheta: f64) -> Vec<f64> {
    let n = (range.theta / dtheta + 1e-9).floor() as i64;
    (-n..=n).map(|i| i as f64 * dtheta).collect()
}

pub fn build_family(p: &NormalizedProblem, dtheta: f64) -> Result<Family> {
    if !(dtheta.is_finite() && dtheta > 0.0) {
        return Err(Error::InvalidInput(format!("theta step must be positive, got {dtheta}")));
    }
    let range = theta_range(p);
    let mut members = Vec::new();
    let mut rejected = Vec::new();
    for theta in theta_grid(&range, dtheta) {
        if is_excluded(theta, p.sigma) {
            continue;
        }
        match solve_n(theta, p) {
            Err(e) => rejected.push(Rejection::new(theta, None, e.kind(), e.to_string())),
            Ok(weights) => {
                for w in weights {
                    match construct(theta, w, p) {
                        Ok(s) => members.push(s),
                        Err(r) => rejected.push(r),
                    }
                }
            }
        }
    }
    members.sort_by(|a, b| a.theta().total_cmp(&b.theta()).then(a.candidate.root.cmp(&b.candidate.root)));
    Ok(Family { problem: *p, range, dtheta, members, rejected })
}

/// All members for a single parameter value, optionally restricted to one root.
pub fn member(
    p: &NormalizedProblem,
    theta: f64,
    root: Option<WeightRoot>,
) -> Result<Vec<FamilySolution>, Rejection> {
    let range = theta_range(p);
    if theta.abs() > range.theta {
        return Err(Rejection::new(
            theta,
            None,
            "OutOfRange",
            format!("|theta| exceeds the admissible bound {}", range.theta),
        ));
    }
    let weights = solve_n(theta, p).map_err(|e| Rejection::new(theta, None, e.kind(), e.to_string()))?;
    let weights: Vec<Weight> = weights.into_iter().filter(|w| root.is_none_or(|r| r == w.root)).collect();
    if weights.is_empty() {
        return Err(Rejection::new(theta, None, "NoWeight", "no positive weight root".into()));
    }
    let mut out = Vec::new();
    let mut last = None;
    for w in weights {
        match construct(theta, w, p) {
            Ok(s) => out.push(s),
            Err(r) => last = Some(r),
        }
    }
    match (out.is_empty(), last) {
        (true, Some(r)) => Err(r),
        _ => Ok(out),
    }
}

/// Lens angle and invariant product of a conic's own end data.
pub fn conic_invariants(conic: &ConicArc) -> Result<(f64, f64)> {
    let e = conic.endpoint_data()?;
    let q = NormalizedProblem::from_normalized(e.alpha, e.beta, e.a, e.b);
    Ok((q.sigma, q.g1 * q.g2))
}

/// Expanded product form of the Moebius composition, used for checking.
pub fn compose_point(conic: &ConicArc, m: &MoebiusMap, t: f64) -> Result<(f64, f64)> {
    let (x, y) = conic.eval(t)?;
    let z = m.apply(Complex64::new(x, y));
    Ok((z.re, z.im))
}
