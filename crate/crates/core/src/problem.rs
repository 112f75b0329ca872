//! Two-point G² data: normalization to the unit chord, the symmetry that
//! makes curvature increasing, and the Moebius invariants of the data.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::CurveSample;

/// Point, unit tangent direction and signed curvature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct G2Point {
    pub x: f64,
    pub y: f64,
    /// Tangent direction in radians.
    pub tau: f64,
    /// Signed curvature, positive for left turns.
    pub k: f64,
}

impl G2Point {
    pub fn new(x: f64, y: f64, tau: f64, k: f64) -> Self {
        G2Point { x, y, tau, k }
    }
}

/// Reduces an angle to `(-pi, pi]`.
pub fn reduce_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Direct similarity followed by an optional mirror in the x-axis.
///
/// The forward map takes user coordinates to the normalized frame:
/// `z' = scale * rot(rotation) * (z + translation)`, then `y' = -y'` when
/// `reflect` is set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimilarityTransform {
    pub rotation: f64,
    pub scale: f64,
    pub translation: [f64; 2],
    pub reflect: bool,
}

impl Default for SimilarityTransform {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl SimilarityTransform {
    pub const IDENTITY: SimilarityTransform =
        SimilarityTransform { rotation: 0.0, scale: 1.0, translation: [0.0, 0.0], reflect: false };

    pub fn forward_point(&self, x: f64, y: f64) -> (f64, f64) {
        let (s, c) = self.rotation.sin_cos();
        let (tx, ty) = (x + self.translation[0], y + self.translation[1]);
        let nx = self.scale * (c * tx - s * ty);
        let ny = self.scale * (s * tx + c * ty);
        if self.reflect {
            (nx, -ny)
        } else {
            (nx, ny)
        }
    }

    pub fn inverse_point(&self, x: f64, y: f64) -> (f64, f64) {
        let y = if self.reflect { -y } else { y };
        let (s, c) = self.rotation.sin_cos();
        let (ux, uy) = (x / self.scale, y / self.scale);
        (c * ux + s * uy - self.translation[0], -s * ux + c * uy - self.translation[1])
    }

    pub fn forward_angle(&self, tau: f64) -> f64 {
        let t = tau + self.rotation;
        if self.reflect {
            -t
        } else {
            t
        }
    }

    pub fn inverse_angle(&self, tau: f64) -> f64 {
        let t = if self.reflect { -tau } else { tau };
        t - self.rotation
    }

    pub fn forward_curvature(&self, k: f64) -> f64 {
        let k = k / self.scale;
        if self.reflect {
            -k
        } else {
            k
        }
    }

    pub fn inverse_curvature(&self, k: f64) -> f64 {
        let k = if self.reflect { -k } else { k };
        k * self.scale
    }

    pub fn inverse_length(&self, s: f64) -> f64 {
        s / self.scale
    }

    pub fn forward(&self, p: &G2Point) -> G2Point {
        let (x, y) = self.forward_point(p.x, p.y);
        G2Point::new(x, y, self.forward_angle(p.tau), self.forward_curvature(p.k))
    }

    pub fn inverse(&self, p: &G2Point) -> G2Point {
        let (x, y) = self.inverse_point(p.x, p.y);
        G2Point::new(x, y, self.inverse_angle(p.tau), self.inverse_curvature(p.k))
    }
}

/// G² data in normalized position, `A = (-1, 0)` and `B = (1, 0)`, together
/// with the quantities the construction is built on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizedProblem {
    /// Tangent direction at `A`, reduced to `(-pi, pi]`.
    pub alpha: f64,
    /// Tangent direction at `B`, reduced to `(-pi, pi]`.
    pub beta: f64,
    /// Curvature at `A`.
    pub a: f64,
    /// Curvature at `B`.
    pub b: f64,
    /// `a + sin(alpha)`
    pub g1: f64,
    /// `b - sin(beta)`
    pub g2: f64,
    /// `g1 g2 + sin^2(omega)`; negative iff a non-biarc spiral exists.
    pub q: f64,
    /// Lens width `alpha + beta`, shifted by `2 pi` for long spirals.
    pub sigma: f64,
    /// `sigma / 2`
    pub omega: f64,
    /// `(alpha - beta) / 2`, shifted by `pi` for long spirals.
    pub gamma: f64,
    /// `alpha + beta <= 0`: the interpolant has to make a turn.
    pub long_spiral: bool,
    pub transform: SimilarityTransform,
}

impl NormalizedProblem {
    /// Derives every invariant from boundary angles and curvatures that are
    /// already in normalized position. No gate is applied.
    pub fn from_normalized(alpha: f64, beta: f64, a: f64, b: f64) -> Self {
        Self::derive(alpha, beta, a, b, SimilarityTransform::IDENTITY)
    }

    fn derive(alpha: f64, beta: f64, a: f64, b: f64, transform: SimilarityTransform) -> Self {
        let alpha = reduce_angle(alpha);
        let beta = reduce_angle(beta);
        let g1 = a + alpha.sin();
        let g2 = b - beta.sin();
        let long_spiral = alpha + beta <= 0.0;
        let (sigma, gamma) = if long_spiral {
            (alpha + beta + 2.0 * PI, 0.5 * (alpha - beta) + PI)
        } else {
            (alpha + beta, 0.5 * (alpha - beta))
        };
        let omega = 0.5 * sigma;
        let q = g1 * g2 + omega.sin().powi(2);
        NormalizedProblem { alpha, beta, a, b, g1, g2, q, sigma, omega, gamma, long_spiral, transform }
    }

    /// Normalizes, reflects to increasing curvature and applies the gates.
    pub fn prepare(start: &G2Point, end: &G2Point) -> Result<Self> {
        let (p, _) = normalize(start, end)?;
        let (p, _) = make_increasing(&p);
        compute_invariants(&p)
    }

    /// Given data at `A` in the normalized frame.
    pub fn start(&self) -> G2Point {
        G2Point::new(-1.0, 0.0, self.alpha, self.a)
    }

    /// Given data at `B` in the normalized frame.
    pub fn end(&self) -> G2Point {
        G2Point::new(1.0, 0.0, self.beta, self.b)
    }

    /// Non-fatal remarks about the data.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if (self.alpha + self.beta).abs() <= 1e-12 {
            out.push(
                "alpha + beta = 0: data sit on the short/long spiral boundary; long branch used".to_string(),
            );
        }
        out
    }
}

/// Maps the data by the direct similarity taking `A` to `(-1, 0)` and `B` to
/// `(1, 0)`.
pub fn normalize(start: &G2Point, end: &G2Point) -> Result<(NormalizedProblem, SimilarityTransform)> {
    for v in [start.x, start.y, start.tau, start.k, end.x, end.y, end.tau, end.k] {
        if !v.is_finite() {
            return Err(Error::InvalidInput("non-finite G2 data".into()));
        }
    }
    let dx = end.x - start.x;
    let dy = end.y - start.y;
    let chord = dx.hypot(dy);
    if chord == 0.0 {
        return Err(Error::DegenerateChord);
    }
    let transform = SimilarityTransform {
        rotation: -dy.atan2(dx),
        scale: 2.0 / chord,
        translation: [-0.5 * (start.x + end.x), -0.5 * (start.y + end.y)],
        reflect: false,
    };
    let a = transform.forward(start);
    let b = transform.forward(end);
    let p = NormalizedProblem::derive(a.tau, b.tau, a.k, b.k, transform);
    Ok((p, transform))
}

/// Mirror image of the data in the x-axis; toggles `transform.reflect`.
pub fn reflect_x(p: &NormalizedProblem) -> NormalizedProblem {
    let mut t = p.transform;
    t.reflect = !t.reflect;
    NormalizedProblem::derive(-p.alpha, -p.beta, -p.a, -p.b, t)
}

/// Mirrors the data in the x-axis when curvature is decreasing (`a* > b*`).
pub fn make_increasing(p: &NormalizedProblem) -> (NormalizedProblem, bool) {
    if p.a <= p.b {
        (*p, false)
    } else {
        (reflect_x(p), true)
    }
}

/// Recomputes the invariants and rejects data with no spiral solution.
pub fn compute_invariants(p: &NormalizedProblem) -> Result<NormalizedProblem> {
    let p = NormalizedProblem::derive(p.alpha, p.beta, p.a, p.b, p.transform);
    if p.q.is_nan() || p.q >= 0.0 {
        return Err(Error::NoSpiralExists { q: p.q });
    }
    if p.sigma > PI {
        return Err(Error::WideLens { sigma: p.sigma });
    }
    if !(p.g1 < 0.0 && p.g2 > 0.0) {
        return Err(Error::NotIncreasing { g1: p.g1, g2: p.g2 });
    }
    Ok(p)
}

/// Takes samples from the normalized frame back to user coordinates.
pub fn denormalize(samples: &[CurveSample], t: &SimilarityTransform) -> Vec<CurveSample> {
    samples
        .iter()
        .map(|s| {
            let (x, y) = t.inverse_point(s.x, s.y);
            CurveSample {
                t: s.t,
                x,
                y,
                tau: t.inverse_angle(s.tau),
                k: t.inverse_curvature(s.k),
                s: t.inverse_length(s.s),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(d: f64) -> f64 {
        d.to_radians()
    }

    fn long_case() -> (G2Point, G2Point) {
        (G2Point::new(-1.0, 0.0, deg(-150.0), -0.4), G2Point::new(1.0, 0.0, deg(-120.0), 0.3))
    }

    #[test]
    fn reduce_angle_range() {
        assert_eq!(reduce_angle(PI), PI);
        assert!((reduce_angle(-PI) - PI).abs() < 1e-15);
        assert!((reduce_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((reduce_angle(deg(-150.0)) - deg(-150.0)).abs() < 1e-15);
    }

    #[test]
    fn long_case_data_is_already_normalized() {
        let (a, b) = long_case();
        let (p, t) = normalize(&a, &b).unwrap();
        assert!(t.rotation.abs() < 1e-15 && (t.scale - 1.0).abs() < 1e-15);
        assert_eq!(t.translation, [0.0, 0.0]);
        assert!((p.alpha - deg(-150.0)).abs() < 1e-15);
        assert!((p.beta - deg(-120.0)).abs() < 1e-15);
        let (p2, reflected) = make_increasing(&p);
        assert!(!reflected);
        assert_eq!(p2, p);
    }

    #[test]
    fn pure_translation() {
        let a = G2Point::new(0.0, 0.0, 0.3, 0.7);
        let b = G2Point::new(2.0, 0.0, -0.2, 1.1);
        let (p, t) = normalize(&a, &b).unwrap();
        assert_eq!(t.translation, [-1.0, 0.0]);
        assert_eq!(t.scale, 1.0);
        assert!(t.rotation.abs() < 1e-15);
        assert!((p.alpha - 0.3).abs() < 1e-15 && (p.beta + 0.2).abs() < 1e-15);
        assert_eq!((p.a, p.b), (0.7, 1.1));
    }

    /// Circumradius of three points.
    fn circumradius(p: [(f64, f64); 3]) -> f64 {
        let d = |u: (f64, f64), v: (f64, f64)| (u.0 - v.0).hypot(u.1 - v.1);
        let (a, b, c) = (d(p[0], p[1]), d(p[1], p[2]), d(p[2], p[0]));
        let area2 = ((p[1].0 - p[0].0) * (p[2].1 - p[0].1) - (p[2].0 - p[0].0) * (p[1].1 - p[0].1)).abs();
        a * b * c / (2.0 * area2)
    }

    #[test]
    fn rotated_scaled_data_and_remeasured_circles() {
        let a = G2Point::new(0.0, 0.0, 0.0, 1.0);
        let b = G2Point::new(0.0, 4.0, PI / 2.0, 0.5);
        let (p, t) = normalize(&a, &b).unwrap();
        assert!((t.scale - 0.5).abs() < 1e-15);
        assert!((t.rotation + PI / 2.0).abs() < 1e-15);
        assert!((p.a - 2.0).abs() < 1e-14 && (p.b - 1.0).abs() < 1e-14);
        // oracle: map three points of each osculating circle and re-measure
        for (pt, k_norm) in [(a, p.a), (b, p.b)] {
            let r = 1.0 / pt.k;
            let (cx, cy) = (pt.x - r * pt.tau.sin(), pt.y + r * pt.tau.cos());
            let pts = [0.1, 1.7, 3.9].map(|phi: f64| t.forward_point(cx + r * phi.cos(), cy + r * phi.sin()));
            assert!((1.0 / circumradius(pts) - k_norm).abs() < 1e-12);
        }
    }

    #[test]
    fn coincident_endpoints_rejected() {
        let a = G2Point::new(1.0, 2.0, 0.0, 0.0);
        assert_eq!(normalize(&a, &a).unwrap_err(), Error::DegenerateChord);
    }

    #[test]
    fn make_increasing_negates() {
        let p = NormalizedProblem::from_normalized(deg(30.0), deg(10.0), 2.0, -1.0);
        let (r, reflected) = make_increasing(&p);
        assert!(reflected && r.transform.reflect);
        assert!((r.alpha + deg(30.0)).abs() < 1e-15 && (r.beta + deg(10.0)).abs() < 1e-15);
        assert_eq!((r.a, r.b), (-2.0, 1.0));
        assert!((r.g1 + p.g1).abs() < 1e-15 && (r.g2 + p.g2).abs() < 1e-15);
        assert!((r.q - p.q).abs() < 1e-15);
        // already increasing: untouched
        assert_eq!(make_increasing(&r), (r, false));
    }

    #[test]
    fn mirror_is_an_involution() {
        let p = NormalizedProblem::from_normalized(deg(-150.0), deg(-120.0), -0.4, 0.3);
        let back = reflect_x(&reflect_x(&p));
        assert_eq!(back.transform, p.transform);
        assert!((back.alpha - p.alpha).abs() < 1e-15 && (back.beta - p.beta).abs() < 1e-15);
        assert_eq!((back.a, back.b), (p.a, p.b));
    }

    #[test]
    fn long_case_sigma_is_right_angle() {
        let (a, b) = long_case();
        let p = NormalizedProblem::prepare(&a, &b).unwrap();
        assert!(p.long_spiral);
        assert!((p.sigma - PI / 2.0).abs() < 1e-15);
        assert!((p.omega - PI / 4.0).abs() < 1e-15);
        assert!((p.q - (p.g1 * p.g2 + 0.5)).abs() < 1e-15);
        assert!(p.g1 < 0.0 && p.g2 > 0.0 && p.q < 0.0);
    }

    #[test]
    fn gates() {
        // alpha = beta = 30 deg, a = b = sin 30 deg
        let s = deg(30.0).sin();
        let p = NormalizedProblem::from_normalized(deg(30.0), deg(30.0), s, s);
        assert!(p.g2.abs() < 1e-15);
        assert!(
            matches!(compute_invariants(&p), Err(Error::NoSpiralExists { q }) if (q - 0.25).abs() < 1e-12)
        );
        // a true circular arc: beta = -alpha, a = b = -sin(alpha)
        let c = NormalizedProblem::from_normalized(0.7, -0.7, -(0.7f64).sin(), -(0.7f64).sin());
        assert!(matches!(compute_invariants(&c), Err(Error::NoSpiralExists { .. })));
        // sigma = 200 deg
        let w = NormalizedProblem::from_normalized(deg(100.0), deg(100.0), -5.0, 5.0);
        assert!(matches!(compute_invariants(&w), Err(Error::WideLens { .. })));
    }

    #[test]
    fn short_example_invariants() {
        let p = NormalizedProblem::from_normalized(-0.1, 1.5, 0.0, 8.26);
        assert!((p.g1 - (-0.1f64).sin()).abs() < 1e-15);
        assert!((p.g1 + 0.099833).abs() < 1e-6);
        assert!((p.g2 - (8.26 - 1.5f64.sin())).abs() < 1e-15);
        assert!((p.g2 - 7.262505).abs() < 1e-6);
        assert!(p.q < 0.0 && !p.long_spiral);
        assert!((p.sigma - 1.4).abs() < 1e-15 && (p.gamma + 0.8).abs() < 1e-15);
    }

    #[test]
    fn zero_sum_boundary_is_long_with_warning() {
        let p = NormalizedProblem::from_normalized(0.4, -0.4, -1.0, 1.0);
        assert!(p.long_spiral);
        assert!((p.sigma - 2.0 * PI).abs() < 1e-15);
        assert_eq!(p.warnings().len(), 1);
    }

    #[test]
    fn reflection_only_denormalize() {
        let t = SimilarityTransform { reflect: true, ..SimilarityTransform::IDENTITY };
        let s = CurveSample { t: 0.5, x: 0.2, y: 0.3, tau: 0.4, k: 1.5, s: 0.7 };
        let d = denormalize(&[s], &t)[0];
        assert_eq!((d.x, d.y, d.tau, d.k, d.s), (0.2, -0.3, -0.4, -1.5, 0.7));
        let id = denormalize(&[s], &SimilarityTransform::IDENTITY)[0];
        assert_eq!(id, s);
    }
}
