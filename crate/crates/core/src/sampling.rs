//! Exact-derivative sampling of planar rational curves.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Sample count used when auditing a curve.
pub const AUDIT_SAMPLES: usize = 2001;
/// Sample count used for plots.
pub const PLOT_SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    /// Tangent angle in radians, unwrapped along the curve.
    pub tau: f64,
    pub k: f64,
    /// Arc length from `t = 0`.
    pub s: f64,
}

/// `(X(t) / W(t), Y(t) / W(t))` in power-basis coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCurve {
    pub x: Poly,
    pub y: Poly,
    pub w: Poly,
    dx: Poly,
    dy: Poly,
    dw: Poly,
    ddx: Poly,
    ddy: Poly,
    ddw: Poly,
}

/// Homogeneous numerator values and their first two derivatives.
#[derive(Clone, Copy, Debug)]
struct Jet {
    p: [f64; 3],
    d1: [f64; 3],
    d2: [f64; 3],
}

impl RationalCurve {
    pub fn new(x: Poly, y: Poly, w: Poly) -> Self {
        let (dx, dy, dw) = (x.deriv(), y.deriv(), w.deriv());
        let (ddx, ddy, ddw) = (dx.deriv(), dy.deriv(), dw.deriv());
        RationalCurve { x, y, w, dx, dy, dw, ddx, ddy, ddw }
    }

    pub fn degree(&self) -> usize {
        [&self.x, &self.y, &self.w].iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    fn jet(&self, t: f64) -> Jet {
        Jet {
            p: [self.x.eval(t), self.y.eval(t), self.w.eval(t)],
            d1: [self.dx.eval(t), self.dy.eval(t), self.dw.eval(t)],
            d2: [self.ddx.eval(t), self.ddy.eval(t), self.ddw.eval(t)],
        }
    }

    pub fn point(&self, t: f64) -> Result<(f64, f64)> {
        let (x, y, w) = (self.x.eval(t), self.y.eval(t), self.w.eval(t));
        if w == 0.0 || !(x / w).is_finite() || !(y / w).is_finite() {
            return Err(Error::AtInfinity { x, y, w });
        }
        Ok((x / w, y / w))
    }

    /// Velocity numerator `P'W - PW'`; the velocity is this divided by `W^2`.
    fn velocity_numerator(j: &Jet) -> (f64, f64) {
        (j.d1[0] * j.p[2] - j.p[0] * j.d1[2], j.d1[1] * j.p[2] - j.p[1] * j.d1[2])
    }

    pub fn velocity(&self, t: f64) -> (f64, f64) {
        let j = self.jet(t);
        let (vx, vy) = Self::velocity_numerator(&j);
        let w2 = j.p[2] * j.p[2];
        (vx / w2, vy / w2)
    }

    pub fn speed(&self, t: f64) -> f64 {
        let (vx, vy) = self.velocity(t);
        vx.hypot(vy)
    }

    /// Tangent angle in `(-pi, pi]`.
    pub fn tangent_angle(&self, t: f64) -> f64 {
        let (vx, vy) = Self::velocity_numerator(&self.jet(t));
        vy.atan2(vx)
    }

    /// Signed curvature `k = W^3 det[P; P'; P''] / |P'W - PW'|^3`.
    pub fn curvature(&self, t: f64) -> Result<f64> {
        let j = self.jet(t);
        let (vx, vy) = Self::velocity_numerator(&j);
        let v = vx.hypot(vy);
        if v == 0.0 || self.is_cusp(&j, v) {
            return Err(Error::CuspDetected { t });
        }
        let det = det3(j.p, j.d1, j.d2);
        Ok(det * j.p[2].powi(3) / v.powi(3))
    }

    fn is_cusp(&self, j: &Jet, v: f64) -> bool {
        let scale = (j.d1[0] * j.p[2]).abs()
            + (j.p[0] * j.d1[2]).abs()
            + (j.d1[1] * j.p[2]).abs()
            + (j.p[1] * j.d1[2]).abs();
        v <= 1e-14 * scale
    }

    /// Arc length over `[t0, t1]` by 5-point Gauss-Legendre.
    pub fn arc_length_gl5(&self, t0: f64, t1: f64) -> f64 {
        let (m, h) = (0.5 * (t0 + t1), 0.5 * (t1 - t0));
        GL5.iter().map(|(x, wgt)| wgt * self.speed(m + h * x)).sum::<f64>() * h
    }

    /// Composite arc length over `[0, 1]` with `intervals` equal pieces.
    pub fn arc_length(&self, intervals: usize) -> f64 {
        let n = intervals.max(1);
        (0..n).map(|i| self.arc_length_gl5(i as f64 / n as f64, (i + 1) as f64 / n as f64)).sum()
    }

    /// Smallest `|W(t)|` on `[0, 1]` relative to the largest.
    pub fn relative_denominator_min(&self) -> f64 {
        let (lo, hi) = self.w.range_on(0.0, 1.0);
        let min_abs = if lo <= 0.0 && hi >= 0.0 { 0.0 } else { lo.abs().min(hi.abs()) };
        let max_abs = lo.abs().max(hi.abs());
        if max_abs == 0.0 {
            0.0
        } else {
            min_abs / max_abs
        }
    }
}

fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

/// Samples `n >= 2` points on a uniform grid in `t` over `[0, 1]`.
pub fn sample(curve: &RationalCurve, n: usize) -> Result<Vec<CurveSample>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("sample count must be at least 2, got {n}")));
    }
    let ts: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    sample_at(curve, &ts)
}

/// Samples at increasing parameters `ts`; arc length is measured from `ts[0]`.
pub fn sample_at(curve: &RationalCurve, ts: &[f64]) -> Result<Vec<CurveSample>> {
    let mut out: Vec<CurveSample> = Vec::with_capacity(ts.len());
    for &t in ts {
        let (x, y) = curve.point(t)?;
        let k = curve.curvature(t)?;
        let raw = curve.tangent_angle(t);
        let (tau, s) = match out.last() {
            None => (raw, 0.0),
            Some(prev) => (unwrap_near(raw, prev.tau), prev.s + curve.arc_length_gl5(prev.t, t)),
        };
        out.push(CurveSample { t, x, y, tau, k, s });
    }
    Ok(out)
}

/// The representative of `angle` modulo `2 pi` nearest to `reference`.
pub fn unwrap_near(angle: f64, reference: f64) -> f64 {
    angle - 2.0 * PI * ((angle - reference) / (2.0 * PI)).round()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub monotone: bool,
    /// Largest decrease of curvature between adjacent samples, `0` if none.
    pub worst_violation: f64,
}

/// Checks that curvature is nondecreasing along the samples.
pub fn monotonicity_audit(samples: &[CurveSample]) -> MonotonicityReport {
    let worst_violation = samples.windows(2).map(|p| p[0].k - p[1].k).fold(0.0_f64, f64::max);
    let (lo, hi) =
        samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s.k), hi.max(s.k)));
    let range = if samples.is_empty() { 0.0 } else { hi - lo };
    MonotonicityReport { monotone: worst_violation <= 1e-9 * range.max(1.0), worst_violation }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Unit quarter circle from (1, 0) to (0, 1).
    fn quarter_circle() -> RationalCurve {
        RationalCurve::new(
            Poly::new(vec![1.0, 0.0, -1.0]),
            Poly::new(vec![0.0, 2.0]),
            Poly::new(vec![1.0, 0.0, 1.0]),
        )
    }

    #[test]
    fn quarter_circle_has_unit_curvature() {
        let c = quarter_circle();
        let s = sample(&c, 101).unwrap();
        for p in &s {
            assert!((p.k - 1.0).abs() < 1e-10);
            assert!((p.x.hypot(p.y) - 1.0).abs() < 1e-14);
        }
        assert!((s.last().unwrap().s - PI / 2.0).abs() < 1e-10);
        assert!((s[0].tau - PI / 2.0).abs() < 1e-14);
        let a = monotonicity_audit(&s);
        assert!(a.monotone);
    }

    #[test]
    fn clockwise_circle_has_negative_curvature() {
        let c = RationalCurve::new(
            Poly::new(vec![1.0, 0.0, -1.0]),
            Poly::new(vec![0.0, -2.0]),
            Poly::new(vec![1.0, 0.0, 1.0]),
        );
        assert!((c.curvature(0.3).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn curvature_matches_finite_differences() {
        let c = RationalCurve::new(
            Poly::new(vec![-1.0, 0.4, 2.1, -0.3, 0.2]),
            Poly::new(vec![0.0, 1.3, -0.7, 0.5]),
            Poly::new(vec![1.0, 0.2, 0.1, -0.05, 0.3]),
        );
        let h = 1e-3;
        for i in 1..10 {
            let t = i as f64 / 10.0;
            let p = |u: f64| c.point(u).unwrap();
            // five-point stencils
            let pts: Vec<(f64, f64)> = (-2..=2).map(|k| p(t + k as f64 * h)).collect();
            let d1 = |f: &dyn Fn(&(f64, f64)) -> f64| {
                (f(&pts[0]) - 8.0 * f(&pts[1]) + 8.0 * f(&pts[3]) - f(&pts[4])) / (12.0 * h)
            };
            let d2 = |f: &dyn Fn(&(f64, f64)) -> f64| {
                (-f(&pts[0]) + 16.0 * f(&pts[1]) - 30.0 * f(&pts[2]) + 16.0 * f(&pts[3]) - f(&pts[4]))
                    / (12.0 * h * h)
            };
            let (xp, yp) = (d1(&|q| q.0), d1(&|q| q.1));
            let (xpp, ypp) = (d2(&|q| q.0), d2(&|q| q.1));
            let k_fd = (xp * ypp - yp * xpp) / (xp * xp + yp * yp).powf(1.5);
            let k = c.curvature(t).unwrap();
            assert!((k - k_fd).abs() <= 1e-6 * k.abs().max(1.0), "t={t}: {k} vs {k_fd}");
            let (vx, vy) = c.velocity(t);
            assert!((vx - xp).abs() < 1e-6 && (vy - yp).abs() < 1e-6);
        }
    }

    #[test]
    fn arc_length_converges_under_refinement() {
        let c = RationalCurve::new(
            Poly::new(vec![-1.0, 2.0, 0.3, -0.1]),
            Poly::new(vec![0.0, 1.0, -0.4]),
            Poly::new(vec![1.0, 0.1, 0.2]),
        );
        let s100 = sample(&c, 101).unwrap().last().unwrap().s;
        let s200 = sample(&c, 201).unwrap().last().unwrap().s;
        assert!((s100 - s200).abs() < 1e-10);
        assert!((c.arc_length(100) - s100).abs() < 1e-12);
    }

    #[test]
    fn tangent_is_unwrapped() {
        // three quarters of a circle through the branch cut of atan2
        let c = RationalCurve::new(
            Poly::new(vec![1.0, 0.0, -9.0]),
            Poly::new(vec![0.0, -6.0]),
            Poly::new(vec![1.0, 0.0, 9.0]),
        );
        let s = sample(&c, 200).unwrap();
        for p in s.windows(2) {
            assert!((p[1].tau - p[0].tau).abs() < 0.5);
            assert!(p[1].s >= p[0].s);
        }
        assert_eq!(s[0].s, 0.0);
    }

    #[test]
    fn cusp_is_reported() {
        // (t^2, t^3) has zero speed at t = 0
        let c = RationalCurve::new(
            Poly::new(vec![0.0, 0.0, 1.0]),
            Poly::new(vec![0.0, 0.0, 0.0, 1.0]),
            Poly::constant(1.0),
        );
        assert!(matches!(sample(&c, 5), Err(Error::CuspDetected { t }) if t == 0.0));
        assert!(sample(&c, 1).is_err());
    }

    #[test]
    fn audit_flags_decrease() {
        let mk = |k: f64| CurveSample { t: 0.0, x: 0.0, y: 0.0, tau: 0.0, k, s: 0.0 };
        let r = monotonicity_audit(&[mk(0.0), mk(1.0), mk(0.9), mk(2.0)]);
        assert!(!r.monotone);
        assert!((r.worst_violation - 0.1).abs() < 1e-15);
        let flat = monotonicity_audit(&[mk(1.0), mk(1.0), mk(1.0)]);
        assert!(flat.monotone && flat.worst_violation == 0.0);
    }

    #[test]
    fn relative_denominator_minimum() {
        let touching =
            RationalCurve::new(Poly::constant(1.0), Poly::constant(1.0), Poly::new(vec![0.25, -1.0, 1.0]));
        assert_eq!(touching.relative_denominator_min(), 0.0);
        let positive =
            RationalCurve::new(Poly::constant(1.0), Poly::constant(1.0), Poly::new(vec![1.0, 1.0]));
        assert!((positive.relative_denominator_min() - 0.5).abs() < 1e-15);
    }
}
