//! Rational quadratic conic arcs in normalized position with weights
//! `{1, w, j}`, where `w` may be zero or negative and `j = +-1`.
//!
//! ```text
//! X(t) = -(1-t)^2 + 2 p_w (1-t) t + j t^2
//! Y(t) =            2 q_w (1-t) t
//! W(t) =  (1-t)^2 + 2 w   (1-t) t + j t^2
//! ```
//!
//! The weighted control point `(p_w, q_w) = w (p, q)` stays finite when the
//! control point itself goes to infinity (`w = 0`).

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// A sign `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    /// `Pos` for `x >= 0`.
    pub fn of(x: f64) -> Sign {
        if x >= 0.0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Pos => 1.0,
            Sign::Neg => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Sign, String> {
        match v {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            _ => Err(format!("sign must be +1 or -1, got {v}")),
        }
    }
}

/// Homogeneous coordinates `(X, Y, W)` of a conic point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Basis {
    pub x: f64,
    pub y: f64,
    pub w: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConicArc {
    pub w: f64,
    pub j: Sign,
    pub pw: f64,
    pub qw: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConicClass {
    Ellipse,
    Parabola,
    Hyperbola,
    Degenerate,
}

/// Tangent directions, curvatures and weighted polygon sides at both ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConicEndpointData {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub h1w: f64,
    pub h2w: f64,
}

/// Evaluation switches to `AtInfinity` when `|W| < NEAR_INFINITY * max(|X|, |Y|, 1)`.
const NEAR_INFINITY: f64 = 1e-13;

impl ConicArc {
    pub fn new(w: f64, j: Sign, pw: f64, qw: f64) -> Self {
        ConicArc { w, j, pw, qw }
    }

    /// Arc with the finite control point `(p, q)`.
    pub fn from_control_point(p: f64, q: f64, w: f64, j: Sign) -> Self {
        ConicArc::new(w, j, p * w, q * w)
    }

    pub fn finite_control(&self) -> bool {
        self.w != 0.0
    }

    pub fn control_point(&self) -> Option<(f64, f64)> {
        self.finite_control().then(|| (self.pw / self.w, self.qw / self.w))
    }

    pub fn basis(&self, t: f64) -> Basis {
        let u = 1.0 - t;
        let j = self.j.value();
        Basis {
            x: -u * u + 2.0 * self.pw * u * t + j * t * t,
            y: 2.0 * self.qw * u * t,
            w: u * u + 2.0 * self.w * u * t + j * t * t,
        }
    }

    /// Power-basis polynomials `[X(t), Y(t), W(t)]`.
    pub fn basis_polys(&self) -> [Poly; 3] {
        let j = self.j.value();
        // (1-t)^2 = 1 - 2t + t^2, (1-t)t = t - t^2
        let x = Poly::new(vec![-1.0, 2.0 + 2.0 * self.pw, -1.0 - 2.0 * self.pw + j]);
        let y = Poly::new(vec![0.0, 2.0 * self.qw, -2.0 * self.qw]);
        let w = Poly::new(vec![1.0, -2.0 + 2.0 * self.w, 1.0 - 2.0 * self.w + j]);
        [x, y, w]
    }

    fn basis_deriv(&self, t: f64) -> Basis {
        let j = self.j.value();
        Basis {
            x: 2.0 * (1.0 - t) + 2.0 * self.pw * (1.0 - 2.0 * t) + 2.0 * j * t,
            y: 2.0 * self.qw * (1.0 - 2.0 * t),
            w: -2.0 * (1.0 - t) + 2.0 * self.w * (1.0 - 2.0 * t) + 2.0 * j * t,
        }
    }

    pub fn eval(&self, t: f64) -> Result<(f64, f64)> {
        let b = self.basis(t);
        if b.w.abs() < NEAR_INFINITY * b.x.abs().max(b.y.abs()).max(1.0) {
            return Err(Error::AtInfinity { x: b.x, y: b.y, w: b.w });
        }
        Ok((b.x / b.w, b.y / b.w))
    }

    /// `k(t) = -8 j q_w W^3 / G^{3/2}`.
    pub fn curvature(&self, t: f64) -> Result<f64> {
        let b = self.basis(t);
        let d = self.basis_deriv(t);
        let gx = d.x * b.w - b.x * d.w;
        let gy = d.y * b.w - b.y * d.w;
        let g = gx * gx + gy * gy;
        if g == 0.0 {
            return Err(Error::SingularParametrization { t });
        }
        Ok(-8.0 * self.j.value() * self.qw * b.w.powi(3) / g.powf(1.5))
    }

    /// Weighted polygon sides `(h1w, h2w)`.
    pub fn weighted_sides(&self) -> (f64, f64) {
        ((self.w + self.pw).hypot(self.qw), (self.w - self.pw).hypot(self.qw))
    }

    /// Boundary G² data in closed form. The weighted expressions already carry
    /// the sign of `w`, so no limit convention is needed at `w = 0`.
    pub fn endpoint_data(&self) -> Result<ConicEndpointData> {
        let (h1w, h2w) = self.weighted_sides();
        if h1w == 0.0 || h2w == 0.0 {
            return Err(Error::DegenerateControlPolygon);
        }
        let j = self.j.value();
        let alpha = self.qw.atan2(self.w + self.pw);
        let beta = (-j * self.qw).atan2(j * (self.w - self.pw));
        Ok(ConicEndpointData {
            alpha,
            beta,
            a: -j * self.qw / h1w.powi(3),
            b: -self.qw / h2w.powi(3),
            h1w,
            h2w,
        })
    }

    /// Invariants `(I1, I2, I3)` of the implicit quadratic form.
    pub fn invariants(&self) -> (f64, f64, f64) {
        let j = self.j.value();
        let q2 = self.qw * self.qw;
        (self.pw * self.pw + q2 + j - self.w * self.w, (j - self.w * self.w) * q2, -j * q2 * q2)
    }

    pub fn classify(&self) -> ConicClass {
        if self.qw == 0.0 {
            return ConicClass::Degenerate;
        }
        match self.j {
            Sign::Neg => ConicClass::Hyperbola,
            Sign::Pos => {
                let aw = self.w.abs();
                if (aw - 1.0).abs() <= 1e-12 {
                    ConicClass::Parabola
                } else if aw < 1.0 {
                    ConicClass::Ellipse
                } else {
                    ConicClass::Hyperbola
                }
            }
        }
    }

    /// Left side of the implicit equation; zero on the conic.
    pub fn implicit(&self, x: f64, y: f64) -> f64 {
        let (pw, qw, w, j) = (self.pw, self.qw, self.w, self.j.value());
        qw * qw * x * x - 2.0 * pw * qw * x * y + (pw * pw + j - w * w) * y * y + 2.0 * w * qw * y - qw * qw
    }

    /// Parameters in `(0, 1)` where `W(t) = 0`.
    pub fn discontinuities(&self) -> Vec<f64> {
        match self.j {
            Sign::Neg => {
                let t2 = 1.0 / (1.0 - self.w + (1.0 + self.w * self.w).sqrt());
                debug_assert!(t2 > 0.0 && t2 < 1.0);
                vec![t2]
            }
            Sign::Pos => {
                // W = 1 + 2(w-1)t + 2(1-w)t^2 has real roots only for w <= -1
                let w = self.w;
                if w > -1.0 {
                    return Vec::new();
                }
                let disc = ((w + 1.0) / (w - 1.0)).sqrt();
                let mut out: Vec<f64> = [0.5 * (1.0 - disc), 0.5 * (1.0 + disc)]
                    .into_iter()
                    .filter(|t| *t > 0.0 && *t < 1.0)
                    .collect();
                out.dedup();
                out
            }
        }
    }

    /// Circle functions `(K1(p, q), K2(p, q))` of the bounding circles.
    pub fn bounding_circles(&self) -> Result<(f64, f64)> {
        let (p, q) = self.control_point().ok_or(Error::UseThetaFormTest)?;
        let rw = self.j.value() / (2.0 * self.w * self.w);
        let xw = 1.0 - rw;
        Ok(((p + xw).powi(2) + q * q - rw * rw, (p - xw).powi(2) + q * q - rw * rw))
    }

    /// Sufficient test for the absence of vertices on the arc.
    ///
    /// `false` means "not certified", not "has a vertex".
    pub fn vertex_free(&self) -> Result<bool> {
        let (k1, k2) = self.bounding_circles()?;
        let p = self.pw / self.w;
        Ok(match self.j {
            Sign::Pos => self.w >= FRAC_1_SQRT_2 && p != 0.0 && k1 * k2 <= 0.0,
            Sign::Neg => (self.w > 0.0 && k1 <= 0.0) || (self.w < 0.0 && k2 <= 0.0),
        })
    }
}
