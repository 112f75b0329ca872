//! Dense real polynomials and real-root isolation by Sturm sequences.
//!
//! Coefficients are stored lowest degree first. Root isolation bisects on
//! Sturm sign-change counts until each interval holds one distinct root,
//! then refines by sign bisection (or by Sturm bisection when the root has
//! even multiplicity and the polynomial does not change sign) and a final
//! guarded Newton polish.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    /// Builds a polynomial from coefficients `c[0] + c[1] x + ...`.
    /// Exact trailing zeros are dropped.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly { coeffs };
        p.strip();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    /// `c0 + c1 x`
    pub fn linear(c0: f64, c1: f64) -> Self {
        Poly::new(vec![c0, c1])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots.iter().fold(Poly::constant(1.0), |acc, &r| &acc * &Poly::linear(-r, 1.0))
    }

    fn strip(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if *c == 0.0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `sum |c_i| |x|^i`, the natural scale for rounding error of `eval(x)`.
    pub fn eval_abs(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn deriv(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect())
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Drops leading coefficients whose magnitude is at most `rel` times the
    /// largest coefficient.
    pub fn trim_relative(&self, rel: f64) -> Poly {
        let tol = rel * self.max_abs_coeff();
        let mut c = self.coeffs.clone();
        while matches!(c.last(), Some(v) if v.abs() <= tol) {
            c.pop();
        }
        Poly::new(c)
    }

    pub fn monic(&self) -> Poly {
        let lc = self.leading();
        if lc == 0.0 {
            return self.clone();
        }
        self.scale(1.0 / lc)
    }

    /// Long division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let f = rem[k + dd] / lc;
            quot[k] = f;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= f * dc;
            }
            rem[k + dd] = 0.0;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Synthetic division by `(x - root)`; returns the quotient and the remainder.
    pub fn deflate(&self, root: f64) -> (Poly, f64) {
        let Some(n) = self.degree() else {
            return (Poly::zero(), 0.0);
        };
        if n == 0 {
            return (Poly::zero(), self.coeffs[0]);
        }
        let mut q = vec![0.0; n];
        let mut carry = self.coeffs[n];
        for i in (0..n).rev() {
            q[i] = carry;
            carry = self.coeffs[i] + carry * root;
        }
        (Poly::new(q), carry)
    }

    /// Minimum and maximum of the polynomial over `[a, b]`.
    pub fn range_on(&self, a: f64, b: f64) -> (f64, f64) {
        let mut lo = self.eval(a).min(self.eval(b));
        let mut hi = self.eval(a).max(self.eval(b));
        let d = self.deriv();
        if !d.is_zero() {
            for r in real_roots_in(&d, a, b) {
                let v = self.eval(r.value);
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        (lo, hi)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Mul<f64> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: f64) -> Poly {
        self.scale(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Sturm sequence `p, p', -rem(p, p'), ...`, each member rescaled to unit
/// maximum coefficient (positive scaling keeps sign counts intact).
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

const REMAINDER_ZERO: f64 = 1e-11;

fn unit_scaled(p: &Poly) -> Poly {
    let m = p.max_abs_coeff();
    if m == 0.0 {
        p.clone()
    } else {
        p.scale(1.0 / m)
    }
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let first = unit_scaled(p);
        let mut chain = vec![first.clone()];
        let d = unit_scaled(&first.deriv());
        if d.is_zero() {
            return SturmChain { chain };
        }
        chain.push(d);
        loop {
            let n = chain.len();
            if chain[n - 1].degree() == Some(0) {
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            let r = (-&r).trim_relative(1e-13);
            if r.max_abs_coeff() <= REMAINDER_ZERO {
                break;
            }
            chain.push(unit_scaled(&r));
        }
        SturmChain { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn sign_changes(&self, x: f64) -> usize {
        let mut last = 0.0_f64;
        let mut changes = 0;
        for p in &self.chain {
            let v = p.eval(x);
            if v == 0.0 {
                continue;
            }
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                changes += 1;
            }
            last = v;
        }
        changes
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: f64, b: f64) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: usize,
}

/// Cauchy bound: every root satisfies `|x| < bound`.
pub fn root_bound(p: &Poly) -> f64 {
    let lc = p.leading().abs();
    let n = p.degree().unwrap_or(0);
    1.0 + p.coeffs[..n].iter().fold(0.0_f64, |m, c| m.max(c.abs() / lc))
}

/// All real roots, ascending.
pub fn real_roots(p: &Poly) -> Vec<RealRoot> {
    let p = p.trim_relative(1e-14);
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let b = root_bound(&p);
    real_roots_in(&p, -b, b)
}

/// Real roots in `(lo, hi]`, ascending.
pub fn real_roots_in(p: &Poly, lo: f64, hi: f64) -> Vec<RealRoot> {
    let p = p.trim_relative(1e-14);
    if p.degree().unwrap_or(0) == 0 || lo.is_nan() || hi.is_nan() || lo >= hi {
        return Vec::new();
    }
    let chain = SturmChain::new(&p);
    let mut intervals = Vec::new();
    isolate(&chain, &p, lo, hi, 0, &mut intervals);
    intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut roots: Vec<RealRoot> = intervals
        .into_iter()
        .map(|(a, b, cnt)| {
            let value = if cnt == 1 { refine(&chain, &p, a, b) } else { 0.5 * (a + b) };
            RealRoot { value, multiplicity: multiplicity(&p, value) }
        })
        .collect();
    roots.sort_by(|x, y| x.value.total_cmp(&y.value));
    roots
}

fn isolate(chain: &SturmChain, p: &Poly, a: f64, b: f64, depth: usize, out: &mut Vec<(f64, f64, usize)>) {
    let cnt = chain.count(a, b);
    if cnt == 0 {
        return;
    }
    let width_floor = 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0);
    if cnt == 1 || depth > 200 || b - a <= width_floor {
        out.push((a, b, cnt));
        return;
    }
    let mut m = 0.5 * (a + b);
    if p.eval(m) == 0.0 {
        // nudge off an exact root so that it falls strictly inside one half
        m += 0.25 * (b - a) * 1e-3;
    }
    isolate(chain, p, a, m, depth + 1, out);
    isolate(chain, p, m, b, depth + 1, out);
}

fn refine(chain: &SturmChain, p: &Poly, mut a: f64, mut b: f64) -> f64 {
    let mut fa = p.eval(a);
    let fb = p.eval(b);
    if fb == 0.0 {
        return b;
    }
    let x = if fa * fb < 0.0 {
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = p.eval(m);
            if fm == 0.0 {
                return m;
            }
            if (fm > 0.0) == (fa > 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    } else {
        // even multiplicity: no sign change, bisect on Sturm counts instead
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if chain.count(a, m) > 0 {
                b = m;
            } else {
                a = m;
            }
        }
        0.5 * (a + b)
    };
    polish(p, x)
}

fn polish(p: &Poly, mut x: f64) -> f64 {
    let d = p.deriv();
    for _ in 0..4 {
        let f = p.eval(x);
        let df = d.eval(x);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let nx = x - f / df;
        if !nx.is_finite() || p.eval(nx).abs() >= f.abs() {
            break;
        }
        x = nx;
    }
    x
}

fn multiplicity(p: &Poly, x: f64) -> usize {
    let mut m = 1;
    let mut d = p.deriv();
    while !d.is_zero() && d.degree() > Some(0) {
        if d.eval(x).abs() > 1e-7 * d.eval_abs(x).max(f64::MIN_POSITIVE) {
            break;
        }
        m += 1;
        d = d.deriv();
    }
    m
}
