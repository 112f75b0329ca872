//! JSON records for problems, family members and cubic searches.

use serde::{Deserialize, Serialize};

use crate::cubic::{find_cubics, CubicSpiral, RootDisposition};
use crate::error::{Error, Result};
use crate::family::{build_family, member, theta_range, Audit, FamilySolution, Rejection, WeightRoot};
use crate::problem::{denormalize, G2Point, NormalizedProblem};
use crate::sampling::{sample, CurveSample, RationalCurve};

pub const PROBLEM_SCHEMA: &str = "g2spiral.problem/1";
pub const OUTPUT_SCHEMA: &str = "g2spiral.output/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleUnit {
    #[default]
    Degrees,
    Radians,
}

impl AngleUnit {
    pub fn to_radians(self, a: f64) -> f64 {
        match self {
            AngleUnit::Degrees => a.to_radians(),
            AngleUnit::Radians => a,
        }
    }
}

/// Position, tangent direction and curvature at one end.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub x: f64,
    pub y: f64,
    pub tau: f64,
    pub k: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_unit: Option<AngleUnit>,
    pub start: PointRecord,
    pub end: PointRecord,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        let f: ProblemFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("problem file: {e}")))?;
        if let Some(s) = &f.schema {
            if s != PROBLEM_SCHEMA {
                return Err(Error::InvalidInput(format!("unsupported schema {s:?}")));
            }
        }
        Ok(f)
    }

    pub fn from_points(start: &G2Point, end: &G2Point, unit: AngleUnit) -> ProblemFile {
        let rec = |p: &G2Point| PointRecord {
            x: p.x,
            y: p.y,
            tau: match unit {
                AngleUnit::Degrees => p.tau.to_degrees(),
                AngleUnit::Radians => p.tau,
            },
            k: p.k,
        };
        ProblemFile {
            schema: Some(PROBLEM_SCHEMA.into()),
            angle_unit: Some(unit),
            start: rec(start),
            end: rec(end),
        }
    }

    /// End data with angles in radians. `unit` overrides the file's own unit.
    pub fn points(&self, unit: Option<AngleUnit>) -> Result<(G2Point, G2Point)> {
        let unit = unit.or(self.angle_unit).unwrap_or_default();
        let conv = |r: &PointRecord| -> Result<G2Point> {
            if ![r.x, r.y, r.tau, r.k].iter().all(|v| v.is_finite()) {
                return Err(Error::InvalidInput("non-finite value in problem".into()));
            }
            Ok(G2Point::new(r.x, r.y, unit.to_radians(r.tau), r.k))
        };
        Ok((conv(&self.start)?, conv(&self.end)?))
    }
}

/// An angle in both units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Angle {
    pub deg: f64,
    pub rad: f64,
}

impl From<f64> for Angle {
    fn from(rad: f64) -> Angle {
        Angle { deg: rad.to_degrees(), rad }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemSummary {
    pub alpha: Angle,
    pub beta: Angle,
    pub a: f64,
    pub b: f64,
    pub g1: f64,
    pub g2: f64,
    pub q: f64,
    pub sigma: Angle,
    pub omega: Angle,
    pub gamma: Angle,
    pub long_spiral: bool,
    /// Data were mirrored to make curvature increase.
    pub reflected: bool,
    pub scale: f64,
    pub theta_max: Angle,
    pub theta0: Angle,
    pub theta1: Angle,
    pub warnings: Vec<String>,
}

pub fn summarize(p: &NormalizedProblem) -> ProblemSummary {
    let r = theta_range(p);
    ProblemSummary {
        alpha: p.alpha.into(),
        beta: p.beta.into(),
        a: p.a,
        b: p.b,
        g1: p.g1,
        g2: p.g2,
        q: p.q,
        sigma: p.sigma.into(),
        omega: p.omega.into(),
        gamma: p.gamma.into(),
        long_spiral: p.long_spiral,
        reflected: p.transform.reflect,
        scale: p.transform.scale,
        theta_max: r.theta.into(),
        theta0: r.theta0.into(),
        theta1: r.theta1.into(),
        warnings: p.warnings(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub s: f64,
    pub k: f64,
}

impl From<&CurveSample> for SampleRecord {
    fn from(c: &CurveSample) -> Self {
        SampleRecord { t: c.t, x: c.x, y: c.y, s: c.s, k: c.k }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub monotone: bool,
    pub worst_violation: f64,
    pub tangent_error: [f64; 2],
    pub curvature_error: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction_residual: Option<f64>,
}

impl Diagnostics {
    fn from_audit(a: Option<Audit>) -> Result<Diagnostics> {
        let a = a.ok_or_else(|| Error::InvalidInput("curve has not been audited".into()))?;
        Ok(Diagnostics {
            monotone: a.monotone,
            worst_violation: a.worst_violation,
            tangent_error: a.tangent_error,
            curvature_error: a.curvature_error,
            reduction: None,
            reduction_residual: None,
        })
    }
}

/// Coefficients of a cubic in the unnormalized basis `sum c_i (1-t)^(3-i) t^i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicCoefficients {
    pub x: [f64; 4],
    pub y: [f64; 4],
    pub w: [f64; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub theta: Angle,
    pub root: u8,
    pub j: i8,
    #[serde(rename = "N")]
    pub n: f64,
    pub w: f64,
    pub pw: f64,
    pub qw: f64,
    pub r0: f64,
    pub lambda0: Angle,
    pub degree: u8,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t_cancel: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cubic: Option<CubicCoefficients>,
    /// Samples in the caller's coordinates.
    pub samples: Vec<SampleRecord>,
    pub diagnostics: Diagnostics,
}

fn user_samples(curve: &RationalCurve, p: &NormalizedProblem, n: usize) -> Result<Vec<SampleRecord>> {
    let s = sample(curve, n)?;
    Ok(denormalize(&s, &p.transform).iter().map(SampleRecord::from).collect())
}

pub fn member_record(sol: &FamilySolution, p: &NormalizedProblem, samples: usize) -> Result<SolutionRecord> {
    let c = &sol.candidate;
    Ok(SolutionRecord {
        theta: c.theta.into(),
        root: c.root.index(),
        j: c.j.as_i8(),
        n: c.n,
        w: c.w,
        pw: c.pw,
        qw: c.qw,
        r0: sol.map.r0,
        lambda0: sol.map.lambda0.into(),
        degree: 4,
        t_cancel: None,
        cubic: None,
        samples: user_samples(&sol.quartic, p, samples)?,
        diagnostics: Diagnostics::from_audit(sol.audit)?,
    })
}

pub fn cubic_record(c: &CubicSpiral, p: &NormalizedProblem, samples: usize) -> Result<SolutionRecord> {
    let k = &c.candidate;
    let mut diagnostics = Diagnostics::from_audit(c.audit)?;
    diagnostics.reduction = Some(format!("{:?}", c.reduction));
    diagnostics.reduction_residual = Some(c.residual);
    Ok(SolutionRecord {
        theta: k.theta.into(),
        root: k.root.index(),
        j: k.j.as_i8(),
        n: k.n,
        w: k.w,
        pw: k.pw,
        qw: k.qw,
        r0: c.map.r0,
        lambda0: c.map.lambda0.into(),
        degree: 3,
        t_cancel: Some(c.t_cancel),
        cubic: Some(CubicCoefficients { x: c.x3, y: c.y3, w: c.w3 }),
        samples: user_samples(&c.curve, p, samples)?,
        diagnostics,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RejectionRecord {
    pub theta: Angle,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<u8>,
    pub reason: String,
    pub detail: String,
}

impl From<&Rejection> for RejectionRecord {
    fn from(r: &Rejection) -> Self {
        RejectionRecord {
            theta: r.theta.into(),
            j: r.j.map(|s| s.as_i8()),
            root: r.root.map(|r| r.index()),
            reason: r.reason.clone(),
            detail: r.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: String,
    pub problem: ProblemSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub schema: String,
    pub problem: ProblemSummary,
    pub dtheta: Angle,
    pub members: Vec<SolutionRecord>,
    pub rejected: Vec<RejectionRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemberReport {
    pub schema: String,
    pub problem: ProblemSummary,
    pub members: Vec<SolutionRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    pub v: f64,
    pub multiplicity: usize,
    pub theta: Angle,
    pub j: i8,
    #[serde(rename = "N")]
    pub n: Option<f64>,
    pub disposition: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicReport {
    pub schema: String,
    pub problem: ProblemSummary,
    /// Monic sextic in `v = tan(theta / 2)`, lowest degree first.
    pub polynomial: Vec<f64>,
    pub roots: Vec<RootRecord>,
    pub cubics: Vec<SolutionRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub schema: String,
    pub error: ErrorBody,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        ErrorReport {
            schema: OUTPUT_SCHEMA.into(),
            error: ErrorBody { kind: e.kind().into(), message: e.to_string() },
        }
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 2 {
        return Err(Error::InvalidInput(format!("sample count must be at least 2, got {samples}")));
    }
    Ok(())
}

pub fn solve_report(start: &G2Point, end: &G2Point) -> Result<SolveReport> {
    let p = NormalizedProblem::prepare(start, end)?;
    Ok(SolveReport { schema: OUTPUT_SCHEMA.into(), problem: summarize(&p) })
}

pub fn family_report(start: &G2Point, end: &G2Point, dtheta: f64, samples: usize) -> Result<FamilyReport> {
    check_samples(samples)?;
    let p = NormalizedProblem::prepare(start, end)?;
    let fam = build_family(&p, dtheta)?;
    let members = fam.members.iter().map(|m| member_record(m, &p, samples)).collect::<Result<Vec<_>>>()?;
    Ok(FamilyReport {
        schema: OUTPUT_SCHEMA.into(),
        problem: summarize(&p),
        dtheta: dtheta.into(),
        members,
        rejected: fam.rejected.iter().map(RejectionRecord::from).collect(),
    })
}

pub fn member_report(
    start: &G2Point,
    end: &G2Point,
    theta: f64,
    root: Option<u8>,
    samples: usize,
) -> Result<MemberReport> {
    check_samples(samples)?;
    let root = match root {
        None => None,
        Some(i) => Some(
            WeightRoot::from_index(i)
                .ok_or_else(|| Error::InvalidInput(format!("root must be 1 or 2, got {i}")))?,
        ),
    };
    let p = NormalizedProblem::prepare(start, end)?;
    let sols = member(&p, theta, root)?;
    let members = sols.iter().map(|m| member_record(m, &p, samples)).collect::<Result<Vec<_>>>()?;
    Ok(MemberReport { schema: OUTPUT_SCHEMA.into(), problem: summarize(&p), members })
}

pub fn cubic_report(start: &G2Point, end: &G2Point, samples: usize) -> Result<CubicReport> {
    check_samples(samples)?;
    let p = NormalizedProblem::prepare(start, end)?;
    let search = find_cubics(&p);
    let roots = search
        .roots
        .iter()
        .map(|r| {
            let (disposition, detail) = match &r.disposition {
                RootDisposition::Rejected { reason, detail } => (reason.clone(), Some(detail.clone())),
                d => (format!("{d:?}"), None),
            };
            RootRecord {
                v: r.v,
                multiplicity: r.multiplicity,
                theta: r.theta.into(),
                j: r.j.as_i8(),
                n: r.n,
                disposition,
                detail,
            }
        })
        .collect();
    let cubics = search.cubics.iter().map(|c| cubic_record(c, &p, samples)).collect::<Result<Vec<_>>>()?;
    Ok(CubicReport {
        schema: OUTPUT_SCHEMA.into(),
        problem: summarize(&p),
        polynomial: search.equation.poly.coeffs().to_vec(),
        roots,
        cubics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LONG_CASE: &str = r#"{
        "schema": "g2spiral.problem/1",
        "angle_unit": "degrees",
        "start": {"x": -1, "y": 0, "tau": -150, "k": -0.4},
        "end": {"x": 1, "y": 0, "tau": -120, "k": 0.3}
    }"#;

    #[test]
    fn parses_problem() {
        let f = ProblemFile::parse(LONG_CASE).unwrap();
        let (a, b) = f.points(None).unwrap();
        assert!((a.tau - (-150f64).to_radians()).abs() < 1e-15);
        assert_eq!(b.k, 0.3);
        let (a, _) = f.points(Some(AngleUnit::Radians)).unwrap();
        assert_eq!(a.tau, -150.0);
    }

    #[test]
    fn rejects_malformed() {
        assert!(ProblemFile::parse("{}").is_err());
        assert!(ProblemFile::parse(r#"{"start":{"x":0,"y":0,"tau":0,"k":0}}"#).is_err());
        let bad = LONG_CASE.replace("problem/1", "problem/9");
        assert!(ProblemFile::parse(&bad).is_err());
        let nan = ProblemFile {
            schema: None,
            angle_unit: None,
            start: PointRecord { x: f64::NAN, y: 0.0, tau: 0.0, k: 0.0 },
            end: PointRecord { x: 1.0, y: 0.0, tau: 0.0, k: 0.0 },
        };
        assert!(nan.points(None).is_err());
        assert!(ProblemFile::parse(
            r#"{"start":{"x":1e999,"y":0,"tau":0,"k":0},"end":{"x":1,"y":0,"tau":0,"k":0}}"#
        )
        .is_err());
    }

    #[test]
    fn problem_file_round_trip() {
        let f = ProblemFile::parse(LONG_CASE).unwrap();
        let (a, b) = f.points(None).unwrap();
        let back = ProblemFile::from_points(&a, &b, AngleUnit::Radians);
        let text = serde_json::to_string(&back).unwrap();
        let (a2, b2) = ProblemFile::parse(&text).unwrap().points(None).unwrap();
        assert_eq!((a, b), (a2, b2));
    }

    #[test]
    fn family_report_shape() {
        let (a, b) = ProblemFile::parse(LONG_CASE).unwrap().points(None).unwrap();
        let r = family_report(&a, &b, 2f64.to_radians(), 50).unwrap();
        assert!((r.problem.sigma.deg - 90.0).abs() < 1e-12);
        assert_eq!(r.members.len(), 27);
        assert!(r.members.iter().all(|m| m.samples.len() == 50 && m.degree == 4));
        let mid = &r.members[13];
        assert_eq!(mid.theta.rad, 0.0);
        let s0 = mid.samples[0];
        let s1 = mid.samples[49];
        assert!((s0.x + 1.0).abs() < 1e-12 && (s1.x - 1.0).abs() < 1e-12);
        assert!((s0.k + 0.4).abs() < 1e-7 && (s1.k - 0.3).abs() < 1e-7);
        let text = serde_json::to_string(&r).unwrap();
        let back: FamilyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn cubic_report_counts_dispositions() {
        let a = G2Point::new(-1.0, 0.0, -0.1, 0.0);
        let b = G2Point::new(1.0, 0.0, 1.5, 8.26);
        let r = cubic_report(&a, &b, 11).unwrap();
        assert_eq!(r.polynomial.len(), 7);
        assert_eq!(r.roots.len(), 4);
        assert_eq!(r.cubics.len(), 1);
        assert_eq!(r.roots.iter().filter(|x| x.disposition == "Accepted").count(), 1);
        let c = &r.cubics[0];
        assert!((c.t_cancel.unwrap() + 0.0612).abs() < 1e-4);
        assert!(c.cubic.is_some());
    }

    #[test]
    fn error_report() {
        let e = Error::WideLens { sigma: 4.0 };
        let r = ErrorReport::from(&e);
        assert_eq!(r.error.kind, "WideLens");
    }
}
