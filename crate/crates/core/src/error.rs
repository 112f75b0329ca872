//! Error type shared by the whole crate.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The two endpoints coincide, so no chord exists to normalize against.
    #[error("endpoints coincide; chord length is zero")]
    DegenerateChord,

    /// `Q >= 0`: only circles or biarcs match the data, no spiral exists.
    #[error("no spiral interpolant exists (Q = {q:e} >= 0)")]
    NoSpiralExists { q: f64 },

    /// Angular width of the lens exceeds pi; the path would have to be split.
    #[error("lens is too wide (sigma = {sigma} > pi); split the path first")]
    WideLens { sigma: f64 },

    /// After reflection the data still do not have `g1 < 0 < g2`.
    #[error("data are not curvature-increasing after reflection (g1 = {g1}, g2 = {g2})")]
    NotIncreasing { g1: f64, g2: f64 },

    #[error("point at infinity (X = {x:e}, Y = {y:e}, W = {w:e})")]
    AtInfinity { x: f64, y: f64, w: f64 },

    #[error("parametrization is singular at t = {t}")]
    SingularParametrization { t: f64 },

    #[error("control polygon side has zero length")]
    DegenerateControlPolygon,

    /// Proposition-style circle test needs a finite control point.
    #[error("control point is at infinity; use the theta-form spirality test")]
    UseThetaFormTest,

    #[error("theta = {theta} coincides with +-sigma; the control point would have q = 0")]
    ExcludedPoint { theta: f64 },

    #[error("no real weight for theta = {theta} (discriminant D0 = {d0:e} < 0)")]
    NoRealSolution { theta: f64, d0: f64 },

    #[error("weight root is inconsistent with increasing curvature (r01 = {r01:e}, r02 = {r02:e})")]
    InconsistentSolution { r01: f64, r02: f64 },

    /// The Moebius image passes through infinity on the parameter interval.
    #[error("denominator of the image vanishes on [0, 1] (discontinuous solution)")]
    NonSpiralArtifact,

    #[error("inversion center corresponds to no finite conic parameter")]
    CenterAtParameterInfinity,

    #[error("degree reduction failed (residual {residual:e})")]
    ReductionFailed { residual: f64 },

    #[error("zero speed at t = {t}")]
    CuspDetected { t: f64 },

    /// A requested family member does not exist or failed its checks.
    #[error("no family member at theta = {theta}: {reason} ({detail})")]
    MemberRejected { theta: f64, reason: String, detail: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateChord => "DegenerateChord",
            Error::NoSpiralExists { .. } => "NoSpiralExists",
            Error::WideLens { .. } => "WideLens",
            Error::NotIncreasing { .. } => "NotIncreasing",
            Error::AtInfinity { .. } => "AtInfinity",
            Error::SingularParametrization { .. } => "SingularParametrization",
            Error::DegenerateControlPolygon => "DegenerateControlPolygon",
            Error::UseThetaFormTest => "UseThetaFormTest",
            Error::ExcludedPoint { .. } => "ExcludedPoint",
            Error::NoRealSolution { .. } => "NoRealSolution",
            Error::InconsistentSolution { .. } => "InconsistentSolution",
            Error::NonSpiralArtifact => "NonSpiralArtifact",
            Error::CenterAtParameterInfinity => "CenterAtParameterInfinity",
            Error::ReductionFailed { .. } => "ReductionFailed",
            Error::CuspDetected { .. } => "CuspDetected",
            Error::MemberRejected { .. } => "MemberRejected",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for the gates that mean "the data admit no spiral", as opposed to
    /// malformed input or an internal failure.
    pub fn is_gate(&self) -> bool {
        matches!(self, Error::NoSpiralExists { .. } | Error::WideLens { .. } | Error::NotIncreasing { .. })
    }

    pub fn is_validation(&self) -> bool {
        matches!(self, Error::DegenerateChord | Error::InvalidInput(_))
    }
}
