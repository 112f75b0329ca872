//! Stateless HTTP/JSON endpoints over the kernel, for the interactive explorer.

use std::sync::Arc;

use axum::extract::rejection::QueryRejection;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

use crate::error::Error;
use crate::io::{
    cubic_report, family_report, member_report, solve_report, AngleUnit, ErrorReport, PointRecord,
    ProblemFile,
};
use crate::problem::G2Point;
use crate::sampling::PLOT_SAMPLES;

pub const DEFAULT_DTHETA_DEG: f64 = 2.0;

/// Query parameters shared by the GET endpoints. The problem is given either
/// entirely by `ax..bk` or taken from the server's default problem.
#[derive(Clone, Debug, Default, Deserialize)]
pub struct ProblemQuery {
    pub ax: Option<f64>,
    pub ay: Option<f64>,
    pub atau: Option<f64>,
    pub ak: Option<f64>,
    pub bx: Option<f64>,
    pub by: Option<f64>,
    pub btau: Option<f64>,
    pub bk: Option<f64>,
    pub unit: Option<AngleUnit>,
    pub theta: Option<f64>,
    pub root: Option<u8>,
    pub dtheta: Option<f64>,
    pub samples: Option<usize>,
}

impl ProblemQuery {
    fn unit(&self) -> AngleUnit {
        self.unit.unwrap_or_default()
    }

    fn angle(&self, v: f64) -> f64 {
        self.unit().to_radians(v)
    }

    fn samples(&self) -> usize {
        self.samples.unwrap_or(PLOT_SAMPLES)
    }

    fn points(&self, default: Option<&ProblemFile>) -> Result<(G2Point, G2Point), Error> {
        let fields = [self.ax, self.ay, self.atau, self.ak, self.bx, self.by, self.btau, self.bk];
        let given = fields.iter().filter(|f| f.is_some()).count();
        match (given, default) {
            (0, Some(f)) => f.points(None),
            (0, None) => {
                Err(Error::InvalidInput("no problem given: pass ax, ay, atau, ak, bx, by, btau, bk".into()))
            }
            (8, _) => {
                let v: Vec<f64> = fields.iter().map(|f| f.unwrap_or(f64::NAN)).collect();
                let file = ProblemFile {
                    schema: None,
                    angle_unit: Some(self.unit()),
                    start: PointRecord { x: v[0], y: v[1], tau: v[2], k: v[3] },
                    end: PointRecord { x: v[4], y: v[5], tau: v[6], k: v[7] },
                };
                file.points(None)
            }
            _ => Err(Error::InvalidInput(format!(
                "problem parameters must be given together: got {given} of 8"
            ))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ServerState {
    pub default_problem: Option<ProblemFile>,
}

pub struct ApiError(pub Error);

pub fn status_for(e: &Error) -> StatusCode {
    if e.is_validation() {
        StatusCode::BAD_REQUEST
    } else if matches!(e, Error::CuspDetected { .. } | Error::ReductionFailed { .. }) {
        StatusCode::INTERNAL_SERVER_ERROR
    } else {
        StatusCode::UNPROCESSABLE_ENTITY
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (status_for(&self.0), Json(ErrorReport::from(&self.0))).into_response()
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError(e)
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;
type Shared = State<Arc<ServerState>>;

fn query(q: Result<Query<ProblemQuery>, QueryRejection>) -> Result<ProblemQuery, ApiError> {
    q.map(|Query(q)| q).map_err(|e| ApiError(Error::InvalidInput(e.body_text())))
}

async fn solve(State(s): Shared, body: String) -> ApiResult<impl Serialize> {
    let (a, b) = if body.trim().is_empty() {
        ProblemQuery::default().points(s.default_problem.as_ref())?
    } else {
        ProblemFile::parse(&body)?.points(None)?
    };
    Ok(Json(solve_report(&a, &b)?))
}

async fn family(
    State(s): Shared,
    q: Result<Query<ProblemQuery>, QueryRejection>,
) -> ApiResult<impl Serialize> {
    let q = query(q)?;
    let (a, b) = q.points(s.default_problem.as_ref())?;
    let dtheta = q.angle(q.dtheta.unwrap_or(match q.unit() {
        AngleUnit::Degrees => DEFAULT_DTHETA_DEG,
        AngleUnit::Radians => DEFAULT_DTHETA_DEG.to_radians(),
    }));
    Ok(Json(family_report(&a, &b, dtheta, q.samples())?))
}

async fn member(
    State(s): Shared,
    q: Result<Query<ProblemQuery>, QueryRejection>,
) -> ApiResult<impl Serialize> {
    let q = query(q)?;
    let (a, b) = q.points(s.default_problem.as_ref())?;
    let theta = q.theta.ok_or_else(|| Error::InvalidInput("missing theta".into()))?;
    Ok(Json(member_report(&a, &b, q.angle(theta), q.root, q.samples())?))
}

async fn cubics(
    State(s): Shared,
    q: Result<Query<ProblemQuery>, QueryRejection>,
) -> ApiResult<impl Serialize> {
    let q = query(q)?;
    let (a, b) = q.points(s.default_problem.as_ref())?;
    Ok(Json(cubic_report(&a, &b, q.samples())?))
}

pub fn router(state: ServerState) -> Router {
    Router::new()
        .route("/solve", post(solve))
        .route("/family", get(family))
        .route("/member", get(member))
        .route("/cubics", get(cubics))
        .layer(CorsLayer::permissive())
        .with_state(Arc::new(state))
}

/// Binds to `127.0.0.1:port` and serves until the process is stopped.
pub async fn serve(port: u16, state: ServerState) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
