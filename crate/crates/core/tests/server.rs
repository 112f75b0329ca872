//! HTTP endpoints exercised in-process.

use axum::body::Body;
use axum::http::{Request, StatusCode};
use g2spiral::io::ProblemFile;
use g2spiral::server::{router, ServerState};
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

const LONG_CASE: &str = include_str!("../data/long_case.json");
const GOLDEN_QUERY: &str = "ax=-1&ay=0&atau=-0.1&ak=0&bx=1&by=0&btau=1.5&bk=8.26&unit=radians";

fn app() -> axum::Router {
    router(ServerState { default_problem: Some(ProblemFile::parse(LONG_CASE).unwrap()) })
}

async fn send(req: Request<Body>) -> (StatusCode, Value, Vec<u8>) {
    let resp = app().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null), bytes)
}

async fn get(uri: &str) -> (StatusCode, Value, Vec<u8>) {
    send(Request::get(uri).body(Body::empty()).unwrap()).await
}

async fn post(uri: &str, body: &str) -> (StatusCode, Value) {
    let (s, v, _) = send(Request::post(uri).body(Body::from(body.to_string())).unwrap()).await;
    (s, v)
}

#[tokio::test]
async fn solve_reports_invariants() {
    let (status, v) = post("/solve", LONG_CASE).await;
    assert_eq!(status, StatusCode::OK);
    assert!((v["problem"]["sigma"]["deg"].as_f64().unwrap() - 90.0).abs() < 1e-12);
    assert_eq!(v["problem"]["long_spiral"], true);
    assert_eq!(v["schema"], "g2spiral.output/1");
}

#[tokio::test]
async fn solve_with_empty_body_uses_default_problem() {
    let (status, v) = post("/solve", "").await;
    assert_eq!(status, StatusCode::OK);
    assert!((v["problem"]["sigma"]["deg"].as_f64().unwrap() - 90.0).abs() < 1e-12);
}

#[tokio::test]
async fn malformed_body_is_400() {
    let (status, v) = post("/solve", "{not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["kind"], "InvalidInput");
    let (status, _) = post(
        "/solve",
        r#"{"start": {"x": 0, "y": 0, "tau": 0, "k": 0}, "end": {"x": 0, "y": 0, "tau": 0, "k": 0}}"#,
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn gate_failure_is_422() {
    let (status, v) = post("/solve", include_str!("../data/circle.json")).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"]["kind"], "NoSpiralExists");
}

#[tokio::test]
async fn bad_query_is_400() {
    let (status, v, _) = get("/family?dtheta=abc").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["kind"], "InvalidInput");
    let (status, _, _) = get("/family?ax=1&ay=2").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _, _) = get("/member").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _, _) = get("/member?theta=0&root=3").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn member_outside_range_is_422() {
    let (status, v, _) = get("/member?theta=95").await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"]["kind"], "MemberRejected");
}

#[tokio::test]
async fn family_and_member_agree() {
    let (status, fam, _) = get("/family?samples=15").await;
    assert_eq!(status, StatusCode::OK);
    let members = fam["members"].as_array().unwrap();
    assert_eq!(members.len(), 27);
    for m in members {
        let rad = m["theta"]["rad"].as_f64().unwrap();
        let root = m["root"].as_u64().unwrap();
        let (status, one, _) = get(&format!("/member?theta={rad}&root={root}&unit=radians&samples=15")).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(&one["members"][0], m);
    }
}

#[tokio::test]
async fn identical_requests_give_identical_bodies() {
    let (_, _, a) = get("/family?dtheta=4&samples=10").await;
    let (_, _, b) = get("/family?dtheta=4&samples=10").await;
    assert_eq!(a, b);
}

#[tokio::test]
async fn cubics_from_query_problem() {
    let (status, v, _) = get(&format!("/cubics?{GOLDEN_QUERY}&samples=5")).await;
    assert_eq!(status, StatusCode::OK);
    let cubics = v["cubics"].as_array().unwrap();
    assert_eq!(cubics.len(), 1);
    assert_eq!(cubics[0]["degree"], 3);
    assert!(cubics[0]["T"].is_number());
    assert_eq!(cubics[0]["samples"].as_array().unwrap().len(), 5);
}

#[tokio::test]
async fn cors_headers_present() {
    let req = Request::get("/family?dtheta=10&samples=3")
        .header("Origin", "http://localhost:5173")
        .body(Body::empty())
        .unwrap();
    let resp = app().oneshot(req).await.unwrap();
    assert!(resp.headers().contains_key("access-control-allow-origin"));
}

#[tokio::test]
async fn no_default_problem_requires_query() {
    let resp = router(ServerState::default())
        .oneshot(Request::get("/family").body(Body::empty()).unwrap())
        .await
        .unwrap();
    assert_eq!(resp.status(), StatusCode::BAD_REQUEST);
}
