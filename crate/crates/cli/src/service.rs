//! Stateless HTTP facade. [`handle`] is the whole protocol; [`router`] only
//! moves bytes between axum and it.

use std::path::PathBuf;

use axum::body::Bytes;
use axum::http::{header, Method, StatusCode, Uri};
use axum::response::{IntoResponse, Response as HttpResponse};
use axum::routing::any;
use axum::Router;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

use twist_core::classify::{classify, is_solvable, DEFAULT_CAP};
use twist_core::dynamics::{apply_move, legal_moves, scramble, PuzzleState};
use twist_core::graph::TwistGraph;
use twist_core::presets::{self, PRESET_NAMES};
use twist_core::solver::{solve, SolveOutcome};
use twist_core::Error;

use crate::report::{classify_report, CheckReport, ErrorBody, SolveReport};

/// Solve cap used when the request names none.
pub const DEFAULT_SOLVE_CAP: usize = 1_000_000;
/// Upper bound on any client-supplied cap.
pub const MAX_CAP: usize = 5_000_000;
pub const MAX_SCRAMBLE_STEPS: usize = 1_000_000;

/// Presets listed by `GET /api/presets`, with concrete sizes.
pub const LISTED_PRESETS: &[&str] = &[
    "figure8",
    "fifteen_plus_four",
    "theta5",
    "theta7",
    "k4",
    "k33",
    "grid(3,3)",
    "grid(4,4)",
    "cycle(5)",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Response {
    pub status: u16,
    pub body: Value,
}

impl Response {
    fn ok(body: impl serde::Serialize) -> Self {
        Response {
            status: 200,
            body: serde_json::to_value(body).expect("response serializes"),
        }
    }

    fn error(status: u16, kind: &str, message: impl Into<String>) -> Self {
        Response {
            status,
            body: json!({ "error": { "kind": kind, "message": message.into() } }),
        }
    }

    fn undecided(reason: impl Into<String>) -> Self {
        Response::ok(json!({ "undecided": true, "reason": reason.into() }))
    }

    fn from_error(status: u16, e: &Error) -> Self {
        Response {
            status,
            body: json!({ "error": ErrorBody::new(e) }),
        }
    }
}

#[derive(Deserialize)]
struct GraphRequest {
    graph: Value,
    home: Option<String>,
    cap: Option<usize>,
}

#[derive(Deserialize)]
struct StateRequest {
    graph: Value,
    state: Value,
}

#[derive(Deserialize)]
struct ApplyRequest {
    graph: Value,
    state: Value,
    #[serde(rename = "move")]
    step: String,
}

#[derive(Deserialize)]
struct SolveRequest {
    graph: Value,
    state: Value,
    cap: Option<usize>,
}

#[derive(Deserialize)]
struct ScrambleRequest {
    graph: Value,
    state: Option<Value>,
    steps: usize,
    seed: u64,
}

fn parse_body<T: DeserializeOwned>(body: &[u8]) -> Result<T, Response> {
    serde_json::from_slice(body).map_err(|e| Response::error(400, "malformed", e.to_string()))
}

fn graph_of(v: Value) -> Result<TwistGraph, Response> {
    TwistGraph::from_value(v).map_err(|e| Response::from_error(400, &e))
}

fn state_of(g: &TwistGraph, v: Value) -> Result<PuzzleState, Response> {
    PuzzleState::from_value(g, v).map_err(|e| Response::from_error(400, &e))
}

fn bad(e: Error) -> Response {
    match e {
        Error::Undecided(reason) => Response::undecided(reason),
        Error::CapExceeded(cap) => Response::undecided(format!("cap of {cap} states exceeded")),
        Error::IllegalMove(_) => Response::from_error(422, &e),
        other => Response::from_error(400, &other),
    }
}

fn state_body(g: &TwistGraph, s: &PuzzleState) -> Value {
    json!({ "state": s.to_document(g) })
}

/// Dispatches one request. Pure: the response depends only on the arguments.
pub fn handle(method: &str, path: &str, body: &[u8]) -> Response {
    let route = path.trim_end_matches('/');
    let expected = match route {
        "/api/presets" => "GET",
        "/api/classify" | "/api/moves" | "/api/apply" | "/api/check" | "/api/solve"
        | "/api/scramble" => "POST",
        _ => return Response::error(404, "not_found", format!("no endpoint `{path}`")),
    };
    if !method.eq_ignore_ascii_case(expected) {
        return Response::error(405, "method_not_allowed", format!("{route} expects {expected}"));
    }
    let result = match route {
        "/api/presets" => presets_endpoint(),
        "/api/classify" => classify_endpoint(body),
        "/api/moves" => moves_endpoint(body),
        "/api/apply" => apply_endpoint(body),
        "/api/check" => check_endpoint(body),
        "/api/solve" => solve_endpoint(body),
        "/api/scramble" => scramble_endpoint(body),
        _ => unreachable!(),
    };
    result.unwrap_or_else(|r| r)
}

fn presets_endpoint() -> Result<Response, Response> {
    let mut listed = Vec::new();
    for &name in LISTED_PRESETS {
        let g = presets::preset(name, None, &[]).map_err(bad)?;
        listed.push(json!({ "name": name, "graph": g.to_document() }));
    }
    Ok(Response::ok(json!({ "names": PRESET_NAMES, "presets": listed })))
}

fn classify_endpoint(body: &[u8]) -> Result<Response, Response> {
    let req: GraphRequest = parse_body(body)?;
    let g = graph_of(req.graph)?;
    let home = match req.home {
        Some(id) => g.vertex(&id).map_err(bad)?,
        None => g.default_home(),
    };
    let cap = req.cap.unwrap_or(DEFAULT_CAP).min(MAX_CAP);
    let desc = classify(&g, home, cap).map_err(bad)?;
    Ok(Response::ok(classify_report(&g, &desc)))
}

fn moves_endpoint(body: &[u8]) -> Result<Response, Response> {
    let req: StateRequest = parse_body(body)?;
    let g = graph_of(req.graph)?;
    let s = state_of(&g, req.state)?;
    let moves: Vec<Value> = legal_moves(&g, &s)
        .into_iter()
        .map(|step| {
            json!({
                "move": g.format_step(step),
                "tile_at": g.vertex_id(g.head(step)),
            })
        })
        .collect();
    Ok(Response::ok(json!({ "moves": moves })))
}

fn apply_endpoint(body: &[u8]) -> Result<Response, Response> {
    let req: ApplyRequest = parse_body(body)?;
    let g = graph_of(req.graph)?;
    let s = state_of(&g, req.state)?;
    let step = g.parse_step(&req.step).map_err(|e| Response::from_error(422, &e))?;
    let t = apply_move(&g, &s, step).map_err(bad)?;
    Ok(Response::ok(state_body(&g, &t)))
}

fn check_endpoint(body: &[u8]) -> Result<Response, Response> {
    let req: StateRequest = parse_body(body)?;
    let g = graph_of(req.graph)?;
    let s = state_of(&g, req.state)?;
    let verdict = is_solvable(&g, &s).map_err(bad)?;
    Ok(Response::ok(CheckReport::from(verdict)))
}

fn solve_endpoint(body: &[u8]) -> Result<Response, Response> {
    let req: SolveRequest = parse_body(body)?;
    let g = graph_of(req.graph)?;
    let s = state_of(&g, req.state)?;
    let cap = req.cap.unwrap_or(DEFAULT_SOLVE_CAP).min(MAX_CAP);
    let report = match solve(&g, &s, cap).map_err(bad)? {
        SolveOutcome::Solved(seq) => SolveReport::solved(&g, &seq),
        SolveOutcome::Unsolvable { reason } => SolveReport::Unsolvable {
            solvable: false,
            reason,
        },
        SolveOutcome::CapExceeded { visited } => SolveReport::Undecided {
            undecided: true,
            visited,
        },
    };
    Ok(Response::ok(report))
}

fn scramble_endpoint(body: &[u8]) -> Result<Response, Response> {
    let req: ScrambleRequest = parse_body(body)?;
    let g = graph_of(req.graph)?;
    let s = match req.state {
        Some(v) => state_of(&g, v)?,
        None => PuzzleState::solved(&g, g.default_home()),
    };
    if req.steps > MAX_SCRAMBLE_STEPS {
        return Err(Response::error(
            400,
            "too_many_steps",
            format!("at most {MAX_SCRAMBLE_STEPS} steps"),
        ));
    }
    let t = scramble(&g, &s, req.steps, req.seed).map_err(bad)?;
    Ok(Response::ok(state_body(&g, &t)))
}

async fn api(method: Method, uri: Uri, body: Bytes) -> HttpResponse {
    let path = uri.path().to_string();
    let out = tokio::task::spawn_blocking(move || handle(method.as_str(), &path, &body)).await;
    let out = out.unwrap_or_else(|e| Response::error(500, "internal", e.to_string()));
    let status = StatusCode::from_u16(out.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (
        status,
        [(header::CONTENT_TYPE, "application/json")],
        serde_json::to_string(&out.body).expect("json value serializes"),
    )
        .into_response()
}

/// API routes under `/api`, static files from `assets` for everything else.
pub fn router(assets: Option<PathBuf>) -> Router {
    let api_routes = Router::new()
        .route("/api", any(api))
        .route("/api/{*rest}", any(api));
    let app = match assets {
        Some(dir) => api_routes.fallback_service(ServeDir::new(dir)),
        None => api_routes,
    };
    app.layer(CorsLayer::permissive())
}

pub async fn serve(host: &str, port: u16, assets: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(assets)).await
}
