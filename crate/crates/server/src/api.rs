//! Routes and JSON views.

use axum::body::Bytes;
use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use triscope_core::ingestion::{load_context, ResultsDocument};
use triscope_core::oracle::enumerate_triconcepts;
use triscope_core::{
    coverage_map, largest_tricluster, order_by_density, recommend, triclusters_containing,
    ElementId, Error, Plane, Rational, SizePolicy, TriadicContext, Tricluster, TriclusterKey,
    TriclusterStore,
};

use crate::annotations::{Annotation, Verdict};
use crate::state::AppState;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/context", get(get_context).post(post_context))
        .route("/runs", get(list_runs).post(post_run))
        .route("/runs/{rho}", get(get_run))
        .route("/runs/{rho}/document", get(get_document))
        .route("/runs/{rho}/heatmap", get(get_heatmap))
        .route("/runs/{rho}/cell/{row}/{col}", get(get_cell))
        .route("/runs/{rho}/cell/{row}/{col}/largest", get(get_largest))
        .route("/runs/{rho}/triclusters", get(get_triclusters))
        .route("/runs/{rho}/recommend/{user}", get(get_recommendation))
        .route("/concepts/tri", get(get_triconcepts))
        .route("/annotations", get(list_annotations).post(post_annotation))
        .with_state(state)
}

/// An error response `{"error": "..."}`.
#[derive(Debug)]
pub struct ApiError(StatusCode, String);

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError(status, message.into())
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::UnknownId { .. } | Error::UnknownLabel { .. } | Error::EmptyStore => {
                StatusCode::NOT_FOUND
            }
            Error::CapExceeded { .. } => StatusCode::CONFLICT,
            Error::InvalidThreshold(_) | Error::InvalidRational(_) => {
                StatusCode::UNPROCESSABLE_ENTITY
            }
            Error::InvalidPlane(_)
            | Error::Malformed { .. }
            | Error::InvalidDocument(_)
            | Error::Json(_)
            | Error::UniverseMismatch { .. } => StatusCode::BAD_REQUEST,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError(status, e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError(StatusCode::BAD_REQUEST, e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

#[derive(Serialize)]
pub struct TriclusterView {
    pub key: TriclusterKey,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    pub modus: Vec<String>,
    pub generator: [String; 3],
    pub density: Rational,
    pub density_value: f64,
    pub volume: u64,
}

impl TriclusterView {
    fn new(ctx: &TriadicContext, t: &Tricluster) -> Self {
        let g = t.generator();
        let label =
            |table: &triscope_core::LabelTable, id| table.label(id).unwrap_or("?").to_string();
        TriclusterView {
            key: *t.key(),
            extent: ctx.objects().labels_of(t.extent()),
            intent: ctx.attributes().labels_of(t.intent()),
            modus: ctx.conditions().labels_of(t.modus()),
            generator: [
                label(ctx.objects(), g.object),
                label(ctx.attributes(), g.attribute),
                label(ctx.conditions(), g.condition),
            ],
            density: t.density(),
            density_value: t.density().to_f64(),
            volume: t.volume(),
        }
    }
}

fn context_summary(ctx: &TriadicContext) -> Value {
    let [g, m, b] = ctx.dims();
    json!({ "objects": g, "attributes": m, "conditions": b, "triples": ctx.incidence_len() })
}

fn run_summary(store: &TriclusterStore) -> Value {
    let histogram: Vec<Value> = store
        .density_histogram()
        .into_iter()
        .map(|(d, n)| json!({ "density": d, "count": n }))
        .collect();
    json!({
        "rho_min": store.rho_min(),
        "count": store.len(),
        "density_histogram": histogram,
    })
}

fn parse_rho(raw: &str) -> ApiResult<Rational> {
    let rho: Rational = raw
        .parse()
        .map_err(|e: Error| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    if rho > Rational::ONE {
        return Err(Error::InvalidThreshold(rho.to_string()).into());
    }
    Ok(rho)
}

fn lookup_run(
    state: &AppState,
    raw: &str,
) -> ApiResult<(
    std::sync::Arc<TriadicContext>,
    std::sync::Arc<TriclusterStore>,
)> {
    let rho = parse_rho(raw)?;
    state
        .run(&rho)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no run for rho_min {rho}")))
}

async fn get_context(State(state): State<AppState>) -> Json<Value> {
    Json(context_summary(&state.context()))
}

async fn post_context(State(state): State<AppState>, body: Bytes) -> ApiResult<Json<Value>> {
    let parsed = load_context(&body)?;
    let ctx = state.replace_context(parsed.context).await;
    let mut summary = context_summary(&ctx);
    summary["duplicates"] = json!(parsed.duplicates);
    Ok(Json(summary))
}

#[derive(Deserialize)]
struct RunRequest {
    #[serde(default)]
    rho_min: Option<Value>,
}

async fn post_run(
    State(state): State<AppState>,
    body: Result<Json<RunRequest>, JsonRejection>,
) -> ApiResult<Json<Value>> {
    let Json(request) = body?;
    let rho = match request.rho_min {
        None => Rational::ZERO,
        Some(Value::String(s)) => parse_rho(&s)?,
        Some(Value::Number(n)) => parse_rho(&n.to_string())?,
        Some(other) => {
            return Err(ApiError::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                format!("rho_min must be a number or string, got {other}"),
            ))
        }
    };
    let (_, store) = state.ensure_run(rho).await?;
    Ok(Json(run_summary(&store)))
}

async fn list_runs(State(state): State<AppState>) -> Json<Vec<Value>> {
    Json(state.run_list().iter().map(|s| run_summary(s)).collect())
}

async fn get_run(State(state): State<AppState>, Path(rho): Path<String>) -> ApiResult<Json<Value>> {
    let (_, store) = lookup_run(&state, &rho)?;
    Ok(Json(run_summary(&store)))
}

async fn get_document(
    State(state): State<AppState>,
    Path(rho): Path<String>,
) -> ApiResult<Response> {
    let (ctx, store) = lookup_run(&state, &rho)?;
    let bytes = ResultsDocument::new(&ctx, &store).to_bytes();
    Ok(([(header::CONTENT_TYPE, "application/json")], bytes).into_response())
}

#[derive(Deserialize, Default)]
struct PlaneQuery {
    plane: Option<String>,
    policy: Option<String>,
}

impl PlaneQuery {
    fn plane(&self) -> ApiResult<Plane> {
        Ok(match &self.plane {
            Some(p) => p.parse()?,
            None => Plane::GM,
        })
    }
}

async fn get_heatmap(
    State(state): State<AppState>,
    Path(rho): Path<String>,
    Query(q): Query<PlaneQuery>,
) -> ApiResult<Json<triscope_core::CoverageMap>> {
    let (ctx, store) = lookup_run(&state, &rho)?;
    Ok(Json(coverage_map(&store, &ctx, q.plane()?)?))
}

fn cell_ids(
    ctx: &TriadicContext,
    plane: Plane,
    row: &str,
    col: &str,
) -> ApiResult<(ElementId, ElementId)> {
    let (ra, ca) = plane.axes();
    Ok((ctx.axis(ra).id(row)?, ctx.axis(ca).id(col)?))
}

async fn get_cell(
    State(state): State<AppState>,
    Path((rho, row, col)): Path<(String, String, String)>,
    Query(q): Query<PlaneQuery>,
) -> ApiResult<Json<Vec<TriclusterView>>> {
    let (ctx, store) = lookup_run(&state, &rho)?;
    let plane = q.plane()?;
    let (r, c) = cell_ids(&ctx, plane, &row, &col)?;
    let list = triclusters_containing(&store, plane, r, c)?;
    Ok(Json(
        list.into_iter()
            .map(|t| TriclusterView::new(&ctx, t))
            .collect(),
    ))
}

async fn get_largest(
    State(state): State<AppState>,
    Path((rho, row, col)): Path<(String, String, String)>,
    Query(q): Query<PlaneQuery>,
) -> ApiResult<Json<Option<TriclusterView>>> {
    let (ctx, store) = lookup_run(&state, &rho)?;
    let plane = q.plane()?;
    let policy = match q.policy.as_deref() {
        None | Some("volume") => SizePolicy::Volume,
        Some("extent") => SizePolicy::ExtentSize,
        Some(other) => {
            return Err(ApiError::new(
                StatusCode::BAD_REQUEST,
                format!("unknown policy {other:?}, expected volume or extent"),
            ))
        }
    };
    let (r, c) = cell_ids(&ctx, plane, &row, &col)?;
    let best = largest_tricluster(&store, plane, r, c, policy)?;
    Ok(Json(best.map(|t| TriclusterView::new(&ctx, t))))
}

#[derive(Deserialize)]
struct ListQuery {
    order: Option<String>,
    offset: Option<usize>,
    limit: Option<usize>,
}

const DEFAULT_PAGE: usize = 100;

async fn get_triclusters(
    State(state): State<AppState>,
    Path(rho): Path<String>,
    Query(q): Query<ListQuery>,
) -> ApiResult<Json<Value>> {
    let (ctx, store) = lookup_run(&state, &rho)?;
    if let Some(order) = q.order.as_deref().filter(|o| *o != "density") {
        return Err(ApiError::new(
            StatusCode::BAD_REQUEST,
            format!("unsupported order {order:?}"),
        ));
    }
    let offset = q.offset.unwrap_or(0);
    let limit = q.limit.unwrap_or(DEFAULT_PAGE);
    let ordered = order_by_density(&store);
    let items: Vec<TriclusterView> = ordered
        .iter()
        .skip(offset)
        .take(limit)
        .map(|t| TriclusterView::new(&ctx, t))
        .collect();
    Ok(Json(json!({
        "total": ordered.len(),
        "offset": offset,
        "limit": limit,
        "items": items,
    })))
}

async fn get_recommendation(
    State(state): State<AppState>,
    Path((rho, user)): Path<(String, String)>,
) -> ApiResult<Json<Value>> {
    let (ctx, store) = lookup_run(&state, &rho)?;
    let u = ctx.objects().id(&user)?;
    let r = recommend(&ctx, &store, u)?;
    let best = store
        .get(&r.best_tricluster)
        .expect("best comes from the store");
    let profile_empty = ctx.triples_of_object(u).is_empty();
    Ok(Json(json!({
        "user": user,
        "best_tricluster": TriclusterView::new(&ctx, best),
        "similarity": r.similarity,
        "similarity_value": r.similarity.to_f64(),
        "recommended_tags": ctx.attributes().labels_of(&r.recommended_tags),
        "recommended_resources": ctx.conditions().labels_of(&r.recommended_resources),
        "user_has_activity": !profile_empty,
    })))
}

async fn get_triconcepts(State(state): State<AppState>) -> ApiResult<Json<Vec<Value>>> {
    let ctx = state.context();
    let cap = state.limits.oracle_cap;
    let concepts = {
        let ctx = ctx.clone();
        tokio::task::spawn_blocking(move || enumerate_triconcepts(&ctx, cap))
            .await
            .expect("enumeration task panicked")?
    };
    Ok(Json(
        concepts
            .iter()
            .map(|c| {
                json!({
                    "extent": ctx.objects().labels_of(&c.extent),
                    "intent": ctx.attributes().labels_of(&c.intent),
                    "modus": ctx.conditions().labels_of(&c.modus),
                })
            })
            .collect(),
    ))
}

#[derive(Deserialize)]
struct AnnotationRequest {
    tricluster_key: TriclusterKey,
    verdict: Verdict,
    #[serde(default)]
    note: String,
}

async fn post_annotation(
    State(state): State<AppState>,
    body: Result<Json<AnnotationRequest>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<Annotation>)> {
    let Json(request) = body?;
    let _w = state.writer.lock().await;
    if !state.known_key(&request.tricluster_key) {
        return Err(ApiError::new(
            StatusCode::NOT_FOUND,
            format!("no tricluster {} in any run", request.tricluster_key),
        ));
    }
    let annotation = Annotation {
        tricluster_key: request.tricluster_key,
        verdict: request.verdict,
        note: request.note,
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
    };
    state.annotations.append(annotation.clone())?;
    Ok((StatusCode::CREATED, Json(annotation)))
}

async fn list_annotations(State(state): State<AppState>) -> Json<Vec<Annotation>> {
    Json(state.annotations.list())
}
