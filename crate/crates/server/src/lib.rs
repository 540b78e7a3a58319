//! HTTP/JSON service over one triadic context: clustering runs, coverage
//! maps, cell drill-down, recommendations and persisted analyst verdicts.

pub mod annotations;
pub mod api;
pub mod state;

use std::net::SocketAddr;
use std::path::PathBuf;

use axum::http::HeaderValue;
use tower_http::cors::{Any, CorsLayer};
use triscope_core::TriadicContext;

pub use api::router;
pub use state::{AppState, Limits};

pub const DATA_DIR_ENV: &str = "TRISCOPE_DATA_DIR";

#[derive(Clone, Debug)]
pub struct ServerConfig {
    pub port: u16,
    pub data_dir: PathBuf,
    pub limits: Limits,
    /// Allowed browser origin; any origin when unset.
    pub cors_origin: Option<String>,
}

fn cors(origin: Option<&str>) -> std::io::Result<CorsLayer> {
    let layer = CorsLayer::new().allow_methods(Any).allow_headers(Any);
    Ok(match origin {
        None => layer.allow_origin(Any),
        Some(o) => layer.allow_origin(
            o.parse::<HeaderValue>()
                .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, e))?,
        ),
    })
}

/// Binds `0.0.0.0:port` and serves until the process exits.
pub async fn serve(config: ServerConfig, initial: Option<TriadicContext>) -> std::io::Result<()> {
    let state = AppState::open(&config.data_dir, config.limits).map_err(std::io::Error::other)?;
    if let Some(ctx) = initial {
        state.replace_context(ctx).await;
    }
    let app = router(state).layer(cors(config.cors_origin.as_deref())?);
    let addr = SocketAddr::from(([0, 0, 0, 0], config.port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, app).await
}
