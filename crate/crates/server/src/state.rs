//! Single-session server state: one context, cached runs, the verdict log.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::{Arc, RwLock};

use tokio::sync::Mutex;
use triscope_core::{
    enumerate_triclusters, ClusteringConfig, Rational, Result, TriadicContext, TriclusterKey,
    TriclusterStore,
};

use crate::annotations::AnnotationLog;

pub struct Session {
    pub epoch: u64,
    pub context: Arc<TriadicContext>,
    pub runs: BTreeMap<Rational, Arc<TriclusterStore>>,
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Per-axis cap for triconcept enumeration.
    pub oracle_cap: usize,
    /// Clustering workers; 0 uses every core.
    pub threads: usize,
}

/// Shared handle. Reads take the session lock briefly; every mutation first
/// takes `writer`, so mutations never interleave.
#[derive(Clone)]
pub struct AppState {
    pub(crate) session: Arc<RwLock<Session>>,
    pub(crate) writer: Arc<Mutex<()>>,
    pub(crate) annotations: Arc<AnnotationLog>,
    pub(crate) limits: Limits,
}

impl AppState {
    pub fn open(data_dir: &Path, limits: Limits) -> Result<Self> {
        Ok(AppState {
            session: Arc::new(RwLock::new(Session {
                epoch: 0,
                context: Arc::new(TriadicContext::empty()),
                runs: BTreeMap::new(),
            })),
            writer: Arc::new(Mutex::new(())),
            annotations: Arc::new(AnnotationLog::open(data_dir)?),
            limits,
        })
    }

    pub async fn replace_context(&self, context: TriadicContext) -> Arc<TriadicContext> {
        let _w = self.writer.lock().await;
        let mut session = self.session.write().expect("session lock poisoned");
        session.epoch += 1;
        session.context = Arc::new(context);
        session.runs.clear();
        session.context.clone()
    }

    pub fn context(&self) -> Arc<TriadicContext> {
        self.session
            .read()
            .expect("session lock poisoned")
            .context
            .clone()
    }

    pub fn run(&self, rho_min: &Rational) -> Option<(Arc<TriadicContext>, Arc<TriclusterStore>)> {
        let session = self.session.read().expect("session lock poisoned");
        session
            .runs
            .get(rho_min)
            .map(|store| (session.context.clone(), store.clone()))
    }

    /// Computes and caches a run, or returns the cached one.
    pub async fn ensure_run(
        &self,
        rho_min: Rational,
    ) -> Result<(Arc<TriadicContext>, Arc<TriclusterStore>)> {
        let config = ClusteringConfig {
            rho_min,
            parallelism: self.limits.threads,
        };
        config.validate()?;
        let _w = self.writer.lock().await;
        if let Some(hit) = self.run(&rho_min) {
            return Ok(hit);
        }
        let context = self.context();
        let ctx = context.clone();
        let store = tokio::task::spawn_blocking(move || enumerate_triclusters(&ctx, &config))
            .await
            .expect("clustering task panicked")?;
        let store = Arc::new(store);
        let mut session = self.session.write().expect("session lock poisoned");
        session.runs.insert(rho_min, store.clone());
        Ok((context, store))
    }

    pub fn known_key(&self, key: &TriclusterKey) -> bool {
        let session = self.session.read().expect("session lock poisoned");
        session.runs.values().any(|store| store.get(key).is_some())
    }

    pub fn run_list(&self) -> Vec<Arc<TriclusterStore>> {
        let session = self.session.read().expect("session lock poisoned");
        session.runs.values().cloned().collect()
    }
}
