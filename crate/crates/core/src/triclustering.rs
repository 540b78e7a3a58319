//! OAC-prime triclustering: one tricluster per incident triple, deduplicated
//! by content key and filtered by a minimum density.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::ElementSet;
use crate::triadic::{TriadicContext, Tricluster, Triple};

/// SHA-256 over the sorted id lists of extent, intent and modus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriclusterKey([u8; 32]);

impl TriclusterKey {
    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }
}

impl fmt::Display for TriclusterKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(self.0))
    }
}

impl fmt::Debug for TriclusterKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriclusterKey({})", &hex::encode(self.0)[..12])
    }
}

impl FromStr for TriclusterKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = [0u8; 32];
        hex::decode_to_slice(s, &mut out)
            .map_err(|_| Error::InvalidDocument(format!("bad tricluster key {s:?}")))?;
        Ok(TriclusterKey(out))
    }
}

impl Serialize for TriclusterKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TriclusterKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Content key of `(extent, intent, modus)`. Each axis contributes a tag
/// byte, its member count and its ids, all little-endian `u32`.
pub fn canonical_key(
    extent: &ElementSet,
    intent: &ElementSet,
    modus: &ElementSet,
) -> TriclusterKey {
    let mut hasher = Sha256::new();
    for (tag, set) in [(b'G', extent), (b'M', intent), (b'B', modus)] {
        hasher.update([tag]);
        hasher.update((set.len() as u32).to_le_bytes());
        for id in set.iter() {
            hasher.update(id.to_le_bytes());
        }
    }
    TriclusterKey(hasher.finalize().into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClusteringConfig {
    /// Inclusive minimum density.
    pub rho_min: Rational,
    /// Worker threads; 0 uses the global rayon pool, 1 runs sequentially.
    pub parallelism: usize,
}

impl Default for ClusteringConfig {
    fn default() -> Self {
        ClusteringConfig {
            rho_min: Rational::ZERO,
            parallelism: 0,
        }
    }
}

impl ClusteringConfig {
    pub fn with_rho_min(rho_min: Rational) -> Self {
        ClusteringConfig {
            rho_min,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rho_min > Rational::ONE {
            return Err(Error::InvalidThreshold(self.rho_min.to_string()));
        }
        Ok(())
    }
}

/// Deduplicated collection of triclusters keyed by content.
#[derive(Clone, Debug)]
pub struct TriclusterStore {
    rho_min: Rational,
    dims: [usize; 3],
    entries: Vec<Tricluster>,
    index: HashMap<TriclusterKey, Vec<usize>>,
}

impl TriclusterStore {
    pub fn new(rho_min: Rational, dims: [usize; 3]) -> Self {
        TriclusterStore {
            rho_min,
            dims,
            entries: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Inserts unless a tricluster with the same three sets is present. Keys
    /// are only a first filter; sets are compared on every key hit.
    pub fn insert(&mut self, t: Tricluster) -> bool {
        let bucket = self.index.entry(*t.key()).or_default();
        if bucket.iter().any(|&i| self.entries[i].same_sets(&t)) {
            return false;
        }
        bucket.push(self.entries.len());
        self.entries.push(t);
        true
    }

    /// Descending density, then ascending key.
    pub fn sort_canonical(&mut self) {
        self.entries.sort_by(canonical_order);
        self.index.clear();
        for (i, t) in self.entries.iter().enumerate() {
            self.index.entry(*t.key()).or_default().push(i);
        }
    }

    pub fn rho_min(&self) -> Rational {
        self.rho_min
    }

    /// `[|G|, |M|, |B|]` of the context the store was built from.
    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Tricluster> {
        self.entries.iter()
    }

    pub fn as_slice(&self) -> &[Tricluster] {
        &self.entries
    }

    pub fn get(&self, key: &TriclusterKey) -> Option<&Tricluster> {
        self.index
            .get(key)
            .and_then(|bucket| bucket.first())
            .map(|&i| &self.entries[i])
    }

    /// Distinct densities with their counts, highest first.
    pub fn density_histogram(&self) -> Vec<(Rational, usize)> {
        let mut out: Vec<(Rational, usize)> = Vec::new();
        let mut densities: Vec<Rational> = self.entries.iter().map(|t| t.density()).collect();
        densities.sort_unstable_by(|a, b| b.cmp(a));
        for d in densities {
            match out.last_mut() {
                Some((last, n)) if *last == d => *n += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }
}

impl<'a> IntoIterator for &'a TriclusterStore {
    type Item = &'a Tricluster;
    type IntoIter = std::slice::Iter<'a, Tricluster>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

pub(crate) fn canonical_order(a: &Tricluster, b: &Tricluster) -> Ordering {
    b.density()
        .cmp(&a.density())
        .then_with(|| a.key().cmp(b.key()))
}

/// Builds every prime tricluster of `context`, keeps those with density at
/// least `rho_min`, and returns them in canonical order. Output does not
/// depend on `parallelism`; the recorded generator is the smallest triple
/// producing each tricluster.
pub fn enumerate_triclusters(
    context: &TriadicContext,
    config: &ClusteringConfig,
) -> Result<TriclusterStore> {
    config.validate()?;
    let run = || cluster_inner(context, config.rho_min);
    match config.parallelism {
        0 => Ok(run()),
        1 => Ok(cluster_sequential(context, config.rho_min)),
        n => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Stream(std::io::Error::other(e)))?;
            Ok(pool.install(run))
        }
    }
}

type Candidate = (TriclusterKey, ElementSet, ElementSet, ElementSet, Triple);

fn candidate(context: &TriadicContext, t: Triple) -> Candidate {
    let (extent, intent, modus) = context.prime_sets(t);
    (
        canonical_key(&extent, &intent, &modus),
        extent,
        intent,
        modus,
        t,
    )
}

/// First-seen dedup in triple order.
fn dedup(candidates: impl IntoIterator<Item = Candidate>) -> Vec<Candidate> {
    let mut seen: HashMap<TriclusterKey, Vec<usize>> = HashMap::new();
    let mut unique: Vec<Candidate> = Vec::new();
    for c in candidates {
        let bucket = seen.entry(c.0).or_default();
        if bucket
            .iter()
            .any(|&i| unique[i].1 == c.1 && unique[i].2 == c.2 && unique[i].3 == c.3)
        {
            continue;
        }
        bucket.push(unique.len());
        unique.push(c);
    }
    unique
}

fn finish(
    context: &TriadicContext,
    rho_min: Rational,
    dense: impl IntoIterator<Item = Tricluster>,
) -> TriclusterStore {
    let mut store = TriclusterStore::new(rho_min, context.dims());
    for t in dense {
        store.insert(t);
    }
    store.sort_canonical();
    store
}

fn densify(context: &TriadicContext, rho_min: Rational, c: Candidate) -> Option<Tricluster> {
    let (_, extent, intent, modus, generator) = c;
    let volume = (extent.len() * intent.len() * modus.len()) as u64;
    let density = Rational::new(context.count_inside(&extent, &intent, &modus), volume);
    (density >= rho_min).then(|| Tricluster::assemble(extent, intent, modus, generator, density))
}

fn cluster_sequential(context: &TriadicContext, rho_min: Rational) -> TriclusterStore {
    let unique = dedup(context.triples().iter().map(|&t| candidate(context, t)));
    let dense = unique
        .into_iter()
        .filter_map(|c| densify(context, rho_min, c));
    finish(context, rho_min, dense)
}

fn cluster_inner(context: &TriadicContext, rho_min: Rational) -> TriclusterStore {
    let candidates: Vec<Candidate> = context
        .triples()
        .par_iter()
        .map(|&t| candidate(context, t))
        .collect();
    let unique = dedup(candidates);
    let dense: Vec<Tricluster> = unique
        .into_par_iter()
        .filter_map(|c| densify(context, rho_min, c))
        .collect();
    finish(context, rho_min, dense)
}
