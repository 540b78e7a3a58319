//! The results document: a JSON file carrying the axis name tables, the
//! incidence as integer triples, and tricluster records with exact densities.
//!
//! ```json
//! {
//!   "format": "triscope-results/1",
//!   "rho_min": "0/1",
//!   "context": {
//!     "objects": ["u1", ...], "attributes": [...], "conditions": [...],
//!     "triples": [[0, 0, 0], ...]
//!   },
//!   "triclusters": [
//!     { "key": "<sha-256 hex>", "extent": [0, 1, 2], "intent": [0],
//!       "modus": [0, 2], "generator": [0, 0, 0], "density": "1/1" }
//!   ],
//!   "recommendations": [...],
//!   "coverage": [...]
//! }
//! ```
//!
//! A bare `context` object is also accepted as input wherever a context is
//! read.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::analytics::CoverageMap;
use crate::axis::{ElementId, LabelTable};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::recommender::Recommendation;
use crate::set::ElementSet;
use crate::triadic::{TriadicContext, Tricluster, Triple};
use crate::triclustering::{TriclusterKey, TriclusterStore};

use super::tsv::{parse_triples, ParsedContext};

pub const RESULTS_FORMAT: &str = "triscope-results/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextDocument {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub conditions: Vec<String>,
    pub triples: Vec<[ElementId; 3]>,
}

impl ContextDocument {
    pub fn from_context(context: &TriadicContext) -> Self {
        ContextDocument {
            objects: context.objects().labels().to_vec(),
            attributes: context.attributes().labels().to_vec(),
            conditions: context.conditions().labels().to_vec(),
            triples: context
                .triples()
                .iter()
                .map(|t| [t.object, t.attribute, t.condition])
                .collect(),
        }
    }

    pub fn to_context(&self) -> Result<TriadicContext> {
        TriadicContext::new(
            LabelTable::from_labels("object", self.objects.iter().cloned())?,
            LabelTable::from_labels("attribute", self.attributes.iter().cloned())?,
            LabelTable::from_labels("condition", self.conditions.iter().cloned())?,
            self.triples.iter().map(|&[g, m, b]| Triple::new(g, m, b)),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriclusterRecord {
    pub key: TriclusterKey,
    pub extent: Vec<ElementId>,
    pub intent: Vec<ElementId>,
    pub modus: Vec<ElementId>,
    pub generator: [ElementId; 3],
    pub density: Rational,
}

impl TriclusterRecord {
    pub fn from_tricluster(t: &Tricluster) -> Self {
        let g = t.generator();
        TriclusterRecord {
            key: *t.key(),
            extent: t.extent().to_vec(),
            intent: t.intent().to_vec(),
            modus: t.modus().to_vec(),
            generator: [g.object, g.attribute, g.condition],
            density: t.density(),
        }
    }

    /// Rebuilds the tricluster, failing if the stored density or key does not
    /// match the context.
    pub fn to_tricluster(&self, context: &TriadicContext) -> Result<Tricluster> {
        let [ng, nm, nb] = context.dims();
        let set = |axis: &LabelTable, n: usize, ids: &[ElementId]| -> Result<ElementSet> {
            for &id in ids {
                axis.check_id(id)?;
            }
            Ok(ElementSet::from_ids(n, ids.iter().copied()))
        };
        let [g, m, b] = self.generator;
        let t = Tricluster::from_parts(
            context,
            set(context.objects(), ng, &self.extent)?,
            set(context.attributes(), nm, &self.intent)?,
            set(context.conditions(), nb, &self.modus)?,
            Triple::new(g, m, b),
        )?;
        if t.density() != self.density {
            return Err(Error::InvalidDocument(format!(
                "tricluster {} records density {} but the context gives {}",
                self.key,
                self.density,
                t.density()
            )));
        }
        if *t.key() != self.key {
            return Err(Error::InvalidDocument(format!(
                "key mismatch for {}",
                self.key
            )));
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecommendationRecord {
    pub user: String,
    pub best_tricluster: TriclusterKey,
    pub similarity: Rational,
    pub recommended_tags: Vec<String>,
    pub recommended_resources: Vec<String>,
}

impl RecommendationRecord {
    pub fn new(context: &TriadicContext, r: &Recommendation) -> Result<Self> {
        Ok(RecommendationRecord {
            user: context.objects().label(r.user)?.to_string(),
            best_tricluster: r.best_tricluster,
            similarity: r.similarity,
            recommended_tags: context.attributes().labels_of(&r.recommended_tags),
            recommended_resources: context.conditions().labels_of(&r.recommended_resources),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultsDocument {
    pub format: String,
    pub rho_min: Rational,
    pub context: ContextDocument,
    pub triclusters: Vec<TriclusterRecord>,
    #[serde(default)]
    pub recommendations: Vec<RecommendationRecord>,
    #[serde(default)]
    pub coverage: Vec<CoverageMap>,
}

impl ResultsDocument {
    /// Records follow the store's order.
    pub fn new(context: &TriadicContext, store: &TriclusterStore) -> Self {
        ResultsDocument {
            format: RESULTS_FORMAT.to_string(),
            rho_min: store.rho_min(),
            context: ContextDocument::from_context(context),
            triclusters: store
                .iter()
                .map(TriclusterRecord::from_tricluster)
                .collect(),
            recommendations: Vec::new(),
            coverage: Vec::new(),
        }
    }

    pub fn with_recommendations(
        mut self,
        context: &TriadicContext,
        recommendations: &[Recommendation],
    ) -> Result<Self> {
        self.recommendations = recommendations
            .iter()
            .map(|r| RecommendationRecord::new(context, r))
            .collect::<Result<_>>()?;
        Ok(self)
    }

    pub fn with_coverage(mut self, map: CoverageMap) -> Self {
        self.coverage.push(map);
        self
    }

    /// Pretty JSON with a trailing newline.
    pub fn write<W: Write>(&self, mut sink: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut sink, self)?;
        sink.write_all(b"\n")?;
        sink.flush()?;
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write(&mut out).expect("writing to memory cannot fail");
        out
    }

    pub fn read<R: Read>(source: R) -> Result<Self> {
        let doc: ResultsDocument = serde_json::from_reader(source)?;
        if doc.format != RESULTS_FORMAT {
            return Err(Error::InvalidDocument(format!(
                "unsupported format {:?}",
                doc.format
            )));
        }
        Ok(doc)
    }

    /// Rebuilds the context and store, re-verifying every tricluster.
    pub fn to_parts(&self) -> Result<(TriadicContext, TriclusterStore)> {
        let context = self.context.to_context()?;
        let mut store = TriclusterStore::new(self.rho_min, context.dims());
        for record in &self.triclusters {
            let t = record.to_tricluster(&context)?;
            if t.density() < self.rho_min {
                return Err(Error::InvalidDocument(format!(
                    "tricluster {} is below rho_min {}",
                    record.key, self.rho_min
                )));
            }
            if !store.insert(t) {
                return Err(Error::InvalidDocument(format!(
                    "duplicate tricluster {}",
                    record.key
                )));
            }
        }
        Ok((context, store))
    }
}

/// Reads a context from either triple TSV or a JSON document (a results
/// document or a bare context document), detected by the first
/// non-whitespace byte.
pub fn read_input(bytes: &[u8]) -> Result<ParsedContext> {
    if !is_json(bytes) {
        return parse_triples(bytes);
    }
    let value: serde_json::Value = serde_json::from_slice(bytes)?;
    let doc: ContextDocument = match value.get("context") {
        Some(inner) => serde_json::from_value(inner.clone())?,
        None => serde_json::from_value(value)?,
    };
    let context = doc.to_context()?;
    Ok(ParsedContext {
        duplicates: doc.triples.len() - context.incidence_len(),
        context,
    })
}

/// Context loading shared by every front end: triple TSV is relabeled into
/// canonical (natural label) order so line order never matters; JSON
/// documents keep their ids.
pub fn load_context(bytes: &[u8]) -> Result<ParsedContext> {
    let parsed = read_input(bytes)?;
    if is_json(bytes) {
        return Ok(parsed);
    }
    Ok(ParsedContext {
        context: parsed.context.canonicalized(),
        duplicates: parsed.duplicates,
    })
}

fn is_json(bytes: &[u8]) -> bool {
    bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::sports;
    use crate::triclustering::{enumerate_triclusters, ClusteringConfig};

    #[test]
    fn fixture_document() {
        let ctx = sports();
        let store = enumerate_triclusters(&ctx, &ClusteringConfig::default()).unwrap();
        let doc = ResultsDocument::new(&ctx, &store);
        let densities: Vec<String> = doc
            .triclusters
            .iter()
            .map(|t| t.density.to_string())
            .collect();
        assert_eq!(densities, ["1/1", "1/1", "1/1", "5/6"]);
        let text = String::from_utf8(doc.to_bytes()).unwrap();
        assert!(text.contains("\"density\": \"5/6\""));
        assert!(text.contains("\"rho_min\": \"0/1\""));

        let back = ResultsDocument::read(text.as_bytes()).unwrap();
        assert_eq!(back, doc);
        let (ctx2, store2) = back.to_parts().unwrap();
        assert_eq!(ctx2.triples(), ctx.triples());
        assert_eq!(
            store2.iter().map(|t| *t.key()).collect::<Vec<_>>(),
            store.iter().map(|t| *t.key()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn empty_store_document() {
        let ctx = TriadicContext::empty();
        let store = enumerate_triclusters(&ctx, &ClusteringConfig::default()).unwrap();
        let doc = ResultsDocument::new(&ctx, &store);
        assert!(doc.triclusters.is_empty());
        let back = ResultsDocument::read(doc.to_bytes().as_slice()).unwrap();
        assert!(back.to_parts().unwrap().1.is_empty());
    }

    #[test]
    fn tampered_density_is_rejected() {
        let ctx = sports();
        let store = enumerate_triclusters(&ctx, &ClusteringConfig::default()).unwrap();
        let mut doc = ResultsDocument::new(&ctx, &store);
        doc.triclusters[3].density = Rational::ONE;
        assert!(matches!(doc.to_parts(), Err(Error::InvalidDocument(_))));
    }

    #[test]
    fn input_sniffing() {
        let ctx = sports();
        let store = enumerate_triclusters(&ctx, &ClusteringConfig::default()).unwrap();
        let doc = ResultsDocument::new(&ctx, &store).to_bytes();
        assert_eq!(read_input(&doc).unwrap().context.triples(), ctx.triples());
        let bare = serde_json::to_vec(&ContextDocument::from_context(&ctx)).unwrap();
        assert_eq!(read_input(&bare).unwrap().context.incidence_len(), 11);
        assert_eq!(read_input(b"a\tb\tc\n").unwrap().context.incidence_len(), 1);
        assert!(read_input(b"{\"objects\": 3}").is_err());
    }
}
