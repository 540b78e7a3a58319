//! OAC-prime triclustering of object–attribute–condition data.
//!
//! The crate covers dyadic and triadic formal contexts with their prime
//! operators ([`dyadic`], [`triadic`]), the one-pass prime triclustering
//! kernel ([`triclustering`]), brute-force concept enumerators used as
//! oracles ([`oracle`]), tricluster-based recommendations ([`recommender`]),
//! coverage-map analytics ([`analytics`]) and file formats plus a seeded
//! context generator ([`ingestion`]).
//!
//! Densities and similarities are exact [`Rational`]s; element sets are
//! fixed-universe bit sets ([`ElementSet`]).

pub mod analytics;
pub mod axis;
pub mod dyadic;
pub mod error;
pub mod fixtures;
pub mod ingestion;
pub mod oracle;
pub mod rational;
pub mod recommender;
pub mod set;
pub mod triadic;
pub mod triclustering;

pub use analytics::{
    coverage_map, largest_tricluster, order_by_density, triclusters_containing, CoverageMap, Plane,
    SizePolicy,
};
pub use axis::{ElementId, LabelTable};
pub use dyadic::{DyadicContext, FormalConcept, OABicluster, Side};
pub use error::{Error, Result};
pub use rational::Rational;
pub use recommender::{
    recommend, recommend_all, similarity, user_profile, Recommendation, UserProfile,
};
pub use set::ElementSet;
pub use triadic::{TriAxis, TriadicContext, Tricluster, Triconcept, Triple};
pub use triclustering::{
    canonical_key, enumerate_triclusters, ClusteringConfig, TriclusterKey, TriclusterStore,
};
