//! Reading and writing contexts and results, and seeded synthetic contexts.

mod document;
mod generate;
mod tsv;

pub use document::{
    load_context, read_input, ContextDocument, RecommendationRecord, ResultsDocument,
    TriclusterRecord, RESULTS_FORMAT,
};
pub use generate::{
    generate_context, generate_context_capped, GeneratorSpec, DEFAULT_GENERATION_CAP,
};
pub use tsv::{parse_triples, write_triples, ParsedContext};
