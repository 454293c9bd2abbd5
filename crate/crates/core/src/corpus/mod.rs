//! Graph corpora: canonical labeling, exhaustive enumeration of small
//! graphs, and parallel sweeps of a check over a corpus.

mod canon;
mod enumerate;
mod sweep;

use thiserror::Error;

pub use canon::{canonical_code, canonical_form, is_isomorphic, CanonicalCode};
pub use enumerate::{enumerate_connected, enumerate_graphs, labeled_graphs, LabeledGraphs, BUILTIN_MAX_ORDER};
pub use sweep::{sweep, CheckCounts, CorpusSpec, InputError, Source, SweepResult, WitnessRecord};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("builtin enumeration supports 1 to {max} vertices, got {n}; stream larger graphs as graph6")]
    ScaleLimit { n: usize, max: usize },
    #[error("cannot read corpus: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}
