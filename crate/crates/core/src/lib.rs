//! Text simplification workbench: a lexical simplification pipeline,
//! lexical and sentence-level simplification metrics, and a drift analysis
//! for machine-translated parallel corpora.
//!
//! With the default `parallel` feature, batch operations fan out over the
//! rayon thread pool; without it they run sequentially. Results are
//! identical either way.

pub mod corpus;
pub mod drift;
pub mod error;
pub mod lexmetrics;
pub mod lexres;
pub mod par;
pub mod pipeline;
pub mod report;
pub mod sentmetrics;

pub use error::{Error, Result};
