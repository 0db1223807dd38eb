//! Matched-trial benchmarks comparing landmark rules on lazy witness persistence.

pub mod error;
pub mod methods;
pub mod presets;
pub mod record;
pub mod report;
pub mod seeds;
pub mod stats;
pub mod torus;
pub mod trial;

pub use error::{BenchError, Result};
