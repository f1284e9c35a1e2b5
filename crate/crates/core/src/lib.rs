//! Exact and log-domain dimensions of Young diagrams, the reflection
//! transform that raises the dimension of asymmetric diagrams, and best-first
//! search for maximum-dimension diagrams over a spanning tree of greedy paths.

pub mod diagram;
pub mod dimension;
pub mod error;
pub mod numeric;
pub mod oracle;
pub mod plancherel;
pub mod records;
pub mod search;
pub mod transforms;

pub use diagram::{AsymmetricCells, Cell, YoungDiagram};
pub use dimension::{dim_exact, log_dim, normalized_dim};
pub use error::{Error, Result};
pub use search::{astar, SearchMode, SearchOutcome};
