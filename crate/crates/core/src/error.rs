use std::path::PathBuf;

use thiserror::Error;

use crate::diagram::{Cell, YoungDiagram};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("row {index} is longer than the row above it")]
    NonMonotone { index: usize },
    #[error("row {index} has negative length {value}")]
    Negative { index: usize, value: i64 },
    #[error("cell {0} is not in the diagram")]
    CellOutsideDiagram(Cell),
    #[error("cell {cell} cannot be added to {diagram}")]
    NotAddable { diagram: YoungDiagram, cell: Cell },
    #[error("diagram of size {size} exceeds the configured bound {bound}")]
    SizeBound { size: usize, bound: usize },
    #[error("operation needs a nonempty diagram")]
    EmptyDiagram,
    #[error("no child of {0} stays inside the core subgraph")]
    NoCoreChild(YoungDiagram),
    #[error("invalid shake depth k={k} for a diagram of size {size}")]
    InvalidK { k: usize, size: usize },
    #[error("invalid candidate pool size m={0}")]
    InvalidM(usize),
    #[error("growth path breaks at step {step}: {cell} is not addable")]
    InvalidPath { step: usize, cell: Cell },
    #[error("{0} has a row or column with two or more asymmetric cells")]
    HypothesisViolated(YoungDiagram),
    #[error("reflected cell set is not a Young diagram (from {0})")]
    InvalidResultShape(YoungDiagram),
    #[error("{0} is not self-conjugate")]
    NotSymmetric(YoungDiagram),
    #[error("cells {upper} and {lower} are mirror images; the base would absorb both")]
    DegenerateOverlap { upper: Cell, lower: Cell },
    #[error("index {index} has column/row imbalance {imbalance}; nothing to move")]
    NotApplicable { index: usize, imbalance: i64 },
    #[error("balancing got stuck on {0}")]
    ShapeBlocked(YoungDiagram),
    #[error("balancing did not reach the core subgraph within {steps} steps (last: {diagram})")]
    NoConvergence { diagram: YoungDiagram, steps: usize },
    #[error("target size {target} is below the start size {size}")]
    InvalidTarget { target: usize, size: usize },
    #[error("search space is empty")]
    EmptySearchSpace,
    #[error("start diagram {0} is outside the core subgraph, and so is its conjugate")]
    OutsideCoreSubgraph(YoungDiagram),
    #[error("entry {index} has size {size}, expected {expected}")]
    NotAGrowthSequence {
        index: usize,
        size: usize,
        expected: usize,
    },
    #[error("cannot parse partition {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error("record sets disagree on sizes: {0}")]
    KeyMismatch(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
