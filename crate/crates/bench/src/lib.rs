//! Shared inputs for the criterion benches.

use youngdim::YoungDiagram;

/// Staircase `[k, k-1, …, 1]`.
pub fn staircase(k: usize) -> YoungDiagram {
    YoungDiagram::try_from((1..=k).rev().collect::<Vec<_>>()).expect("staircase is a partition")
}
