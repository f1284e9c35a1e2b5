//! Brute-force ground truth: every partition of `n`, the exact set of
//! maximum-dimension diagrams, and exhaustive checks of the geometric shape
//! that maximizers are expected to have.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::YoungDiagram;
use crate::dimension::dim_exact;
use crate::error::{Error, Result};

/// Default upper size for exhaustive maximum tables.
pub const EXHAUSTIVE_BOUND: usize = 45;

/// Partitions of `n` in descending lexicographic order.
#[derive(Clone, Debug)]
pub struct Partitions {
    next: Option<Vec<usize>>,
}

pub fn partitions(n: usize) -> Partitions {
    let first = if n == 0 { Vec::new() } else { vec![n] };
    Partitions { next: Some(first) }
}

impl Iterator for Partitions {
    type Item = YoungDiagram;

    fn next(&mut self) -> Option<YoungDiagram> {
        let current = self.next.take()?;
        // rightmost part larger than one
        if let Some(q) = current.iter().rposition(|&p| p > 1) {
            let mut succ = current[..=q].to_vec();
            let mut rem: usize = current[q + 1..].iter().sum::<usize>() + 1;
            succ[q] -= 1;
            let cap = succ[q];
            while rem > 0 {
                let part = cap.min(rem);
                succ.push(part);
                rem -= part;
            }
            self.next = Some(succ);
        }
        Some(YoungDiagram::try_from(current).expect("generator emits partitions"))
    }
}

/// `p(n)` from Euler's pentagonal number recurrence.
pub fn partition_count(n: usize) -> BigUint {
    let mut p: Vec<BigUint> = Vec::with_capacity(n + 1);
    p.push(BigUint::one());
    for m in 1..=n {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let bucket = if k % 2 == 1 { &mut plus } else { &mut minus };
            *bucket += &p[m - g1];
            if g2 <= m {
                *bucket += &p[m - g2];
            }
        }
        p.push(plus - minus);
    }
    p.pop().expect("nonempty")
}

/// All maximum-dimension diagrams of one size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxTableEntry {
    pub n: usize,
    /// Sorted ascending lexicographically.
    pub maximizers: Vec<YoungDiagram>,
    #[serde(with = "crate::records::decimal")]
    pub dim: BigUint,
}

pub fn max_dimension_diagrams(n: usize) -> Result<MaxTableEntry> {
    max_dimension_diagrams_bounded(n, EXHAUSTIVE_BOUND)
}

/// Exact argmax of `dim` over all partitions of `n`.
pub fn max_dimension_diagrams_bounded(n: usize, bound: usize) -> Result<MaxTableEntry> {
    if n > bound {
        return Err(Error::SizeBound { size: n, bound });
    }
    let all: Vec<YoungDiagram> = partitions(n).collect();
    let dims: Vec<BigUint> = all.par_iter().map(dim_exact).collect();
    let best = dims.iter().max().cloned().unwrap_or_else(BigUint::one);
    let mut maximizers: Vec<YoungDiagram> = all
        .into_iter()
        .zip(dims)
        .filter(|(_, d)| *d == best)
        .map(|(p, _)| p)
        .collect();
    maximizers.sort();
    Ok(MaxTableEntry {
        n,
        maximizers,
        dim: best,
    })
}

/// Entries for every `n` in `1..=max_n`.
pub fn max_table(max_n: usize, bound: usize) -> Result<Vec<MaxTableEntry>> {
    (1..=max_n)
        .map(|n| max_dimension_diagrams_bounded(n, bound))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryFailure {
    pub n: usize,
    pub diagram: YoungDiagram,
    pub core_up_to_conjugation: bool,
    pub hypothesis: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub checked: usize,
    pub failures: Vec<GeometryFailure>,
}

/// Checks that each maximizer (or its conjugate) lies in the core subgraph
/// and satisfies the one-asymmetric-cell-per-row-and-column hypothesis.
pub fn geometry_report(table: &[MaxTableEntry]) -> GeometryReport {
    let mut report = GeometryReport::default();
    for entry in table {
        for d in &entry.maximizers {
            report.checked += 1;
            let core = d.in_core_subgraph() || d.conjugate().in_core_subgraph();
            let hyp = d.theorem_hypothesis_holds();
            if !(core && hyp) {
                report.failures.push(GeometryFailure {
                    n: entry.n,
                    diagram: d.clone(),
                    core_up_to_conjugation: core,
                    hypothesis: hyp,
                });
            }
        }
    }
    report
}

pub fn verify_max_geometry(n_max: usize) -> Result<GeometryReport> {
    Ok(geometry_report(&max_table(n_max, EXHAUSTIVE_BOUND)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneBoxException {
    pub n: usize,
    pub diagram: YoungDiagram,
    /// Cells outside the base subdiagram.
    pub excess: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneBoxReport {
    pub checked: usize,
    pub exceptions: Vec<OneBoxException>,
}

/// Checks `|λ| − |base(λ)| ≤ 1` for every maximizer.
pub fn one_box_report(table: &[MaxTableEntry]) -> OneBoxReport {
    let mut report = OneBoxReport::default();
    for entry in table {
        for d in &entry.maximizers {
            report.checked += 1;
            let excess = d.size() - d.base_subdiagram().size();
            if excess > 1 {
                report.exceptions.push(OneBoxException {
                    n: entry.n,
                    diagram: d.clone(),
                    excess,
                });
            }
        }
    }
    report
}

pub fn verify_one_box_claim(n_max: usize) -> Result<OneBoxReport> {
    Ok(one_box_report(&max_table(n_max, EXHAUSTIVE_BOUND)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::from_parts(rows)
    }

    #[test]
    fn small_enumerations() {
        let four: Vec<_> = partitions(4).collect();
        assert_eq!(
            four,
            vec![
                yd(&[4]),
                yd(&[3, 1]),
                yd(&[2, 2]),
                yd(&[2, 1, 1]),
                yd(&[1, 1, 1, 1])
            ]
        );
        let zero: Vec<_> = partitions(0).collect();
        assert_eq!(zero, vec![YoungDiagram::empty()]);
        assert_eq!(partitions(10).count(), 42);
        assert_eq!(partition_count(10), BigUint::from(42u32));
        assert_eq!(partition_count(0), BigUint::one());
        assert_eq!(partition_count(100).to_string(), "190569292");
    }

    #[test]
    fn small_maxima() {
        let e = max_dimension_diagrams(4).unwrap();
        assert_eq!(e.maximizers, vec![yd(&[2, 1, 1]), yd(&[3, 1])]);
        assert_eq!(e.dim, BigUint::from(3u32));
        let e = max_dimension_diagrams(5).unwrap();
        assert_eq!(e.maximizers, vec![yd(&[3, 1, 1])]);
        assert_eq!(e.dim, BigUint::from(6u32));
        let e = max_dimension_diagrams(1).unwrap();
        assert_eq!(e.maximizers, vec![yd(&[1])]);
        assert_eq!(e.dim, BigUint::one());
        assert!(matches!(
            max_dimension_diagrams(46),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn small_geometry() {
        let table = max_table(8, EXHAUSTIVE_BOUND).unwrap();
        assert!(geometry_report(&table).failures.is_empty());
        let ob = one_box_report(&table);
        assert!(ob.exceptions.is_empty());
        assert_eq!(
            ob.checked,
            table.iter().map(|e| e.maximizers.len()).sum::<usize>()
        );
        let d = yd(&[2, 1, 1]);
        assert_eq!(d.size() - d.base_subdiagram().size(), 1);
    }
}
