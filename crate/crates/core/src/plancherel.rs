//! Plancherel growth on the Young graph: exact transition probabilities,
//! path costs, greedy growth, and the shaking / branches heuristics.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diagram::{Cell, YoungDiagram};
use crate::dimension::{dim_exact, growth_factors};
use crate::error::{Error, Result};
use crate::numeric::{product, CompensatedSum};

/// An edge `λ ↗ λ ∪ cell` with its Plancherel probability and weight `−ln p`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionEdge {
    pub cell: Cell,
    pub probability: BigRational,
    pub probability_f64: f64,
    pub weight: f64,
}

/// `p(λ ↗ λ∪b) = dim(λ∪b) / ((n+1)·dim λ)`, which reduces to the product of
/// `h/(h+1)` over the cells whose hooks grow.
pub fn transition_prob(diagram: &YoungDiagram, cell: Cell) -> Result<TransitionEdge> {
    let (num, den) = growth_factors(diagram, cell)?;
    let mut weight = CompensatedSum::new();
    for (&a, &b) in num.iter().zip(den.iter()) {
        weight.add((b as f64).ln() - (a as f64).ln());
    }
    let probability = BigRational::new(BigInt::from(product(num)), BigInt::from(product(den)));
    let weight = weight.value();
    Ok(TransitionEdge {
        cell,
        probability_f64: (-weight).exp(),
        probability,
        weight,
    })
}

/// Outgoing edges of `diagram`, ascending by row.
pub fn transitions(diagram: &YoungDiagram) -> Vec<TransitionEdge> {
    diagram
        .addable_cells()
        .into_iter()
        .map(|c| transition_prob(diagram, c).expect("addable"))
        .collect()
}

/// Box additions from a start diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrowthPath {
    pub start: YoungDiagram,
    pub cells: Vec<Cell>,
}

impl GrowthPath {
    pub fn from_empty(cells: Vec<Cell>) -> Self {
        GrowthPath {
            start: YoungDiagram::empty(),
            cells,
        }
    }

    /// Every intermediate diagram including start and end.
    pub fn diagrams(&self) -> Result<Vec<YoungDiagram>> {
        let mut out = Vec::with_capacity(self.cells.len() + 1);
        let mut cur = self.start.clone();
        out.push(cur.clone());
        for (step, &cell) in self.cells.iter().enumerate() {
            cur = cur
                .with_cell(cell)
                .map_err(|_| Error::InvalidPath { step, cell })?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<YoungDiagram> {
        Ok(self.diagrams()?.pop().expect("nonempty"))
    }
}

/// Sum of edge weights along the path.
pub fn path_cost(path: &GrowthPath) -> Result<f64> {
    let mut cur = path.start.clone();
    let mut acc = CompensatedSum::new();
    for (step, &cell) in path.cells.iter().enumerate() {
        let edge = transition_prob(&cur, cell).map_err(|_| Error::InvalidPath { step, cell })?;
        acc.add(edge.weight);
        cur = cur.with_cell(cell).expect("checked addable");
    }
    Ok(acc.value())
}

/// Orders candidates best-first: larger probability, then smaller cell.
pub(crate) fn by_probability_desc(a: &TransitionEdge, b: &TransitionEdge) -> Ordering {
    b.probability
        .cmp(&a.probability)
        .then_with(|| a.cell.cmp(&b.cell))
}

/// The maximum-probability addable cell, optionally restricted to children
/// that stay in the core subgraph.
pub fn greedy_step(diagram: &YoungDiagram, restrict_core: bool) -> Result<TransitionEdge> {
    let mut best: Option<TransitionEdge> = None;
    for cell in diagram.addable_cells() {
        if restrict_core {
            let child = diagram.with_cell(cell)?;
            if !child.in_core_subgraph() {
                continue;
            }
        }
        let edge = transition_prob(diagram, cell)?;
        // strict comparison keeps the earliest cell among equal probabilities
        if best
            .as_ref()
            .is_none_or(|b| edge.probability > b.probability)
        {
            best = Some(edge);
        }
    }
    best.ok_or_else(|| Error::NoCoreChild(diagram.clone()))
}

/// Greedy sequence `λ_1 = [1], …, λ_n`.
pub fn greedy_sequence(n: usize, restrict_core: bool) -> Result<Vec<YoungDiagram>> {
    if n == 0 {
        return Err(Error::InvalidTarget { target: 0, size: 1 });
    }
    greedy_sequence_from(&YoungDiagram::row(1), n, restrict_core)
}

/// Greedy growth from `start` up to size `target`, start included.
pub fn greedy_sequence_from(
    start: &YoungDiagram,
    target: usize,
    restrict_core: bool,
) -> Result<Vec<YoungDiagram>> {
    if target < start.size() {
        return Err(Error::InvalidTarget {
            target,
            size: start.size(),
        });
    }
    let mut out = Vec::with_capacity(target - start.size() + 1);
    let mut cur = start.clone();
    out.push(cur.clone());
    while cur.size() < target {
        let edge = greedy_step(&cur, restrict_core)?;
        cur = cur.with_cell(edge.cell)?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Addable cells ranked by probability, best first.
fn ranked_additions(diagram: &YoungDiagram) -> Vec<Cell> {
    let mut edges = transitions(diagram);
    edges.sort_by(by_probability_desc);
    edges.into_iter().map(|e| e.cell).collect()
}

/// Corners ranked for removal: smallest probability of the edge that would
/// re-add the corner first, i.e. largest `dim(λ \ c)` first.
fn ranked_removals(diagram: &YoungDiagram) -> Vec<Cell> {
    let mut edges: Vec<TransitionEdge> = diagram
        .removable_cells()
        .into_iter()
        .map(|c| {
            let smaller = diagram.without_cell(c).expect("corner");
            transition_prob(&smaller, c).expect("corner is addable back")
        })
        .collect();
    edges.sort_by(|a, b| {
        a.probability
            .cmp(&b.probability)
            .then_with(|| a.cell.cmp(&b.cell))
    });
    edges.into_iter().map(|e| e.cell).collect()
}

fn shake_with<F>(diagram: &YoungDiagram, k: usize, mut pick: F) -> Result<YoungDiagram>
where
    F: FnMut(usize) -> usize,
{
    if k == 0 || diagram.size() < k {
        return Err(Error::InvalidK {
            k,
            size: diagram.size(),
        });
    }
    let mut cur = diagram.clone();
    for _ in 0..k {
        let ranked = ranked_additions(&cur);
        let cell = ranked[pick(ranked.len())];
        cur = cur.with_cell(cell)?;
    }
    for _ in 0..k {
        let ranked = ranked_removals(&cur);
        let cell = ranked[pick(ranked.len())];
        cur = cur.without_cell(cell)?;
    }
    Ok(cur)
}

/// Adds `k` maximum-probability cells one at a time, then removes `k`
/// minimum-probability corners one at a time.
pub fn shake(diagram: &YoungDiagram, k: usize) -> Result<YoungDiagram> {
    shake_with(diagram, k, |_| 0)
}

/// Like [`shake`], but each step draws uniformly from the `m` best candidates.
pub fn shake_variant(
    diagram: &YoungDiagram,
    k: usize,
    m: usize,
    seed: u64,
) -> Result<YoungDiagram> {
    if m == 0 {
        return Err(Error::InvalidM(m));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shake_with(diagram, k, |len| rng.random_range(0..m.min(len)))
}

/// Runs `m` greedy sequences from shaken copies of `diagram` (seeds `0..m`)
/// and keeps the largest-dimension diagram at every size up to `target`.
///
/// With `k == 0` every branch starts from `diagram` itself.
pub fn branches(
    diagram: &YoungDiagram,
    m: usize,
    k: usize,
    target: usize,
) -> Result<Vec<YoungDiagram>> {
    if m == 0 {
        return Err(Error::InvalidM(m));
    }
    if target < diagram.size() {
        return Err(Error::InvalidTarget {
            target,
            size: diagram.size(),
        });
    }
    let runs: Vec<Vec<YoungDiagram>> = (0..m as u64)
        .into_par_iter()
        .map(|seed| {
            let start = if k == 0 {
                diagram.clone()
            } else {
                shake_variant(diagram, k, m, seed)?
            };
            greedy_sequence_from(&start, target, false)
        })
        .collect::<Result<_>>()?;
    let levels = target - diagram.size() + 1;
    let mut best = Vec::with_capacity(levels);
    for level in 0..levels {
        let winner = runs
            .iter()
            .map(|run| &run[level])
            .map(|d| (dim_exact(d), d))
            .max_by(|(da, a), (db, b)| da.cmp(db).then_with(|| b.cmp(a)))
            .map(|(_, d)| d.clone())
            .expect("m >= 1");
        best.push(winner);
    }
    Ok(best)
}

/// Probability as a float, for reporting.
pub fn probability_to_f64(p: &BigRational) -> f64 {
    p.to_f64().unwrap_or(f64::NAN)
}
