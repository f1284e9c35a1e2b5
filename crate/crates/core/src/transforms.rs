//! Same-size transforms that move asymmetric cells across the diagonal.
//!
//! [`symmetrize`] reflects every below-diagonal asymmetric cell to its mirror
//! position. When each row and column holds at most one asymmetric cell and
//! both sides of the diagonal are occupied, the result has strictly larger
//! dimension. [`balance`] and [`conjecture_transform`] extend the move to
//! arbitrary diagrams; there the increase is only conjectured, so they measure
//! rather than assert.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{Cell, YoungDiagram};
use crate::dimension::dim_exact;
use crate::error::{Error, Result};
use crate::numeric::product;
use crate::oracle::partitions;

/// Disagreement between the two readings of how many cells a balance moves:
/// half the column/row imbalance, or half the full column height.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveAmbiguity {
    pub index: usize,
    pub by_imbalance: usize,
    pub by_height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformReport {
    pub input: YoungDiagram,
    pub output: YoungDiagram,
    #[serde(with = "crate::records::decimal")]
    pub dim_input: BigUint,
    #[serde(with = "crate::records::decimal")]
    pub dim_output: BigUint,
    pub strict_expected: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ambiguities: Vec<MoveAmbiguity>,
}

impl TransformReport {
    fn new(input: YoungDiagram, output: YoungDiagram, strict_expected: bool) -> Self {
        debug_assert_eq!(input.size(), output.size());
        TransformReport {
            dim_input: dim_exact(&input),
            dim_output: dim_exact(&output),
            input,
            output,
            strict_expected,
            ambiguities: Vec::new(),
        }
    }

    /// How the output's dimension compares to the input's.
    pub fn change(&self) -> Ordering {
        self.dim_output.cmp(&self.dim_input)
    }
}

/// `λ' = base ∪ A_u ∪ reflect(A_d)`.
pub fn symmetrize(diagram: &YoungDiagram) -> Result<TransformReport> {
    if !diagram.theorem_hypothesis_holds() {
        return Err(Error::HypothesisViolated(diagram.clone()));
    }
    let asym = diagram.asymmetric_cells();
    let base = diagram.base_subdiagram();
    let mut cells: BTreeSet<Cell> = base.cells().collect();
    cells.extend(asym.above.iter().copied());
    cells.extend(asym.below.iter().map(|c| c.transpose()));
    let output = YoungDiagram::from_cells(&cells)
        .filter(|d| d.size() == diagram.size())
        .ok_or_else(|| Error::InvalidResultShape(diagram.clone()))?;
    let strict = !asym.above.is_empty() && !asym.below.is_empty();
    Ok(TransformReport::new(diagram.clone(), output, strict))
}

/// Checks the proof's bookkeeping for one pair of asymmetric cells on a
/// symmetric base: `upper = (k,l)` above the diagonal, `lower = (t,s)` below.
///
/// Builds `λ = base ∪ {(k,l),(t,s)}` and `λ' = base ∪ {(k,l),(s,t)}` and
/// verifies that
/// * the cells mixing a coordinate from `{k,l}` with one from `{s,t}` are
///   exactly the four the case analysis names, in both diagrams;
/// * their hooks match the closed forms in `k, l, s, t`;
/// * the remaining hook products agree, so only those four cells matter;
/// * the four-cell product is larger in `λ` than in `λ'`.
pub fn verify_theorem_hooks(base: &YoungDiagram, upper: Cell, lower: Cell) -> Result<bool> {
    if !base.is_symmetric() {
        return Err(Error::NotSymmetric(base.clone()));
    }
    for cell in [upper, lower] {
        let side_ok = if cell == upper {
            cell.is_above_diagonal()
        } else {
            cell.is_below_diagonal()
        };
        if !side_ok || !base.is_addable(cell) {
            return Err(Error::NotAddable {
                diagram: base.clone(),
                cell,
            });
        }
    }
    let (k, l) = (upper.row as i64, upper.col as i64);
    let (t, s) = (lower.row as i64, lower.col as i64);
    if k == s {
        return Err(Error::DegenerateOverlap { upper, lower });
    }
    let lam = base.with_cell(upper)?.with_cell(lower)?;
    let lam_r = base.with_cell(upper)?.with_cell(lower.transpose())?;

    let at = |r: i64, c: i64| Cell::new(r as usize, c as usize);
    let h = |r: i64, c: i64| lam.hook_length(at(r, c)).map(|v| v as i64).ok();
    let hr = |r: i64, c: i64| lam_r.hook_length(at(r, c)).map(|v| v as i64).ok();

    // (cell, hook in λ, hook in λ')
    let (ordered, yellow): (bool, [(i64, i64, i64, i64); 4]) = if k < s {
        (
            k < s && s < t && t < l,
            [
                (s, k, l - s + t - k - 1, l - s + t - k),
                (t, k, l - t + s - k, l - t + s - k - 1),
                (k, s, t - k + l - s + 1, t - k + l - s),
                (k, t, s - k + l - t, l - t + s - k + 1),
            ],
        )
    } else {
        (
            s < k && k < l && l < t,
            [
                (s, k, l - s + t - k - 1, l - s + t - k),
                (l, s, t - l + k - s, t - l + k - s - 1),
                (k, s, t - k + l - s + 1, t - k + l - s),
                (s, l, k - s + t - l, k - s + t - l + 1),
            ],
        )
    };
    if !ordered {
        return Ok(false);
    }

    let y: BTreeSet<Cell> = yellow.iter().map(|&(r, c, _, _)| at(r, c)).collect();
    let mut mixed = Vec::with_capacity(8);
    for a in [k, l] {
        for b in [s, t] {
            mixed.push(at(a, b));
            mixed.push(at(b, a));
        }
    }
    let in_lam: BTreeSet<Cell> = mixed.iter().copied().filter(|&c| lam.contains(c)).collect();
    let in_lam_r: BTreeSet<Cell> = mixed
        .iter()
        .copied()
        .filter(|&c| lam_r.contains(c))
        .collect();
    if in_lam != y || in_lam_r != y {
        return Ok(false);
    }

    for &(r, c, closed, closed_r) in &yellow {
        if h(r, c) != Some(closed) || hr(r, c) != Some(closed_r) {
            return Ok(false);
        }
    }

    let rest = |d: &YoungDiagram| {
        product(
            d.hooks()
                .into_iter()
                .filter(|(c, _)| !y.contains(c))
                .map(|(_, h)| h),
        )
    };
    if rest(&lam) != rest(&lam_r) {
        return Ok(false);
    }

    let left: i64 = yellow.iter().map(|&(_, _, a, _)| a).product();
    let right: i64 = yellow.iter().map(|&(_, _, _, b)| b).product();
    Ok(left > right)
}

/// A symmetric base with the upper and lower cells that failed the check.
pub type HookFailure = (YoungDiagram, Cell, Cell);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookSweep {
    pub bases: usize,
    pub pairs: usize,
    pub failures: Vec<HookFailure>,
}

/// Runs [`verify_theorem_hooks`] on every symmetric base of size up to
/// `max_size` and every admissible pair of added cells.
pub fn verify_theorem_hooks_exhaustive(max_size: usize) -> HookSweep {
    let bases: Vec<YoungDiagram> = (0..=max_size)
        .flat_map(partitions)
        .filter(YoungDiagram::is_symmetric)
        .collect();
    let per_base: Vec<(usize, Vec<HookFailure>)> = bases
        .par_iter()
        .map(|base| {
            let addable = base.addable_cells();
            let mut pairs = 0;
            let mut failures = Vec::new();
            for &u in addable.iter().filter(|c| c.is_above_diagonal()) {
                for &d in addable.iter().filter(|c| c.is_below_diagonal()) {
                    if u.row == d.col {
                        continue;
                    }
                    pairs += 1;
                    if !matches!(verify_theorem_hooks(base, u, d), Ok(true)) {
                        failures.push((base.clone(), u, d));
                    }
                }
            }
            (pairs, failures)
        })
        .collect();
    let mut sweep = HookSweep {
        bases: bases.len(),
        ..HookSweep::default()
    };
    for (pairs, failures) in per_base {
        sweep.pairs += pairs;
        sweep.failures.extend(failures);
    }
    sweep
}

/// Summary of an exhaustive [`symmetrize`] run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremSweep {
    pub checked: usize,
    pub strict: usize,
    pub equal: usize,
    pub violations: Vec<TransformReport>,
}

/// Applies [`symmetrize`] to every partition of size `1..=max_n` that meets
/// the hypothesis. Cells on both sides must give a strict increase; one-sided
/// inputs must keep the dimension.
pub fn verify_theorem(max_n: usize) -> TheoremSweep {
    let reports: Vec<TransformReport> = (1..=max_n)
        .flat_map(partitions)
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(YoungDiagram::theorem_hypothesis_holds)
        .map(|d| symmetrize(&d).expect("hypothesis checked"))
        .collect();
    let mut sweep = TheoremSweep::default();
    for r in reports {
        sweep.checked += 1;
        let ok = match (r.strict_expected, r.change()) {
            (true, Ordering::Greater) => {
                sweep.strict += 1;
                true
            }
            (false, Ordering::Equal) => {
                sweep.equal += 1;
                true
            }
            _ => false,
        };
        if !ok {
            sweep.violations.push(r);
        }
    }
    sweep.violations.sort_by(|a, b| a.input.cmp(&b.input));
    sweep
}

/// Moves the top `⌈d/2⌉` cells of column `index` to the end of row `index`,
/// where `d` is the column height minus the row length.
pub fn balance(diagram: &YoungDiagram, index: usize) -> Result<TransformReport> {
    let (output, ambiguity) = balance_shape(diagram, index)?;
    let mut report = TransformReport::new(diagram.clone(), output, true);
    report.ambiguities.extend(ambiguity);
    Ok(report)
}

fn balance_shape(
    diagram: &YoungDiagram,
    index: usize,
) -> Result<(YoungDiagram, Option<MoveAmbiguity>)> {
    let height = diagram.col_len(index);
    let length = diagram.row_len(index);
    let imbalance = height as i64 - length as i64;
    if index == 0 || imbalance <= 0 {
        return Err(Error::NotApplicable { index, imbalance });
    }
    let moves = (imbalance as usize).div_ceil(2);
    let by_height = height.div_ceil(2);
    let ambiguity = (by_height != moves).then(|| {
        log::debug!(
            "balance {diagram} at {index}: imbalance reading moves {moves}, height reading {by_height}"
        );
        MoveAmbiguity {
            index,
            by_imbalance: moves,
            by_height,
        }
    });
    let mut cur = diagram.clone();
    for step in 0..moves {
        let cell = Cell::new(height - step, index);
        cur = cur
            .without_cell(cell)
            .map_err(|_| Error::ShapeBlocked(cur.clone()))?;
    }
    for step in 0..moves {
        let cell = Cell::new(index, length + 1 + step);
        cur = cur
            .with_cell(cell)
            .map_err(|_| Error::ShapeBlocked(cur.clone()))?;
    }
    Ok((cur, ambiguity))
}

/// Applies the column-to-row move to every index whose column is at least
/// two cells taller than its row, all at once on the cell set.
///
/// Returns `None` when no index qualifies or the moved cell set is not a
/// diagram.
pub fn balance_all(diagram: &YoungDiagram) -> Option<YoungDiagram> {
    let span = diagram.num_rows().max(diagram.num_cols());
    let mut cells: BTreeSet<Cell> = diagram.cells().collect();
    let mut moved = false;
    for i in 1..=span {
        let height = diagram.col_len(i);
        let length = diagram.row_len(i);
        if height < length + 2 {
            continue;
        }
        let moves = (height - length).div_ceil(2);
        for step in 0..moves {
            cells.remove(&Cell::new(height - step, i));
            cells.insert(Cell::new(i, length + 1 + step));
        }
        moved = true;
    }
    if !moved {
        return None;
    }
    YoungDiagram::from_cells(&cells).filter(|d| d.size() == diagram.size())
}

/// Balances until every row and column carries at most one asymmetric cell,
/// then reflects the remaining below-diagonal cells if both sides are occupied.
///
/// Each round first tries [`balance_all`] on the diagram, then on its
/// conjugate; if neither yields a diagram it falls back to single-index
/// [`balance`] moves, tall columns first. The output (or its conjugate)
/// always lies in the core subgraph.
pub fn conjecture_transform(diagram: &YoungDiagram) -> Result<TransformReport> {
    let mut cur = diagram.clone();
    let mut ambiguities = Vec::new();
    let limit = 4 * diagram.size() + 4;
    let mut steps = 0;
    while !cur.theorem_hypothesis_holds() {
        if steps == limit {
            return Err(Error::NoConvergence {
                diagram: cur,
                steps,
            });
        }
        steps += 1;
        let (next, amb) = balance_round(&cur)?;
        ambiguities.extend(amb);
        cur = next;
    }
    let asym = cur.asymmetric_cells();
    if !asym.above.is_empty() && !asym.below.is_empty() {
        cur = symmetrize(&cur)?.output;
    }
    debug_assert!(cur.in_core_subgraph() || cur.conjugate().in_core_subgraph());
    let strict = cur != *diagram;
    let mut report = TransformReport::new(diagram.clone(), cur, strict);
    report.ambiguities = ambiguities;
    Ok(report)
}

/// One balancing move on a diagram that violates the hypothesis.
fn balance_round(cur: &YoungDiagram) -> Result<(YoungDiagram, Vec<MoveAmbiguity>)> {
    let conj = cur.conjugate();
    if let Some(next) = balance_all(cur) {
        return Ok((next, Vec::new()));
    }
    if let Some(next) = balance_all(&conj) {
        return Ok((next.conjugate(), Vec::new()));
    }
    let span = cur.num_rows().max(cur.num_cols());
    let imbalance = |i: usize| cur.col_len(i) as i64 - cur.row_len(i) as i64;
    for i in (1..=span).filter(|&i| imbalance(i) >= 2) {
        if let Ok((next, amb)) = balance_shape(cur, i) {
            return Ok((next, amb.into_iter().collect()));
        }
    }
    for i in (1..=span).filter(|&i| imbalance(i) <= -2) {
        if let Ok((next, amb)) = balance_shape(&conj, i) {
            return Ok((next.conjugate(), amb.into_iter().collect()));
        }
    }
    Err(Error::ShapeBlocked(cur.clone()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureSweep {
    pub checked: usize,
    pub increased: usize,
    pub unchanged: usize,
    pub decreases: Vec<TransformReport>,
    pub stuck: Vec<String>,
}

/// Runs [`conjecture_transform`] on every partition of size `1..=max_n` and
/// records any dimension decrease or failure to converge.
pub fn monitor_conjecture(max_n: usize) -> ConjectureSweep {
    let all: Vec<YoungDiagram> = (1..=max_n).flat_map(partitions).collect();
    let results: Vec<std::result::Result<TransformReport, String>> = all
        .par_iter()
        .map(|d| conjecture_transform(d).map_err(|e| e.to_string()))
        .collect();
    let mut sweep = ConjectureSweep::default();
    for r in results {
        sweep.checked += 1;
        match r {
            Ok(r) => match r.change() {
                Ordering::Greater => sweep.increased += 1,
                Ordering::Equal => sweep.unchanged += 1,
                Ordering::Less => {
                    log::warn!("dimension decreased: {} -> {}", r.input, r.output);
                    sweep.decreases.push(r);
                }
            },
            Err(e) => sweep.stuck.push(e),
        }
    }
    sweep
}
