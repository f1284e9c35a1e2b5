//! Dimensions of Young diagrams: the hook length formula in exact and
//! log-domain form, two independent counting routes used as oracles, the
//! normalized dimension, and exact ratios for single-box growth.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::diagram::{Cell, YoungDiagram};
use crate::error::{Error, Result};
use crate::numeric::{factorial, ln_factorial, product, CompensatedSum};

/// Default size cap for the memoized corner recursion.
pub const RECURSION_BOUND: usize = 40;

/// Size cap for brute-force tableau enumeration.
pub const ENUMERATION_BOUND: usize = 12;

/// Log-gap below which dimension comparisons fall back to exact integers.
pub const LOG_TIE_GAP: f64 = 1e-6;

/// Number of standard Young tableaux, `n! / Π h(i,j)`.
///
/// Panics if the hook product does not divide `n!`, which can only mean the
/// hook computation is broken.
pub fn dim_exact(diagram: &YoungDiagram) -> BigUint {
    let hooks = product(diagram.hooks().into_iter().map(|(_, h)| h));
    let (quot, rem) = factorial(diagram.size()).div_rem(&hooks);
    assert!(
        rem.is_zero(),
        "hook product of {diagram} does not divide {}!",
        diagram.size()
    );
    quot
}

/// `ln dim(λ) = Σ ln m − Σ ln h(b)`, compensated.
pub fn log_dim(diagram: &YoungDiagram) -> f64 {
    let mut acc = CompensatedSum::new();
    for m in 2..=diagram.size() {
        acc.add((m as f64).ln());
    }
    for (_, h) in diagram.hooks() {
        if h > 1 {
            acc.add(-(h as f64).ln());
        }
    }
    acc.value()
}

/// Normalized dimension `c(λ) = −(1/√n) · ln(dim λ / √(n!))`.
///
/// Smaller values mean larger dimensions at fixed `n`.
pub fn normalized_dim(diagram: &YoungDiagram) -> Result<f64> {
    let n = diagram.size();
    if n == 0 {
        return Err(Error::EmptyDiagram);
    }
    Ok(normalized_from_log(n, log_dim(diagram)))
}

pub(crate) fn normalized_from_log(n: usize, log_dim: f64) -> f64 {
    -(log_dim - 0.5 * ln_factorial(n)) / (n as f64).sqrt()
}

/// Exact growth ratio `dim(λ ∪ b) / dim(λ)` together with its logarithm.
#[derive(Clone, Debug, PartialEq)]
pub struct DimRatio {
    pub ratio: BigRational,
    pub ln: f64,
}

/// `dim(λ ∪ b) / dim(λ)`, from the hooks in the row and column of `b` only.
///
/// Adding `b = (i, j)` lengthens by one the hook of every cell left of `b` in
/// row `i` and of every cell above `b` in column `j`; all other hooks are
/// unchanged and the new cell has hook 1.
pub fn dim_ratio_add(diagram: &YoungDiagram, cell: Cell) -> Result<DimRatio> {
    let (num, den) = growth_factors(diagram, cell)?;
    let n1 = diagram.size() + 1;
    let mut ln = CompensatedSum::new();
    ln.add((n1 as f64).ln());
    for (&a, &b) in num.iter().zip(den.iter()) {
        ln.add((a as f64).ln() - (b as f64).ln());
    }
    let numer = BigInt::from(product(num)) * BigInt::from(n1);
    let denom = BigInt::from(product(den));
    Ok(DimRatio {
        ratio: BigRational::new(numer, denom),
        ln: ln.value(),
    })
}

/// Old hooks (numerators) and new hooks (denominators) of the cells whose
/// hooks grow when `cell` is added.
pub(crate) fn growth_factors(
    diagram: &YoungDiagram,
    cell: Cell,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !diagram.is_addable(cell) {
        return Err(Error::NotAddable {
            diagram: diagram.clone(),
            cell,
        });
    }
    let mut num = Vec::new();
    let mut den = Vec::new();
    let (i, j) = (cell.row, cell.col);
    // row i, columns 1..j: arm = (j-1) - c, leg = col_len(c) - i
    for c in 1..j {
        let h = (j - 1 - c) + (diagram.col_len(c) - i) + 1;
        num.push(h);
        den.push(h + 1);
    }
    // column j, rows 1..i: arm = row_len(r) - j, leg = (i-1) - r
    for r in 1..i {
        let h = (diagram.row_len(r) - j) + (i - 1 - r) + 1;
        num.push(h);
        den.push(h + 1);
    }
    Ok((num, den))
}

/// Orders two diagrams by dimension: log domain first, exact integers when
/// the logs are within [`LOG_TIE_GAP`].
pub fn compare_dims(a: &YoungDiagram, b: &YoungDiagram) -> Ordering {
    let gap = log_dim(a) - log_dim(b);
    if gap > LOG_TIE_GAP {
        Ordering::Greater
    } else if gap < -LOG_TIE_GAP {
        Ordering::Less
    } else {
        dim_exact(a).cmp(&dim_exact(b))
    }
}

/// Memoized corner recursion `dim(λ) = Σ_c dim(λ \ c)`, `dim(∅) = 1`.
///
/// The memo is owned, so each instance belongs to one thread.
#[derive(Debug)]
pub struct CornerRecursion {
    bound: usize,
    memo: HashMap<YoungDiagram, BigUint>,
}

impl Default for CornerRecursion {
    fn default() -> Self {
        Self::with_bound(RECURSION_BOUND)
    }
}

impl CornerRecursion {
    pub fn with_bound(bound: usize) -> Self {
        CornerRecursion {
            bound,
            memo: HashMap::new(),
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn dim(&mut self, diagram: &YoungDiagram) -> Result<BigUint> {
        if diagram.size() > self.bound {
            return Err(Error::SizeBound {
                size: diagram.size(),
                bound: self.bound,
            });
        }
        Ok(self.dim_inner(diagram))
    }

    fn dim_inner(&mut self, diagram: &YoungDiagram) -> BigUint {
        if diagram.is_empty() {
            return BigUint::one();
        }
        if let Some(v) = self.memo.get(diagram) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for corner in diagram.removable_cells() {
            let smaller = diagram.without_cell(corner).expect("corner is removable");
            total += self.dim_inner(&smaller);
        }
        self.memo.insert(diagram.clone(), total.clone());
        total
    }
}

/// One-shot corner recursion with the default bound.
pub fn dim_recursive(diagram: &YoungDiagram) -> Result<BigUint> {
    CornerRecursion::default().dim(diagram)
}

/// Counts standard fillings directly: values `1..=n` placed row by row, each
/// larger than its left and upper neighbours.
pub fn count_syt_enumeration(diagram: &YoungDiagram) -> Result<BigUint> {
    let n = diagram.size();
    if n > ENUMERATION_BOUND {
        return Err(Error::SizeBound {
            size: n,
            bound: ENUMERATION_BOUND,
        });
    }
    let cells: Vec<Cell> = diagram.cells().collect();
    // value at (i,j) needs i*j - 1 smaller values above-left and leaves room
    // for every cell weakly below-right of it
    let bounds: Vec<(usize, usize)> = cells
        .iter()
        .map(|c| {
            let below_right: usize = (c.row..=diagram.num_rows())
                .map(|r| diagram.row_len(r).saturating_sub(c.col - 1))
                .sum();
            (c.row * c.col, n + 1 - below_right)
        })
        .collect();
    let width = diagram.num_cols();
    let mut grid = vec![0usize; diagram.num_rows() * width];
    let mut count = 0u64;
    fill(&cells, &bounds, width, 0, 0u64, &mut grid, &mut count);
    Ok(BigUint::from(count))
}

fn fill(
    cells: &[Cell],
    bounds: &[(usize, usize)],
    width: usize,
    k: usize,
    used: u64,
    grid: &mut [usize],
    count: &mut u64,
) {
    if k == cells.len() {
        *count += 1;
        return;
    }
    let Cell { row, col } = cells[k];
    let idx = (row - 1) * width + (col - 1);
    let left = if col > 1 { grid[idx - 1] } else { 0 };
    let up = if row > 1 { grid[idx - width] } else { 0 };
    let (lo, hi) = bounds[k];
    let lo = lo.max(left.max(up) + 1);
    for v in lo..=hi {
        if used & (1 << v) != 0 {
            continue;
        }
        grid[idx] = v;
        fill(cells, bounds, width, k + 1, used | (1 << v), grid, count);
    }
    grid[idx] = 0;
}
