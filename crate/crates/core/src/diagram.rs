//! Young diagrams stored as non-increasing row lengths, with the box-level
//! geometry the rest of the crate relies on.
//!
//! Coordinates are `(row, col)`, both 1-based. A cell with `row < col` lies
//! above the diagonal, one with `row > col` below it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single box position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Mirror image across the main diagonal.
    pub const fn transpose(self) -> Self {
        Cell {
            row: self.col,
            col: self.row,
        }
    }

    pub const fn is_above_diagonal(self) -> bool {
        self.row < self.col
    }

    pub const fn is_below_diagonal(self) -> bool {
        self.row > self.col
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell { row, col }
    }
}

/// An integer partition viewed as a Young diagram.
///
/// Equality and ordering are those of the row sequence, so the derived `Ord`
/// is the lexicographic order on partitions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

/// Cells of a diagram outside its base subdiagram, split by side of the diagonal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AsymmetricCells {
    pub above: BTreeSet<Cell>,
    pub below: BTreeSet<Cell>,
}

impl AsymmetricCells {
    pub fn is_empty(&self) -> bool {
        self.above.is_empty() && self.below.is_empty()
    }

    pub fn len(&self) -> usize {
        self.above.len() + self.below.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Cell> + '_ {
        self.above.iter().chain(self.below.iter()).copied()
    }
}

impl YoungDiagram {
    pub fn empty() -> Self {
        YoungDiagram::default()
    }

    /// Builds a diagram from signed row lengths. Trailing zeros are dropped.
    pub fn from_rows(rows: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for (i, &value) in rows.iter().enumerate() {
            if value < 0 {
                return Err(Error::Negative {
                    index: i + 1,
                    value,
                });
            }
            out.push(value as usize);
        }
        YoungDiagram::try_from(out)
    }

    /// Builds a diagram from row lengths the caller already knows are valid.
    ///
    /// Panics if the rows are not a partition.
    pub fn from_parts(rows: &[usize]) -> Self {
        YoungDiagram::try_from(rows.to_vec()).expect("rows must be non-increasing")
    }

    /// Single row of `n` boxes.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            YoungDiagram { rows: vec![n] }
        }
    }

    /// Single column of `n` boxes.
    pub fn column(n: usize) -> Self {
        YoungDiagram { rows: vec![1; n] }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<usize> {
        self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    /// Length of row `i` (1-based); zero past the last row.
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    /// Height of column `j` (1-based); zero past the last column.
    pub fn col_len(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.rows.partition_point(|&r| r >= j)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row_len(cell.row)
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    pub fn conjugate(&self) -> Self {
        let width = self.num_cols();
        let mut rows = Vec::with_capacity(width);
        for j in 1..=width {
            rows.push(self.col_len(j));
        }
        YoungDiagram { rows }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.conjugate()
    }

    /// Arm plus leg plus one.
    pub fn hook_length(&self, cell: Cell) -> Result<usize> {
        if !self.contains(cell) {
            return Err(Error::CellOutsideDiagram(cell));
        }
        let arm = self.row_len(cell.row) - cell.col;
        let leg = self.col_len(cell.col) - cell.row;
        Ok(arm + leg + 1)
    }

    /// Every cell paired with its hook length, row-major.
    pub fn hooks(&self) -> Vec<(Cell, usize)> {
        let cols = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &len) in self.rows.iter().enumerate() {
            for j in 1..=len {
                let hook = (len - j) + (cols.rows[j - 1] - (i + 1)) + 1;
                out.push((Cell::new(i + 1, j), hook));
            }
        }
        out
    }

    /// Positions whose addition yields a diagram, ascending by row.
    pub fn addable_cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.rows.len() + 1);
        for i in 0..=self.rows.len() {
            let len = self.rows.get(i).copied().unwrap_or(0);
            if i == 0 || self.rows[i - 1] > len {
                out.push(Cell::new(i + 1, len + 1));
            }
        }
        out
    }

    /// Corners: cells `(i, λ_i)` with `λ_i > λ_{i+1}`, ascending by row.
    pub fn removable_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (i, &len) in self.rows.iter().enumerate() {
            let next = self.rows.get(i + 1).copied().unwrap_or(0);
            if len > next {
                out.push(Cell::new(i + 1, len));
            }
        }
        out
    }

    pub fn is_addable(&self, cell: Cell) -> bool {
        cell.row >= 1
            && cell.col >= 1
            && cell.row <= self.rows.len() + 1
            && self.row_len(cell.row) + 1 == cell.col
            && (cell.row == 1 || self.row_len(cell.row - 1) >= cell.col)
    }

    pub fn is_removable(&self, cell: Cell) -> bool {
        self.contains(cell)
            && self.row_len(cell.row) == cell.col
            && self.row_len(cell.row + 1) < cell.col
    }

    pub fn with_cell(&self, cell: Cell) -> Result<Self> {
        if !self.is_addable(cell) {
            return Err(Error::NotAddable {
                diagram: self.clone(),
                cell,
            });
        }
        let mut rows = self.rows.clone();
        if cell.row > rows.len() {
            rows.push(1);
        } else {
            rows[cell.row - 1] += 1;
        }
        Ok(YoungDiagram { rows })
    }

    pub fn without_cell(&self, cell: Cell) -> Result<Self> {
        if !self.is_removable(cell) {
            return Err(Error::CellOutsideDiagram(cell));
        }
        let mut rows = self.rows.clone();
        rows[cell.row - 1] -= 1;
        if rows[cell.row - 1] == 0 {
            rows.pop();
        }
        Ok(YoungDiagram { rows })
    }

    /// Rebuilds a diagram from an arbitrary cell set, if the set is one.
    pub fn from_cells<'a, I>(cells: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a Cell>,
    {
        let mut per_row: Vec<Vec<usize>> = Vec::new();
        for cell in cells {
            if cell.row == 0 || cell.col == 0 {
                return None;
            }
            if per_row.len() < cell.row {
                per_row.resize(cell.row, Vec::new());
            }
            per_row[cell.row - 1].push(cell.col);
        }
        let mut rows = Vec::with_capacity(per_row.len());
        for mut cols in per_row {
            cols.sort_unstable();
            cols.dedup();
            if cols.iter().enumerate().any(|(k, &c)| c != k + 1) {
                return None;
            }
            rows.push(cols.len());
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        YoungDiagram::try_from(rows).ok()
    }

    /// Largest self-conjugate subdiagram, i.e. the intersection with the conjugate.
    pub fn base_subdiagram(&self) -> Self {
        let conj = self.conjugate();
        let rows: Vec<usize> = self
            .rows
            .iter()
            .zip(conj.rows.iter())
            .map(|(&a, &b)| a.min(b))
            .take_while(|&r| r > 0)
            .collect();
        YoungDiagram { rows }
    }

    /// Cells outside the base subdiagram, split into above/below the diagonal.
    pub fn asymmetric_cells(&self) -> AsymmetricCells {
        let base = self.base_subdiagram();
        let mut out = AsymmetricCells::default();
        for (i, &len) in self.rows.iter().enumerate() {
            let row = i + 1;
            for col in base.row_len(row) + 1..=len {
                let cell = Cell::new(row, col);
                assert!(
                    cell.row != cell.col,
                    "diagonal cell {cell} of {self} fell outside the base subdiagram"
                );
                if cell.is_above_diagonal() {
                    out.above.insert(cell);
                } else {
                    out.below.insert(cell);
                }
            }
        }
        out
    }

    /// Every row and every column carries at most one asymmetric cell.
    pub fn theorem_hypothesis_holds(&self) -> bool {
        let asym = self.asymmetric_cells();
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        let ok = asym
            .iter()
            .all(|c| rows.insert(c.row) && cols.insert(c.col));
        ok
    }

    /// Membership in the core subgraph: nothing above the diagonal outside the
    /// base, and at most one below-diagonal asymmetric cell per row.
    pub fn in_core_subgraph(&self) -> bool {
        let asym = self.asymmetric_cells();
        if !asym.above.is_empty() {
            return false;
        }
        let mut rows = BTreeSet::new();
        asym.below.iter().all(|c| rows.insert(c.row))
    }
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = Error;

    fn try_from(mut rows: Vec<usize>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        for i in 1..rows.len() {
            if rows[i] > rows[i - 1] {
                return Err(Error::NonMonotone { index: i + 1 });
            }
        }
        Ok(YoungDiagram { rows })
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;

    /// Comma-separated row lengths; whitespace around entries is ignored and
    /// the empty string is the empty diagram.
    fn from_str(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(YoungDiagram::empty());
        }
        let mut rows = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let value: i64 = part.parse().map_err(|e| Error::Parse {
                text: text.to_string(),
                reason: format!("{part:?}: {e}"),
            })?;
            rows.push(value);
        }
        YoungDiagram::from_rows(&rows)
    }
}

impl Serialize for YoungDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for YoungDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
