//! Best-first search for large-dimension diagrams in the core subgraph.
//!
//! The search space is a spanning tree of the core subgraph: among the
//! addable cells that keep a node inside the core subgraph, ranked by the
//! dimension of the result, the child through the r-th cell may never add any
//! of the cells ranked before it. Every core diagram is then reached by
//! exactly one path, namely the one that always takes the best cell still
//! inside the target. Edge weights are `−ln p` for the Plancherel transition
//! probability `p`, so the cost of a path from `[1]` to `λ` is
//! `ln n! − ln dim λ` and a shortest path to level `n` ends at a maximum.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{Cell, YoungDiagram};
use crate::dimension::{dim_exact, log_dim, normalized_from_log};
use crate::error::{Error, Result};
use crate::numeric::ln_factorial;
use crate::oracle::partitions;
use crate::plancherel::{by_probability_desc, transition_prob, TransitionEdge};
use crate::records::{exact_ratio_row, RatioRow};

/// Frontier entries whose `f` lies within this band of the first target-level
/// pop are compared by exact dimension before the search returns.
pub const F_TIE_BAND: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// `h = P · (n − m)` with `P` the cheapest edge out of the node.
    #[default]
    MinEdge,
    /// `h = 0`; the result is a maximum over the core subgraph.
    UniformCost,
}

/// A vertex of the greedy path tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeNode {
    pub diagram: YoungDiagram,
    /// Cells that no descendant may add.
    pub forbidden: BTreeSet<Cell>,
    /// Path cost from the search root.
    pub g: f64,
    /// Edges from the search root.
    pub depth: usize,
}

impl TreeNode {
    pub fn root(diagram: YoungDiagram) -> Self {
        TreeNode {
            diagram,
            forbidden: BTreeSet::new(),
            g: 0.0,
            depth: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FrontierEntry {
    pub node: TreeNode,
    pub h: f64,
    pub f: f64,
}

impl FrontierEntry {
    fn key_cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap pops the greatest entry: smallest f, then largest g,
        // then the lexicographically smallest diagram.
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| self.node.g.total_cmp(&other.node.g))
            .then_with(|| other.node.diagram.cmp(&self.node.diagram))
    }
}

impl PartialEq for FrontierEntry {
    fn eq(&self, other: &Self) -> bool {
        self.key_cmp(other) == Ordering::Equal
    }
}

impl Eq for FrontierEntry {}

impl PartialOrd for FrontierEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FrontierEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key_cmp(other)
    }
}

/// `−ln p(λ ↗ λ ∪ cell)`.
pub fn edge_weight(diagram: &YoungDiagram, cell: Cell) -> Result<f64> {
    Ok(transition_prob(diagram, cell)?.weight)
}

/// Admissible edges out of `node`, best first.
fn candidates(node: &TreeNode) -> Vec<TransitionEdge> {
    let mut edges: Vec<TransitionEdge> = node
        .diagram
        .addable_cells()
        .into_iter()
        .filter(|c| !node.forbidden.contains(c))
        .filter(|&c| {
            node.diagram
                .with_cell(c)
                .expect("addable")
                .in_core_subgraph()
        })
        .map(|c| transition_prob(&node.diagram, c).expect("addable"))
        .collect();
    // at a fixed parent, larger probability means larger child dimension
    edges.sort_by(by_probability_desc);
    edges
}

/// Children in rank order; child `r` also forbids the cells of children
/// `0..r`.
pub fn tree_children(node: &TreeNode) -> Vec<TreeNode> {
    let edges = candidates(node);
    if edges.is_empty() {
        log::debug!("dead end in the greedy path tree at {}", node.diagram);
    }
    let mut forbidden = node.forbidden.clone();
    let mut out = Vec::with_capacity(edges.len());
    for edge in edges {
        out.push(TreeNode {
            diagram: node.diagram.with_cell(edge.cell).expect("addable"),
            forbidden: forbidden.clone(),
            g: node.g + edge.weight,
            depth: node.depth + 1,
        });
        forbidden.insert(edge.cell);
    }
    out
}

/// `P · (n_target − m)`, where `P` is the smallest weight of an edge to a
/// tree child; zero at the target level or at a dead end.
pub fn heuristic_min_edge(node: &TreeNode, n_target: usize) -> f64 {
    let m = node.diagram.size();
    if m >= n_target {
        return 0.0;
    }
    candidates(node)
        .iter()
        .map(|e| e.weight)
        .min_by(f64::total_cmp)
        .map_or(0.0, |p| p * (n_target - m) as f64)
}

fn heuristic(mode: SearchMode, node: &TreeNode, n_target: usize) -> f64 {
    match mode {
        SearchMode::MinEdge => heuristic_min_edge(node, n_target),
        SearchMode::UniformCost => 0.0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub diagram: YoungDiagram,
    #[serde(with = "crate::records::decimal")]
    pub dim: BigUint,
    pub log_dim: f64,
    pub normalized: f64,
    /// `g + h` of the returned node, without the constant scale factor.
    pub f: f64,
    /// `ln √((n−1)!)`, the logarithm of the omitted scale factor.
    pub ln_f_scale: f64,
    pub nodes_expanded: usize,
    pub frontier_peak: usize,
    /// Whether the search ran on the conjugate of the start diagram.
    pub conjugated: bool,
}

/// Best-first search over the greedy path tree rooted at `start`, stopping at
/// the first node of size `n_target` taken off the frontier.
///
/// A start outside the core subgraph is replaced by its conjugate and the
/// result is conjugated back.
pub fn astar(n_target: usize, mode: SearchMode, start: &YoungDiagram) -> Result<SearchOutcome> {
    if n_target < start.size() {
        return Err(Error::InvalidTarget {
            target: n_target,
            size: start.size(),
        });
    }
    let (root, conjugated) = if start.in_core_subgraph() {
        (start.clone(), false)
    } else {
        let conj = start.conjugate();
        if !conj.in_core_subgraph() {
            return Err(Error::OutsideCoreSubgraph(start.clone()));
        }
        (conj, true)
    };

    let root = TreeNode::root(root);
    let h = heuristic(mode, &root, n_target);
    let mut frontier = BinaryHeap::new();
    frontier.push(FrontierEntry {
        f: h,
        h,
        node: root,
    });
    let mut closed: HashSet<YoungDiagram> = HashSet::new();
    let mut nodes_expanded = 0;
    let mut frontier_peak = 1;

    let found = loop {
        let Some(entry) = frontier.pop() else {
            return Err(Error::EmptySearchSpace);
        };
        let fresh = closed.insert(entry.node.diagram.clone());
        debug_assert!(fresh, "{} reached twice", entry.node.diagram);
        if !fresh {
            continue;
        }
        if entry.node.diagram.size() == n_target {
            break entry;
        }
        nodes_expanded += 1;
        for child in tree_children(&entry.node) {
            let h = heuristic(mode, &child, n_target);
            frontier.push(FrontierEntry {
                f: child.g + h,
                h,
                node: child,
            });
        }
        frontier_peak = frontier_peak.max(frontier.len());
    };

    // near-ties in f are settled by exact dimension
    let mut best_dim = dim_exact(&found.node.diagram);
    let mut best = found;
    let band = best.f + F_TIE_BAND;
    while frontier.peek().is_some_and(|e| e.f <= band) {
        let entry = frontier.pop().expect("peeked");
        if entry.node.diagram.size() != n_target {
            continue;
        }
        let d = dim_exact(&entry.node.diagram);
        if d > best_dim {
            best_dim = d;
            best = entry;
        }
    }

    let diagram = if conjugated {
        best.node.diagram.conjugate()
    } else {
        best.node.diagram
    };
    let ld = log_dim(&diagram);
    Ok(SearchOutcome {
        normalized: if n_target == 0 {
            0.0
        } else {
            normalized_from_log(n_target, ld)
        },
        log_dim: ld,
        dim: best_dim,
        diagram,
        f: best.f,
        ln_f_scale: 0.5 * ln_factorial(n_target.saturating_sub(1)),
        nodes_expanded,
        frontier_peak,
        conjugated,
    })
}

/// Searches `depth` levels beyond `diagram`.
pub fn local_improve(
    diagram: &YoungDiagram,
    depth: usize,
    mode: SearchMode,
) -> Result<SearchOutcome> {
    if depth == 0 {
        return Err(Error::InvalidTarget {
            target: diagram.size(),
            size: diagram.size(),
        });
    }
    astar(diagram.size() + depth, mode, diagram)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceImprovement {
    pub sequence: Vec<YoungDiagram>,
    /// One row per size, `dim(new) / dim(old)`.
    pub ratios: Vec<RatioRow>,
    /// Sizes whose search start lay outside the core subgraph on both sides.
    pub skipped: Vec<usize>,
}

impl SequenceImprovement {
    pub fn improved_count(&self) -> usize {
        self.ratios.iter().filter(|r| r.improved).count()
    }
}

/// For each `m`, searches `depth` levels from `seq[m]` and keeps the result
/// at size `m + depth` if its dimension beats the original entry.
///
/// `seq[i]` must have size `i + 1`.
pub fn sequence_improve(
    seq: &[YoungDiagram],
    depth: usize,
    mode: SearchMode,
) -> Result<SequenceImprovement> {
    for (index, d) in seq.iter().enumerate() {
        if d.size() != index + 1 {
            return Err(Error::NotAGrowthSequence {
                index,
                size: d.size(),
                expected: index + 1,
            });
        }
    }
    if depth == 0 {
        return Err(Error::InvalidTarget { target: 0, size: 0 });
    }
    let starts = seq.len().saturating_sub(depth);
    let found: Vec<Option<SearchOutcome>> = seq[..starts]
        .par_iter()
        .map(|d| match local_improve(d, depth, mode) {
            Ok(out) => Ok(Some(out)),
            Err(Error::OutsideCoreSubgraph(d)) => {
                log::warn!("skipping {d}: neither it nor its conjugate is in the core subgraph");
                Ok(None)
            }
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;

    let old_dims: Vec<BigUint> = seq.par_iter().map(dim_exact).collect();
    let mut sequence = seq.to_vec();
    let mut new_dims = old_dims.clone();
    let mut skipped = Vec::new();
    for (m, outcome) in found.into_iter().enumerate() {
        let target = m + depth;
        match outcome {
            Some(out) if out.dim > old_dims[target] => {
                sequence[target] = out.diagram;
                new_dims[target] = out.dim;
            }
            Some(_) => {}
            None => skipped.push(m + 1),
        }
    }
    let ratios = old_dims
        .iter()
        .zip(&new_dims)
        .enumerate()
        .map(|(i, (old, new))| exact_ratio_row(i + 1, old, new))
        .collect();
    Ok(SequenceImprovement {
        sequence,
        ratios,
        skipped,
    })
}

/// How the greedy path tree covers the core subgraph level by level.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningReport {
    pub max_n: usize,
    /// Tree nodes per level, index `n - 1`.
    pub nodes_per_level: Vec<usize>,
    /// Core diagrams reached more than once.
    pub duplicates: Vec<YoungDiagram>,
    /// Core diagrams never reached.
    pub missing: Vec<YoungDiagram>,
    /// Tree nodes below `max_n` without children.
    pub dead_ends: Vec<YoungDiagram>,
}

impl SpanningReport {
    pub fn holds(&self) -> bool {
        self.duplicates.is_empty() && self.missing.is_empty()
    }
}

/// Expands the whole tree from `[1]` to size `max_n` and compares the reached
/// diagrams with every core diagram from the partition enumeration.
pub fn spanning_report(max_n: usize) -> SpanningReport {
    let mut report = SpanningReport {
        max_n,
        ..Default::default()
    };
    if max_n == 0 {
        return report;
    }
    let mut seen: BTreeMap<YoungDiagram, usize> = BTreeMap::new();
    let mut level = vec![TreeNode::root(YoungDiagram::row(1))];
    for n in 1..=max_n {
        report.nodes_per_level.push(level.len());
        for node in &level {
            *seen.entry(node.diagram.clone()).or_default() += 1;
        }
        if n == max_n {
            break;
        }
        let expanded: Vec<Vec<TreeNode>> = level.par_iter().map(tree_children).collect();
        for (node, children) in level.iter().zip(&expanded) {
            if children.is_empty() {
                report.dead_ends.push(node.diagram.clone());
            }
        }
        level = expanded.into_iter().flatten().collect();
    }
    report.duplicates = seen
        .iter()
        .filter(|(_, &k)| k > 1)
        .map(|(d, _)| d.clone())
        .collect();
    report.missing = (1..=max_n)
        .flat_map(partitions)
        .filter(|d| d.in_core_subgraph() && !seen.contains_key(d))
        .collect();
    report
}

/// The tree path from `[1]` to a core diagram, replaying at each node the
/// best-ranked cell that still lies inside `target`.
pub fn tree_path(target: &YoungDiagram) -> Result<Vec<TreeNode>> {
    if target.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    if !target.in_core_subgraph() {
        return Err(Error::OutsideCoreSubgraph(target.clone()));
    }
    let mut node = TreeNode::root(YoungDiagram::row(1));
    let mut path = vec![node.clone()];
    while node.diagram != *target {
        node = tree_children(&node)
            .into_iter()
            .find(|c| c.diagram.cells().all(|x| target.contains(x)))
            .ok_or_else(|| Error::NoCoreChild(node.diagram.clone()))?;
        path.push(node.clone());
    }
    Ok(path)
}
