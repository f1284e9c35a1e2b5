use youngdim::oracle::partitions;
use youngdim::plancherel::greedy_sequence_from;
use youngdim::search::{
    astar, local_improve, sequence_improve, tree_children, SearchMode, TreeNode,
};
use youngdim::{dim_exact, YoungDiagram};

fn yd(rows: &[usize]) -> YoungDiagram {
    YoungDiagram::from_parts(rows)
}

/// Every core diagram reachable from `start` by adding `depth` cells while
/// staying in the core subgraph.
fn core_extensions(start: &YoungDiagram, depth: usize) -> Vec<YoungDiagram> {
    let mut level = vec![start.clone()];
    for _ in 0..depth {
        let mut next: Vec<YoungDiagram> = level
            .iter()
            .flat_map(|d| {
                d.addable_cells()
                    .into_iter()
                    .map(move |c| d.with_cell(c).unwrap())
            })
            .filter(|d| d.in_core_subgraph())
            .collect();
        next.sort();
        next.dedup();
        level = next;
    }
    level
}

#[test]
fn uniform_cost_local_improvement_is_exact() {
    let start = yd(&[2, 1]);
    let best = core_extensions(&start, 3)
        .iter()
        .map(dim_exact)
        .max()
        .unwrap();
    let out = local_improve(&start, 3, SearchMode::UniformCost).unwrap();
    assert_eq!(out.diagram.size(), 6);
    assert_eq!(out.dim, best);
    let greedy = greedy_sequence_from(&start, 6, true)
        .unwrap()
        .pop()
        .unwrap();
    let heuristic = local_improve(&start, 3, SearchMode::MinEdge).unwrap();
    assert!(heuristic.dim >= dim_exact(&greedy));
}

#[test]
fn one_level_is_the_best_core_child() {
    let start = yd(&[3, 2, 1]);
    let out = local_improve(&start, 1, SearchMode::MinEdge).unwrap();
    let best = tree_children(&TreeNode::root(start.clone()))
        .iter()
        .map(|c| dim_exact(&c.diagram))
        .max()
        .unwrap();
    assert_eq!(out.dim, best);
}

#[test]
fn heuristic_mode_keeps_up_with_core_greedy() {
    for n in [15, 20, 25, 30] {
        let greedy = greedy_sequence_from(&yd(&[1]), n, true)
            .unwrap()
            .pop()
            .unwrap();
        let out = astar(n, SearchMode::MinEdge, &yd(&[1])).unwrap();
        assert!(out.dim >= dim_exact(&greedy), "n = {n}");
    }
}

#[test]
fn heuristic_mode_can_lose_to_core_greedy() {
    // the heuristic overestimates along the greedy path, so a worse level-23
    // node leaves the frontier before the greedy one is generated
    let greedy = greedy_sequence_from(&yd(&[1]), 23, true)
        .unwrap()
        .pop()
        .unwrap();
    assert_eq!(greedy, yd(&[7, 5, 4, 3, 2, 1, 1]));
    let out = astar(23, SearchMode::MinEdge, &yd(&[1])).unwrap();
    assert_eq!(out.diagram, yd(&[6, 5, 4, 3, 2, 1, 1, 1]));
    assert!(out.dim < dim_exact(&greedy));
    let exact = astar(23, SearchMode::UniformCost, &yd(&[1])).unwrap();
    assert!(exact.dim >= dim_exact(&greedy));
}

#[test]
fn uniform_cost_matches_exhaustive_maximum() {
    for n in 1..=16 {
        let best = partitions(n)
            .filter(|d| d.in_core_subgraph())
            .map(|d| dim_exact(&d))
            .max()
            .unwrap();
        let out = astar(n, SearchMode::UniformCost, &yd(&[1])).unwrap();
        assert_eq!(out.dim, best, "n = {n}");
        assert!(out.diagram.in_core_subgraph());
    }
}

#[test]
fn improving_a_greedy_sequence() {
    let seq = greedy_sequence_from(&yd(&[1]), 20, false).unwrap();
    let out = sequence_improve(&seq, 3, SearchMode::MinEdge).unwrap();
    assert_eq!(out.sequence.len(), seq.len());
    assert_eq!(out.ratios.len(), seq.len());
    for (i, (old, new)) in seq.iter().zip(&out.sequence).enumerate() {
        assert_eq!(new.size(), i + 1);
        assert!(dim_exact(new) >= dim_exact(old));
    }
    for r in out.ratios.iter().filter(|r| !r.improved) {
        assert_eq!(r.ratio, 1.0);
    }
    assert!(out.ratios[..3].iter().all(|r| !r.improved));
    // the greedy diagram at 15 is beaten by [5,4,3,2,1]
    assert!(out.ratios[14].improved);
    assert_eq!(out.sequence[14], yd(&[5, 4, 3, 2, 1]));
}

#[test]
fn depth_past_the_end_leaves_the_sequence_alone() {
    let seq = greedy_sequence_from(&yd(&[1]), 4, false).unwrap();
    let out = sequence_improve(&seq, 10, SearchMode::UniformCost).unwrap();
    assert_eq!(out.sequence, seq);
    assert_eq!(out.improved_count(), 0);
}
