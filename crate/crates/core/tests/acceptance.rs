//! Acceptance suite: one line per criterion, `PASS`, `WARN` or `FAIL`.
//!
//! Runs without the libtest harness so the lines always reach stdout. Exits
//! non-zero if any criterion fails; warnings do not fail the run.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use youngdim::dimension::{count_syt_enumeration, dim_recursive};
use youngdim::numeric::{factorial, ln_biguint};
use youngdim::oracle::{
    geometry_report, max_dimension_diagrams, max_table, one_box_report, partitions,
    EXHAUSTIVE_BOUND,
};
use youngdim::plancherel::{
    greedy_sequence, greedy_sequence_from, path_cost, transitions, GrowthPath,
};
use youngdim::search::{astar, spanning_report, SearchMode, SearchOutcome, SpanningReport};
use youngdim::transforms::{
    monitor_conjecture, symmetrize, verify_theorem, verify_theorem_hooks_exhaustive,
};
use youngdim::{dim_exact, YoungDiagram};

/// Pinned tolerance for float path costs against `ln n! − ln dim`.
const PATH_TOL: f64 = 1e-8;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Warn,
    Fail,
}

struct Line {
    id: u8,
    verdict: Verdict,
    detail: String,
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn yd(rows: &[usize]) -> YoungDiagram {
    YoungDiagram::from_parts(rows)
}

fn criterion_1() -> Line {
    let mut detail = String::new();
    let mut ok = true;
    let mut checked = 0usize;
    for n in 0..=20 {
        let all: Vec<YoungDiagram> = partitions(n).collect();
        let bad = all
            .par_iter()
            .filter(|d| dim_exact(d) != dim_recursive(d).unwrap())
            .count();
        checked += all.len();
        if bad > 0 {
            ok = false;
            let _ = write!(detail, " recursion mismatch at n={n} ({bad});");
        }
        if n <= 10 {
            for d in &all {
                if dim_exact(d) != count_syt_enumeration(d).unwrap() {
                    ok = false;
                    let _ = write!(detail, " enumeration mismatch {d};");
                }
            }
        }
        if n <= 15 {
            let total: BigUint = all.iter().map(|d| dim_exact(d).pow(2)).sum();
            if total != factorial(n) {
                ok = false;
                let _ = write!(detail, " sum of squares != {n}!;");
            }
        }
    }
    Line {
        id: 1,
        verdict: verdict(ok),
        detail: format!("hook formula vs recursion on {checked} partitions (n<=20), vs enumeration (n<=10), sum dim^2 = n! (n<=15), exact;{detail}"),
    }
}

/// A uniformly random removal order, read backwards as a growth path.
fn random_path_to(target: &YoungDiagram, rng: &mut ChaCha8Rng) -> GrowthPath {
    let mut cur = target.clone();
    let mut cells = Vec::with_capacity(target.size());
    while !cur.is_empty() {
        let corner = *cur.removable_cells().choose(rng).unwrap();
        cur = cur.without_cell(corner).unwrap();
        cells.push(corner);
    }
    cells.reverse();
    GrowthPath::from_empty(cells)
}

fn criterion_2() -> Line {
    let all: Vec<YoungDiagram> = (0..=30).flat_map(partitions).collect();
    let not_one = all
        .par_iter()
        .filter(|d| {
            transitions(d)
                .into_iter()
                .fold(BigRational::zero(), |acc, e| acc + e.probability)
                != BigRational::one()
        })
        .count();

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_spread = 0f64;
    let mut worst_gap = 0f64;
    for _ in 0..100 {
        let n = 1 + (rand::Rng::random_range(&mut rng, 0..40usize));
        let mut d = YoungDiagram::empty();
        for _ in 0..n {
            d = d
                .with_cell(*d.addable_cells().choose(&mut rng).unwrap())
                .unwrap();
        }
        let expected = ln_biguint(&factorial(n)) - ln_biguint(&dim_exact(&d));
        let costs: Vec<f64> = (0..50)
            .map(|_| path_cost(&random_path_to(&d, &mut rng)).unwrap())
            .collect();
        let lo = costs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = costs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        worst_spread = worst_spread.max(hi - lo);
        worst_gap = worst_gap.max(
            costs
                .iter()
                .map(|c| (c - expected).abs())
                .fold(0.0, f64::max),
        );
    }
    let ok = not_one == 0 && worst_spread <= PATH_TOL && worst_gap <= PATH_TOL;
    Line {
        id: 2,
        verdict: verdict(ok),
        detail: format!(
            "{} diagrams (n<=30) with probabilities summing to 1 exactly, {not_one} failures; 100 diagrams x 50 paths: max spread {worst_spread:.2e}, max |cost - (ln n! - ln dim)| {worst_gap:.2e} (tol {PATH_TOL:.0e})",
            all.len()
        ),
    }
}

fn criterion_3() -> Line {
    let sweep = verify_theorem(26);
    let hooks = verify_theorem_hooks_exhaustive(16);
    let ok = sweep.violations.is_empty()
        && sweep.strict > 0
        && hooks.failures.is_empty()
        && hooks.pairs > 0;
    let mut detail = format!(
        "{} two-sided diagrams (n<=26) strictly increased, {} violations; {} one-sided unchanged; closed-form hooks on {} pairs over {} symmetric bases (size<=16), {} failures",
        sweep.strict,
        sweep.violations.len(),
        sweep.equal,
        hooks.pairs,
        hooks.bases,
        hooks.failures.len()
    );
    for v in sweep.violations.iter().take(5) {
        let _ = write!(
            detail,
            "; {} -> {} ({} -> {})",
            v.input, v.output, v.dim_input, v.dim_output
        );
    }
    Line {
        id: 3,
        verdict: verdict(ok),
        detail,
    }
}

fn criterion_4() -> Line {
    let r = symmetrize(&yd(&[4, 2, 2])).unwrap();
    let ok = r.output == yd(&[4, 3, 1])
        && r.dim_input == BigUint::from(56u32)
        && r.dim_output == BigUint::from(70u32);
    Line {
        id: 4,
        verdict: verdict(ok),
        detail: format!(
            "{} -> {}, dims {} -> {}",
            r.input, r.output, r.dim_input, r.dim_output
        ),
    }
}

fn criterion_5() -> Line {
    let best = max_dimension_diagrams(15).unwrap();
    let via_row = greedy_sequence(15, false).unwrap().pop().unwrap();
    let via_col = greedy_sequence_from(&yd(&[1, 1]), 15, false)
        .unwrap()
        .pop()
        .unwrap();
    let mirrored = via_row.conjugate();
    let dims = [
        dim_exact(&via_row),
        dim_exact(&via_col),
        dim_exact(&mirrored),
    ];
    let ok = dims.iter().all(|d| *d < best.dim) && dims[0] == dims[2];
    Line {
        id: 5,
        verdict: verdict(ok),
        detail: format!(
            "greedy at 15 from [2]: {via_row}, from [1,1]: {via_col}, mirrored: {mirrored} (dims {}, {}, {}) < oracle max {} at {:?}",
            dims[0],
            dims[1],
            dims[2],
            best.dim,
            best.maximizers.iter().map(|d| d.to_string()).collect::<Vec<_>>()
        ),
    }
}

fn criterion_6() -> Line {
    let table = max_table(40, EXHAUSTIVE_BOUND).unwrap();
    let geo = geometry_report(&table);
    let one = one_box_report(&table);
    let mut detail = format!(
        "geometry: {} maximizers (n<=40), {} failures; one-box |lambda| - |base| <= 1: {} exceptions",
        geo.checked,
        geo.failures.len(),
        one.exceptions.len()
    );
    for f in &geo.failures {
        let _ = write!(detail, "; geometry n={} {}", f.n, f.diagram);
    }
    for e in &one.exceptions {
        let _ = write!(detail, "; n={} {} excess {}", e.n, e.diagram, e.excess);
    }
    let clean = geo.failures.is_empty() && one.exceptions.is_empty();
    Line {
        id: 6,
        verdict: if clean { Verdict::Pass } else { Verdict::Warn },
        detail,
    }
}

#[derive(Serialize)]
struct ExactnessRun {
    outcomes: Vec<SearchOutcome>,
    maxima: Vec<String>,
    spanning: SpanningReport,
}

fn exactness_run() -> ExactnessRun {
    let outcomes: Vec<SearchOutcome> = (1..=22usize)
        .into_par_iter()
        .map(|n| astar(n, SearchMode::UniformCost, &yd(&[1])).unwrap())
        .collect();
    let maxima: Vec<String> = (1..=22usize)
        .into_par_iter()
        .map(|n| {
            let all: Vec<YoungDiagram> = partitions(n).filter(|d| d.in_core_subgraph()).collect();
            all.par_iter().map(dim_exact).max().unwrap().to_string()
        })
        .collect();
    ExactnessRun {
        outcomes,
        maxima,
        spanning: spanning_report(18),
    }
}

fn criterion_7(run: &ExactnessRun) -> Line {
    let mismatches: Vec<usize> = run
        .outcomes
        .iter()
        .zip(&run.maxima)
        .enumerate()
        .filter(|(_, (o, m))| o.dim.to_string() != **m || !o.diagram.in_core_subgraph())
        .map(|(i, _)| i + 1)
        .collect();
    let span = &run.spanning;
    let ok = mismatches.is_empty() && span.holds();
    Line {
        id: 7,
        verdict: verdict(ok),
        detail: format!(
            "uniform-cost vs core-subgraph oracle max for n<=22: {} mismatches {mismatches:?}; spanning to 18: {} nodes, {} duplicates, {} missing ({} dead ends logged)",
            mismatches.len(),
            span.nodes_per_level.iter().sum::<usize>(),
            span.duplicates.len(),
            span.missing.len(),
            span.dead_ends.len()
        ),
    }
}

#[derive(Serialize)]
struct HeuristicRun {
    heuristic: Vec<SearchOutcome>,
    greedy: Vec<String>,
    heuristic_22: SearchOutcome,
    uniform_22: SearchOutcome,
}

fn heuristic_run() -> HeuristicRun {
    let sizes = [15usize, 20, 25, 30];
    let heuristic = sizes
        .par_iter()
        .map(|&n| astar(n, SearchMode::MinEdge, &yd(&[1])).unwrap())
        .collect();
    let greedy = sizes
        .par_iter()
        .map(|&n| dim_exact(&greedy_sequence(n, true).unwrap().pop().unwrap()).to_string())
        .collect();
    let (heuristic_22, uniform_22) = rayon::join(
        || astar(22, SearchMode::MinEdge, &yd(&[1])).unwrap(),
        || astar(22, SearchMode::UniformCost, &yd(&[1])).unwrap(),
    );
    HeuristicRun {
        heuristic,
        greedy,
        heuristic_22,
        uniform_22,
    }
}

fn criterion_8(run: &HeuristicRun) -> Line {
    let mut ok = true;
    let mut detail = String::new();
    for (out, greedy) in run.heuristic.iter().zip(&run.greedy) {
        let g: BigUint = greedy.parse().unwrap();
        let fine = out.dim >= g;
        ok &= fine;
        let _ = write!(
            detail,
            "n={}: {} >= {greedy} {}; ",
            out.diagram.size(),
            out.dim,
            if fine { "ok" } else { "NO" }
        );
    }
    let fewer = run.heuristic_22.nodes_expanded < run.uniform_22.nodes_expanded;
    ok &= fewer;
    let _ = write!(
        detail,
        "n=22 expansions: heuristic {} vs uniform-cost {}",
        run.heuristic_22.nodes_expanded, run.uniform_22.nodes_expanded
    );
    Line {
        id: 8,
        verdict: verdict(ok),
        detail,
    }
}

fn criterion_9() -> Line {
    let sweep = monitor_conjecture(22);
    let mut detail = format!(
        "{} diagrams (n<=22): {} increased, {} unchanged, {} decreased, {} did not converge",
        sweep.checked,
        sweep.increased,
        sweep.unchanged,
        sweep.decreases.len(),
        sweep.stuck.len()
    );
    for d in sweep.decreases.iter().take(5) {
        let _ = write!(detail, "; {} -> {}", d.input, d.output);
    }
    for s in sweep.stuck.iter().take(5) {
        let _ = write!(detail, "; {s}");
    }
    let clean = sweep.decreases.is_empty() && sweep.stuck.is_empty();
    Line {
        id: 9,
        verdict: if clean { Verdict::Pass } else { Verdict::Warn },
        detail,
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut lines = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
    ];

    let (exact_1, heur_1) = in_pool(1, || (exactness_run(), heuristic_run()));
    let (exact_8, heur_8) = in_pool(8, || (exactness_run(), heuristic_run()));
    lines.push(criterion_7(&exact_8));
    lines.push(criterion_8(&heur_8));
    lines.push(criterion_9());

    let bytes = |e: &ExactnessRun, h: &HeuristicRun| {
        let mut out = serde_json::to_vec(e).unwrap();
        out.extend(serde_json::to_vec(h).unwrap());
        out
    };
    let (one, eight) = (bytes(&exact_1, &heur_1), bytes(&exact_8, &heur_8));
    lines.push(Line {
        id: 10,
        verdict: verdict(one == eight),
        detail: format!(
            "criteria 7-8 serialized output at 1 and 8 threads: {} vs {} bytes, identical: {}",
            one.len(),
            eight.len(),
            one == eight
        ),
    });

    let mut failed = 0;
    for line in &lines {
        let tag = match line.verdict {
            Verdict::Pass => "PASS",
            Verdict::Warn => "WARN",
            Verdict::Fail => {
                failed += 1;
                "FAIL"
            }
        };
        println!("criterion {:>2}: {tag}  {}", line.id, line.detail);
    }
    println!(
        "acceptance: {} criteria, {failed} failed, {:.1?}",
        lines.len(),
        started.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
