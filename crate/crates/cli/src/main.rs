use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use youngdim::oracle::{
    geometry_report, max_dimension_diagrams, max_table, one_box_report, EXHAUSTIVE_BOUND,
};
use youngdim::plancherel::{branches, greedy_sequence_from, shake, shake_variant};
use youngdim::records::{
    load_records, ratio_rows, ratios_csv, write_ratio_rows, write_records, RunRecord, Source,
};
use youngdim::search::{astar, local_improve, sequence_improve, SearchMode, SearchOutcome};
use youngdim::transforms::{monitor_conjecture, verify_theorem, verify_theorem_hooks_exhaustive};
use youngdim::{dim_exact, log_dim, normalized_dim, YoungDiagram};

/// Exit status for a violated proven claim.
const EXIT_VIOLATION: u8 = 3;
/// Exit status for rejected input.
const EXIT_INVALID: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "youngdim",
    version,
    about = "Dimensions of Young diagrams and searches for large ones"
)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomized shaking.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Skip exact dimensions in records above this size.
    #[arg(long, global = true)]
    max_exact_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact, log-domain and normalized dimension of one diagram.
    Dim {
        /// Row lengths, e.g. "4,2,2".
        rows: YoungDiagram,
    },
    /// Greedy Plancherel growth, optionally shaken or branched.
    Seq(SeqArgs),
    /// Best-first search over the greedy path tree.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Improve a stored growth sequence by searching a few levels ahead.
    Improve(ImproveArgs),
    /// Exhaustive maximum-dimension tables.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Exhaustive checks of the symmetrization theorem and related claims.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Dimension ratios between two record files, as CSV.
    Ratios {
        #[arg(long)]
        old: PathBuf,
        #[arg(long)]
        new: PathBuf,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct SeqArgs {
    /// Final size.
    #[arg(long)]
    n: usize,
    /// First diagram of the sequence.
    #[arg(long, default_value = "1")]
    start: YoungDiagram,
    /// Only take cells that keep the diagram in the core subgraph.
    #[arg(long)]
    restrict_core: bool,
    /// Shake every diagram by this many cells and keep it if it gets larger.
    #[arg(long)]
    shake: Option<usize>,
    /// Draw each shaking move from the best M candidates (uses --seed).
    #[arg(long, value_name = "M", requires = "shake")]
    variant: Option<usize>,
    /// Run M greedy branches from shaken starts and keep the best per size.
    #[arg(long, value_name = "M", conflicts_with_all = ["variant", "restrict_core"])]
    branches: Option<usize>,
    /// Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    Astar {
        /// Target size.
        #[arg(long, required_unless_present = "depth")]
        n: Option<usize>,
        /// Search without the heuristic; exact over the core subgraph.
        #[arg(long)]
        uniform_cost: bool,
        #[arg(long, default_value = "1")]
        start: YoungDiagram,
        /// Search this many levels beyond the start instead of to --n.
        #[arg(long, conflicts_with = "n")]
        depth: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct ImproveArgs {
    /// Records of a growth sequence, sizes 1, 2, 3, ...
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long)]
    uniform_cost: bool,
    /// Where to write the `n,ratio,log_ratio,improved` CSV.
    #[arg(long)]
    ratios_out: Option<PathBuf>,
    /// Improved records; defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// All maximum-dimension diagrams of one size.
    Max {
        #[arg(long)]
        n: usize,
    },
    /// Maximum-dimension diagrams for every size up to --max-n, as JSON lines.
    Table {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Symmetrization never lowers the dimension, and raises it when both
    /// sides carry cells; also checks the closed-form hooks.
    Theorem {
        #[arg(long)]
        max_n: usize,
        /// Largest symmetric base for the hook check.
        #[arg(long, default_value_t = 16)]
        hooks_max_size: usize,
    },
    /// Balancing and symmetrizing every diagram; decreases are warnings.
    Conjecture {
        #[arg(long)]
        max_n: usize,
    },
    /// Shape of the exhaustive maximizers; exceptions are warnings.
    Geometry {
        #[arg(long)]
        max_n: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<youngdim::Error>().is_some() {
                ExitCode::from(EXIT_INVALID)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let cap = cli.max_exact_n;
    match cli.command {
        Command::Dim { rows } => {
            print_json(&DimReport::new(&rows)?)?;
        }
        Command::Seq(args) => {
            let records = sequence(&args, cli.seed, cap)?;
            with_output(args.out.as_deref(), |w| Ok(write_records(&records, w)?))?;
        }
        Command::Search(SearchCommand::Astar {
            n,
            uniform_cost,
            start,
            depth,
        }) => {
            let mode = if uniform_cost {
                SearchMode::UniformCost
            } else {
                SearchMode::MinEdge
            };
            let clock = Instant::now();
            let outcome = match depth {
                Some(depth) => local_improve(&start, depth, mode)?,
                None => astar(n.expect("clap requires --n or --depth"), mode, &start)?,
            };
            print_json(&SearchReport {
                wall_time_ms: clock.elapsed().as_secs_f64() * 1e3,
                outcome,
            })?;
        }
        Command::Improve(args) => improve(&args, cap)?,
        Command::Oracle(OracleCommand::Max { n }) => {
            print_json(&max_dimension_diagrams(n)?)?;
        }
        Command::Oracle(OracleCommand::Table { max_n, out }) => {
            let table = max_table(max_n, EXHAUSTIVE_BOUND)?;
            with_output(out.as_deref(), |w| {
                for entry in &table {
                    serde_json::to_writer(&mut *w, entry)?;
                    writeln!(w)?;
                }
                Ok(())
            })?;
        }
        Command::Verify(cmd) => return verify(cmd),
        Command::Ratios { old, new, out } => {
            let old = load_records(&old)?;
            let new = load_records(&new)?;
            match out {
                Some(path) => {
                    ratios_csv(&old, &new, &path)?;
                }
                None => write_ratio_rows(&ratio_rows(&old, &new)?, io::stdout().lock())?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct DimReport {
    rows: YoungDiagram,
    n: usize,
    dim: String,
    log_dim: f64,
    c: Option<f64>,
}

impl DimReport {
    fn new(d: &YoungDiagram) -> Result<Self> {
        Ok(DimReport {
            rows: d.clone(),
            n: d.size(),
            dim: dim_exact(d).to_string(),
            log_dim: log_dim(d),
            c: if d.is_empty() {
                None
            } else {
                Some(normalized_dim(d)?)
            },
        })
    }
}

#[derive(Serialize)]
struct SearchReport {
    #[serde(flatten)]
    outcome: SearchOutcome,
    wall_time_ms: f64,
}

fn sequence(args: &SeqArgs, seed: u64, cap: Option<usize>) -> Result<Vec<RunRecord>> {
    if let Some(m) = args.branches {
        let k = args.shake.unwrap_or(0);
        let best = branches(&args.start, m, k, args.n)?;
        return Ok(best
            .iter()
            .map(|d| RunRecord::new(d, Source::Branches, cap))
            .collect());
    }
    let greedy = greedy_sequence_from(&args.start, args.n, args.restrict_core)?;
    let Some(k) = args.shake else {
        return Ok(greedy
            .iter()
            .map(|d| RunRecord::new(d, Source::Greedy, cap))
            .collect());
    };
    let mut out = Vec::with_capacity(greedy.len());
    for (level, d) in greedy.iter().enumerate() {
        if d.size() < k {
            out.push(RunRecord::new(d, Source::Greedy, cap));
            continue;
        }
        let shaken = match args.variant {
            Some(m) => shake_variant(d, k, m, seed.wrapping_add(level as u64))?,
            None => shake(d, k)?,
        };
        let record = if dim_exact(&shaken) > dim_exact(d) {
            RunRecord::new(&shaken, Source::Shake, cap)
        } else {
            RunRecord::new(d, Source::Greedy, cap)
        };
        out.push(record);
    }
    Ok(out)
}

fn improve(args: &ImproveArgs, cap: Option<usize>) -> Result<()> {
    let records = load_records(&args.input)?;
    let seq: Vec<YoungDiagram> = records.iter().map(|r| r.rows.clone()).collect();
    let mode = if args.uniform_cost {
        SearchMode::UniformCost
    } else {
        SearchMode::MinEdge
    };
    let result = sequence_improve(&seq, args.depth, mode)?;
    for n in &result.skipped {
        eprintln!(
            "warning: skipped the search from size {n}: outside the core subgraph on both sides"
        );
    }
    let improved: Vec<RunRecord> = records
        .iter()
        .zip(&result.sequence)
        .map(|(old, new)| {
            if *new == old.rows {
                old.clone()
            } else {
                RunRecord::new(new, Source::Improve, cap)
            }
        })
        .collect();
    eprintln!(
        "improved {} of {} sizes (depth {})",
        result.improved_count(),
        seq.len(),
        args.depth
    );
    if let Some(path) = &args.ratios_out {
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_ratio_rows(&result.ratios, BufWriter::new(file))?;
    }
    with_output(args.out.as_deref(), |w| Ok(write_records(&improved, w)?))
}

#[derive(Serialize)]
struct TheoremSummary {
    checked: usize,
    strict: usize,
    equal: usize,
    violations: Vec<String>,
    hook_bases: usize,
    hook_pairs: usize,
    hook_failures: Vec<String>,
}

fn verify(cmd: VerifyCommand) -> Result<ExitCode> {
    match cmd {
        VerifyCommand::Theorem {
            max_n,
            hooks_max_size,
        } => {
            let sweep = verify_theorem(max_n);
            let hooks = verify_theorem_hooks_exhaustive(hooks_max_size);
            let summary = TheoremSummary {
                checked: sweep.checked,
                strict: sweep.strict,
                equal: sweep.equal,
                violations: sweep
                    .violations
                    .iter()
                    .map(|r| {
                        format!(
                            "{} -> {} ({} -> {})",
                            r.input, r.output, r.dim_input, r.dim_output
                        )
                    })
                    .collect(),
                hook_bases: hooks.bases,
                hook_pairs: hooks.pairs,
                hook_failures: hooks
                    .failures
                    .iter()
                    .map(|(b, u, d)| format!("{b} + {u} + {d}"))
                    .collect(),
            };
            print_json(&summary)?;
            if !summary.violations.is_empty() || !summary.hook_failures.is_empty() {
                eprintln!(
                    "theorem violated: {} transforms, {} hook checks",
                    summary.violations.len(),
                    summary.hook_failures.len()
                );
                return Ok(ExitCode::from(EXIT_VIOLATION));
            }
        }
        VerifyCommand::Conjecture { max_n } => {
            let sweep = monitor_conjecture(max_n);
            for d in &sweep.decreases {
                eprintln!(
                    "warning: {} -> {} lowers the dimension ({} -> {})",
                    d.input, d.output, d.dim_input, d.dim_output
                );
            }
            for s in &sweep.stuck {
                eprintln!("warning: {s}");
            }
            print_json(&sweep)?;
        }
        VerifyCommand::Geometry { max_n } => {
            let table = max_table(max_n, EXHAUSTIVE_BOUND)?;
            let geometry = geometry_report(&table);
            let one_box = one_box_report(&table);
            for f in &geometry.failures {
                eprintln!(
                    "warning: maximizer {} (n={}) lacks the expected shape",
                    f.diagram, f.n
                );
            }
            for e in &one_box.exceptions {
                eprintln!(
                    "warning: maximizer {} (n={}) has {} cells outside its base",
                    e.diagram, e.n, e.excess
                );
            }
            print_json(&serde_json::json!({ "geometry": geometry, "one_box": one_box }))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}
