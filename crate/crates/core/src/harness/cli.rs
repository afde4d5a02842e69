//! The `fgc` command line.
//!
//! Every subcommand prints one JSON object per line on stdout, or a plain
//! table with `--pretty`. Exit status: 0 success, 1 infeasible selection or
//! invalid instance, 2 usage or parse error, 3 resource limit or internal
//! error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use super::{run_bench, run_solve, BenchOutcome, HarnessError, SolveOptions, Suite};
use crate::exact::exact_opt;
use crate::graph::{
    count_cuts_at_most_exhaustive, enumerate_cuts_below, min_cut, Capacities, CutSearch,
    EnumerationMode, ModePolicy,
};
use crate::io::{
    gen_random, parse_edge_list, read_instance, write_instance, GenParams, ParseError,
};
use crate::lp::{solve_relaxation_with, RelaxationConfig, RowFamily};
use crate::model::{is_feasible_with, selection_capacities, EdgeSelection};
use crate::rounding::RoundingConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fgc",
    version,
    about = "(p,q)-flexible graph connectivity solver"
)]
pub struct Cli {
    /// Human-readable table instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for parallel work.
    #[arg(long, global = true, env = "FGC_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Exhaustive,
    Contraction,
}

#[derive(Debug, clap::Args)]
struct SearchArgs {
    /// Cut enumeration: exhaustive up to 20 vertices, contraction above.
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Failure probability of contraction-mode enumeration.
    #[arg(long, default_value_t = 1e-9)]
    fail_prob: f64,
    /// Seed of contraction-mode enumeration.
    #[arg(long, default_value_t = 0)]
    cut_seed: u64,
}

impl SearchArgs {
    fn search(&self) -> CutSearch {
        let (fail_prob, seed) = (self.fail_prob, self.cut_seed);
        let policy = match self.mode {
            Mode::Auto => ModePolicy::Auto { fail_prob, seed },
            Mode::Exhaustive => ModePolicy::Exhaustive,
            Mode::Contraction => ModePolicy::Contraction { fail_prob, seed },
        };
        CutSearch {
            policy,
            ..CutSearch::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CapacityKind {
    /// Capacity 1 on every edge.
    Unit,
    /// `p+q` on safe and `p` on unsafe edges.
    Fgc,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Feasibility of an edge selection, with a violated cut when infeasible.
    Check {
        file: PathBuf,
        /// Comma-separated 0-based edge ids, or s<k> / u<k> for the k-th safe / unsafe edge.
        #[arg(long, allow_hyphen_values = true)]
        edges: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Solve the knapsack-cover relaxation.
    Lp {
        file: PathBuf,
        #[arg(long, default_value_t = crate::lp::DEFAULT_EPS)]
        eps: f64,
        /// Use only the plain cut-capacity rows.
        #[arg(long)]
        cut_covering: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Relaxation plus randomized rounding.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100.0)]
        scale_c: f64,
        #[arg(long, default_value_t = 64)]
        max_attempts: u32,
        /// Also compute the exact optimum (small instances only).
        #[arg(long)]
        with_exact: bool,
        /// Leave out wall-clock timings.
        #[arg(long)]
        no_timings: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Exact optimum by branch and bound (at most 22 edges, 12 vertices).
    Exact { file: PathBuf },
    /// Write a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        q: u32,
        #[arg(long, default_value_t = 0.5)]
        safe_fraction: f64,
        #[arg(long, default_value_t = 1.0)]
        cost_min: f64,
        #[arg(long, default_value_t = 10.0)]
        cost_max: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; `.json` selects the JSON format.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Solve every instance of a generated suite, one report line each.
    Bench {
        /// For example `n=4..8 m=12 p=1..2 q=0..2 seed=0..9`.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        with_exact: bool,
        /// Include wall-clock timings (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Count cuts of capacity at most alpha times the minimum cut.
    Counts {
        file: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = CapacityKind::Unit)]
        capacity: CapacityKind,
        #[command(flatten)]
        search: SearchArgs,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        let code = if e.category() == "invariant" {
            EXIT_INVALID
        } else {
            EXIT_PARSE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let code = match e.class() {
            "invalid" => EXIT_INVALID,
            _ => EXIT_LIMIT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn limit(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_LIMIT,
        message: e.to_string(),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_LIMIT;
        }
    };
    let mut lines = Vec::new();
    let result = pool.install(|| dispatch(&cli.command, &mut lines));
    for line in &lines {
        let text = if cli.pretty {
            pretty(line)
        } else {
            line.to_string()
        };
        let _ = writeln!(out, "{text}");
    }
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize to JSON")
}

fn dispatch(cmd: &Command, lines: &mut Vec<Value>) -> Result<i32, Failure> {
    match cmd {
        Command::Check {
            file,
            edges,
            search,
        } => {
            let inst = read_instance(file)?;
            let f = parse_edge_list(&inst, edges).map_err(|e| Failure {
                code: EXIT_PARSE,
                message: e.to_string(),
            })?;
            let verdict = is_feasible_with(&inst, &f, &search.search()).map_err(limit)?;
            lines.push(json!({
                "feasible": verdict.feasible,
                "witness": verdict.witness,
                "mode": verdict.mode,
                "selection": f,
                "cost": inst.cost_of(&f),
            }));
            Ok(if verdict.feasible {
                EXIT_OK
            } else {
                EXIT_INVALID
            })
        }
        Command::Lp {
            file,
            eps,
            cut_covering,
            search,
        } => {
            let inst = read_instance(file)?;
            let cfg = RelaxationConfig {
                eps: *eps,
                search: search.search(),
                family: if *cut_covering {
                    RowFamily::CutCovering
                } else {
                    RowFamily::KnapsackCover
                },
                ..RelaxationConfig::default()
            };
            let r = solve_relaxation_with(&inst, &cfg).map_err(HarnessError::from)?;
            lines.push(json!({
                "value": r.value,
                "iterations": r.iterations,
                "active_rows": r.active_rows.len(),
                "separation_mode": r.separation_mode,
                "integral": r.x.is_integral(),
                "x": r.x,
            }));
            Ok(EXIT_OK)
        }
        Command::Solve {
            file,
            seed,
            scale_c,
            max_attempts,
            with_exact,
            no_timings,
            search,
        } => {
            let inst = read_instance(file)?;
            let search = search.search();
            let opts = SolveOptions {
                relaxation: RelaxationConfig {
                    search,
                    ..RelaxationConfig::default()
                },
                rounding: RoundingConfig {
                    scale_constant: *scale_c,
                    max_attempts: *max_attempts,
                    seed: *seed,
                    ..RoundingConfig::default()
                },
                search,
                with_exact: *with_exact,
            };
            let mut report = run_solve(&inst, &opts)?;
            if *no_timings {
                report.timings = None;
            }
            lines.push(to_value(&report));
            Ok(EXIT_OK)
        }
        Command::Exact { file } => {
            let inst = read_instance(file)?;
            let r = exact_opt(&inst).map_err(HarnessError::from)?;
            lines.push(to_value(&r));
            Ok(EXIT_OK)
        }
        Command::Gen {
            n,
            m,
            p,
            q,
            safe_fraction,
            cost_min,
            cost_max,
            seed,
            output,
        } => {
            let params = GenParams {
                n: *n,
                m: *m,
                safe_fraction: *safe_fraction,
                cost_range: (*cost_min, *cost_max),
                p: *p,
                q: *q,
                seed: *seed,
            };
            let inst = gen_random(&params).map_err(HarnessError::from)?;
            write_instance(output, &inst)?;
            lines.push(json!({
                "path": output.display().to_string(),
                "n": inst.vertex_count(),
                "m": inst.edge_count(),
                "p": inst.p(),
                "q": inst.q(),
                "seed": seed,
            }));
            Ok(EXIT_OK)
        }
        Command::Bench {
            suite,
            seed,
            with_exact,
            timings,
        } => {
            let suite = Suite::parse(suite).map_err(|e| Failure {
                code: EXIT_PARSE,
                message: e.to_string(),
            })?;
            let opts = SolveOptions {
                rounding: RoundingConfig::with_seed(*seed),
                with_exact: *with_exact,
                ..SolveOptions::default()
            };
            let bench = run_bench(&suite, &opts, *timings);
            let failed = bench
                .iter()
                .any(|l| matches!(l.outcome, BenchOutcome::Failed { .. }));
            lines.extend(bench.iter().map(to_value));
            Ok(if failed { EXIT_INVALID } else { EXIT_OK })
        }
        Command::Counts {
            file,
            alpha,
            capacity,
            search,
        } => {
            let inst = read_instance(file)?;
            let g = inst.graph();
            let caps = match capacity {
                CapacityKind::Unit => {
                    Capacities::uniform(g.edge_count(), 1.0).expect("unit capacities")
                }
                CapacityKind::Fgc => {
                    selection_capacities(&inst, &EdgeSelection::all(inst.edge_count()))
                }
            };
            let cfg = search.search();
            let mode = cfg.mode_for(g.vertex_count());
            let (_, lambda) = min_cut(g, &caps).map_err(limit)?;
            let count = match mode {
                EnumerationMode::Exhaustive => {
                    count_cuts_at_most_exhaustive(g, &caps, *alpha, cfg.limits.exhaustive_limit)
                        .map_err(limit)?
                }
                EnumerationMode::Contraction { .. } => {
                    let bound = alpha * lambda;
                    let threshold = bound * (1.0 + 1e-8) + 1e-8;
                    enumerate_cuts_below(g, &caps, threshold, mode, &cfg.limits)
                        .map_err(limit)?
                        .len()
                }
            };
            let n = g.vertex_count() as f64;
            lines.push(json!({
                "n": g.vertex_count(),
                "lambda": lambda,
                "alpha": alpha,
                "count": count,
                "bound": n.powf(2.0 * alpha),
                "mode": mode.kind(),
            }));
            Ok(EXIT_OK)
        }
    }
}

/// `key  value` rows for a flat object, nested values as compact JSON.
fn pretty(v: &Value) -> String {
    let Value::Object(map) = v else {
        return v.to_string();
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    let mut rows: Vec<String> = Vec::new();
    for (k, v) in map {
        match v {
            Value::Object(inner) if k == "params" || k == "timings" => {
                for (ik, iv) in inner {
                    rows.push(format!(
                        "{:width$}  {}",
                        format!("{k}.{ik}"),
                        iv,
                        width = width
                    ));
                }
            }
            _ => rows.push(format!("{k:width$}  {v}")),
        }
    }
    rows.join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("fgc").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_PARSE);
        assert_eq!(call(&["check"]).0, EXIT_PARSE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn missing_file() {
        let (code, _, err) = call(&["lp", "/nonexistent/x.fgc"]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("x.fgc"));
    }

    #[test]
    fn pretty_table() {
        let t = pretty(&json!({"a": 1, "long_key": [1, 2], "timings": {"lp_ms": 2.0}}));
        assert_eq!(t, "a         1\nlong_key  [1,2]\ntimings.lp_ms  2.0\n");
    }
}
