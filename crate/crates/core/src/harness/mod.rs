//! Solve reports and benchmark suites.

pub mod cli;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{exact_opt, ExactError};
use crate::graph::{CutSearch, GraphError, ModeKind};
use crate::io::{gen_random, GenError, GenParams};
use crate::lp::{solve_relaxation_with, LpError, RelaxationConfig};
use crate::model::{EdgeSelection, FgcInstance, InstanceError};
use crate::rounding::{solve_from_relaxation, RoundingConfig, RoundingError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Rounding(#[from] RoundingError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Generate(#[from] GenError),
    #[error("bad suite: {0}")]
    Suite(String),
}

impl HarnessError {
    /// `invalid` for bad instances, `limit` for size and iteration limits,
    /// `internal` otherwise.
    pub fn class(&self) -> &'static str {
        fn instance(e: &InstanceError) -> &'static str {
            match e {
                InstanceError::Graph(GraphError::TooLargeForExhaustive { .. }) => "limit",
                _ => "invalid",
            }
        }
        match self {
            Self::Lp(LpError::Instance(e))
            | Self::Rounding(RoundingError::Lp(LpError::Instance(e)))
            | Self::Rounding(RoundingError::Instance(e))
            | Self::Exact(ExactError::Instance(e)) => instance(e),
            Self::Lp(LpError::IterationCap { .. })
            | Self::Lp(LpError::Graph(_))
            | Self::Exact(ExactError::TooManyEdges { .. } | ExactError::TooManyVertices { .. }) => {
                "limit"
            }
            Self::Generate(GenError::Params(_)) | Self::Suite(_) => "invalid",
            _ => "internal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolveOptions {
    pub relaxation: RelaxationConfig,
    pub rounding: RoundingConfig,
    pub search: CutSearch,
    pub with_exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    pub lp_ms: f64,
    pub rounding_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_ms: Option<f64>,
}

/// Outcome of the full pipeline on one instance. All numbers are finite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub n: usize,
    pub m: usize,
    pub p: u32,
    pub q: u32,
    pub lp_value: f64,
    pub solution_cost: f64,
    /// `solution_cost / lp_value`; 1 when both are zero, absent when only
    /// the LP value is.
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_cost: Option<f64>,
    pub attempts: u32,
    pub seed: u64,
    pub separation_iterations: usize,
    pub active_rows: usize,
    pub separation_mode: ModeKind,
    pub lp_integral: bool,
    pub forced_set_size: usize,
    pub selection: EdgeSelection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

fn ratio(cost: f64, lp: f64) -> Option<f64> {
    if lp > 0.0 {
        Some(cost / lp)
    } else if cost == 0.0 {
        Some(1.0)
    } else {
        None
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Relaxation, rounding and optionally the exact optimum.
pub fn run_solve(inst: &FgcInstance, opts: &SolveOptions) -> Result<SolveReport, HarnessError> {
    let t = Instant::now();
    let relax = solve_relaxation_with(inst, &opts.relaxation)?;
    let lp_ms = ms(t);
    let t = Instant::now();
    let out = solve_from_relaxation(inst, &relax, &opts.rounding, &opts.search)?;
    let rounding_ms = ms(t);
    let (exact_cost, exact_ms) = if opts.with_exact {
        let t = Instant::now();
        let best = exact_opt(inst)?.best_cost;
        (Some(best), Some(ms(t)))
    } else {
        (None, None)
    };
    Ok(SolveReport {
        n: inst.vertex_count(),
        m: inst.edge_count(),
        p: inst.p(),
        q: inst.q(),
        lp_value: relax.value,
        solution_cost: out.cost,
        ratio: ratio(out.cost, relax.value),
        exact_cost,
        attempts: out.attempts_used,
        seed: opts.rounding.seed,
        separation_iterations: relax.iterations,
        active_rows: relax.active_rows.len(),
        separation_mode: relax.separation_mode,
        lp_integral: relax.x.is_integral(),
        forced_set_size: out.forced_set_size,
        selection: out.selection,
        timings: Some(Timings {
            lp_ms,
            rounding_ms,
            exact_ms,
        }),
    })
}

/// A benchmark suite: the cartesian product of per-key value lists.
///
/// Suite syntax is a comma- or whitespace-separated list of `key=values`
/// where `values` is `a`, an inclusive range `a..b` (integers), or
/// alternatives `a|b|c`. Keys: `n`, `m`, `p`, `q`, `seed` (integers),
/// `safe` (fraction, alternatives only), `cost` (a single `lo..hi` pair of
/// reals), `exact` (`0` or `1`). `n`, `m` are required; the defaults are
/// `p=1 q=1 seed=0 safe=0.5 cost=1..10 exact=0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Suite {
    pub n: Vec<usize>,
    pub m: Vec<usize>,
    pub p: Vec<u32>,
    pub q: Vec<u32>,
    pub seeds: Vec<u64>,
    pub safe: Vec<f64>,
    pub cost: (f64, f64),
    pub with_exact: bool,
}

fn int_values<T: TryFrom<u64>>(key: &str, s: &str) -> Result<Vec<T>, HarnessError> {
    let bad = || {
        HarnessError::Suite(format!(
            "`{key}={s}`: expected integers `a`, `a..b` or `a|b`"
        ))
    };
    let mut out = Vec::new();
    for part in s.split('|') {
        let (lo, hi) = match part.split_once("..") {
            Some((a, b)) => (
                a.parse::<u64>().map_err(|_| bad())?,
                b.parse::<u64>().map_err(|_| bad())?,
            ),
            None => {
                let a = part.parse::<u64>().map_err(|_| bad())?;
                (a, a)
            }
        };
        if lo > hi {
            return Err(bad());
        }
        for v in lo..=hi {
            out.push(T::try_from(v).map_err(|_| bad())?);
        }
    }
    Ok(out)
}

impl Suite {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut suite = Suite {
            n: Vec::new(),
            m: Vec::new(),
            p: vec![1],
            q: vec![1],
            seeds: vec![0],
            safe: vec![0.5],
            cost: (1.0, 10.0),
            with_exact: false,
        };
        for item in text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
        {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| HarnessError::Suite(format!("`{item}` is not key=value")))?;
            match key {
                "n" => suite.n = int_values(key, value)?,
                "m" => suite.m = int_values(key, value)?,
                "p" => suite.p = int_values(key, value)?,
                "q" => suite.q = int_values(key, value)?,
                "seed" => suite.seeds = int_values(key, value)?,
                "safe" => {
                    suite.safe = value
                        .split('|')
                        .map(|v| v.parse::<f64>().ok().filter(|f| (0.0..=1.0).contains(f)))
                        .collect::<Option<_>>()
                        .ok_or_else(|| {
                            HarnessError::Suite(format!(
                                "`safe={value}`: expected fractions in [0, 1]"
                            ))
                        })?
                }
                "cost" => {
                    suite.cost = value
                        .split_once("..")
                        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                        .ok_or_else(|| {
                            HarnessError::Suite(format!("`cost={value}`: expected lo..hi"))
                        })?
                }
                "exact" => {
                    suite.with_exact = match value {
                        "0" => false,
                        "1" => true,
                        _ => {
                            return Err(HarnessError::Suite(format!(
                                "`exact={value}`: expected 0 or 1"
                            )))
                        }
                    }
                }
                _ => return Err(HarnessError::Suite(format!("unknown key `{key}`"))),
            }
        }
        if suite.n.is_empty() || suite.m.is_empty() {
            return Err(HarnessError::Suite("`n` and `m` are required".into()));
        }
        Ok(suite)
    }

    /// Items in a fixed order: `n`, `m`, `p`, `q`, `safe`, then `seed`.
    pub fn items(&self) -> Vec<GenParams> {
        let mut out = Vec::new();
        for &n in &self.n {
            for &m in &self.m {
                for &p in &self.p {
                    for &q in &self.q {
                        for &safe_fraction in &self.safe {
                            for &seed in &self.seeds {
                                out.push(GenParams {
                                    n,
                                    m,
                                    safe_fraction,
                                    cost_range: self.cost,
                                    p,
                                    q,
                                    seed,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// One line of bench output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchLine {
    pub item: usize,
    pub params: GenParams,
    #[serde(flatten)]
    pub outcome: BenchOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BenchOutcome {
    Report(Box<SolveReport>),
    Failed { error: String, class: &'static str },
}

/// Runs every suite item in parallel; lines come back in item order.
pub fn run_bench(suite: &Suite, opts: &SolveOptions, keep_timings: bool) -> Vec<BenchLine> {
    let opts = SolveOptions {
        with_exact: opts.with_exact || suite.with_exact,
        ..*opts
    };
    suite
        .items()
        .into_par_iter()
        .enumerate()
        .map(|(item, params)| {
            let outcome = gen_random(&params)
                .map_err(HarnessError::from)
                .and_then(|inst| run_solve(&inst, &opts));
            let outcome = match outcome {
                Ok(mut report) => {
                    if !keep_timings {
                        report.timings = None;
                    }
                    BenchOutcome::Report(Box::new(report))
                }
                Err(e) => BenchOutcome::Failed {
                    class: e.class(),
                    error: e.to_string(),
                },
            };
            BenchLine {
                item,
                params,
                outcome,
            }
        })
        .collect()
}
