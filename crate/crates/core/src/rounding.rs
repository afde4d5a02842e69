//! Independent randomized rounding with a Las Vegas outer loop.
//!
//! Each edge is kept with probability `y_e = min(1, C · ln n · x_e)`. An
//! attempt is accepted when the selection is feasible and costs at most
//! `cost_cap_multiplier · C · ln n · lp_value`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::CutSearch;
use crate::lp::{self, FractionalSolution, LpError, RelaxationConfig, RelaxationResult};
use crate::model::{is_feasible_with, EdgeSelection, FgcInstance, InstanceError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoundingConfig {
    pub scale_constant: f64,
    pub cost_cap_multiplier: f64,
    pub max_attempts: u32,
    pub seed: u64,
}

impl Default for RoundingConfig {
    fn default() -> Self {
        Self {
            scale_constant: 100.0,
            cost_cap_multiplier: 2.0,
            max_attempts: 64,
            seed: 0,
        }
    }
}

impl RoundingConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<(), RoundingError> {
        let ok = self.scale_constant.is_finite()
            && self.scale_constant > 0.0
            && self.cost_cap_multiplier.is_finite()
            && self.cost_cap_multiplier >= 1.0
            && self.max_attempts >= 1;
        if ok {
            Ok(())
        } else {
            Err(RoundingError::BadConfig(*self))
        }
    }

    /// `cost_cap_multiplier · C · ln n`
    pub fn cost_factor(&self, n: usize) -> f64 {
        self.cost_cap_multiplier * self.scale_constant * (n as f64).ln()
    }
}

/// Why one attempt was rejected.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttemptReport {
    pub attempt: u32,
    pub size: usize,
    pub cost: f64,
    pub feasible: bool,
    pub within_cap: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RoundingError {
    #[error("invalid rounding configuration {0:?}")]
    BadConfig(RoundingConfig),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("all {} rounding attempts were rejected (cost cap {cap})", attempts.len())]
    Exhausted {
        cap: f64,
        attempts: Vec<AttemptReport>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundingOutcome {
    pub selection: EdgeSelection,
    pub cost: f64,
    pub attempts_used: u32,
    /// Number of edges with `y_e = 1`.
    pub forced_set_size: usize,
    pub lp_value: f64,
    pub cost_cap: f64,
}

impl RoundingOutcome {
    pub fn ratio(&self) -> Option<f64> {
        (self.lp_value > 0.0).then(|| self.cost / self.lp_value)
    }
}

pub fn inclusion_probabilities(
    inst: &FgcInstance,
    x: &FractionalSolution,
    cfg: &RoundingConfig,
) -> Result<Vec<f64>, RoundingError> {
    cfg.check()?;
    if x.len() != inst.edge_count() {
        return Err(LpError::LengthMismatch {
            expected: inst.edge_count(),
            got: x.len(),
        }
        .into());
    }
    let scale = cfg.scale_constant * (inst.vertex_count() as f64).ln();
    Ok(x.as_slice().iter().map(|&v| (scale * v).min(1.0)).collect())
}

fn attempt_rng(seed: u64, attempt: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt as u64);
    rng
}

/// Samples with precomputed probabilities. Every edge draws a number so the
/// stream position of edge `e` does not depend on the other `y` values.
fn sample(y: &[f64], seed: u64, attempt: u32) -> EdgeSelection {
    let mut rng = attempt_rng(seed, attempt);
    EdgeSelection::new(
        y.iter()
            .enumerate()
            .filter(|&(_, &p)| {
                let u: f64 = rng.random();
                u < p
            })
            .map(|(e, _)| e),
    )
}

/// One rounding draw for attempt index `attempt` under `cfg.seed`.
pub fn round_once(
    inst: &FgcInstance,
    x: &FractionalSolution,
    cfg: &RoundingConfig,
    attempt: u32,
) -> Result<EdgeSelection, RoundingError> {
    let y = inclusion_probabilities(inst, x, cfg)?;
    Ok(sample(&y, cfg.seed, attempt))
}

/// Full pipeline: relaxation, then rounding.
pub fn solve(inst: &FgcInstance, cfg: &RoundingConfig) -> Result<RoundingOutcome, RoundingError> {
    let relax = lp::solve_relaxation_with(inst, &RelaxationConfig::default())?;
    solve_from_relaxation(inst, &relax, cfg, &CutSearch::default())
}

/// Rounds a given relaxation; attempts run in index order and the first
/// accepted one wins.
pub fn solve_from_relaxation(
    inst: &FgcInstance,
    relax: &RelaxationResult,
    cfg: &RoundingConfig,
    search: &CutSearch,
) -> Result<RoundingOutcome, RoundingError> {
    let y = inclusion_probabilities(inst, &relax.x, cfg)?;
    let forced_set_size = y.iter().filter(|&&p| p >= 1.0).count();
    let cap = cfg.cost_factor(inst.vertex_count()) * relax.value;
    let mut rejected = Vec::new();
    for attempt in 0..cfg.max_attempts {
        let f = sample(&y, cfg.seed, attempt);
        let cost = inst.cost_of(&f);
        let within_cap = cost <= cap * (1.0 + 1e-12);
        let feasible = within_cap && is_feasible_with(inst, &f, search)?.feasible;
        if feasible {
            return Ok(RoundingOutcome {
                selection: f,
                cost,
                attempts_used: attempt + 1,
                forced_set_size,
                lp_value: relax.value,
                cost_cap: cap,
            });
        }
        rejected.push(AttemptReport {
            attempt,
            size: f.len(),
            cost,
            feasible,
            within_cap,
        });
    }
    Err(RoundingError::Exhausted {
        cap,
        attempts: rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;
    use crate::lp::DEFAULT_EPS;
    use crate::model::EdgeKind::{Safe, Unsafe};

    fn two_vertex() -> FgcInstance {
        FgcInstance::new(
            Multigraph::new(2, vec![(0, 1); 3]).unwrap(),
            vec![Safe, Unsafe, Unsafe],
            vec![5.0, 1.0, 1.0],
            1,
            1,
        )
        .unwrap()
    }

    fn triangle() -> FgcInstance {
        FgcInstance::new(
            Multigraph::cycle(3).unwrap(),
            vec![Safe; 3],
            vec![1.0; 3],
            1,
            0,
        )
        .unwrap()
    }

    #[test]
    fn probabilities() {
        let inst = FgcInstance::new(
            Multigraph::cycle(8).unwrap(),
            vec![Safe; 8],
            vec![1.0; 8],
            1,
            0,
        )
        .unwrap();
        let edge = 1.0 / (100.0 * 8f64.ln());
        let x = FractionalSolution::new(vec![
            0.0,
            1.0,
            edge * 1.0001,
            edge * 0.5,
            0.0,
            0.0,
            0.0,
            0.0,
        ])
        .unwrap();
        let y = inclusion_probabilities(&inst, &x, &RoundingConfig::default()).unwrap();
        assert_eq!(y[0], 0.0);
        assert_eq!(y[1], 1.0);
        assert_eq!(y[2], 1.0);
        assert!((y[3] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn extremes() {
        let inst = two_vertex();
        let cfg = RoundingConfig::with_seed(9);
        for attempt in 0..5 {
            assert_eq!(
                round_once(&inst, &FractionalSolution::ones(3), &cfg, attempt).unwrap(),
                EdgeSelection::all(3)
            );
            assert!(
                round_once(&inst, &FractionalSolution::zeros(3), &cfg, attempt)
                    .unwrap()
                    .is_empty()
            );
        }
        let x = FractionalSolution::new(vec![0.0, 1.0, 1.0]).unwrap();
        assert_eq!(
            round_once(&inst, &x, &cfg, 0).unwrap(),
            EdgeSelection::new([1, 2])
        );
    }

    #[test]
    fn two_vertex_pipeline() {
        let out = solve(&two_vertex(), &RoundingConfig::with_seed(1)).unwrap();
        assert_eq!(out.cost, 2.0);
        assert_eq!(out.attempts_used, 1);
        assert_eq!(out.selection, EdgeSelection::new([1, 2]));
        assert_eq!(out.ratio(), Some(1.0));
    }

    #[test]
    fn triangle_pipeline() {
        let out = solve(&triangle(), &RoundingConfig::default()).unwrap();
        assert_eq!(out.cost, 3.0);
        assert_eq!(out.forced_set_size, 3);
        assert!(out.cost <= 200.0 * 3f64.ln() * 1.5);
        assert!((out.cost_cap - 200.0 * 3f64.ln() * 1.5).abs() < 1e-9);
    }

    #[test]
    fn deterministic_by_seed_and_attempt() {
        let inst = triangle();
        let x = lp::solve_relaxation(&inst, DEFAULT_EPS).unwrap().x;
        let cfg = RoundingConfig {
            scale_constant: 0.5,
            seed: 42,
            ..RoundingConfig::default()
        };
        let a: Vec<_> = (0..20)
            .map(|i| round_once(&inst, &x, &cfg, i).unwrap())
            .collect();
        let b: Vec<_> = (0..20)
            .map(|i| round_once(&inst, &x, &cfg, i).unwrap())
            .collect();
        assert_eq!(a, b);
        assert!(a.iter().any(|f| f != &a[0]));
    }

    #[test]
    fn exhausted_attempts_carry_diagnostics() {
        let inst = triangle();
        let relax = lp::solve_relaxation(&inst, DEFAULT_EPS).unwrap();
        let cfg = RoundingConfig {
            scale_constant: 1e-6,
            max_attempts: 3,
            ..RoundingConfig::default()
        };
        match solve_from_relaxation(&inst, &relax, &cfg, &CutSearch::default()) {
            Err(RoundingError::Exhausted { attempts, .. }) => {
                assert_eq!(attempts.len(), 3);
                assert!(attempts.iter().all(|a| !a.feasible));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = RoundingConfig {
            max_attempts: 0,
            ..RoundingConfig::default()
        };
        assert!(matches!(
            solve(&triangle(), &cfg),
            Err(RoundingError::BadConfig(_))
        ));
        let cfg = RoundingConfig {
            cost_cap_multiplier: 0.5,
            ..RoundingConfig::default()
        };
        assert!(matches!(
            solve(&triangle(), &cfg),
            Err(RoundingError::BadConfig(_))
        ));
    }
}
