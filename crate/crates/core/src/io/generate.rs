use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Multigraph;
use crate::model::{is_feasible, EdgeKind, EdgeSelection, FgcInstance, InstanceError};

const CONNECT_TRIES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub safe_fraction: f64,
    pub cost_range: (f64, f64),
    pub p: u32,
    pub q: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("unsatisfiable generator parameters: {0}")]
    Params(String),
    #[error("no connected multigraph with {m} edges on {n} vertices after {CONNECT_TRIES} draws")]
    NotConnected { n: usize, m: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

/// Random instance: `m` uniform vertex pairs, redrawn until connected, each
/// edge safe with probability `safe_fraction` and with a cost uniform in
/// `cost_range` (rounded to 3 decimals).
///
/// When the full edge set is infeasible, unsafe copies of an edge crossing
/// the violated cut are appended, just enough to give that cut `p + q`
/// edges, until it is feasible. The result can therefore have more than
/// `m` edges.
pub fn gen_random(params: &GenParams) -> Result<FgcInstance, GenError> {
    let GenParams {
        n,
        m,
        safe_fraction,
        cost_range: (lo, hi),
        p,
        q,
        seed,
    } = *params;
    if n < 2 {
        return Err(GenError::Params(format!("need n >= 2, got {n}")));
    }
    if m + 1 < n {
        return Err(GenError::Params(format!(
            "{m} edges cannot connect {n} vertices"
        )));
    }
    if !(0.0..=1.0).contains(&safe_fraction) {
        return Err(GenError::Params(format!(
            "safe_fraction {safe_fraction} outside [0, 1]"
        )));
    }
    if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi) {
        return Err(GenError::Params(format!("bad cost range [{lo}, {hi}]")));
    }
    if p == 0 {
        return Err(GenError::Params("p must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cost = |rng: &mut ChaCha8Rng| {
        round3(if lo == hi {
            lo
        } else {
            rng.random_range(lo..=hi)
        })
    };

    let mut edges = Vec::new();
    for _ in 0..CONNECT_TRIES {
        edges = (0..m)
            .map(|_| {
                let u = rng.random_range(0..n);
                let v = (u + rng.random_range(1..n)) % n;
                (u, v)
            })
            .collect();
        if Multigraph::new(n, edges.clone())
            .map_err(InstanceError::from)?
            .is_connected()
        {
            break;
        }
        edges.clear();
    }
    if edges.len() != m {
        return Err(GenError::NotConnected { n, m });
    }
    let mut kinds = Vec::with_capacity(m);
    let mut costs = Vec::with_capacity(m);
    for _ in 0..m {
        kinds.push(if rng.random_bool(safe_fraction) {
            EdgeKind::Safe
        } else {
            EdgeKind::Unsafe
        });
        costs.push(cost(&mut rng));
    }

    loop {
        let inst = FgcInstance::new(
            Multigraph::new(n, edges.clone()).map_err(InstanceError::from)?,
            kinds.clone(),
            costs.clone(),
            p,
            q,
        )?;
        let all = EdgeSelection::all(inst.edge_count());
        let verdict = is_feasible(&inst, &all)?;
        let Some(witness) = verdict.witness else {
            return Ok(inst);
        };
        let crossing = inst
            .graph()
            .cut_edges(&witness)
            .map_err(InstanceError::from)?;
        let (_, total) = inst.cut_counts(&all, &witness)?;
        let template = inst.graph().endpoints(crossing[0]);
        for _ in total..(p as u64 + q as u64) {
            edges.push(template);
            kinds.push(EdgeKind::Unsafe);
            costs.push(cost(&mut rng));
        }
    }
}
