use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{min_cut, Capacities, Cut, DisjointSets, GraphError, Multigraph, VertexSet};

/// Relative slack applied to every threshold comparison on real capacities.
pub const REL_TOL: f64 = 1e-9;

/// Bitmask scans cannot go past one machine word.
const MASK_WIDTH_LIMIT: usize = 63;

/// Contraction runs per work unit; the split is fixed so output is
/// independent of the thread count.
const RUNS_PER_CHUNK: u64 = 512;

/// `capacity < threshold`, with equality-within-round-off counted as not below.
pub fn is_below(capacity: f64, threshold: f64) -> bool {
    capacity < threshold - REL_TOL * threshold.abs().max(1.0)
}

pub(crate) fn is_at_most(capacity: f64, bound: f64) -> bool {
    capacity <= bound + REL_TOL * bound.abs().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Exhaustive,
    Contraction,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnumerationMode {
    /// Every canonical bipartition is inspected. Exact, exponential in `n`.
    Exhaustive,
    /// Repeated random contraction. Misses a qualifying cut with
    /// probability at most `fail_prob`.
    Contraction { fail_prob: f64, seed: u64 },
}

impl EnumerationMode {
    pub fn kind(&self) -> ModeKind {
        match self {
            Self::Exhaustive => ModeKind::Exhaustive,
            Self::Contraction { .. } => ModeKind::Contraction,
        }
    }
}

/// How callers above the graph layer pick an [`EnumerationMode`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModePolicy {
    /// Exhaustive up to the configured vertex limit, contraction beyond it.
    Auto {
        fail_prob: f64,
        seed: u64,
    },
    Exhaustive,
    Contraction {
        fail_prob: f64,
        seed: u64,
    },
}

impl ModePolicy {
    pub fn resolve(&self, n: usize, limits: &EnumerationLimits) -> EnumerationMode {
        match *self {
            Self::Auto { fail_prob, seed } => {
                if n <= limits.exhaustive_limit.min(MASK_WIDTH_LIMIT) {
                    EnumerationMode::Exhaustive
                } else {
                    EnumerationMode::Contraction { fail_prob, seed }
                }
            }
            Self::Exhaustive => EnumerationMode::Exhaustive,
            Self::Contraction { fail_prob, seed } => {
                EnumerationMode::Contraction { fail_prob, seed }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationLimits {
    pub exhaustive_limit: usize,
    /// Largest threshold / min-cut ratio accepted in contraction mode.
    pub alpha_max: f64,
    /// Multiplier on the repetition count of contraction mode (at least 1).
    pub repetition_constant: f64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self {
            exhaustive_limit: 20,
            alpha_max: 4.0,
            repetition_constant: 2.0,
        }
    }
}

/// Mode policy plus limits, as threaded through the feasibility checker and
/// the separation oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutSearch {
    pub policy: ModePolicy,
    pub limits: EnumerationLimits,
}

impl Default for CutSearch {
    fn default() -> Self {
        Self {
            policy: ModePolicy::Auto {
                fail_prob: 1e-9,
                seed: 0,
            },
            limits: EnumerationLimits::default(),
        }
    }
}

impl CutSearch {
    pub fn mode_for(&self, n: usize) -> EnumerationMode {
        self.policy.resolve(n, &self.limits)
    }
}

/// All canonical nontrivial cuts with capacity strictly below `threshold`,
/// sorted by their canonical side.
pub fn enumerate_cuts_below(
    g: &Multigraph,
    caps: &Capacities,
    threshold: f64,
    mode: EnumerationMode,
    limits: &EnumerationLimits,
) -> Result<Vec<Cut>, GraphError> {
    g.check_caps(caps)?;
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(GraphError::BadThreshold(threshold));
    }
    match mode {
        EnumerationMode::Exhaustive => {
            let mut out = Vec::new();
            scan_all_cuts(g, caps, limits.exhaustive_limit, |mask, cap| {
                if is_below(cap, threshold) {
                    out.push(Cut::from_canonical_mask(g.vertex_count(), mask, cap));
                }
            })?;
            Ok(out)
        }
        EnumerationMode::Contraction { fail_prob, seed } => {
            contraction(g, caps, threshold, fail_prob, seed, limits)
        }
    }
}

/// Visits every canonical cut (side excludes vertex 0) in ascending mask
/// order with its capacity, summed over edges in id order.
pub(crate) fn scan_all_cuts(
    g: &Multigraph,
    caps: &Capacities,
    limit: usize,
    mut visit: impl FnMut(u64, f64),
) -> Result<(), GraphError> {
    let n = g.vertex_count();
    let limit = limit.min(MASK_WIDTH_LIMIT);
    if n > limit {
        return Err(GraphError::TooLargeForExhaustive { n, limit });
    }
    let edges: Vec<(u32, u32, f64)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| (u as u32, v as u32, caps[e]))
        .collect();
    for half in 1..(1u64 << (n - 1)) {
        let mask = half << 1;
        let cap = edges
            .iter()
            .filter(|&&(u, v, _)| ((mask >> u) ^ (mask >> v)) & 1 == 1)
            .map(|&(_, _, w)| w)
            .sum();
        visit(mask, cap);
    }
    Ok(())
}

/// Exact count of canonical cuts with capacity at most `factor` times the
/// minimum cut, by exhaustive scan.
pub fn count_cuts_at_most_exhaustive(
    g: &Multigraph,
    caps: &Capacities,
    factor: f64,
    limit: usize,
) -> Result<usize, GraphError> {
    g.check_caps(caps)?;
    let mut all = Vec::new();
    scan_all_cuts(g, caps, limit, |_, cap| all.push(cap))?;
    let lambda = all.iter().copied().fold(f64::INFINITY, f64::min);
    let bound = factor * lambda;
    Ok(all.into_iter().filter(|&c| is_at_most(c, bound)).count())
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Number of independent contraction runs to miss no qualifying cut with
/// probability above `fail_prob`.
///
/// A cut below `alpha * lambda` survives contraction down to `k = ceil(2 alpha)`
/// super-vertices with probability at least `1 / C(n, k)`, and there are at
/// most `C(n, k) * (2^(k-1) - 1)` such cuts, so a union bound over them gives
/// the count below (times the configured constant).
fn repetitions(n: usize, k: usize, fail_prob: f64, constant: f64) -> u64 {
    let per_run = binomial(n, k);
    let ln_all_cuts = ((n - 1) as f64 * std::f64::consts::LN_2)
        .min(per_run.ln() + (((1u64 << (k - 1)) - 1) as f64).ln());
    let runs = constant.max(1.0) * per_run * (ln_all_cuts - fail_prob.ln()).max(1.0);
    runs.ceil() as u64
}

fn contraction(
    g: &Multigraph,
    caps: &Capacities,
    threshold: f64,
    fail_prob: f64,
    seed: u64,
    limits: &EnumerationLimits,
) -> Result<Vec<Cut>, GraphError> {
    if !(fail_prob > 0.0 && fail_prob < 1.0) {
        return Err(GraphError::BadFailProb(fail_prob));
    }
    let n = g.vertex_count();
    let (_, lambda) = min_cut(g, caps)?;
    if !is_below(lambda, threshold) {
        return Ok(Vec::new());
    }
    if lambda <= 0.0 {
        return Err(GraphError::ZeroMinCut(lambda));
    }
    let alpha = threshold / lambda;
    if alpha > limits.alpha_max {
        return Err(GraphError::AlphaTooLarge {
            alpha,
            alpha_max: limits.alpha_max,
        });
    }
    let k = ((2.0 * alpha).ceil() as usize).max(2);
    if k >= n {
        // nothing to contract; n <= 2 * alpha_max + 1 keeps this small
        return enumerate_cuts_below(
            g,
            caps,
            threshold,
            EnumerationMode::Exhaustive,
            &EnumerationLimits {
                exhaustive_limit: n,
                ..*limits
            },
        );
    }

    let runs = repetitions(n, k, fail_prob, limits.repetition_constant);
    let chunks = runs.div_ceil(RUNS_PER_CHUNK);
    let weighted: Vec<(usize, usize, f64)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, _)| caps[e] > 0.0)
        .map(|(e, &(u, v))| (u, v, caps[e]))
        .collect();
    // screen with generous slack; the final filter recomputes exactly
    let screen = threshold * (1.0 + 1e-6);

    let found: HashSet<VertexSet> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let count = RUNS_PER_CHUNK.min(runs - chunk * RUNS_PER_CHUNK);
            let mut local = HashSet::new();
            let mut keyed: Vec<(f64, usize)> = Vec::with_capacity(weighted.len());
            for _ in 0..count {
                keyed.clear();
                keyed.extend(weighted.iter().enumerate().map(|(i, &(_, _, w))| {
                    let u: f64 = 1.0 - rng.random::<f64>();
                    (-u.ln() / w, i)
                }));
                keyed.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
                contract_run(n, k, &weighted, &keyed, screen, &mut local);
            }
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });

    let mut out: Vec<Cut> = found
        .into_iter()
        .filter_map(|side| {
            let cap: f64 = g.crossing(&side).map(|e| caps[e]).sum();
            is_below(cap, threshold).then(|| Cut::from_set(n, side).map(|c| c.with_capacity(cap)))
        })
        .collect::<Result<_, _>>()?;
    out.sort();
    Ok(out)
}

/// Contracts edges in the given exponential-clock order until `k`
/// super-vertices remain, then records every bipartition of the
/// super-vertices whose capacity is below `screen`.
fn contract_run(
    n: usize,
    k: usize,
    weighted: &[(usize, usize, f64)],
    order: &[(f64, usize)],
    screen: f64,
    found: &mut HashSet<VertexSet>,
) {
    let mut dsu = DisjointSets::new(n);
    let mut parts = n;
    for &(_, i) in order {
        let (u, v, _) = weighted[i];
        if dsu.union(u, v) {
            parts -= 1;
            if parts == k {
                break;
            }
        }
    }
    // root of vertex 0 is 0 (union keeps the smaller root), so it gets label 0
    let mut label = vec![usize::MAX; n];
    let mut labels = 0;
    let mut vertex_label = vec![0usize; n];
    for (v, slot) in vertex_label.iter_mut().enumerate() {
        let r = dsu.find(v);
        if label[r] == usize::MAX {
            label[r] = labels;
            labels += 1;
        }
        *slot = label[r];
    }
    let mut between = vec![0.0f64; labels * labels];
    for &(u, v, w) in weighted {
        let (a, b) = (vertex_label[u], vertex_label[v]);
        if a != b {
            between[a.min(b) * labels + a.max(b)] += w;
        }
    }
    let pairs: Vec<(usize, usize, f64)> = (0..labels)
        .flat_map(|a| (a + 1..labels).map(move |b| (a, b)))
        .map(|(a, b)| (a, b, between[a * labels + b]))
        .filter(|&(_, _, w)| w > 0.0)
        .collect();
    for half in 1..(1u64 << (labels - 1)) {
        let mask = half << 1;
        let cap: f64 = pairs
            .iter()
            .filter(|&&(a, b, _)| ((mask >> a) ^ (mask >> b)) & 1 == 1)
            .map(|&(_, _, w)| w)
            .sum();
        if cap < screen {
            let mut side = VertexSet::with_capacity(n);
            for (v, &l) in vertex_label.iter().enumerate() {
                if mask >> l & 1 == 1 {
                    side.insert(v);
                }
            }
            found.insert(side);
        }
    }
}
