//! `(p,q)`-flexible graph connectivity instances and feasibility checks.
//!
//! An edge set `F` is feasible when every nontrivial cut carries at least
//! `p` safe edges of `F` or at least `p + q` edges of `F` in total. Two
//! checkers are provided: a direct scan over all bipartitions (small graphs
//! only) and a capacitated check that only inspects near-minimum cuts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    enumerate_cuts_below, min_cut, Capacities, Cut, CutSearch, EnumerationLimits, GraphError,
    ModeKind, Multigraph, VertexSet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Safe,
    Unsafe,
}

impl EdgeKind {
    pub fn is_safe(self) -> bool {
        self == EdgeKind::Safe
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("p must be at least 1")]
    ZeroP,
    #[error("{what} has {got} entries but the graph has {m} edges")]
    LengthMismatch {
        what: &'static str,
        got: usize,
        m: usize,
    },
    #[error("cost of edge {edge} is {value}; costs must be finite and nonnegative")]
    BadCost { edge: usize, value: f64 },
    #[error("edge id {edge} out of range (instance has {m} edges)")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("the full edge set is infeasible; violated cut {witness:?}")]
    Infeasible { witness: Cut },
}

impl InstanceError {
    /// Stable short code for reports and exit-status mapping.
    pub fn code(&self) -> &'static str {
        match self {
            Self::Graph(GraphError::TooLargeForExhaustive { .. }) => "too-large",
            Self::Graph(_) => "graph",
            Self::ZeroP => "p-range",
            Self::LengthMismatch { .. } => "length",
            Self::BadCost { .. } => "cost",
            Self::EdgeOutOfRange { .. } => "edge-range",
            Self::Disconnected => "disconnected",
            Self::Infeasible { .. } => "infeasible",
        }
    }
}

/// An instance `(G, S, U, c, p, q)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FgcInstance {
    graph: Multigraph,
    kinds: Vec<EdgeKind>,
    costs: Vec<f64>,
    p: u32,
    q: u32,
}

impl FgcInstance {
    /// Structural checks only; see [`validate_instance`] for connectivity and
    /// feasibility of the full edge set.
    pub fn new(
        graph: Multigraph,
        kinds: Vec<EdgeKind>,
        costs: Vec<f64>,
        p: u32,
        q: u32,
    ) -> Result<Self, InstanceError> {
        let m = graph.edge_count();
        if p == 0 {
            return Err(InstanceError::ZeroP);
        }
        if kinds.len() != m {
            return Err(InstanceError::LengthMismatch {
                what: "safety labels",
                got: kinds.len(),
                m,
            });
        }
        if costs.len() != m {
            return Err(InstanceError::LengthMismatch {
                what: "costs",
                got: costs.len(),
                m,
            });
        }
        if let Some((edge, &value)) = costs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_finite() || **c < 0.0)
        {
            return Err(InstanceError::BadCost { edge, value });
        }
        Ok(Self {
            graph,
            kinds,
            costs,
            p,
            q,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn kinds(&self) -> &[EdgeKind] {
        &self.kinds
    }

    pub fn kind(&self, edge: usize) -> EdgeKind {
        self.kinds[edge]
    }

    pub fn is_safe(&self, edge: usize) -> bool {
        self.kinds[edge].is_safe()
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `p(p+q)`, the connectivity target of the capacitated view.
    pub fn capacity_target(&self) -> u64 {
        let (p, q) = (self.p as u64, self.q as u64);
        p * (p + q)
    }

    pub fn cost_of(&self, f: &EdgeSelection) -> f64 {
        f.iter().map(|e| self.costs[e]).sum()
    }

    /// Proposition-1 test for one cut given its safe and total `F`-edge counts.
    pub fn cut_is_covered(&self, safe: u64, total: u64) -> bool {
        safe >= self.p as u64 || total >= (self.p + self.q) as u64
    }

    pub(crate) fn check_selection(&self, f: &EdgeSelection) -> Result<(), InstanceError> {
        let m = self.edge_count();
        match f.iter().find(|&e| e >= m) {
            Some(edge) => Err(InstanceError::EdgeOutOfRange { edge, m }),
            None => Ok(()),
        }
    }

    /// Safe and total counts of `F`-edges crossing `cut`.
    pub fn cut_counts(&self, f: &EdgeSelection, cut: &Cut) -> Result<(u64, u64), InstanceError> {
        self.check_selection(f)?;
        self.graph.check_cut(cut)?;
        Ok(self.counts_on(f, cut.side()))
    }

    fn counts_on(&self, f: &EdgeSelection, side: &VertexSet) -> (u64, u64) {
        f.iter().fold((0, 0), |(s, t), e| {
            let (u, v) = self.graph.endpoints(e);
            if side.contains(u) != side.contains(v) {
                (s + self.is_safe(e) as u64, t + 1)
            } else {
                (s, t)
            }
        })
    }
}

/// A subset `F ⊆ E`, held as sorted distinct edge ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSelection(Vec<usize>);

impl EdgeSelection {
    pub fn new(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut ids: Vec<usize> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }

    pub fn all(m: usize) -> Self {
        Self((0..m).collect())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Edges whose entry in `indicator` is true.
    pub fn from_indicator(indicator: &[bool]) -> Self {
        Self(
            indicator
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(e, _)| e)
                .collect(),
        )
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.0.binary_search(&edge).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &EdgeSelection) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    pub fn indicator(&self, m: usize) -> Vec<bool> {
        let mut out = vec![false; m];
        for e in self.iter().filter(|&e| e < m) {
            out[e] = true;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    /// A cut with fewer than `p` safe and fewer than `p + q` total `F`-edges.
    pub witness: Option<Cut>,
    /// Enumeration used for the near-minimum cuts. A contraction-mode
    /// "feasible" answer is wrong with probability at most the configured
    /// failure probability; "infeasible" answers are always certified.
    pub mode: ModeKind,
}

impl FeasibilityVerdict {
    fn feasible(mode: ModeKind) -> Self {
        Self {
            feasible: true,
            witness: None,
            mode,
        }
    }

    fn violated(witness: Cut, mode: ModeKind) -> Self {
        Self {
            feasible: false,
            witness: Some(witness),
            mode,
        }
    }
}

/// Checks every canonical bipartition, in ascending side-mask order; the
/// witness is the first violated cut in that order.
pub fn is_feasible_direct(
    inst: &FgcInstance,
    f: &EdgeSelection,
) -> Result<FeasibilityVerdict, InstanceError> {
    is_feasible_direct_with_limit(inst, f, EnumerationLimits::default().exhaustive_limit)
}

pub fn is_feasible_direct_with_limit(
    inst: &FgcInstance,
    f: &EdgeSelection,
    limit: usize,
) -> Result<FeasibilityVerdict, InstanceError> {
    inst.check_selection(f)?;
    let n = inst.vertex_count();
    if n > limit.min(63) {
        return Err(GraphError::TooLargeForExhaustive {
            n,
            limit: limit.min(63),
        }
        .into());
    }
    let picked: Vec<(u64, u64, bool)> = f
        .iter()
        .map(|e| {
            let (u, v) = inst.graph.endpoints(e);
            (1u64 << u, 1u64 << v, inst.is_safe(e))
        })
        .collect();
    for half in 1..(1u64 << (n - 1)) {
        let mask = half << 1;
        let (mut safe, mut total) = (0u64, 0u64);
        for &(bu, bv, is_safe) in &picked {
            if (mask & bu == 0) != (mask & bv == 0) {
                total += 1;
                safe += is_safe as u64;
            }
        }
        if !inst.cut_is_covered(safe, total) {
            let cut = Cut::from_set(n, VertexSet::from_mask(n, mask))?;
            return Ok(FeasibilityVerdict::violated(cut, ModeKind::Exhaustive));
        }
    }
    Ok(FeasibilityVerdict::feasible(ModeKind::Exhaustive))
}

/// Capacities `p+q` on safe and `p` on unsafe edges of `F`, zero elsewhere.
pub fn selection_capacities(inst: &FgcInstance, f: &EdgeSelection) -> Capacities {
    let (p, q) = (inst.p as f64, inst.q as f64);
    let mut caps = vec![0.0; inst.edge_count()];
    for e in f.iter() {
        caps[e] = if inst.is_safe(e) { p + q } else { p };
    }
    Capacities::new(caps).expect("capacities built from p, q are valid")
}

/// Largest capacity a violated cut can have: at most `p-1` safe and at most
/// `p+q-1` edges in total gives `p(p+q-1) + q(p-1)`.
pub fn violating_cut_bound(inst: &FgcInstance) -> u64 {
    let (p, q) = (inst.p as u64, inst.q as u64);
    p * (p + q - 1) + q * (p - 1)
}

pub fn is_feasible(
    inst: &FgcInstance,
    f: &EdgeSelection,
) -> Result<FeasibilityVerdict, InstanceError> {
    is_feasible_with(inst, f, &CutSearch::default())
}

/// Feasibility through the capacitated view: a minimum cut below `p(p+q)`
/// is a violated cut; otherwise only cuts of capacity at most
/// [`violating_cut_bound`] can be violated, and those are enumerated.
pub fn is_feasible_with(
    inst: &FgcInstance,
    f: &EdgeSelection,
    cfg: &CutSearch,
) -> Result<FeasibilityVerdict, InstanceError> {
    inst.check_selection(f)?;
    let g = inst.graph();
    let mode = cfg.mode_for(g.vertex_count());
    let caps = selection_capacities(inst, f);
    let (cut, lambda) = min_cut(g, &caps).map_err(|e| match e {
        GraphError::Disconnected => InstanceError::Disconnected,
        other => other.into(),
    })?;
    // capacities are integers here, so half-unit slack is exact
    if lambda < inst.capacity_target() as f64 - 0.5 {
        return Ok(FeasibilityVerdict::violated(cut, mode.kind()));
    }
    let threshold = violating_cut_bound(inst) as f64 + 0.5;
    if threshold <= lambda {
        return Ok(FeasibilityVerdict::feasible(mode.kind()));
    }
    for cut in enumerate_cuts_below(g, &caps, threshold, mode, &cfg.limits)? {
        let (safe, total) = inst.counts_on(f, cut.side());
        if !inst.cut_is_covered(safe, total) {
            return Ok(FeasibilityVerdict::violated(cut, mode.kind()));
        }
    }
    Ok(FeasibilityVerdict::feasible(mode.kind()))
}

/// Connectivity plus feasibility of the full edge set.
pub fn validate_instance(inst: &FgcInstance) -> Result<(), InstanceError> {
    if !inst.graph().is_connected() {
        return Err(InstanceError::Disconnected);
    }
    let verdict = is_feasible(inst, &EdgeSelection::all(inst.edge_count()))?;
    match verdict.witness {
        Some(witness) => Err(InstanceError::Infeasible { witness }),
        None => Ok(()),
    }
}
