//! The knapsack-cover LP relaxation.
//!
//! For every nontrivial cut `R` and every split `δ(R) = J ⊔ K` the LP holds
//!
//! ```text
//! (p - |J∩S|)⁺ · x(K) + (q - |J∩U|)⁺ · x(K∩S)  >=  (p - |J∩S|)⁺ · (p + q - |J|)⁺
//! ```
//!
//! together with `0 <= x <= 1`. With `J = ∅` this is the plain cut-capacity
//! row `p·x(δ(R)) + q·x(δ(R)∩S) >= p(p+q)`. Separation only has to look at
//! cuts whose capacity under `u_x(e) = (p + q·[e safe])·x_e` is below
//! `2p(p+q)`, and within a cut only at the sets `J_{a,b}` made of the `a`
//! largest safe and `b` largest unsafe values.

pub mod simplex;

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    enumerate_cuts_below, is_below, min_cut, Capacities, Cut, CutSearch, EnumerationMode,
    GraphError, ModeKind,
};
use crate::model::{validate_instance, EdgeSelection, FgcInstance, InstanceError};
pub use simplex::{lp_solve, lp_solve_exact, CoveringRow, CoveringSimplex, LpSolution};

/// Default absolute violation tolerance for separation.
pub const DEFAULT_EPS: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("invalid LP input: {0}")]
    BadInput(String),
    #[error("x has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("x[{edge}] = {value} is outside [0, 1]")]
    NotInBox { edge: usize, value: f64 },
    #[error("edge {edge} of J is not in the cut")]
    JNotInCut { edge: usize },
    #[error("row system is infeasible over the unit box")]
    Infeasible,
    #[error("numerical failure: {detail} ({} rows)", rows.len())]
    Numerical {
        detail: String,
        rows: Vec<CoveringRow>,
    },
    #[error("cutting-plane loop hit its cap of {iterations} iterations with {rows} active rows")]
    IterationCap { iterations: usize, rows: usize },
}

/// A point of the unit box, one entry per edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct FractionalSolution(Vec<f64>);

impl FractionalSolution {
    pub fn new(x: Vec<f64>) -> Result<Self, LpError> {
        if let Some((edge, &value)) = x
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(LpError::NotInBox { edge, value });
        }
        Ok(Self(x))
    }

    pub fn zeros(m: usize) -> Self {
        Self(vec![0.0; m])
    }

    pub fn ones(m: usize) -> Self {
        Self(vec![1.0; m])
    }

    pub fn indicator(m: usize, f: &EdgeSelection) -> Self {
        Self(
            f.indicator(m)
                .into_iter()
                .map(|b| if b { 1.0 } else { 0.0 })
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> EdgeSelection {
        EdgeSelection::new(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &v)| v > 0.0)
                .map(|(e, _)| e),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0 || v == 1.0)
    }
}

impl std::ops::Index<usize> for FractionalSolution {
    type Output = f64;

    fn index(&self, e: usize) -> &f64 {
        &self.0[e]
    }
}

/// `H_x`: the graph under capacities `u_x`.
pub type CapacitatedView = Capacities;

/// `u_x(e) = (p + q·[e safe]) · x_e`.
pub fn capacities(inst: &FgcInstance, x: &FractionalSolution) -> Result<CapacitatedView, LpError> {
    check_len(inst, x)?;
    let (p, q) = (inst.p() as f64, inst.q() as f64);
    let caps = (0..inst.edge_count())
        .map(|e| {
            if inst.is_safe(e) {
                (p + q) * x[e]
            } else {
                p * x[e]
            }
        })
        .collect();
    Ok(Capacities::new(caps)?)
}

fn check_len(inst: &FgcInstance, x: &FractionalSolution) -> Result<(), LpError> {
    if x.len() != inst.edge_count() {
        return Err(LpError::LengthMismatch {
            expected: inst.edge_count(),
            got: x.len(),
        });
    }
    Ok(())
}

/// A linearized knapsack-cover inequality for one `(R, J)` pair.
///
/// Coefficients: `alpha1 + alpha2` on safe edges of `K = δ(R) \ J`,
/// `alpha1` on unsafe edges of `K`, zero everywhere else.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintRow {
    pub cut: Cut,
    pub j_edges: Vec<usize>,
    /// `|J ∩ S|`
    pub a: u32,
    /// `|J ∩ U|`
    pub b: u32,
    pub alpha1: u64,
    pub alpha2: u64,
    pub rhs: u64,
    /// `(edge, coefficient)` for every edge of `K`, ascending by edge id.
    pub terms: Vec<(usize, u64)>,
}

impl ConstraintRow {
    /// A row with zero right-hand side holds for every `x >= 0`.
    pub fn is_trivial(&self) -> bool {
        self.rhs == 0
    }

    pub fn coefficient(&self, edge: usize) -> u64 {
        self.terms
            .iter()
            .find(|&&(e, _)| e == edge)
            .map_or(0, |&(_, c)| c)
    }

    pub fn lhs(&self, x: &FractionalSolution) -> f64 {
        self.terms.iter().map(|&(e, c)| c as f64 * x[e]).sum()
    }

    /// Left-hand side at the 0/1 indicator of `f`, in exact integers.
    pub fn lhs_at(&self, f: &EdgeSelection) -> u64 {
        self.terms
            .iter()
            .filter(|(e, _)| f.contains(*e))
            .map(|&(_, c)| c)
            .sum()
    }

    /// `rhs - lhs(x)`; positive means violated.
    pub fn violation(&self, x: &FractionalSolution) -> f64 {
        self.rhs as f64 - self.lhs(x)
    }

    pub fn covering(&self) -> CoveringRow {
        CoveringRow::new(
            self.terms
                .iter()
                .filter(|(_, c)| *c > 0)
                .map(|&(e, c)| (e, c as f64))
                .collect(),
            self.rhs as f64,
        )
    }

    fn key(&self) -> (Cut, Vec<usize>) {
        (self.cut.clone(), self.j_edges.clone())
    }
}

/// `rhs - Σ coef·x` for a row.
pub fn violation(row: &ConstraintRow, x: &FractionalSolution) -> f64 {
    row.violation(x)
}

fn alphas(inst: &FgcInstance, a: u64, b: u64) -> (u64, u64, u64) {
    let (p, q) = (inst.p() as u64, inst.q() as u64);
    let alpha1 = p.saturating_sub(a);
    let alpha2 = q.saturating_sub(b);
    (alpha1, alpha2, alpha1 * (p + q).saturating_sub(a + b))
}

/// The row for cut `r` and `J = j_edges ⊆ δ(r)`.
pub fn constraint_row(
    inst: &FgcInstance,
    r: &Cut,
    j_edges: &[usize],
) -> Result<ConstraintRow, LpError> {
    let delta = inst.graph().cut_edges(r)?;
    let mut j: Vec<usize> = j_edges.to_vec();
    j.sort_unstable();
    j.dedup();
    if let Some(&edge) = j.iter().find(|e| delta.binary_search(e).is_err()) {
        return Err(LpError::JNotInCut { edge });
    }
    let a = j.iter().filter(|&&e| inst.is_safe(e)).count() as u64;
    let b = j.len() as u64 - a;
    let (alpha1, alpha2, rhs) = alphas(inst, a, b);
    let terms = delta
        .iter()
        .filter(|e| j.binary_search(e).is_err())
        .map(|&e| {
            (
                e,
                if inst.is_safe(e) {
                    alpha1 + alpha2
                } else {
                    alpha1
                },
            )
        })
        .collect();
    Ok(ConstraintRow {
        cut: r.clone(),
        j_edges: j,
        a: a as u32,
        b: b as u32,
        alpha1,
        alpha2,
        rhs,
        terms,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JCandidate {
    pub a: u32,
    pub b: u32,
    pub j_edges: Vec<usize>,
}

/// Safe and unsafe cut edges, each by nonincreasing `x` with ties by
/// ascending edge id.
fn ordered_cut_edges(
    inst: &FgcInstance,
    delta: &[usize],
    x: &FractionalSolution,
) -> (Vec<usize>, Vec<usize>) {
    let by_x = |l: &mut Vec<usize>| l.sort_by(|&e, &f| x[f].total_cmp(&x[e]).then(e.cmp(&f)));
    let (mut safe, mut unsafe_): (Vec<usize>, Vec<usize>) =
        delta.iter().partition(|&&e| inst.is_safe(e));
    by_x(&mut safe);
    by_x(&mut unsafe_);
    (safe, unsafe_)
}

fn candidate_ranges(inst: &FgcInstance, safe: usize, unsafe_: usize) -> (usize, usize) {
    let (p, q) = (inst.p() as usize, inst.q() as usize);
    ((p - 1).min(safe), (p + q - 1).min(unsafe_))
}

/// The `J_{a,b}` family for cut `r`, ordered by `a` then `b`.
pub fn candidate_j_sets(
    inst: &FgcInstance,
    r: &Cut,
    x: &FractionalSolution,
) -> Result<Vec<JCandidate>, LpError> {
    check_len(inst, x)?;
    let delta = inst.graph().cut_edges(r)?;
    let (safe, unsafe_) = ordered_cut_edges(inst, &delta, x);
    let (amax, bmax) = candidate_ranges(inst, safe.len(), unsafe_.len());
    let mut out = Vec::with_capacity((amax + 1) * (bmax + 1));
    for a in 0..=amax {
        for b in 0..=bmax {
            let mut j: Vec<usize> = safe[..a].iter().chain(&unsafe_[..b]).copied().collect();
            j.sort_unstable();
            out.push(JCandidate {
                a: a as u32,
                b: b as u32,
                j_edges: j,
            });
        }
    }
    Ok(out)
}

/// Best `J_{a,b}` row of one cut: `(violation, a, b)`, nontrivial rows only.
#[allow(clippy::needless_range_loop)]
fn best_row_on_cut(
    inst: &FgcInstance,
    safe: &[usize],
    unsafe_: &[usize],
    x: &FractionalSolution,
) -> Option<(f64, usize, usize)> {
    let prefix = |l: &[usize]| {
        let mut acc = vec![0.0];
        for &e in l {
            acc.push(acc.last().unwrap() + x[e]);
        }
        acc
    };
    let (ps, pu) = (prefix(safe), prefix(unsafe_));
    let (xs, xu) = (ps[safe.len()], pu[unsafe_.len()]);
    let (amax, bmax) = candidate_ranges(inst, safe.len(), unsafe_.len());
    let mut best: Option<(f64, usize, usize)> = None;
    for a in 0..=amax {
        for b in 0..=bmax {
            let (alpha1, alpha2, rhs) = alphas(inst, a as u64, b as u64);
            if rhs == 0 {
                continue;
            }
            let lhs = (alpha1 + alpha2) as f64 * (xs - ps[a]) + alpha1 as f64 * (xu - pu[b]);
            let v = rhs as f64 - lhs;
            if best.is_none_or(|(bv, _, _)| v > bv) {
                best = Some((v, a, b));
            }
        }
    }
    best
}

/// Separation oracle.
///
/// Returns the most violated row when some row is violated by more than
/// `eps`, and `None` as a certificate that no row (for any cut and any `J`)
/// is violated by more than `eps`.
///
/// In exhaustive mode all cuts with `u_x` capacity below `2p(p+q)` are
/// scanned, so the returned row has the global maximum violation. In
/// contraction mode a minimum cut below `p(p+q) - eps` is returned
/// immediately as its `J = ∅` row, since the near-minimum-cut family is only
/// polynomial once the minimum cut is at least `p(p+q)`.
pub fn separate(
    inst: &FgcInstance,
    x: &FractionalSolution,
    eps: f64,
    search: &CutSearch,
) -> Result<Option<ConstraintRow>, LpError> {
    let caps = capacities(inst, x)?;
    let g = inst.graph();
    let target = inst.capacity_target() as f64;
    let mode = search.mode_for(g.vertex_count());
    if let EnumerationMode::Contraction { .. } = mode {
        let (r_star, lambda) = min_cut(g, &caps)?;
        if target - lambda > eps {
            return Ok(Some(constraint_row(inst, &r_star, &[])?));
        }
    }
    let mut best: Option<(f64, Cut, Vec<usize>)> = None;
    for cut in enumerate_cuts_below(g, &caps, 2.0 * target, mode, &search.limits)? {
        let delta: Vec<usize> = g.crossing(cut.side()).collect();
        let (safe, unsafe_) = ordered_cut_edges(inst, &delta, x);
        if let Some((v, a, b)) = best_row_on_cut(inst, &safe, &unsafe_, x) {
            if best.as_ref().is_none_or(|(bv, _, _)| v > *bv) {
                let j = safe[..a].iter().chain(&unsafe_[..b]).copied().collect();
                best = Some((v, cut, j));
            }
        }
    }
    match best {
        Some((v, cut, j)) if v > eps => Ok(Some(constraint_row(inst, &cut, &j)?)),
        _ => Ok(None),
    }
}

/// Exact separation for the `J = ∅` rows alone: a minimum-cut check.
pub fn separate_cut_covering(
    inst: &FgcInstance,
    x: &FractionalSolution,
    eps: f64,
) -> Result<Option<ConstraintRow>, LpError> {
    let caps = capacities(inst, x)?;
    let (r_star, lambda) = min_cut(inst.graph(), &caps)?;
    if inst.capacity_target() as f64 - lambda > eps {
        Ok(Some(constraint_row(inst, &r_star, &[])?))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowFamily {
    /// All knapsack-cover rows.
    KnapsackCover,
    /// Only the `J = ∅` cut-capacity rows.
    CutCovering,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationConfig {
    pub eps: f64,
    pub search: CutSearch,
    pub family: RowFamily,
    /// Defaults to `10 · m · n` when unset.
    pub iteration_cap: Option<usize>,
    /// Keep every LP iterate in the result.
    pub record_iterates: bool,
}

impl Default for RelaxationConfig {
    fn default() -> Self {
        Self {
            eps: DEFAULT_EPS,
            search: CutSearch::default(),
            family: RowFamily::KnapsackCover,
            iteration_cap: None,
            record_iterates: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelaxationResult {
    pub x: FractionalSolution,
    pub value: f64,
    pub active_rows: Vec<ConstraintRow>,
    pub iterations: usize,
    pub separation_mode: ModeKind,
    #[serde(skip)]
    pub iterates: Vec<FractionalSolution>,
}

pub fn solve_relaxation(inst: &FgcInstance, eps: f64) -> Result<RelaxationResult, LpError> {
    solve_relaxation_with(
        inst,
        &RelaxationConfig {
            eps,
            ..RelaxationConfig::default()
        },
    )
}

/// Cutting-plane loop: seed with the singleton `J = ∅` rows, then alternate
/// LP solves and separation, adding the most violated row each round, until
/// separation certifies the point.
pub fn solve_relaxation_with(
    inst: &FgcInstance,
    cfg: &RelaxationConfig,
) -> Result<RelaxationResult, LpError> {
    validate_instance(inst)?;
    let (n, m) = (inst.vertex_count(), inst.edge_count());
    let cap = cfg.iteration_cap.unwrap_or(10 * m * n);
    let mode = match cfg.family {
        RowFamily::KnapsackCover => cfg.search.mode_for(n).kind(),
        RowFamily::CutCovering => ModeKind::Exhaustive,
    };

    let mut pool: Vec<ConstraintRow> = Vec::new();
    let mut seen: HashSet<(Cut, Vec<usize>)> = HashSet::new();
    for v in 0..n {
        let row = constraint_row(inst, &Cut::new(n, [v])?, &[])?;
        if seen.insert(row.key()) {
            pool.push(row);
        }
    }
    let mut lp = CoveringSimplex::<f64>::new(inst.costs())?;
    let mut coverings: Vec<CoveringRow> = Vec::new();
    for row in &pool {
        let c = row.covering();
        lp.add_row(&c)?;
        coverings.push(c);
    }

    let mut iterates = Vec::new();
    for iteration in 1..=cap {
        let sol = solve_warm(&mut lp, &coverings, inst.costs())?;
        let x = FractionalSolution::new(sol.x)?;
        if cfg.record_iterates {
            iterates.push(x.clone());
        }
        let cut_row = match cfg.family {
            RowFamily::KnapsackCover => separate(inst, &x, cfg.eps, &cfg.search)?,
            RowFamily::CutCovering => separate_cut_covering(inst, &x, cfg.eps)?,
        };
        let Some(row) = cut_row else {
            return Ok(RelaxationResult {
                x,
                value: sol.value,
                active_rows: pool,
                iterations: iteration,
                separation_mode: mode,
                iterates,
            });
        };
        if !seen.insert(row.key()) {
            return Err(LpError::Numerical {
                detail: format!(
                    "separation returned a row already in the LP ({:?})",
                    row.cut
                ),
                rows: coverings,
            });
        }
        let c = row.covering();
        lp.add_row(&c)?;
        coverings.push(c);
        pool.push(row);
    }
    Err(LpError::IterationCap {
        iterations: cap,
        rows: pool.len(),
    })
}

/// Re-optimizes the warm tableau; on a numerical failure rebuilds it cold.
fn solve_warm(
    lp: &mut CoveringSimplex<f64>,
    rows: &[CoveringRow],
    costs: &[f64],
) -> Result<LpSolution, LpError> {
    let warm = lp.solve().and_then(|_| lp.float_solution(rows));
    match warm {
        Ok(sol) => Ok(sol),
        Err(LpError::Numerical { .. }) => {
            let mut cold = CoveringSimplex::<f64>::new(costs)?;
            for row in rows {
                cold.add_row(row)?;
            }
            cold.solve()?;
            let sol = cold.float_solution(rows)?;
            *lp = cold;
            Ok(sol)
        }
        Err(e) => Err(e),
    }
}

/// `true` when the cut's `u_x` capacity is below `2p(p+q)`, i.e. it is one
/// of the cuts separation has to inspect.
pub fn needs_inspection(
    inst: &FgcInstance,
    x: &FractionalSolution,
    r: &Cut,
) -> Result<bool, LpError> {
    let caps = capacities(inst, x)?;
    let cap = inst.graph().cut_capacity(&caps, r)?;
    Ok(is_below(cap, 2.0 * inst.capacity_target() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{ModePolicy, Multigraph};
    use crate::model::EdgeKind::{self, Safe, Unsafe};

    fn instance(
        n: usize,
        edges: Vec<(usize, usize)>,
        kinds: Vec<EdgeKind>,
        costs: Vec<f64>,
        p: u32,
        q: u32,
    ) -> FgcInstance {
        FgcInstance::new(Multigraph::new(n, edges).unwrap(), kinds, costs, p, q).unwrap()
    }

    fn two_vertex() -> FgcInstance {
        instance(
            2,
            vec![(0, 1); 3],
            vec![Safe, Unsafe, Unsafe],
            vec![5.0, 1.0, 1.0],
            1,
            1,
        )
    }

    /// p = 2, q = 4; one safe edge (0) and three unsafe edges (1..=3), plus
    /// a spare safe edge (4) and two spare unsafe edges (5, 6) so E is feasible.
    fn gadget() -> FgcInstance {
        instance(
            2,
            vec![(0, 1); 7],
            vec![Safe, Unsafe, Unsafe, Unsafe, Safe, Unsafe, Unsafe],
            vec![1.0; 7],
            2,
            4,
        )
    }

    fn gadget_point() -> FractionalSolution {
        FractionalSolution::new(vec![1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0]).unwrap()
    }

    fn cut01() -> Cut {
        Cut::new(2, [1]).unwrap()
    }

    #[test]
    fn capacity_formula() {
        let inst = two_vertex();
        let x = FractionalSolution::new(vec![0.5, 0.5, 1.0]).unwrap();
        let caps = capacities(&inst, &x).unwrap();
        assert_eq!(caps.as_slice(), &[1.0, 0.5, 1.0]);
        let g = gadget();
        let caps = capacities(&g, &FractionalSolution::ones(7)).unwrap();
        assert_eq!(caps[0], 6.0);
        assert_eq!(caps[1], 2.0);
    }

    #[test]
    fn box_is_enforced() {
        assert_eq!(
            FractionalSolution::new(vec![0.2, 1.5]).unwrap_err(),
            LpError::NotInBox {
                edge: 1,
                value: 1.5
            }
        );
    }

    #[test]
    fn j_with_safe_edge_detects_first_pattern() {
        let inst = gadget();
        let row = constraint_row(&inst, &cut01(), &[0]).unwrap();
        assert_eq!((row.alpha1, row.alpha2, row.rhs), (1, 4, 5));
        let f = EdgeSelection::new([0, 1, 2, 3]);
        assert_eq!(row.lhs_at(&f), 3);
        assert_eq!(row.violation(&gadget_point()), 2.0);
    }

    #[test]
    fn j_with_unsafe_edges_detects_second_pattern() {
        let inst = gadget();
        let row = constraint_row(&inst, &cut01(), &[1, 2, 3]).unwrap();
        assert_eq!((row.alpha1, row.alpha2, row.rhs), (2, 1, 6));
        assert_eq!(row.lhs_at(&EdgeSelection::new([0, 1, 2, 3])), 3);
    }

    #[test]
    fn coefficients_follow_contract() {
        let inst = gadget();
        let row = constraint_row(&inst, &cut01(), &[0, 1]).unwrap();
        // a = 1, b = 1: alpha1 = 1, alpha2 = 3
        assert_eq!(row.coefficient(0), 0);
        assert_eq!(row.coefficient(1), 0);
        assert_eq!(row.coefficient(2), 1);
        assert_eq!(row.coefficient(4), 4);
        let empty = constraint_row(&inst, &cut01(), &[]).unwrap();
        assert_eq!(empty.rhs, 12);
        assert_eq!(empty.coefficient(0), 6);
        assert_eq!(empty.coefficient(1), 2);
    }

    #[test]
    fn enough_safe_edges_in_j_is_trivial() {
        let inst = gadget();
        let row = constraint_row(&inst, &cut01(), &[0, 4]).unwrap();
        assert!(row.is_trivial());
        assert!(row.violation(&FractionalSolution::zeros(7)) <= 0.0);
    }

    #[test]
    fn j_outside_cut_is_rejected() {
        let inst = instance(
            3,
            vec![(0, 1), (1, 2), (0, 2)],
            vec![Safe; 3],
            vec![1.0; 3],
            1,
            0,
        );
        let err = constraint_row(&inst, &Cut::new(3, [0]).unwrap(), &[1]).unwrap_err();
        assert_eq!(err, LpError::JNotInCut { edge: 1 });
    }

    #[test]
    fn empty_j_row_equals_capacity_at_target() {
        let inst = two_vertex();
        // u_x(δ) = 2·0.5 + 0.5 + 0.5 = 2 = p(p+q)
        let x = FractionalSolution::new(vec![0.5, 0.5, 0.5]).unwrap();
        let row = constraint_row(&inst, &cut01(), &[]).unwrap();
        assert_eq!(row.violation(&x), 0.0);
    }

    #[test]
    fn candidate_family() {
        // p = 2, q = 1; cut with 3 safe (.9, .5, .2) and 2 unsafe (.7, .3)
        let inst = instance(
            2,
            vec![(0, 1); 5],
            vec![Safe, Safe, Safe, Unsafe, Unsafe],
            vec![1.0; 5],
            2,
            1,
        );
        let x = FractionalSolution::new(vec![0.5, 0.9, 0.2, 0.3, 0.7]).unwrap();
        let cands = candidate_j_sets(&inst, &cut01(), &x).unwrap();
        assert_eq!(cands.len(), 6);
        let j12 = cands.iter().find(|c| c.a == 1 && c.b == 2).unwrap();
        assert_eq!(j12.j_edges, vec![1, 3, 4]);
        let p1 = two_vertex();
        let cands = candidate_j_sets(&p1, &cut01(), &FractionalSolution::ones(3)).unwrap();
        assert!(cands.iter().all(|c| c.a == 0));
    }

    #[test]
    fn ties_break_by_edge_id() {
        let inst = instance(2, vec![(0, 1); 4], vec![Unsafe; 4], vec![1.0; 4], 1, 3);
        let x = FractionalSolution::new(vec![0.5; 4]).unwrap();
        let cands = candidate_j_sets(&inst, &cut01(), &x).unwrap();
        assert_eq!(cands[2].j_edges, vec![0, 1]);
    }

    #[test]
    fn separate_zero_point_returns_min_cut_row() {
        let inst = instance(
            3,
            vec![(0, 1), (1, 2), (0, 2)],
            vec![Safe; 3],
            vec![1.0; 3],
            1,
            0,
        );
        let row = separate(
            &inst,
            &FractionalSolution::zeros(3),
            DEFAULT_EPS,
            &CutSearch::default(),
        )
        .unwrap()
        .unwrap();
        assert!(row.j_edges.is_empty());
        assert_eq!(row.violation(&FractionalSolution::zeros(3)), 1.0);
    }

    #[test]
    fn separate_all_ones_on_valid_instance() {
        let inst = gadget();
        let row = separate(
            &inst,
            &FractionalSolution::ones(7),
            DEFAULT_EPS,
            &CutSearch::default(),
        )
        .unwrap();
        assert!(row.is_none());
    }

    #[test]
    fn separate_gadget_finds_most_violated() {
        let inst = gadget();
        let x = gadget_point();
        let caps = capacities(&inst, &x).unwrap();
        assert_eq!(min_cut(inst.graph(), &caps).unwrap().1, 12.0);
        let row = separate(&inst, &x, DEFAULT_EPS, &CutSearch::default())
            .unwrap()
            .unwrap();
        // J = {three unsafe}: rhs 6, lhs 3 beats J = {safe} (violation 2)
        assert_eq!((row.a, row.b), (0, 3));
        assert_eq!(row.violation(&x), 3.0);
        assert_eq!(
            constraint_row(&inst, &cut01(), &[0]).unwrap().violation(&x),
            2.0
        );
    }

    #[test]
    fn contraction_mode_separation_shortcut() {
        let inst = gadget();
        let search = CutSearch {
            policy: ModePolicy::Contraction {
                fail_prob: 1e-9,
                seed: 1,
            },
            ..CutSearch::default()
        };
        let row = separate(&inst, &FractionalSolution::zeros(7), DEFAULT_EPS, &search)
            .unwrap()
            .unwrap();
        assert!(row.j_edges.is_empty());
        let row = separate(&inst, &gadget_point(), DEFAULT_EPS, &search)
            .unwrap()
            .unwrap();
        assert_eq!(row.violation(&gadget_point()), 3.0);
    }

    #[test]
    fn relaxation_two_vertex() {
        let res = solve_relaxation(&two_vertex(), DEFAULT_EPS).unwrap();
        assert!((res.value - 2.0).abs() < 1e-9);
        assert_eq!(res.x.as_slice(), &[0.0, 1.0, 1.0]);
    }

    #[test]
    fn relaxation_triangle_spanning_tree_lp() {
        let inst = instance(
            3,
            vec![(0, 1), (1, 2), (0, 2)],
            vec![Safe; 3],
            vec![1.0; 3],
            1,
            0,
        );
        let res = solve_relaxation(&inst, DEFAULT_EPS).unwrap();
        assert!((res.value - 1.5).abs() < 1e-9);
        for &v in res.x.as_slice() {
            assert!((v - 0.5).abs() < 1e-9);
        }
        assert!(separate(&inst, &res.x, DEFAULT_EPS, &CutSearch::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn relaxation_rejects_invalid_instance() {
        let inst = instance(2, vec![(0, 1)], vec![Safe], vec![1.0], 2, 0);
        assert!(matches!(
            solve_relaxation(&inst, DEFAULT_EPS),
            Err(LpError::Instance(_))
        ));
    }

    /// Cheap safe edge, expensive safe edge, six unit unsafe edges; p = 2, q = 4.
    fn strengthening() -> FgcInstance {
        let mut kinds = vec![Safe, Safe];
        kinds.extend([Unsafe; 6]);
        let mut costs = vec![1.0, 10.0];
        costs.extend([1.0; 6]);
        instance(2, vec![(0, 1); 8], kinds, costs, 2, 4)
    }

    #[test]
    fn knapsack_rows_beat_cut_rows() {
        let inst = strengthening();
        let cfg = RelaxationConfig {
            family: RowFamily::CutCovering,
            ..RelaxationConfig::default()
        };
        let weak = solve_relaxation_with(&inst, &cfg).unwrap();
        assert!((weak.value - 4.0).abs() < 1e-9);
        let strong = solve_relaxation(&inst, DEFAULT_EPS).unwrap();
        assert!(strong.value > 4.0 + 1e-6, "{}", strong.value);
        assert!(strong.value <= 6.0 + 1e-9);
        assert!(strong.active_rows.iter().any(|r| !r.j_edges.is_empty()));
    }

    #[test]
    fn iteration_cap_is_reported() {
        let cfg = RelaxationConfig {
            iteration_cap: Some(1),
            ..RelaxationConfig::default()
        };
        let err = solve_relaxation_with(&strengthening(), &cfg).unwrap_err();
        assert!(matches!(err, LpError::IterationCap { iterations: 1, .. }));
    }
}
