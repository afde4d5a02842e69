//! Brute-force oracles for desk-scale instances: the exact optimum, a
//! separation oracle that scans every cut, and exact near-minimum-cut counts.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    count_cuts_at_most_exhaustive, Capacities, Cut, GraphError, Multigraph, VertexSet,
};
use crate::lp::{constraint_row, ConstraintRow, FractionalSolution, LpError};
use crate::model::{
    is_feasible_direct, validate_instance, EdgeSelection, FgcInstance, InstanceError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    pub max_edges: usize,
    pub max_vertices: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        Self {
            max_edges: 22,
            max_vertices: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactError {
    #[error("{m} edges exceed the exact-search limit of {limit}")]
    TooManyEdges { m: usize, limit: usize },
    #[error("{n} vertices exceed the brute-force limit of {limit}")]
    TooManyVertices { n: usize, limit: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactResult {
    pub best_selection: EdgeSelection,
    pub best_cost: f64,
    pub nodes_explored: u64,
}

pub fn exact_opt(inst: &FgcInstance) -> Result<ExactResult, ExactError> {
    exact_opt_with(inst, &ExactLimits::default())
}

/// Branch and bound over edges in ascending cost order, include branch
/// first. A node is cut off when its cost exceeds the incumbent, or when
/// some cut can no longer be covered even if every undecided edge is taken.
/// Among optimal sets the lexicographically smallest sorted id list wins.
pub fn exact_opt_with(inst: &FgcInstance, limits: &ExactLimits) -> Result<ExactResult, ExactError> {
    let (n, m) = (inst.vertex_count(), inst.edge_count());
    if m > limits.max_edges {
        return Err(ExactError::TooManyEdges {
            m,
            limit: limits.max_edges,
        });
    }
    if n > limits.max_vertices {
        return Err(ExactError::TooManyVertices {
            n,
            limit: limits.max_vertices,
        });
    }
    validate_instance(inst)?;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| inst.costs()[a].total_cmp(&inst.costs()[b]).then(a.cmp(&b)));

    let masks: Vec<u64> = (1..(1u64 << (n - 1))).map(|h| h << 1).collect();
    let mut cuts_of = vec![Vec::new(); m];
    let mut avail: Vec<(u32, u32)> = vec![(0, 0); masks.len()];
    for (c, &mask) in masks.iter().enumerate() {
        for (e, &(u, v)) in inst.graph().edges().iter().enumerate() {
            if ((mask >> u) ^ (mask >> v)) & 1 == 1 {
                cuts_of[e].push(c as u32);
                avail[c].1 += 1;
                avail[c].0 += inst.is_safe(e) as u32;
            }
        }
    }

    let all = EdgeSelection::all(m);
    let mut search = Search {
        inst,
        order,
        cuts_of,
        avail,
        chosen: Vec::new(),
        cost: 0.0,
        best: (inst.cost_of(&all), all),
        nodes: 0,
    };
    search.dfs(0)?;
    let (best_cost, best_selection) = search.best;
    Ok(ExactResult {
        best_selection,
        best_cost,
        nodes_explored: search.nodes,
    })
}

struct Search<'a> {
    inst: &'a FgcInstance,
    order: Vec<usize>,
    cuts_of: Vec<Vec<u32>>,
    /// (safe, total) edges of each cut that are chosen or undecided
    avail: Vec<(u32, u32)>,
    chosen: Vec<usize>,
    cost: f64,
    best: (f64, EdgeSelection),
    nodes: u64,
}

fn tol(x: f64) -> f64 {
    1e-9 * x.abs().max(1.0)
}

impl Search<'_> {
    fn dfs(&mut self, k: usize) -> Result<(), ExactError> {
        self.nodes += 1;
        if self.cost > self.best.0 + tol(self.best.0) {
            return Ok(());
        }
        if k == self.order.len() {
            return self.leaf();
        }
        let e = self.order[k];
        let c = self.inst.costs()[e];

        self.chosen.push(e);
        let saved = self.cost;
        self.cost += c;
        self.dfs(k + 1)?;
        self.cost = saved;
        self.chosen.pop();

        let safe = self.inst.is_safe(e) as u32;
        let (p, q) = (self.inst.p(), self.inst.q());
        let mut repairable = true;
        for &cut in &self.cuts_of[e] {
            let a = &mut self.avail[cut as usize];
            a.0 -= safe;
            a.1 -= 1;
            repairable &= a.0 >= p || a.1 >= p + q;
        }
        if repairable {
            self.dfs(k + 1)?;
        }
        for &cut in &self.cuts_of[e] {
            let a = &mut self.avail[cut as usize];
            a.0 += safe;
            a.1 += 1;
        }
        Ok(())
    }

    fn leaf(&mut self) -> Result<(), ExactError> {
        let f = EdgeSelection::new(self.chosen.iter().copied());
        let cost = self.inst.cost_of(&f);
        let (best_cost, best) = &self.best;
        let better = cost < best_cost - tol(*best_cost)
            || (cost <= best_cost + tol(*best_cost) && f.ids() < best.ids());
        if better && is_feasible_direct(self.inst, &f)?.feasible {
            self.best = (cost, f);
        }
        Ok(())
    }
}

/// A violated row found by [`separate_bruteforce`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolatedRow {
    pub row: ConstraintRow,
    pub violation: f64,
}

pub const BRUTEFORCE_VERTEX_LIMIT: usize = 12;

/// Every `J_{a,b}` row of every canonical cut whose violation exceeds `eps`,
/// by violation descending (stable in cut order, then `(a, b)` order).
///
/// Row values are computed here from the inequality directly, independent
/// of the coefficients stored on [`ConstraintRow`].
pub fn separate_bruteforce(
    inst: &FgcInstance,
    x: &FractionalSolution,
    eps: f64,
) -> Result<Vec<ViolatedRow>, ExactError> {
    let n = inst.vertex_count();
    if n > BRUTEFORCE_VERTEX_LIMIT {
        return Err(ExactError::TooManyVertices {
            n,
            limit: BRUTEFORCE_VERTEX_LIMIT,
        });
    }
    if x.len() != inst.edge_count() {
        return Err(LpError::LengthMismatch {
            expected: inst.edge_count(),
            got: x.len(),
        }
        .into());
    }
    let (p, q) = (inst.p() as i64, inst.q() as i64);
    let mut out = Vec::new();
    for half in 1..(1u64 << (n - 1)) {
        let side = VertexSet::from_mask(n, half << 1);
        let delta: Vec<usize> = inst
            .graph()
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| side.contains(u) != side.contains(v))
            .map(|(e, _)| e)
            .collect();
        let mut ls: Vec<usize> = delta.iter().copied().filter(|&e| inst.is_safe(e)).collect();
        let mut lu: Vec<usize> = delta
            .iter()
            .copied()
            .filter(|&e| !inst.is_safe(e))
            .collect();
        for l in [&mut ls, &mut lu] {
            l.sort_by(|&e, &f| x[f].partial_cmp(&x[e]).unwrap().then(e.cmp(&f)));
        }
        let cut = Cut::from_set(n, side)?;
        for a in 0..=(p as usize - 1).min(ls.len()) {
            for b in 0..=((p + q) as usize - 1).min(lu.len()) {
                let j: Vec<usize> = ls[..a].iter().chain(&lu[..b]).copied().collect();
                let k: Vec<usize> = delta.iter().copied().filter(|e| !j.contains(e)).collect();
                let alpha1 = (p - a as i64).max(0) as f64;
                let alpha2 = (q - b as i64).max(0) as f64;
                let rhs = alpha1 * (p + q - (a + b) as i64).max(0) as f64;
                let x_k: f64 = k.iter().map(|&e| x[e]).sum();
                let x_ks: f64 = k.iter().filter(|&&e| inst.is_safe(e)).map(|&e| x[e]).sum();
                let violation = rhs - (alpha1 * x_k + alpha2 * x_ks);
                if violation > eps {
                    out.push(ViolatedRow {
                        row: constraint_row(inst, &cut, &j)?,
                        violation,
                    });
                }
            }
        }
    }
    out.sort_by(|r, s| s.violation.total_cmp(&r.violation));
    Ok(out)
}

/// Exact number of canonical cuts with capacity at most `alpha` times the
/// minimum cut.
pub fn count_cuts_at_most(
    g: &Multigraph,
    caps: &Capacities,
    alpha: f64,
) -> Result<usize, ExactError> {
    Ok(count_cuts_at_most_exhaustive(
        g,
        caps,
        alpha,
        crate::graph::EnumerationLimits::default().exhaustive_limit,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn two_vertex(u2: f64) -> FgcInstance {
        instance(
            2,
            vec![(0, 1); 3],
            vec![Safe, Unsafe, Unsafe],
            vec![5.0, 1.0, u2],
            1,
            1,
        )
    }

    #[test]
    fn two_vertex_optimum() {
        let r = exact_opt(&two_vertex(1.0)).unwrap();
        assert_eq!(r.best_cost, 2.0);
        assert_eq!(r.best_selection, EdgeSelection::new([1, 2]));
        let r = exact_opt(&two_vertex(10.0)).unwrap();
        assert_eq!(r.best_cost, 5.0);
        assert_eq!(r.best_selection, EdgeSelection::new([0]));
    }

    #[test]
    fn triangle_is_spanning_tree() {
        let inst = instance(
            3,
            vec![(0, 1), (1, 2), (0, 2)],
            vec![Safe; 3],
            vec![1.0; 3],
            1,
            0,
        );
        let r = exact_opt(&inst).unwrap();
        assert_eq!(r.best_cost, 2.0);
        assert_eq!(r.best_selection, EdgeSelection::new([0, 1]));
    }

    #[test]
    fn zero_cost_ties_prefer_smallest_list() {
        let inst = instance(2, vec![(0, 1); 3], vec![Safe; 3], vec![0.0, 1.0, 0.0], 1, 0);
        let r = exact_opt(&inst).unwrap();
        assert_eq!(r.best_cost, 0.0);
        assert_eq!(r.best_selection, EdgeSelection::new([0]));
    }

    #[test]
    fn limits() {
        let inst = instance(2, vec![(0, 1); 23], vec![Safe; 23], vec![1.0; 23], 1, 0);
        assert_eq!(
            exact_opt(&inst).unwrap_err(),
            ExactError::TooManyEdges { m: 23, limit: 22 }
        );
        let inst = instance(
            13,
            (0..13).map(|i| (i, (i + 1) % 13)).collect(),
            vec![Safe; 13],
            vec![1.0; 13],
            1,
            0,
        );
        assert!(matches!(
            separate_bruteforce(&inst, &FractionalSolution::ones(13), 0.0),
            Err(ExactError::TooManyVertices { .. })
        ));
    }

    #[test]
    fn all_ones_and_zeros() {
        let inst = instance(
            4,
            vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)],
            vec![Safe, Safe, Unsafe, Safe, Unsafe],
            vec![1.0; 5],
            1,
            1,
        );
        assert!(
            separate_bruteforce(&inst, &FractionalSolution::ones(5), 0.0)
                .unwrap()
                .is_empty()
        );
        let rows = separate_bruteforce(&inst, &FractionalSolution::zeros(5), 1e-7).unwrap();
        let empty_j: Vec<_> = rows.iter().filter(|r| r.row.j_edges.is_empty()).collect();
        assert_eq!(empty_j.len(), 7);
        assert!(empty_j.iter().all(|r| r.violation == 2.0));
    }

    #[test]
    fn gadget_rows() {
        let inst = instance(
            2,
            vec![(0, 1); 4],
            vec![Safe, Unsafe, Unsafe, Unsafe],
            vec![1.0; 4],
            2,
            4,
        );
        // E itself is infeasible here, but brute-force separation does not need a valid instance
        let rows = separate_bruteforce(&inst, &FractionalSolution::ones(4), 1e-7).unwrap();
        let mut ab: Vec<(u32, u32, f64)> = rows
            .iter()
            .map(|r| (r.row.a, r.row.b, r.violation))
            .collect();
        assert_eq!(ab[0], (0, 3, 3.0));
        ab.sort_by_key(|x| (x.0, x.1));
        assert_eq!(
            ab,
            vec![
                (0, 1, 1.0),
                (0, 2, 2.0),
                (0, 3, 3.0),
                (1, 0, 2.0),
                (1, 1, 2.0),
                (1, 2, 2.0),
                (1, 3, 2.0)
            ]
        );
    }

    #[test]
    fn counts() {
        for n in 4..=10 {
            let g = Multigraph::cycle(n).unwrap();
            let caps = Capacities::uniform(n, 1.0).unwrap();
            assert_eq!(count_cuts_at_most(&g, &caps, 1.0).unwrap(), n * (n - 1) / 2);
        }
        let g = Multigraph::cycle(4).unwrap();
        assert_eq!(
            count_cuts_at_most(&g, &Capacities::uniform(4, 1.0).unwrap(), 2.0).unwrap(),
            7
        );
    }
}
