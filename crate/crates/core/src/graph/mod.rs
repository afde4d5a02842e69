//! Undirected multigraphs, vertex bipartitions and cut arithmetic.
//!
//! A [`Cut`] is stored in canonical form: the side that does *not* contain
//! vertex 0. Both shores of a bipartition therefore map to the same value,
//! which makes cuts cheap to hash and deduplicate during enumeration.

mod enumerate;
mod mincut;

pub use enumerate::{
    count_cuts_at_most_exhaustive, enumerate_cuts_below, is_below, CutSearch, EnumerationLimits,
    EnumerationMode, ModeKind, ModePolicy,
};
pub use mincut::min_cut;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::fmt;
use std::hash::{Hash, Hasher};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge {edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge {edge} references vertex {vertex} but the graph has {n} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        n: usize,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("trivial cut: side must be a nonempty proper subset of the vertices")]
    TrivialCut,
    #[error("cut is over {cut} vertices but the graph has {graph}")]
    CutSizeMismatch { cut: usize, graph: usize },
    #[error("expected {expected} capacities, got {got}")]
    CapacityLength { expected: usize, got: usize },
    #[error("capacity of edge {edge} is {value}; capacities must be finite and nonnegative")]
    BadCapacity { edge: usize, value: f64 },
    #[error("threshold must be positive and finite, got {0}")]
    BadThreshold(f64),
    #[error("instance too large for exhaustive mode: {n} vertices exceeds the limit of {limit}")]
    TooLargeForExhaustive { n: usize, limit: usize },
    #[error("contraction mode needs a positive minimum cut, got {0}")]
    ZeroMinCut(f64),
    #[error("contraction mode: threshold/min-cut ratio {alpha:.3} exceeds alpha_max {alpha_max}")]
    AlphaTooLarge { alpha: f64, alpha_max: f64 },
    #[error("failure probability must lie in (0, 1), got {0}")]
    BadFailProb(f64),
}

/// An undirected multigraph on vertices `0..n` with dense edge ids `0..m`.
///
/// Parallel edges are allowed, self-loops are not. Connectivity is not a
/// construction invariant (generators need to probe candidate graphs); the
/// algorithms that require it check [`Multigraph::is_connected`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::TooFewVertices(n));
        }
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        edge: id,
                        vertex: w,
                        n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    edge: id,
                    vertex: u,
                });
            }
        }
        Ok(Self { n, edges })
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn is_connected(&self) -> bool {
        let mut dsu = DisjointSets::new(self.n);
        let mut parts = self.n;
        for &(u, v) in &self.edges {
            if dsu.union(u, v) {
                parts -= 1;
            }
        }
        parts == 1
    }

    /// `δ(R)`: ids of the edges with exactly one endpoint on the cut's side, ascending.
    pub fn cut_edges(&self, cut: &Cut) -> Result<Vec<usize>, GraphError> {
        self.check_cut(cut)?;
        Ok(self.crossing(cut.side()).collect())
    }

    pub(crate) fn crossing<'a>(&'a self, side: &'a VertexSet) -> impl Iterator<Item = usize> + 'a {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, &(u, v))| side.contains(u) != side.contains(v))
            .map(|(id, _)| id)
    }

    pub fn cut_capacity(&self, caps: &Capacities, cut: &Cut) -> Result<f64, GraphError> {
        self.check_cut(cut)?;
        self.check_caps(caps)?;
        Ok(self.crossing(cut.side()).map(|e| caps[e]).sum())
    }

    pub(crate) fn check_cut(&self, cut: &Cut) -> Result<(), GraphError> {
        if cut.vertex_count() != self.n {
            return Err(GraphError::CutSizeMismatch {
                cut: cut.vertex_count(),
                graph: self.n,
            });
        }
        Ok(())
    }

    pub(crate) fn check_caps(&self, caps: &Capacities) -> Result<(), GraphError> {
        if caps.len() != self.edges.len() {
            return Err(GraphError::CapacityLength {
                expected: self.edges.len(),
                got: caps.len(),
            });
        }
        Ok(())
    }
}

/// Per-edge nonnegative finite capacities, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Capacities(Vec<f64>);

impl Capacities {
    pub fn new(values: Vec<f64>) -> Result<Self, GraphError> {
        for (edge, &value) in values.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(GraphError::BadCapacity { edge, value });
            }
        }
        Ok(Self(values))
    }

    pub fn uniform(m: usize, value: f64) -> Result<Self, GraphError> {
        Self::new(vec![value; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::Index<usize> for Capacities {
    type Output = f64;

    fn index(&self, edge: usize) -> &f64 {
        &self.0[edge]
    }
}

/// Bitset over vertex indices. One inline word covers graphs up to 64
/// vertices; larger graphs spill to the heap.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    words: SmallVec<[u64; 1]>,
}

impl VertexSet {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            words: SmallVec::from_elem(0, n.div_ceil(64).max(1)),
        }
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut set = Self::with_capacity(n);
        set.words[0] = mask;
        set
    }

    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w >> (v % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| i * 64 + b)
        })
    }

    fn complement(&self, n: usize) -> Self {
        let mut out = Self::with_capacity(n);
        for v in 0..n {
            if !self.contains(v) {
                out.insert(v);
            }
        }
        out
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A nontrivial vertex bipartition in canonical form.
///
/// Equality and hashing only look at the bipartition; the cached capacity
/// (set by enumeration routines) is informational.
#[derive(Clone)]
pub struct Cut {
    n: usize,
    side: VertexSet,
    capacity: Option<f64>,
}

impl Cut {
    /// Builds the cut `δ(R)` for `R = side`; either shore may be given.
    pub fn new(n: usize, side: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        let mut set = VertexSet::with_capacity(n);
        for v in side {
            if v >= n {
                return Err(GraphError::VertexOutOfRange {
                    edge: usize::MAX,
                    vertex: v,
                    n,
                });
            }
            set.insert(v);
        }
        Self::from_set(n, set)
    }

    pub fn from_set(n: usize, side: VertexSet) -> Result<Self, GraphError> {
        let size = side.len();
        if size == 0 || size >= n {
            return Err(GraphError::TrivialCut);
        }
        let side = if side.contains(0) {
            side.complement(n)
        } else {
            side
        };
        Ok(Self {
            n,
            side,
            capacity: None,
        })
    }

    /// Canonical cut from a bitmask that must already exclude vertex 0.
    pub(crate) fn from_canonical_mask(n: usize, mask: u64, capacity: f64) -> Self {
        debug_assert!(mask & 1 == 0 && mask != 0);
        Self {
            n,
            side: VertexSet::from_mask(n, mask),
            capacity: Some(capacity),
        }
    }

    pub(crate) fn with_capacity(mut self, capacity: f64) -> Self {
        self.capacity = Some(capacity);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The shore not containing vertex 0.
    pub fn side(&self) -> &VertexSet {
        &self.side
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.side.iter().collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.side.contains(v)
    }

    pub fn capacity(&self) -> Option<f64> {
        self.capacity
    }
}

impl PartialEq for Cut {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.side == other.side
    }
}

impl Eq for Cut {}

impl Hash for Cut {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.side.hash(state);
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cut {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.side).cmp(&(other.n, &other.side))
    }
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cut{:?}", self.side)?;
        if let Some(c) = self.capacity {
            write!(f, "@{c}")?;
        }
        Ok(())
    }
}

impl Serialize for Cut {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.vertices().serialize(serializer)
    }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns true when the two vertices were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn cut_edges_of_triangle_vertex() {
        let g = triangle();
        let cut = Cut::new(3, [0]).unwrap();
        assert_eq!(g.cut_edges(&cut).unwrap(), vec![0, 2]);
    }

    #[test]
    fn cut_edges_of_path_middle() {
        let g = Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let cut = Cut::new(3, [1]).unwrap();
        assert_eq!(g.cut_edges(&cut).unwrap(), vec![0, 1]);
    }

    #[test]
    fn cut_edges_of_four_cycle_antipodes() {
        let g = Multigraph::cycle(4).unwrap();
        let cut = Cut::new(4, [0, 2]).unwrap();
        assert_eq!(g.cut_edges(&cut).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn trivial_cuts_are_rejected() {
        assert_eq!(Cut::new(3, []).unwrap_err(), GraphError::TrivialCut);
        assert_eq!(Cut::new(3, [0, 1, 2]).unwrap_err(), GraphError::TrivialCut);
    }

    #[test]
    fn cut_from_other_graph_is_a_contract_violation() {
        let g = triangle();
        let cut = Cut::new(4, [1]).unwrap();
        assert!(matches!(
            g.cut_edges(&cut),
            Err(GraphError::CutSizeMismatch { .. })
        ));
    }

    #[test]
    fn canonical_form_ignores_shore() {
        let a = Cut::new(5, [0, 3]).unwrap();
        let b = Cut::new(5, [1, 2, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices(), vec![1, 2, 4]);
    }

    #[test]
    fn wide_vertex_sets_spill_past_one_word() {
        let n = 130;
        let cut = Cut::new(n, [0, 64, 129]).unwrap();
        assert_eq!(cut.side().len(), n - 3);
        assert!(!cut.contains(129));
        assert!(cut.contains(65));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Multigraph::new(1, vec![]).unwrap_err(),
            GraphError::TooFewVertices(1)
        );
        assert_eq!(
            Multigraph::new(2, vec![(1, 1)]).unwrap_err(),
            GraphError::SelfLoop { edge: 0, vertex: 1 }
        );
        assert!(Capacities::new(vec![1.0, -0.5]).is_err());
        assert!(Capacities::new(vec![f64::NAN]).is_err());
        assert!(!Multigraph::new(4, vec![(0, 1), (2, 3)])
            .unwrap()
            .is_connected());
    }
}
