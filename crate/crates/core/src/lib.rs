//! Solver library for `(p,q)`-flexible graph connectivity.
//!
//! Given a graph whose edges are split into safe and unsafe ones, find a
//! cheap edge set that stays `p`-edge-connected after any `q` unsafe edges
//! fail. The crate provides:
//!
//! * [`graph`]: multigraphs, canonical cuts, exact minimum cut and
//!   enumeration of all cuts below a capacity threshold;
//! * [`model`]: instances and two independent feasibility checkers;
//! * [`lp`]: the knapsack-cover LP relaxation, its separation oracle and a
//!   cutting-plane driver;
//! * [`rounding`]: independent randomized rounding with a Las Vegas loop;
//! * [`exact`]: brute-force oracles for desk-scale verification;
//! * [`io`] and [`harness`]: instance files, random generation and reports.

pub mod exact;
pub mod graph;
pub mod harness;
pub mod io;
pub mod lp;
pub mod model;
pub mod rounding;

pub use graph::{Capacities, Cut, Multigraph};
pub use model::{EdgeKind, EdgeSelection, FeasibilityVerdict, FgcInstance};
