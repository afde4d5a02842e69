//! Dense simplex for covering LPs `min c·x  s.t.  A x >= b,  0 <= x <= 1`
//! with `A, b, c >= 0`.
//!
//! The solver works on the dual
//!
//! ```text
//! max b·y - 1·w   s.t.   Aᵀy - w + s = c,   y, w, s >= 0
//! ```
//!
//! whose slack basis is feasible because `c >= 0`, so no phase one is needed.
//! A new primal row is a new dual column, which keeps the current basis
//! primal-feasible: the cutting-plane loop adds rows and re-optimizes from
//! where it stopped. The primal solution is read off the reduced costs of
//! the slack columns.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::LpError;

/// Largest allowed row violation of a returned floating-point solution.
pub const ROW_FEASIBILITY_TOL: f64 = 1e-9;

const DEGENERATE_STREAK_BEFORE_BLAND: usize = 64;

/// Scalar field the simplex runs over.
pub trait LpScalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Pivot and optimality tolerance; zero for exact arithmetic.
    fn tolerance() -> Self;
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
}

impl LpScalar for f64 {
    fn tolerance() -> Self {
        1e-11
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl LpScalar for BigRational {
    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite input")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// One covering row `Σ coef·x_e >= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringRow {
    pub terms: Vec<(usize, f64)>,
    pub rhs: f64,
}

impl CoveringRow {
    pub fn new(terms: Vec<(usize, f64)>, rhs: f64) -> Self {
        Self { terms, rhs }
    }

    pub fn lhs(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|&(e, c)| c * x[e]).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactLpSolution {
    pub x: Vec<BigRational>,
    pub value: BigRational,
}

/// Solves the covering LP over the box; `costs.len()` is the variable count.
pub fn lp_solve(rows: &[CoveringRow], costs: &[f64]) -> Result<LpSolution, LpError> {
    let mut tableau = CoveringSimplex::<f64>::new(costs)?;
    for row in rows {
        tableau.add_row(row)?;
    }
    tableau.solve()?;
    tableau.float_solution(rows)
}

/// Same LP in exact rational arithmetic (inputs are converted exactly).
pub fn lp_solve_exact(rows: &[CoveringRow], costs: &[f64]) -> Result<ExactLpSolution, LpError> {
    let mut tableau = CoveringSimplex::<BigRational>::new(costs)?;
    for row in rows {
        tableau.add_row(row)?;
    }
    tableau.solve()?;
    let x = tableau.primal();
    let value = x
        .iter()
        .zip(costs)
        .fold(BigRational::zero(), |acc, (xe, &c)| {
            acc + xe.clone() * BigRational::from_f64(c)
        });
    Ok(ExactLpSolution { x, value })
}

/// Warm-startable simplex state on the dual of the covering LP.
#[derive(Debug, Clone)]
pub struct CoveringSimplex<T> {
    m: usize,
    costs: Vec<f64>,
    /// `m` rows; columns: slacks `s` (0..m), box duals `w` (m..2m), row duals `y` (2m..).
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    /// Reduced profits `obj_j - z_j` (maximization).
    reduced: Vec<T>,
    basis: Vec<usize>,
    pivots: usize,
}

impl<T: LpScalar> CoveringSimplex<T> {
    pub fn new(costs: &[f64]) -> Result<Self, LpError> {
        if let Some((edge, &c)) = costs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_finite() || **c < 0.0)
        {
            return Err(LpError::BadInput(format!("cost of variable {edge} is {c}")));
        }
        let m = costs.len();
        let mut rows = vec![vec![T::zero(); 2 * m]; m];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = T::one();
            row[m + i] = -T::one();
        }
        let mut reduced = vec![T::zero(); 2 * m];
        for r in reduced.iter_mut().skip(m) {
            *r = -T::one();
        }
        Ok(Self {
            m,
            costs: costs.to_vec(),
            rows,
            rhs: costs.iter().map(|&c| T::from_f64(c)).collect(),
            reduced,
            basis: (0..m).collect(),
            pivots: 0,
        })
    }

    pub fn row_count(&self) -> usize {
        self.reduced.len() - 2 * self.m
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// Appends the primal row as a new dual column priced against the
    /// current basis.
    pub fn add_row(&mut self, row: &CoveringRow) -> Result<(), LpError> {
        if !(row.rhs.is_finite() && row.rhs >= 0.0) {
            return Err(LpError::BadInput(format!(
                "row rhs {} must be finite and >= 0",
                row.rhs
            )));
        }
        let mut dense = vec![T::zero(); self.m];
        for &(e, c) in &row.terms {
            if e >= self.m {
                return Err(LpError::BadInput(format!(
                    "row references variable {e} of {}",
                    self.m
                )));
            }
            if !(c.is_finite() && c >= 0.0) {
                return Err(LpError::BadInput(format!(
                    "row coefficient {c} must be >= 0"
                )));
            }
            dense[e] = dense[e].clone() + T::from_f64(c);
        }
        // slack columns hold B⁻¹, so B⁻¹a = Σ_e a_e · column(s_e)
        let mut priced = T::from_f64(row.rhs);
        for tab_row in self.rows.iter_mut() {
            let mut entry = T::zero();
            for (e, a) in dense.iter().enumerate() {
                if !a.is_zero() && !tab_row[e].is_zero() {
                    entry = entry + tab_row[e].clone() * a.clone();
                }
            }
            tab_row.push(entry);
        }
        // reduced profit = b - π·a with π_e = -reduced[s_e]
        for (e, a) in dense.iter().enumerate() {
            if !a.is_zero() {
                priced = priced + self.reduced[e].clone() * a.clone();
            }
        }
        self.reduced.push(priced);
        Ok(())
    }

    pub fn solve(&mut self) -> Result<(), LpError> {
        let tol = T::tolerance();
        let cols = self.reduced.len();
        let cap = 200 * (self.m + cols) + 1000;
        let mut degenerate = 0usize;
        let mut bland = false;
        for _ in 0..cap {
            let entering = if bland {
                (0..cols).find(|&j| self.reduced[j] > tol)
            } else {
                (0..cols)
                    .filter(|&j| self.reduced[j] > tol)
                    .fold(None, |best: Option<usize>, j| match best {
                        Some(b) if self.reduced[b] >= self.reduced[j] => Some(b),
                        _ => Some(j),
                    })
            };
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.m {
                let a = &self.rows[i][col];
                if *a > tol {
                    let ratio = self.rhs[i].clone() / a.clone();
                    let better = match &leave {
                        None => true,
                        Some((r, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, ratio)) = leave else {
                return Err(LpError::Infeasible);
            };
            if ratio.is_zero() || ratio <= tol {
                degenerate += 1;
                if degenerate > DEGENERATE_STREAK_BEFORE_BLAND {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
            self.pivot(row, col);
        }
        Err(LpError::Numerical {
            detail: format!("simplex iteration cap {cap} reached"),
            rows: Vec::new(),
        })
    }

    fn pivot(&mut self, row: usize, col: usize) {
        self.pivots += 1;
        let piv = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = v.clone() / piv.clone();
        }
        self.rhs[row] = self.rhs[row].clone() / piv;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.m {
            if i == row {
                continue;
            }
            let f = self.rows[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for (v, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = v.clone() - f.clone() * p.clone();
                }
            }
            self.rhs[i] = self.rhs[i].clone() - f * pivot_rhs.clone();
        }
        let f = self.reduced[col].clone();
        for (v, p) in self.reduced.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v = v.clone() - f.clone() * p.clone();
            }
        }
        self.basis[row] = col;
    }

    /// Primal values `x_e = -reduced(s_e)`.
    pub fn primal(&self) -> Vec<T> {
        (0..self.m).map(|e| -self.reduced[e].clone()).collect()
    }
}

impl CoveringSimplex<f64> {
    /// Clamped primal solution, verified against `rows` (the rows this
    /// tableau was built from, used for diagnostics and the feasibility check).
    pub fn float_solution(&self, rows: &[CoveringRow]) -> Result<LpSolution, LpError> {
        let x: Vec<f64> = self
            .primal()
            .into_iter()
            .map(|v| {
                let v = v.clamp(0.0, 1.0);
                if v < 1e-12 {
                    0.0
                } else if v > 1.0 - 1e-12 {
                    1.0
                } else {
                    v
                }
            })
            .collect();
        let worst = rows
            .iter()
            .map(|r| r.rhs - r.lhs(&x))
            .fold(f64::NEG_INFINITY, f64::max);
        if worst > ROW_FEASIBILITY_TOL {
            return Err(LpError::Numerical {
                detail: format!("row violated by {worst:e} after solve"),
                rows: rows.to_vec(),
            });
        }
        let value = x.iter().zip(&self.costs).map(|(a, c)| a * c).sum();
        Ok(LpSolution { x, value })
    }
}

/// Exact rational from an integer, for tests and callers building exact rows.
pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
