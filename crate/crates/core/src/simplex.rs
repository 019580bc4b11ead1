//! Dense tableau simplex over exact rationals.
//!
//! Solves `maximize c·x  subject to  A x <= b, x >= 0` with `b >= 0`, so the
//! slack basis is feasible from the start. Pivots follow Bland's rule
//! (lowest-index entering column, lowest-index leaving variable on ratio
//! ties), which cannot cycle.

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Vec<Rational>>,
    pub bounds: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    /// Optimal primal point.
    pub x: Vec<Rational>,
    /// Optimal multipliers of the `A x <= b` rows, read off the final tableau.
    pub dual: Vec<Rational>,
    /// `c·x`
    pub objective: Rational,
    /// `b·y`; equals `objective` at optimality.
    pub dual_objective: Rational,
    pub pivots: usize,
}

struct Tableau {
    /// `m` constraint rows over `n + m` columns followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs `z_j - c_j` followed by the current objective value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cost.len() - 1
    }

    fn entering(&self) -> Option<usize> {
        (0..self.width()).find(|&j| self.cost[j].is_negative())
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let rhs = self.width();
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let ratio = row[rhs].checked_div(&row[col]).expect("positive pivot");
            let better = match &best {
                None => true,
                Some((b, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*b]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in &mut self.rows[row] {
            *v = v.checked_div(&p).expect("nonzero pivot");
        }
        let pivot_row = self.rows[row].clone();
        let eliminate = |target: &mut Vec<Rational>| {
            let factor = target[col].clone();
            if factor.is_zero() {
                return;
            }
            for (t, s) in target.iter_mut().zip(&pivot_row) {
                if !s.is_zero() {
                    *t = &*t - &factor * s;
                }
            }
        };
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i != row {
                eliminate(r);
            }
        }
        eliminate(&mut self.cost);
        self.basis[row] = col;
    }
}

impl LinearProgram {
    fn check(&self) -> Result<()> {
        let n = self.objective.len();
        if self.constraints.len() != self.bounds.len() {
            return Err(Error::InvalidProgram(format!(
                "{} constraint rows but {} bounds",
                self.constraints.len(),
                self.bounds.len()
            )));
        }
        if let Some(row) = self.constraints.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidProgram(format!(
                "constraint row of length {} for {n} variables",
                row.len()
            )));
        }
        if self.bounds.iter().any(Rational::is_negative) {
            return Err(Error::InvalidProgram(
                "negative right-hand side; the slack basis is infeasible".into(),
            ));
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<LpSolution> {
        self.check()?;
        let n = self.objective.len();
        let m = self.constraints.len();
        let rows = self
            .constraints
            .iter()
            .zip(&self.bounds)
            .enumerate()
            .map(|(i, (a, b))| {
                let mut row = a.clone();
                row.extend((0..m).map(|k| {
                    if k == i {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row.push(b.clone());
                row
            })
            .collect();
        let mut cost: Vec<Rational> = self.objective.iter().map(|c| -c).collect();
        cost.extend(std::iter::repeat_n(Rational::zero(), m + 1));
        let mut t = Tableau {
            rows,
            cost,
            basis: (n..n + m).collect(),
        };

        let mut pivots = 0;
        while let Some(col) = t.entering() {
            let row = t.leaving(col).ok_or(Error::UnboundedProgram)?;
            t.pivot(row, col);
            pivots += 1;
        }

        let rhs = t.width();
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < n {
                x[b] = t.rows[i][rhs].clone();
            }
        }
        let dual: Vec<Rational> = (0..m).map(|i| t.cost[n + i].clone()).collect();
        let objective = self.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        let dual_objective = self.bounds.iter().zip(&dual).map(|(b, y)| b * y).sum();
        Ok(LpSolution {
            x,
            dual,
            objective,
            dual_objective,
            pivots,
        })
    }
}
