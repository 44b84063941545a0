//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, lowest-index
//! leaving basic variable on ratio ties), so the method terminates on
//! degenerate problems.

use num_traits::{Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective . x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    pub pivots: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<Column>,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let factor = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut z = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                z += &cost[b] * &self.rows[i][j];
            }
        }
        &cost[j] - z
    }

    /// Runs simplex iterations for `cost` over columns allowed by `allowed`.
    fn optimize(&mut self, cost: &[Rational], allowed: impl Fn(Column) -> bool) -> Result<(), LpError> {
        loop {
            let entering = (0..self.kinds.len()).find(|&j| {
                allowed(self.kinds[j])
                    && !self.basis.contains(&j)
                    && self.reduced_cost(cost, j).is_positive()
            });
            let Some(c) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(LpError::Unbounded),
            }
        }
    }
}

impl LinearProgram {
    pub fn solve(&self) -> Result<LpSolution, LpError> {
        let n = self.objective.len();
        let m = self.constraints.len();

        let mut kinds = vec![Column::Structural; n];
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        // (row, kind, sign) column plan, appended after structural columns
        let mut extra: Vec<(usize, Column, i32)> = Vec::new();
        let mut basis = vec![usize::MAX; m];

        for (i, con) in self.constraints.iter().enumerate() {
            assert_eq!(con.coeffs.len(), n, "constraint {i} has wrong width");
            let flip = con.rhs.is_negative();
            let mut row = con.coeffs.clone();
            let mut b = con.rhs.clone();
            let mut rel = con.relation;
            if flip {
                row.iter_mut().for_each(|v| *v = -v.clone());
                b = -b;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            rows.push(row);
            rhs.push(b);
            match rel {
                Relation::Le => extra.push((i, Column::Slack, 1)),
                Relation::Ge => {
                    extra.push((i, Column::Slack, -1));
                    extra.push((i, Column::Artificial, 1));
                }
                Relation::Eq => extra.push((i, Column::Artificial, 1)),
            }
        }
        for (i, kind, sign) in extra {
            let j = kinds.len();
            kinds.push(kind);
            for (k, row) in rows.iter_mut().enumerate() {
                row.push(if k == i {
                    Rational::from_integer(sign.into())
                } else {
                    Rational::zero()
                });
            }
            if sign > 0 {
                basis[i] = j;
            }
        }

        let mut t = Tableau {
            rows,
            rhs,
            basis,
            kinds,
            pivots: 0,
        };
        let total = t.kinds.len();

        if t.kinds.contains(&Column::Artificial) {
            let cost: Vec<Rational> = t
                .kinds
                .iter()
                .map(|k| match k {
                    Column::Artificial => -Rational::from_integer(1.into()),
                    _ => Rational::zero(),
                })
                .collect();
            t.optimize(&cost, |_| true)?;
            let infeasibility: Rational = t
                .basis
                .iter()
                .zip(&t.rhs)
                .filter(|(&b, _)| t.kinds[b] == Column::Artificial)
                .map(|(_, v)| v.clone())
                .sum();
            if infeasibility.is_positive() {
                return Err(LpError::Infeasible);
            }
            // drive zero-level artificials out of the basis
            let mut i = 0;
            while i < t.rows.len() {
                if t.kinds[t.basis[i]] == Column::Artificial {
                    let replacement = (0..total)
                        .find(|&j| t.kinds[j] != Column::Artificial && !t.rows[i][j].is_zero());
                    match replacement {
                        Some(j) => t.pivot(i, j),
                        None => {
                            // redundant constraint
                            t.rows.remove(i);
                            t.rhs.remove(i);
                            t.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }

        let mut cost = vec![Rational::zero(); total];
        cost[..n].clone_from_slice(&self.objective);
        t.optimize(&cost, |k| k != Column::Artificial)?;

        let mut x = vec![Rational::zero(); n];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < n {
                x[b] = t.rhs[i].clone();
            }
        }
        let value = x
            .iter()
            .zip(&self.objective)
            .map(|(a, c)| a * c)
            .sum();
        Ok(LpSolution {
            value,
            x,
            pivots: t.pivots,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn con(coeffs: &[i64], relation: Relation, rhs: i64) -> Constraint {
        Constraint {
            coeffs: coeffs.iter().map(|&c| q(c)).collect(),
            relation,
            rhs: q(rhs),
        }
    }

    #[test]
    fn textbook_maximization() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let lp = LinearProgram {
            objective: vec![q(3), q(5)],
            constraints: vec![
                con(&[1, 0], Relation::Le, 4),
                con(&[0, 2], Relation::Le, 12),
                con(&[3, 2], Relation::Le, 18),
            ],
        };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.value, q(36));
        assert_eq!(sol.x, vec![q(2), q(6)]);
    }

    #[test]
    fn phase_one_with_ge_and_eq() {
        // min x + y  s.t. x + 2y >= 4, x - y = 1 -> x = 2, y = 1
        let lp = LinearProgram {
            objective: vec![q(-1), q(-1)],
            constraints: vec![con(&[1, 2], Relation::Ge, 4), con(&[1, -1], Relation::Eq, 1)],
        };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.x, vec![q(2), q(1)]);
        assert_eq!(sol.value, q(-3));
    }

    #[test]
    fn negative_rhs_is_normalized() {
        // -x <= -3 means x >= 3; min x
        let lp = LinearProgram {
            objective: vec![q(-1)],
            constraints: vec![con(&[-1], Relation::Le, -3)],
        };
        assert_eq!(lp.solve().unwrap().x, vec![q(3)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let infeasible = LinearProgram {
            objective: vec![q(1)],
            constraints: vec![con(&[1], Relation::Le, 1), con(&[1], Relation::Ge, 2)],
        };
        assert_eq!(infeasible.solve(), Err(LpError::Infeasible));
        let unbounded = LinearProgram {
            objective: vec![q(1), q(0)],
            constraints: vec![con(&[1, -1], Relation::Le, 1)],
        };
        assert_eq!(unbounded.solve(), Err(LpError::Unbounded));
    }

    #[test]
    fn redundant_equalities() {
        let lp = LinearProgram {
            objective: vec![q(1), q(1)],
            constraints: vec![
                con(&[1, 1], Relation::Eq, 2),
                con(&[2, 2], Relation::Eq, 4),
                con(&[1, 0], Relation::Le, 1),
            ],
        };
        assert_eq!(lp.solve().unwrap().value, q(2));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the largest-coefficient rule.
        let frac = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let lp = LinearProgram {
            objective: vec![frac(3, 4), q(-150), frac(1, 50), q(-6)],
            constraints: vec![
                Constraint {
                    coeffs: vec![frac(1, 4), q(-60), frac(-1, 25), q(9)],
                    relation: Relation::Le,
                    rhs: q(0),
                },
                Constraint {
                    coeffs: vec![frac(1, 2), q(-90), frac(-1, 50), q(3)],
                    relation: Relation::Le,
                    rhs: q(0),
                },
                Constraint {
                    coeffs: vec![q(0), q(0), q(1), q(0)],
                    relation: Relation::Le,
                    rhs: q(1),
                },
            ],
        };
        assert_eq!(lp.solve().unwrap().value, frac(1, 20));
    }
}
