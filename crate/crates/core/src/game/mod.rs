//! Exact zero-sum matrix games over probability simplices.
//!
//! The row player (outputs `y`, strategy `v`) maximizes `v^T A u`; the
//! column player (inputs `x`, strategy `u`) minimizes it. Payoffs must be
//! nonnegative with no all-zero column, which makes the value strictly
//! positive and lets each side be written as a normalized LP:
//!
//! * maximizer: `min 1.z  s.t.  A^T z >= 1, z >= 0`, value `1 / sum z`;
//! * minimizer: `max 1.w  s.t.  A w <= 1, w >= 0`, value `1 / sum w`.
//!
//! The two programs are solved independently, so the minimax equality is a
//! checked identity rather than an assumption.

pub mod fictitious;
pub mod lp;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::channel::{Channel, SupportMatrix};
use crate::error::{Error, Result};
use crate::{log2_rational, Rational};
use lp::{Constraint, LinearProgram, LpError, Relation};

/// Exact optimal play of a matrix game.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSolution {
    pub value: Rational,
    /// Optimal mixture over rows.
    pub maximizer: Vec<Rational>,
    /// Optimal mixture over columns.
    pub minimizer: Vec<Rational>,
    pub certificate: Certificate,
}

/// Payoff vectors proving optimality: `min(column_payoffs) = value =
/// max(row_payoffs)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// `(v^T A)_x` for every column `x`.
    pub column_payoffs: Vec<Rational>,
    /// `(A u)_y` for every row `y`.
    pub row_payoffs: Vec<Rational>,
}

impl GameSolution {
    /// Re-checks the certificate from scratch against `payoff`.
    pub fn verify(&self, payoff: &[Vec<Rational>]) -> bool {
        let cert = certificate(payoff, &self.maximizer, &self.minimizer);
        let is_simplex = |p: &[Rational]| {
            p.iter().all(|w| !w.is_negative()) && p.iter().sum::<Rational>().is_one()
        };
        is_simplex(&self.maximizer)
            && is_simplex(&self.minimizer)
            && cert.column_payoffs.iter().min() == Some(&self.value)
            && cert.row_payoffs.iter().max() == Some(&self.value)
    }
}

/// `psi` with its rate `log2(1/psi) / block_length`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactLogRate {
    pub psi: Rational,
    pub block_length: u32,
}

impl ExactLogRate {
    pub fn new(psi: Rational) -> Self {
        Self::per_block(psi, 1)
    }

    pub fn per_block(psi: Rational, block_length: u32) -> Self {
        assert!(psi.is_positive() && psi <= Rational::one(), "psi must lie in (0, 1]");
        assert!(block_length >= 1);
        ExactLogRate { psi, block_length }
    }

    pub fn rate(&self) -> f64 {
        if self.psi.is_one() {
            return 0.0;
        }
        -log2_rational(&self.psi) / f64::from(self.block_length)
    }

    /// Exact comparison of rates: `self.rate() < other.rate()`.
    pub fn rate_lt(&self, other: &ExactLogRate) -> bool {
        // log(1/a)/m < log(1/b)/n  <=>  b^m < a^n
        pow(&other.psi, self.block_length) < pow(&self.psi, other.block_length)
    }
}

impl fmt::Display for ExactLogRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = self.psi.recip();
        if self.block_length == 1 {
            write!(f, "log2({inv}) from psi {}", self.psi)
        } else {
            write!(f, "(1/{}) log2({inv}) from psi {}", self.block_length, self.psi)
        }
    }
}

fn pow(r: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * r)
}

/// Zero-error feedback capacity: zero when every input pair is confusable,
/// otherwise the feedback game rate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeedbackCapacity {
    Zero,
    Positive(ExactLogRate),
}

impl FeedbackCapacity {
    pub fn rate(&self) -> f64 {
        match self {
            FeedbackCapacity::Zero => 0.0,
            FeedbackCapacity::Positive(r) => r.rate(),
        }
    }

    /// `2^{-rate}` as an exact rational; 1 for the zero case.
    pub fn effective_psi(&self) -> Rational {
        match self {
            FeedbackCapacity::Zero => Rational::one(),
            FeedbackCapacity::Positive(r) => r.psi.clone(),
        }
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, FeedbackCapacity::Positive(_))
    }
}

fn validate(payoff: &[Vec<Rational>]) -> Result<(usize, usize)> {
    let rows = payoff.len();
    let cols = payoff.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Error::DegenerateMatrix("empty payoff matrix".into()));
    }
    if payoff.iter().any(|r| r.len() != cols) {
        return Err(Error::DegenerateMatrix("ragged payoff matrix".into()));
    }
    if payoff.iter().flatten().any(Signed::is_negative) {
        return Err(Error::DegenerateMatrix("negative payoff".into()));
    }
    if let Some(x) = (0..cols).find(|&x| payoff.iter().all(|r| r[x].is_zero())) {
        return Err(Error::DegenerateMatrix(format!("column {x} is all zero")));
    }
    Ok((rows, cols))
}

fn lp_failure(e: LpError) -> Error {
    // Both programs are feasible and bounded for validated payoffs.
    Error::DegenerateMatrix(format!("game LP reported {e:?}"))
}

/// Maximizer side: value and an optimal row mixture.
pub fn maximizer_side(payoff: &[Vec<Rational>]) -> Result<(Rational, Vec<Rational>)> {
    let (rows, cols) = validate(payoff)?;
    let lp = LinearProgram {
        objective: vec![-Rational::one(); rows],
        constraints: (0..cols)
            .map(|x| Constraint {
                coeffs: (0..rows).map(|y| payoff[y][x].clone()).collect(),
                relation: Relation::Ge,
                rhs: Rational::one(),
            })
            .collect(),
    };
    let sol = lp.solve().map_err(lp_failure)?;
    let total: Rational = sol.x.iter().sum();
    let strategy = sol.x.iter().map(|z| z / &total).collect();
    Ok((total.recip(), strategy))
}

/// Minimizer side: value and an optimal column mixture.
pub fn minimizer_side(payoff: &[Vec<Rational>]) -> Result<(Rational, Vec<Rational>)> {
    let (_, cols) = validate(payoff)?;
    let lp = LinearProgram {
        objective: vec![Rational::one(); cols],
        constraints: payoff
            .iter()
            .map(|row| Constraint {
                coeffs: row.clone(),
                relation: Relation::Le,
                rhs: Rational::one(),
            })
            .collect(),
    };
    let sol = lp.solve().map_err(lp_failure)?;
    let total: Rational = sol.x.iter().sum();
    let strategy = sol.x.iter().map(|w| w / &total).collect();
    Ok((total.recip(), strategy))
}

fn certificate(payoff: &[Vec<Rational>], v: &[Rational], u: &[Rational]) -> Certificate {
    let cols = payoff[0].len();
    let column_payoffs = (0..cols)
        .map(|x| payoff.iter().zip(v).map(|(row, p)| &row[x] * p).sum())
        .collect();
    let row_payoffs = payoff
        .iter()
        .map(|row| row.iter().zip(u).map(|(a, p)| a * p).sum())
        .collect();
    Certificate {
        column_payoffs,
        row_payoffs,
    }
}

/// Solves a nonnegative matrix game exactly.
pub fn solve_game(payoff: &[Vec<Rational>]) -> Result<GameSolution> {
    let (value, maximizer) = maximizer_side(payoff)?;
    let (min_value, minimizer) = minimizer_side(payoff)?;
    assert_eq!(value, min_value, "strong duality violated");
    let certificate = certificate(payoff, &maximizer, &minimizer);
    let solution = GameSolution {
        value,
        maximizer,
        minimizer,
        certificate,
    };
    debug_assert!(solution.verify(payoff));
    Ok(solution)
}

pub fn solve_support_game(a: &SupportMatrix) -> Result<GameSolution> {
    solve_game(&a.to_payoff())
}

/// `Psi_inf(W) = max_Q min_x sum_{y: W(y|x)>0} Q(y)` and `R_inf = log2(1/Psi_inf)`.
pub fn psi_inf(w: &Channel) -> ExactLogRate {
    let (value, _) = maximizer_side(&w.support_matrix().to_payoff())
        .expect("support matrix of a valid channel has no zero column");
    ExactLogRate::new(value)
}

/// `Psi_FB(W) = min_P max_y sum_{x: W(y|x)>0} P(x)` and `G(W) = log2(1/Psi_FB)`.
pub fn psi_fb(w: &Channel) -> ExactLogRate {
    let (value, _) = minimizer_side(&w.support_matrix().to_payoff())
        .expect("support matrix of a valid channel has no zero column");
    ExactLogRate::new(value)
}

/// Zero-error feedback capacity.
pub fn c0_fb(w: &Channel) -> FeedbackCapacity {
    let n = w.input_size();
    let some_pair_separable = (0..n).any(|a| (a + 1..n).any(|b| !w.confusable(a, b)));
    if some_pair_separable {
        FeedbackCapacity::Positive(psi_fb(w))
    } else {
        FeedbackCapacity::Zero
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::kronecker;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn bits(rows: &[&[u8]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|row| row.iter().map(|&b| r(b.into(), 1)).collect())
            .collect()
    }

    #[test]
    fn diagonal_game() {
        let sol = solve_game(&bits(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(sol.value, r(1, 2));
        assert_eq!(sol.maximizer, vec![r(1, 2), r(1, 2)]);
        assert_eq!(sol.minimizer, vec![r(1, 2), r(1, 2)]);
    }

    #[test]
    fn constant_game() {
        let sol = solve_game(&bits(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]])).unwrap();
        assert_eq!(sol.value, r(1, 1));
        assert!(sol.verify(&bits(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]])));
    }

    #[test]
    fn typewriter_support_game() {
        let w = Channel::typewriter(3, &r(1, 4)).unwrap();
        let payoff = w.support_matrix().to_payoff();
        let sol = solve_game(&payoff).unwrap();
        assert_eq!(sol.value, r(2, 3));
        assert!(sol.verify(&payoff));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(solve_game(&[]), Err(Error::DegenerateMatrix(_))));
        assert!(matches!(
            solve_game(&bits(&[&[1, 0], &[1, 0]])),
            Err(Error::DegenerateMatrix(_))
        ));
    }

    #[test]
    fn psi_examples() {
        for n in 1..=4 {
            let id = Channel::identity(n).unwrap();
            assert_eq!(psi_inf(&id).psi, r(1, n as i64));
            assert!((psi_inf(&id).rate() - (n as f64).log2()).abs() < 1e-15);
        }
        let uniform = Channel::from_ratios(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]).unwrap();
        assert_eq!(psi_inf(&uniform).psi, r(1, 1));
        assert_eq!(psi_inf(&uniform).rate(), 0.0);
        assert_eq!(psi_fb(&uniform).psi, r(1, 1));
        for eps in [r(1, 10), r(1, 4), r(1, 2)] {
            let tw = Channel::typewriter(3, &eps).unwrap();
            assert_eq!(psi_inf(&tw).psi, r(2, 3));
            assert_eq!(psi_fb(&tw).psi, r(2, 3));
        }
        assert_eq!(psi_fb(&Channel::identity(2).unwrap()).rate(), 1.0);
    }

    #[test]
    fn feedback_capacity_examples() {
        let tw = Channel::typewriter(3, &r(1, 4)).unwrap();
        let id = Channel::identity(2).unwrap();
        assert_eq!(c0_fb(&tw), FeedbackCapacity::Zero);
        assert_eq!(c0_fb(&tw).rate(), 0.0);
        assert_eq!(c0_fb(&id).rate(), 1.0);
        let product = c0_fb(&kronecker(&id, &tw).unwrap());
        assert_eq!(product.effective_psi(), r(1, 3));
        assert!((product.rate() - (1.0 + 1.5f64.log2())).abs() < 1e-12);
    }

    #[test]
    fn exact_rate_comparison() {
        let a = ExactLogRate::new(r(1, 2));
        let b = ExactLogRate::per_block(r(1, 5), 2);
        assert!(a.rate_lt(&b));
        assert!(!b.rate_lt(&a));
        assert!(!a.rate_lt(&ExactLogRate::per_block(r(1, 4), 2)));
        assert_eq!(a.to_string(), "log2(2) from psi 1/2");
    }
}
