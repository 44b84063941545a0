//! Monotone approximations from above of `R_inf` and the zero-error
//! feedback capacity, with the threshold tests they support.
//!
//! `Phi_N` is the value of the game with payoff
//! `B_N[y][x] = N W(y|x) / (1 + N W(y|x))`, which increases to `Psi_inf`;
//! `F_N = log2(1/Phi_N)` therefore decreases to `R_inf`. `U_N` is the same
//! construction on the feedback side of the game, and
//! `V_N = (1 - prod g)^N U_N` additionally decays to zero when every pair of
//! inputs is confusable.
//!
//! Only sequences converging from above are provided. A sequence converging
//! from below to `R_inf` for all channels cannot be computed.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::game::{c0_fb, maximizer_side, minimizer_side, psi_inf};
use crate::{log2_rational, Channel, Rational};

fn check_n(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    Ok(BigInt::from(n))
}

/// `B_N[y][x] = N W(y|x) / (1 + N W(y|x))`.
pub fn smoothed_payoff(w: &Channel, n: usize) -> Result<Vec<Vec<Rational>>> {
    let n = Rational::from_integer(check_n(n)?);
    Ok((0..w.output_size())
        .map(|y| {
            (0..w.input_size())
                .map(|x| {
                    let t = &n * w.prob(x, y);
                    &t / (Rational::one() + &t)
                })
                .collect()
        })
        .collect())
}

/// `Phi_N(W) = max_Q min_x sum_y B_N[y][x] Q(y)`, exact.
pub fn phi_n_exact(w: &Channel, n: usize) -> Result<Rational> {
    Ok(maximizer_side(&smoothed_payoff(w, n)?)?.0)
}

pub fn phi_n(w: &Channel, n: usize) -> Result<f64> {
    Ok(crate::channel::rational_to_f64(&phi_n_exact(w, n)?))
}

/// `F_N(W) = log2(1/Phi_N(W))`.
pub fn f_n(w: &Channel, n: usize) -> Result<f64> {
    Ok(-log2_rational(&phi_n_exact(w, n)?))
}

/// `1 / (1 + N m)` with `m` the smallest positive transition probability;
/// `Psi_inf - Phi_N` never exceeds it.
pub fn phi_error_bound(w: &Channel, n: usize) -> Result<Rational> {
    let n = Rational::from_integer(check_n(n)?);
    Ok((Rational::one() + n * w.min_positive_entry()).recip())
}

/// Value of the smoothed feedback game `min_P max_y sum_x B_N[y][x] P(x)`.
pub fn u_n_psi(w: &Channel, n: usize) -> Result<Rational> {
    Ok(minimizer_side(&smoothed_payoff(w, n)?)?.0)
}

pub fn u_n(w: &Channel, n: usize) -> Result<f64> {
    Ok(-log2_rational(&u_n_psi(w, n)?))
}

/// Product of `g(x, x')` over all ordered pairs, `None` when some pair is
/// non-confusable (the product is then exactly zero).
pub fn bhattacharyya_product(w: &Channel) -> Option<f64> {
    let n = w.input_size();
    let mut product = 1.0;
    for a in 0..n {
        for b in 0..n {
            let g = w.bhattacharyya(a, b).expect("indices in range");
            if g.is_zero {
                return None;
            }
            product *= g.value;
        }
    }
    Some(product)
}

/// Where the exponent `N` sits in the `V_N` prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PrefactorReading {
    /// `(1 - prod g)^N`.
    #[default]
    Outside,
    /// `1 - prod g^N`; diagnostic only.
    Inside,
}

pub fn v_prefactor(w: &Channel, n: usize, reading: PrefactorReading) -> Result<f64> {
    check_n(n)?;
    let Some(product) = bhattacharyya_product(w) else {
        return Ok(1.0);
    };
    Ok(match reading {
        PrefactorReading::Outside => (n as f64 * (-product).ln_1p()).exp(),
        PrefactorReading::Inside => -(n as f64 * product.ln()).exp_m1(),
    })
}

/// `V_N(W) = (1 - prod g)^N U_N(W)`.
pub fn v_n(w: &Channel, n: usize) -> Result<f64> {
    v_n_with(w, n, PrefactorReading::Outside)
}

pub fn v_n_with(w: &Channel, n: usize, reading: PrefactorReading) -> Result<f64> {
    Ok(v_prefactor(w, n, reading)? * u_n(w, n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    RInf,
    C0Fb,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::RInf => "R_inf",
            Quantity::C0Fb => "C0_fb",
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R_inf" | "r_inf" | "rinf" => Ok(Quantity::RInf),
            "C0_fb" | "c0_fb" | "c0fb" => Ok(Quantity::C0Fb),
            _ => Err(Error::Parse(format!("unknown quantity {s:?}"))),
        }
    }
}

/// `F_N` or `V_N` for `N = 1..=n_max` next to the exact limit.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxTrace {
    pub quantity: Quantity,
    pub entries: Vec<(usize, f64)>,
    /// Exact `psi` of the limit (`1` for a zero feedback capacity).
    pub target_psi: Rational,
    pub target: f64,
    /// Guaranteed `F_N - R_inf`, available for `R_inf` only.
    pub bound: Vec<(usize, f64)>,
}

impl ApproxTrace {
    /// Columns `N,value,error_bound,target`; the bound column is empty when
    /// no bound is known.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,value,error_bound,target\n");
        for (i, &(n, value)) in self.entries.iter().enumerate() {
            let bound = self
                .bound
                .get(i)
                .map(|&(_, b)| format!("{b:.12e}"))
                .unwrap_or_default();
            let _ = writeln!(out, "{n},{value:.15},{bound},{:.15}", self.target);
        }
        out
    }
}

pub fn trace(w: &Channel, quantity: Quantity, n_max: usize) -> Result<ApproxTrace> {
    check_n(n_max)?;
    match quantity {
        Quantity::RInf => {
            let target = psi_inf(w);
            let mut entries = Vec::with_capacity(n_max);
            let mut bound = Vec::with_capacity(n_max);
            for n in 1..=n_max {
                let phi = phi_n_exact(w, n)?;
                let b = phi_error_bound(w, n)?;
                bound.push((n, log2_rational(&((&phi + b) / &phi))));
                entries.push((n, -log2_rational(&phi)));
            }
            Ok(ApproxTrace {
                quantity,
                entries,
                target: target.rate(),
                target_psi: target.psi,
                bound,
            })
        }
        Quantity::C0Fb => {
            let target = c0_fb(w);
            let entries = (1..=n_max)
                .map(|n| Ok((n, v_n(w, n)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(ApproxTrace {
                quantity,
                entries,
                target: target.rate(),
                target_psi: target.effective_psi(),
                bound: Vec::new(),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accepted(usize),
    Undetermined(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiDecision {
    pub verdict: Verdict,
    pub lambda: f64,
}

impl SemiDecision {
    pub fn accepted(&self) -> bool {
        matches!(self.verdict, Verdict::Accepted(_))
    }
}

/// Values this close below `lambda` are not accepted, so floating-point
/// rounding of `F_N` or `V_N` cannot produce an unsound acceptance.
pub const ACCEPT_MARGIN: f64 = 1e-12;

/// Accepts at the first `N <= budget` whose upper approximation lies below
/// `lambda`. Acceptance proves the target is below `lambda`; rejection is
/// never returned.
pub fn semi_decide_below(w: &Channel, lambda: f64, quantity: Quantity, budget: usize) -> Result<SemiDecision> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("lambda {lambda} must be positive")));
    }
    check_n(budget)?;
    for n in 1..=budget {
        let value = match quantity {
            Quantity::RInf => f_n(w, n)?,
            Quantity::C0Fb => v_n(w, n)?,
        };
        if value + ACCEPT_MARGIN < lambda {
            return Ok(SemiDecision {
                verdict: Verdict::Accepted(n),
                lambda,
            });
        }
    }
    Ok(SemiDecision {
        verdict: Verdict::Undetermined(budget),
        lambda,
    })
}
