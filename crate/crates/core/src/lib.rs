//! Bounds on the reliability function of discrete memoryless channels.
//!
//! Channels carry exact rational transition probabilities. Everything that
//! depends only on the zero pattern of a channel (`R_inf`, the zero-error
//! feedback capacity, confusability graphs, expurgation rates) is computed
//! exactly; the continuous exponents (`E_0`, capacity, `E_r`, `E_sp`,
//! `E_ex`) are computed in floating point, with every finite/infinite
//! decision delegated to the exact side.

pub mod approx;
pub mod channel;
pub mod error;
pub mod expurgation;
pub mod gallager;
mod linalg;
mod quadratic;
pub mod game;
pub mod search;
pub mod zero_error;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

pub use channel::{
    channel_distance, extension, kronecker, Bhattacharyya, Channel, Distribution, SupportMatrix,
    DEFAULT_SIZE_CAP,
};
pub use error::{Error, Result};
pub use game::{c0_fb, psi_fb, psi_inf, solve_game, ExactLogRate, FeedbackCapacity, GameSolution};

/// Exact rational number used for all channel entries.
pub type Rational = num_rational::BigRational;

/// `log2` of a positive rational, accurate even when numerator or
/// denominator overflow `f64`.
pub fn log2_rational(r: &Rational) -> f64 {
    assert!(r.is_positive(), "log2 of a non-positive rational");
    log2_int(r.numer()) - log2_int(r.denom())
}

fn log2_int(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().expect("64-bit value").log2() + shift as f64
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_of_huge_rationals() {
        let big = Rational::new(BigInt::from(3) << 2000usize, BigInt::from(1) << 2000usize);
        assert!((log2_rational(&big) - 3f64.log2()).abs() < 1e-12);
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(log2_rational(&half), -1.0);
    }

    #[test]
    fn entropy() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(0.5), 1.0);
    }
}
