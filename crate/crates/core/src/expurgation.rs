//! The k-letter expurgation exponent.
//!
//! `E_x(rho, k) = -(rho/k) log2 min_P Q^k(rho, P)` with
//! `Q^k(rho, P) = sum P(u) P(v) g_k(u, v)^{1/rho}`, and
//! `E_ex(W, R, k) = sup_{rho >= 1} E_x(rho, k) - rho R`.
//!
//! The rate below which `E_ex` is infinite is computed from the zero
//! pattern of `g_k` alone, as `(1/k) log2 alpha` of the graph on `X^k`
//! whose edges are the pairs with `g_k > 0`.

use num_bigint::BigInt;

use crate::channel::{checked_size, Channel, Distribution, DEFAULT_SIZE_CAP};
use crate::error::{Error, Result};
use crate::gallager::{BoundValue, RhoSearchConfig};
use crate::game::ExactLogRate;
use crate::quadratic::{self, QpMinimum};
use crate::search::maximize_on_ray;
use crate::zero_error::{independence_number, ConfusabilityGraph};
use crate::Rational;

/// `g_k` on `X^k x X^k` (row-major words), with its exact zero pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: Vec<Vec<f64>>,
    zero_pattern: Vec<Vec<bool>>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    /// `true` where the entry is exactly zero.
    pub fn zero_pattern(&self) -> &[Vec<bool>] {
        &self.zero_pattern
    }

    /// Elementwise `g^{1/rho}` with `0^{1/rho} = 0`.
    pub fn powered(&self, rho: f64) -> Vec<Vec<f64>> {
        let s = 1.0 / rho;
        self.entries
            .iter()
            .zip(&self.zero_pattern)
            .map(|(row, zeros)| {
                row.iter()
                    .zip(zeros)
                    .map(|(&g, &z)| if z { 0.0 } else { g.powf(s) })
                    .collect()
            })
            .collect()
    }

    /// Graph on the words with an edge wherever `g_k > 0`.
    pub fn confusability(&self) -> ConfusabilityGraph {
        let n = self.size();
        let adjacency = (0..n)
            .map(|i| (0..n).map(|j| i != j && !self.zero_pattern[i][j]).collect())
            .collect();
        ConfusabilityGraph::from_adjacency(adjacency).expect("gram zero pattern is symmetric")
    }
}

pub fn gram(w: &Channel, k: usize) -> Result<GramMatrix> {
    gram_capped(w, k, DEFAULT_SIZE_CAP)
}

/// `g_k` as the k-fold Kronecker power of the single-letter matrix.
pub fn gram_capped(w: &Channel, k: usize, cap: usize) -> Result<GramMatrix> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = w.input_size();
    let mut size = n;
    for _ in 1..k {
        size = checked_size(size, n, cap)?;
    }
    let mut entries = vec![vec![0.0; n]; n];
    let mut zero_pattern = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            let g = w.bhattacharyya(a, b)?;
            entries[a][b] = g.value;
            zero_pattern[a][b] = g.is_zero;
        }
    }
    let single = GramMatrix {
        entries,
        zero_pattern,
    };
    let mut acc = single.clone();
    for _ in 1..k {
        acc = kron(&acc, &single);
    }
    Ok(acc)
}

fn kron(a: &GramMatrix, b: &GramMatrix) -> GramMatrix {
    let (na, nb) = (a.size(), b.size());
    let n = na * nb;
    let mut entries = vec![vec![0.0; n]; n];
    let mut zero_pattern = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (i1, i2, j1, j2) = (i / nb, i % nb, j / nb, j % nb);
            entries[i][j] = a.entries[i1][j1] * b.entries[i2][j2];
            zero_pattern[i][j] = a.zero_pattern[i1][j1] || b.zero_pattern[i2][j2];
        }
    }
    GramMatrix {
        entries,
        zero_pattern,
    }
}

/// How [`qk_min`] searches the simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QkMode {
    #[default]
    Multistart,
    /// Support enumeration; fails with `SizeOverflow` above 12 words.
    Exhaustive,
}

/// Result of the quadratic-form minimization. `certified` is set only by
/// exhaustive enumeration; otherwise `value` is an upper estimate of the
/// minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct QkMinimum {
    pub value: f64,
    pub input: Distribution,
    pub certified: bool,
}

pub fn qk_min(w: &Channel, rho: f64, k: usize) -> Result<QkMinimum> {
    qk_min_with(&gram(w, k)?, rho, QkMode::default())
}

pub fn qk_min_with(gram: &GramMatrix, rho: f64, mode: QkMode) -> Result<QkMinimum> {
    if !(rho >= 1.0) {
        return Err(Error::InvalidParameter(format!("rho = {rho} < 1")));
    }
    let m = gram.powered(rho);
    let (QpMinimum { value, point }, certified) = match mode {
        QkMode::Multistart => (quadratic::minimize_multistart(&m), false),
        QkMode::Exhaustive => (
            quadratic::minimize_exhaustive(&m).ok_or(Error::SizeOverflow {
                size: m.len(),
                cap: quadratic::EXHAUSTIVE_LIMIT,
            })?,
            true,
        ),
    };
    Ok(QkMinimum {
        value,
        input: Distribution::normalized(point),
        certified,
    })
}

/// `E_x(rho, k)`.
pub fn e_x(w: &Channel, rho: f64, k: usize) -> Result<f64> {
    e_x_from(&gram(w, k)?, rho, k, QkMode::default())
}

fn e_x_from(gram: &GramMatrix, rho: f64, k: usize, mode: QkMode) -> Result<f64> {
    let q = qk_min_with(gram, rho, mode)?;
    Ok(-(rho / k as f64) * q.value.log2())
}

/// `R_k^ex = (1/k) log2 alpha` of the `g_k > 0` graph, exact.
pub fn r_ex(w: &Channel, k: usize) -> Result<ExactLogRate> {
    r_ex_from(&gram(w, k)?, k)
}

/// [`r_ex`] from an already built `g_k`.
pub fn r_ex_from(gram: &GramMatrix, k: usize) -> Result<ExactLogRate> {
    let alpha = independence_number(&gram.confusability())?;
    let block = u32::try_from(k).map_err(|_| Error::InvalidParameter("k too large".into()))?;
    Ok(ExactLogRate::per_block(
        Rational::new(BigInt::from(1), BigInt::from(alpha)),
        block,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpurgationResult {
    pub value: BoundValue,
    /// Maximizing `rho`; `None` for certified infinities.
    pub rho_star: Option<f64>,
    pub p_star: Option<Distribution>,
}

pub fn e_ex(w: &Channel, rate: f64, k: usize) -> Result<ExpurgationResult> {
    e_ex_with(w, rate, k, &RhoSearchConfig::default())
}

/// `E_ex(W, R, k)`: infinite for `R <= R_k^ex`, otherwise the supremum over
/// `rho in [1, rho_cap]`, clamped at zero.
pub fn e_ex_with(w: &Channel, rate: f64, k: usize, config: &RhoSearchConfig) -> Result<ExpurgationResult> {
    config.validate()?;
    if !(rate > 0.0) {
        return Err(Error::InvalidParameter(format!("rate {rate} must be positive")));
    }
    let g = gram(w, k)?;
    let threshold = r_ex_from(&g, k)?;
    if rate <= threshold.rate() {
        return Ok(ExpurgationResult {
            value: BoundValue::Infinite { threshold },
            rho_star: None,
            p_star: None,
        });
    }
    let mut failure = None;
    let mut objective = |rho: f64| match e_x_from(&g, rho, k, QkMode::default()) {
        Ok(v) => v - rho * rate,
        Err(e) => {
            failure = Some(e);
            f64::NEG_INFINITY
        }
    };
    let tolerance = config.tolerance.max(1e-8);
    let (rho, value) = maximize_on_ray(&mut objective, 1.0, config.rho_cap, tolerance)?;
    if let Some(e) = failure {
        return Err(e);
    }
    let q = qk_min_with(&g, rho, QkMode::default())?;
    Ok(ExpurgationResult {
        value: BoundValue::Finite {
            value: value.max(0.0),
            witness: None,
        },
        rho_star: Some(rho),
        p_star: Some(q.input),
    })
}
