//! Gallager's `E_0`, capacity, and the random-coding and sphere-packing
//! exponents. All logarithms are base 2.
//!
//! The sphere-packing bound is infinite exactly for `R <= R_inf`; that
//! region is decided by the exact support game in [`crate::game`], never by
//! watching the numeric supremum diverge.

use crate::channel::{Channel, Distribution};
use crate::error::{Error, Result};
use crate::game::{psi_inf, ExactLogRate};
use crate::search::{golden_section_max, maximize_on_ray};

/// Numeric strategy for suprema over `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoSearchConfig {
    pub rho_cap: f64,
    pub tolerance: f64,
    pub max_iter: usize,
}

impl Default for RhoSearchConfig {
    fn default() -> Self {
        RhoSearchConfig {
            rho_cap: 64.0,
            tolerance: 1e-9,
            max_iter: 200,
        }
    }
}

impl RhoSearchConfig {
    pub fn with_rho_cap(rho_cap: f64) -> Self {
        RhoSearchConfig {
            rho_cap,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho_cap > 1.0) || !(self.tolerance > 0.0) || self.max_iter == 0 {
            return Err(Error::InvalidParameter(format!("bad rho search config {self:?}")));
        }
        Ok(())
    }
}

/// Optimizer snapshot behind a finite bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub rho: f64,
    pub input: Distribution,
}

/// An exponent value on the extended half-line.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Finite {
        value: f64,
        witness: Option<Witness>,
    },
    /// Certified infinite: the rate lies at or below `threshold`.
    Infinite { threshold: ExactLogRate },
}

impl BoundValue {
    pub fn finite(value: f64) -> Self {
        BoundValue::Finite {
            value,
            witness: None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundValue::Infinite { .. })
    }

    /// Value as `f64`, `+inf` for certified infinities.
    pub fn value(&self) -> f64 {
        match self {
            BoundValue::Finite { value, .. } => *value,
            BoundValue::Infinite { .. } => f64::INFINITY,
        }
    }
}

/// Iteration budget and certified tolerance for the inner maximization
/// over input distributions.
const E0_MAX_ITER: usize = 200_000;
const E0_TOL: f64 = 1e-12;
const CAPACITY_MAX_ITER: usize = 1_000_000;
const CAPACITY_TOL: f64 = 1e-11;

/// `sum_y (sum_x P(x) W(y|x)^{1/(1+rho)})^{1+rho}` with `0^s = 0`.
fn gallager_sum(probs: &[Vec<f64>], rho: f64, p: &[f64]) -> f64 {
    let s = 1.0 / (1.0 + rho);
    let outputs = probs[0].len();
    (0..outputs)
        .map(|y| {
            let a: f64 = probs
                .iter()
                .zip(p)
                .filter(|(row, _)| row[y] > 0.0)
                .map(|(row, px)| px * row[y].powf(s))
                .sum();
            a.powf(1.0 + rho)
        })
        .sum()
}

/// `-log2 sum_y (sum_x P(x) W(y|x)^{1/(1+rho)})^{1+rho}`.
pub fn e0(w: &Channel, rho: f64, p: &Distribution) -> Result<f64> {
    if !(rho >= 0.0) {
        return Err(Error::InvalidParameter(format!("rho = {rho} < 0")));
    }
    if p.len() != w.input_size() {
        return Err(Error::AlphabetMismatch(p.len(), 0, w.input_size(), 0));
    }
    Ok(-gallager_sum(&w.to_f64(), rho, p.weights()).log2())
}

/// Maximizes `E_0(rho, P)` over `P`.
///
/// The objective `sum_y a_y^{1+rho}` (with `a_y = sum_x P(x) W^{1/(1+rho)}`)
/// is convex in `P`; the multiplicative update
/// `P'(x) ~ P(x) beta_x^{-1/rho}`, `beta_x = sum_y W^{1/(1+rho)} a_y^rho`,
/// runs until the first-order lower bound certifies the value to
/// `E0_TOL` bits. Restarts from perturbed vertices are used only if the
/// uniform start fails to certify within the iteration budget.
pub fn e0_max(w: &Channel, rho: f64) -> Result<(f64, Distribution)> {
    e0_max_f64(&w.to_f64(), rho)
}

pub(crate) fn e0_max_f64(probs: &[Vec<f64>], rho: f64) -> Result<(f64, Distribution)> {
    if !(rho >= 0.0) {
        return Err(Error::InvalidParameter(format!("rho = {rho} < 0")));
    }
    let n = probs.len();
    if rho == 0.0 {
        return Ok((0.0, Distribution::uniform(n)));
    }
    let uniform = vec![1.0 / n as f64; n];
    match arimoto_e0(probs, rho, uniform.clone()) {
        Ok((value, p)) => return Ok((value, Distribution::normalized(p))),
        Err(Error::NonConvergence(..)) if n > 1 => {}
        Err(e) => return Err(e),
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    for vertex in 0..n {
        let start: Vec<f64> = uniform
            .iter()
            .enumerate()
            .map(|(x, u)| 0.1 * u + if x == vertex { 0.9 } else { 0.0 })
            .collect();
        if let Ok((value, p)) = arimoto_e0(probs, rho, start) {
            if best.as_ref().is_none_or(|b| value > b.0) {
                best = Some((value, p));
            }
        }
    }
    best.map(|(v, p)| (v, Distribution::normalized(p)))
        .ok_or(Error::NonConvergence("E0 maximization", E0_MAX_ITER))
}

fn arimoto_e0(probs: &[Vec<f64>], rho: f64, mut p: Vec<f64>) -> Result<(f64, Vec<f64>)> {
    let s = 1.0 / (1.0 + rho);
    let outputs = probs[0].len();
    let powered: Vec<Vec<f64>> = probs
        .iter()
        .map(|row| row.iter().map(|&v| if v > 0.0 { v.powf(s) } else { 0.0 }).collect())
        .collect();
    let mut a = vec![0.0; outputs];
    let mut beta = vec![0.0; probs.len()];
    let mut best = f64::NEG_INFINITY;
    let mut best_p = p.clone();
    for iter in 0..E0_MAX_ITER {
        if iter % 25 == 10 {
            if let Some(polished) = newton_polish(&powered, rho, &p) {
                return Ok(polished);
            }
        }
        a.iter_mut().for_each(|v| *v = 0.0);
        for (row, px) in powered.iter().zip(&p) {
            for (ay, wy) in a.iter_mut().zip(row) {
                *ay += px * wy;
            }
        }
        let a_rho: Vec<f64> = a.iter().map(|v| v.powf(rho)).collect();
        let f: f64 = a.iter().zip(&a_rho).map(|(v, vr)| v * vr).sum();
        for (b, row) in beta.iter_mut().zip(&powered) {
            *b = row.iter().zip(&a_rho).map(|(wy, ar)| wy * ar).sum();
        }
        let value = -f.log2();
        if value > best {
            best = value;
            best_p.clone_from(&p);
        }
        let min_beta = beta.iter().cloned().fold(f64::INFINITY, f64::min);
        let lower = f - (1.0 + rho) * (f - min_beta);
        if lower > 0.0 && (f / lower).log2() <= E0_TOL {
            return Ok((best, best_p));
        }
        // log-domain update keeps small rho stable
        let logs: Vec<f64> = p
            .iter()
            .zip(&beta)
            .map(|(&px, &b)| if px > 0.0 { px.ln() - b.ln() / rho } else { f64::NEG_INFINITY })
            .collect();
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let total: f64 = logs.iter().map(|l| (l - top).exp()).sum();
        for (px, l) in p.iter_mut().zip(&logs) {
            *px = (l - top).exp() / total;
        }
    }
    Err(Error::NonConvergence("E0 maximization", E0_MAX_ITER))
}

/// `f(P)`, the gradient factor `beta` and the certified value at `P`.
fn gallager_state(powered: &[Vec<f64>], rho: f64, p: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
    let outputs = powered[0].len();
    let mut a = vec![0.0; outputs];
    for (row, px) in powered.iter().zip(p) {
        for (ay, wy) in a.iter_mut().zip(row) {
            *ay += px * wy;
        }
    }
    let a_rho: Vec<f64> = a.iter().map(|v| v.powf(rho)).collect();
    let f = a.iter().zip(&a_rho).map(|(v, vr)| v * vr).sum();
    let beta = powered
        .iter()
        .map(|row| row.iter().zip(&a_rho).map(|(wy, ar)| wy * ar).sum())
        .collect();
    (f, beta, a)
}

fn certified(f: f64, beta: &[f64], rho: f64) -> bool {
    let min_beta = beta.iter().cloned().fold(f64::INFINITY, f64::min);
    let lower = f - (1.0 + rho) * (f - min_beta);
    lower > 0.0 && (f / lower).log2() <= E0_TOL
}

/// Newton iterations on the face spanned by the significant entries of
/// `start`; returns a point only if it passes the full first-order
/// certificate.
fn newton_polish(powered: &[Vec<f64>], rho: f64, start: &[f64]) -> Option<(f64, Vec<f64>)> {
    let top = start.iter().cloned().fold(0.0, f64::max);
    let mut support: Vec<usize> = (0..start.len()).filter(|&x| start[x] > 1e-6 * top).collect();
    let mut p = vec![0.0; start.len()];
    let mass: f64 = support.iter().map(|&x| start[x]).sum();
    for &x in &support {
        p[x] = start[x] / mass;
    }
    for _ in 0..60 {
        let (f, beta, a) = gallager_state(powered, rho, &p);
        if certified(f, &beta, rho) {
            return Some((-f.log2(), p));
        }
        let m = support.len();
        // derivatives of f / f(p), keeping the KKT system well scaled
        let grad: Vec<f64> = support.iter().map(|&x| (1.0 + rho) * beta[x] / f).collect();
        let mut hess = vec![vec![0.0; m]; m];
        for (i, &x) in support.iter().enumerate() {
            for (j, &z) in support.iter().enumerate().skip(i) {
                let h: f64 = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &ay)| ay > 0.0)
                    .map(|(y, &ay)| powered[x][y] * powered[z][y] * ay.powf(rho - 1.0))
                    .sum::<f64>()
                    * (1.0 + rho)
                    * rho
                    / f;
                hess[i][j] = h;
                hess[j][i] = h;
            }
        }
        let scale = (0..m).map(|i| hess[i][i]).fold(0.0, f64::max).max(1e-300);
        for (i, row) in hess.iter_mut().enumerate() {
            row[i] += 1e-12 * scale;
        }
        // KKT system [H 1; 1^T 0] [d; lambda] = [-g; 0]
        let mut kkt = vec![vec![0.0; m + 1]; m + 1];
        for i in 0..m {
            kkt[i][..m].copy_from_slice(&hess[i]);
            kkt[i][m] = 1.0;
            kkt[m][i] = 1.0;
        }
        let mut rhs: Vec<f64> = grad.iter().map(|g| -g).collect();
        rhs.push(0.0);
        let d = crate::linalg::solve(kkt, rhs)?;
        let dir = &d[..m];
        let t_max = support
            .iter()
            .zip(dir)
            .filter(|(_, &dx)| dx < 0.0)
            .map(|(&x, &dx)| -p[x] / dx)
            .fold(f64::INFINITY, f64::min);
        let slope: f64 = grad.iter().zip(dir).map(|(g, dx)| g * dx).sum();
        if !(slope < 0.0) {
            return None;
        }
        let mut t = t_max.min(1.0);
        let mut accepted = false;
        for _ in 0..40 {
            let mut trial = p.clone();
            for (&x, &dx) in support.iter().zip(dir) {
                trial[x] = (p[x] + t * dx).max(0.0);
            }
            let (ft, _, _) = gallager_state(powered, rho, &trial);
            if ft <= f * (1.0 + 1e-4 * t * slope) || ft < f {
                p = trial;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return None;
        }
        let total: f64 = p.iter().sum();
        p.iter_mut().for_each(|v| *v /= total);
        support.retain(|&x| p[x] > 0.0);
        if support.is_empty() {
            return None;
        }
    }
    None
}

/// Capacity with its certificate bracket from the alternating maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityEstimate {
    pub lower: f64,
    pub upper: f64,
    pub input: Distribution,
}

impl CapacityEstimate {
    pub fn value(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Blahut–Arimoto iteration with the standard `[I(P), max_x D(W_x||q)]`
/// bracket as stopping rule.
pub fn capacity_estimate(w: &Channel) -> CapacityEstimate {
    capacity_f64(&w.to_f64())
}

pub(crate) fn capacity_f64(probs: &[Vec<f64>]) -> CapacityEstimate {
    let n = probs.len();
    let outputs = probs[0].len();
    let mut p = vec![1.0 / n as f64; n];
    let mut best = CapacityEstimate {
        lower: 0.0,
        upper: f64::INFINITY,
        input: Distribution::uniform(n),
    };
    for _ in 0..CAPACITY_MAX_ITER {
        let mut q = vec![0.0; outputs];
        for (row, px) in probs.iter().zip(&p) {
            for (qy, wy) in q.iter_mut().zip(row) {
                *qy += px * wy;
            }
        }
        let d: Vec<f64> = probs
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&q)
                    .filter(|(wy, _)| **wy > 0.0)
                    .map(|(wy, qy)| wy * (wy / qy).log2())
                    .sum::<f64>()
                    .max(0.0)
            })
            .collect();
        let lower: f64 = p.iter().zip(&d).map(|(px, dx)| px * dx).sum();
        let upper = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if lower > best.lower {
            best.lower = lower;
            best.input = Distribution::normalized(p.clone());
        }
        best.upper = best.upper.min(upper);
        if best.upper - best.lower <= CAPACITY_TOL {
            break;
        }
        let top = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        for (px, dx) in p.iter_mut().zip(&d) {
            *px *= (dx - top).exp2();
        }
        let total: f64 = p.iter().sum();
        p.iter_mut().for_each(|px| *px /= total);
    }
    best
}

/// Shannon capacity in bits.
pub fn capacity(w: &Channel) -> f64 {
    if rows_identical(w) {
        return 0.0;
    }
    capacity_estimate(w).value()
}

fn rows_identical(w: &Channel) -> bool {
    w.rows().windows(2).all(|pair| pair[0] == pair[1])
}

/// Random-coding exponent `max_{0 <= rho <= 1} E_0(rho) - rho R`.
pub fn e_r(w: &Channel, rate: f64) -> Result<f64> {
    if !(rate >= 0.0) {
        return Err(Error::InvalidParameter(format!("rate {rate} < 0")));
    }
    let probs = w.to_f64();
    let mut failure = None;
    let mut objective = |rho: f64| match e0_max_f64(&probs, rho) {
        Ok((v, _)) => v - rho * rate,
        Err(e) => {
            failure = Some(e);
            f64::NEG_INFINITY
        }
    };
    let (_, best) = golden_section_max(&mut objective, 0.0, 1.0, 1e-9);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(best.max(0.0))
}

/// Sphere-packing exponent with the default rho search.
pub fn e_sp(w: &Channel, rate: f64) -> Result<BoundValue> {
    e_sp_with(w, rate, &RhoSearchConfig::default())
}

/// Sphere-packing exponent `sup_{rho > 0} E_0(rho) - rho R`.
///
/// Infinite (with the exact threshold as certificate) for `R <= R_inf`;
/// zero by convention for `R >= C`.
pub fn e_sp_with(w: &Channel, rate: f64, config: &RhoSearchConfig) -> Result<BoundValue> {
    config.validate()?;
    if !(rate > 0.0) {
        return Err(Error::InvalidParameter(format!("rate {rate} must be positive")));
    }
    let threshold = psi_inf(w);
    if rate <= threshold.rate() {
        return Ok(BoundValue::Infinite { threshold });
    }
    if rows_identical(w) || rate >= capacity(w) {
        return Ok(BoundValue::finite(0.0));
    }
    let probs = w.to_f64();
    let mut failure = None;
    let mut objective = |rho: f64| match e0_max_f64(&probs, rho) {
        Ok((v, _)) => v - rho * rate,
        Err(e) => {
            failure = Some(e);
            f64::NEG_INFINITY
        }
    };
    let (rho, value) = maximize_on_ray(&mut objective, 0.0, config.rho_cap, config.tolerance)?;
    if let Some(e) = failure {
        return Err(e);
    }
    let (_, input) = e0_max_f64(&probs, rho)?;
    Ok(BoundValue::Finite {
        value: value.max(0.0),
        witness: Some(Witness { rho, input }),
    })
}

/// Critical rate: the slope of `rho -> E_0(rho)` at `rho = 1`, by central
/// differences with step `1e-5`, clamped to `[R_inf, C]`.
pub fn r_crit(w: &Channel) -> Result<f64> {
    if rows_identical(w) {
        return Err(Error::DegenerateChannel);
    }
    let probs = w.to_f64();
    let h = 1e-5;
    let plus = e0_max_f64(&probs, 1.0 + h)?.0;
    let minus = e0_max_f64(&probs, 1.0 - h)?.0;
    let slope = (plus - minus) / (2.0 * h);
    let lo = psi_inf(w).rate();
    let hi = capacity(w);
    Ok(slope.clamp(lo, hi.max(lo)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn bsc10() -> Channel {
        Channel::bsc(&r(1, 10)).unwrap()
    }

    #[test]
    fn e0_at_zero_rho() {
        let w = Channel::typewriter(3, &r(1, 4)).unwrap();
        let p = Distribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert!(e0(&w, 0.0, &p).unwrap().abs() < 1e-15);
        assert_eq!(e0_max(&w, 0.0).unwrap().0, 0.0);
    }

    #[test]
    fn e0_identity_closed_form() {
        let id2 = Channel::identity(2).unwrap();
        assert!((e0(&id2, 1.0, &Distribution::uniform(2)).unwrap() - 1.0).abs() < 1e-15);
        let id3 = Channel::identity(3).unwrap();
        let (v, p) = e0_max(&id3, 1.0).unwrap();
        assert!((v - 3f64.log2()).abs() < 1e-10);
        assert!(p.weights().iter().all(|w| (w - 1.0 / 3.0).abs() < 1e-6));
    }

    #[test]
    fn e0_bsc_closed_form() {
        let p = 0.1f64;
        let expected = 1.0 - (1.0 + 2.0 * (p * (1.0 - p)).sqrt()).log2();
        let got = e0(&bsc10(), 1.0, &Distribution::uniform(2)).unwrap();
        assert!((got - expected).abs() < 1e-14);
    }

    #[test]
    fn e0_rejects_negative_rho() {
        assert!(e0_max(&bsc10(), -0.5).is_err());
    }

    #[test]
    fn capacities() {
        for n in 1..=4 {
            let c = capacity(&Channel::identity(n).unwrap());
            assert!((c - (n as f64).log2()).abs() < 1e-9);
        }
        let useless = Channel::from_ratios(&[&[(1, 3), (2, 3)], &[(1, 3), (2, 3)]]).unwrap();
        assert_eq!(capacity(&useless), 0.0);
        let c = capacity(&bsc10());
        assert!((c - (1.0 - crate::binary_entropy(0.1))).abs() < 1e-9);
    }

    #[test]
    fn e_r_edges() {
        let w = bsc10();
        let c = capacity(&w);
        assert_eq!(e_r(&w, c + 0.01).unwrap(), 0.0);
        let e01 = e0_max(&w, 1.0).unwrap().0;
        assert!((e_r(&w, 0.0).unwrap() - e01).abs() < 1e-9);
    }

    #[test]
    fn e_sp_gates() {
        let id2 = Channel::identity(2).unwrap();
        assert!(e_sp(&id2, 0.5).unwrap().is_infinite());
        // equality included
        assert!(e_sp(&id2, 1.0).unwrap().is_infinite());
        let tw = Channel::typewriter(3, &r(1, 4)).unwrap();
        assert!(e_sp(&tw, 0.5).unwrap().is_infinite());
        assert_eq!(e_sp(&bsc10(), 0.9).unwrap().value(), 0.0);
        assert!(e_sp(&bsc10(), 0.0).is_err());
    }

    #[test]
    fn r_crit_cases() {
        let id3 = Channel::identity(3).unwrap();
        assert!((r_crit(&id3).unwrap() - 3f64.log2()).abs() < 1e-6);
        let useless = Channel::from_ratios(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]).unwrap();
        assert_eq!(r_crit(&useless), Err(Error::DegenerateChannel));
    }
}
