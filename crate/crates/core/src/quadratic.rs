//! Minimization of `p^T M p` over the probability simplex for symmetric
//! nonnegative `M` with unit diagonal.
//!
//! The problem is nonconvex in general. Two routes are provided:
//!
//! * multistart projected gradient (seeds: uniform, every vertex, every
//!   uniform pair), each run finished by solving the stationarity system on
//!   its support;
//! * exhaustive support enumeration: the minimum is attained in the relative
//!   interior of some face `S` with `M_S` nonsingular, where it equals
//!   `1 / (1^T M_S^{-1} 1)`.

use crate::linalg;

/// Exhaustive enumeration is refused above this dimension.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct QpMinimum {
    pub value: f64,
    pub point: Vec<f64>,
}

pub fn quadratic_form(m: &[Vec<f64>], p: &[f64]) -> f64 {
    m.iter()
        .zip(p)
        .map(|(row, pi)| pi * row.iter().zip(p).map(|(a, pj)| a * pj).sum::<f64>())
        .sum()
}

fn mat_vec(m: &[Vec<f64>], p: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(p).map(|(a, b)| a * b).sum())
        .collect()
}

/// Euclidean projection onto the probability simplex.
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (i, &s) in sorted.iter().enumerate() {
        cumulative += s;
        let t = (cumulative - 1.0) / (i + 1) as f64;
        if s - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

/// Stationary point on the support of `p`, if the restricted system has a
/// strictly positive solution.
fn polish(m: &[Vec<f64>], p: &[f64]) -> Option<QpMinimum> {
    let support: Vec<usize> = (0..p.len()).filter(|&i| p[i] > 1e-9).collect();
    let restricted: Vec<Vec<f64>> = support
        .iter()
        .map(|&i| support.iter().map(|&j| m[i][j]).collect())
        .collect();
    let q = linalg::solve(restricted, vec![1.0; support.len()])?;
    if q.iter().any(|&v| !(v > 0.0)) {
        return None;
    }
    let total: f64 = q.iter().sum();
    let mut point = vec![0.0; p.len()];
    for (&i, v) in support.iter().zip(&q) {
        point[i] = v / total;
    }
    Some(QpMinimum {
        value: quadratic_form(m, &point),
        point,
    })
}

fn descend(m: &[Vec<f64>], start: Vec<f64>, iterations: usize) -> QpMinimum {
    let lipschitz = 2.0
        * m.iter()
            .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max);
    let step = 1.0 / lipschitz;
    let mut p = start;
    for _ in 0..iterations {
        let grad = mat_vec(m, &p);
        let moved: Vec<f64> = p.iter().zip(&grad).map(|(x, g)| x - 2.0 * step * g).collect();
        let next = project_to_simplex(&moved);
        let change = next
            .iter()
            .zip(&p)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        p = next;
        if change < 1e-13 {
            break;
        }
    }
    let value = quadratic_form(m, &p);
    match polish(m, &p) {
        Some(polished) if polished.value <= value + 1e-15 => polished,
        _ => QpMinimum { value, point: p },
    }
}

/// Multistart projected gradient.
pub fn minimize_multistart(m: &[Vec<f64>]) -> QpMinimum {
    let n = m.len();
    let mut seeds: Vec<Vec<f64>> = vec![vec![1.0 / n as f64; n]];
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        seeds.push(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut e = vec![0.0; n];
            e[i] = 0.5;
            e[j] = 0.5;
            seeds.push(e);
        }
    }
    seeds
        .into_iter()
        .map(|s| descend(m, s, 5_000))
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .expect("at least one seed")
}

/// Exact-support enumeration; `None` above [`EXHAUSTIVE_LIMIT`].
pub fn minimize_exhaustive(m: &[Vec<f64>]) -> Option<QpMinimum> {
    let n = m.len();
    if n > EXHAUSTIVE_LIMIT || n == 0 {
        return None;
    }
    let mut best: Option<QpMinimum> = None;
    for mask in 1u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let restricted: Vec<Vec<f64>> = support
            .iter()
            .map(|&i| support.iter().map(|&j| m[i][j]).collect())
            .collect();
        let Some(q) = linalg::solve(restricted, vec![1.0; support.len()]) else {
            continue;
        };
        if q.iter().any(|&v| !(v > 0.0)) {
            continue;
        }
        let total: f64 = q.iter().sum();
        let value = 1.0 / total;
        if best.as_ref().is_none_or(|b| value < b.value) {
            let mut point = vec![0.0; n];
            for (&i, v) in support.iter().zip(&q) {
                point[i] = v / total;
            }
            best = Some(QpMinimum { value, point });
        }
    }
    best
}
