//! Confusability graphs, strong products and exact independence numbers.
//!
//! Zero-error codes of block length `n` are independent sets of the n-fold
//! strong power of the confusability graph, so `(1/n) log2 alpha(G^n)` is a
//! certified lower bound on the zero-error capacity.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::channel::{checked_size, Channel, DEFAULT_SIZE_CAP};
use crate::error::{Error, Result};
use crate::game::ExactLogRate;
use crate::Rational;

/// Largest graph [`independence_number`] accepts.
pub const ALPHA_BUDGET: usize = 64;

/// Simple undirected graph; an edge joins two confusable inputs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConfusabilityGraph {
    adjacency: Vec<Vec<bool>>,
}

impl ConfusabilityGraph {
    /// Builds a graph from an adjacency matrix, checking symmetry and the
    /// absence of self-loops.
    pub fn from_adjacency(adjacency: Vec<Vec<bool>>) -> Result<Self> {
        let n = adjacency.len();
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter("adjacency is not square".into()));
            }
            if row[i] {
                return Err(Error::InvalidParameter(format!("self-loop at {i}")));
            }
            if (0..n).any(|j| row[j] != adjacency[j][i]) {
                return Err(Error::InvalidParameter("adjacency is not symmetric".into()));
            }
        }
        Ok(ConfusabilityGraph { adjacency })
    }

    pub fn empty(n: usize) -> Self {
        ConfusabilityGraph {
            adjacency: vec![vec![false; n]; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        ConfusabilityGraph {
            adjacency: (0..n).map(|i| (0..n).map(|j| i != j).collect()).collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::empty(n);
        if n >= 3 {
            for i in 0..n {
                let j = (i + 1) % n;
                g.adjacency[i][j] = true;
                g.adjacency[j][i] = true;
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u][v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].iter().filter(|&&b| b).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.adjacency[u][v]))
    }

    /// One line per vertex: `v: n1 n2 ...`.
    pub fn to_adjacency_list(&self) -> String {
        let mut out = String::new();
        for v in 0..self.vertex_count() {
            let _ = write!(out, "{v}:");
            for u in (0..self.vertex_count()).filter(|&u| self.adjacency[v][u]) {
                let _ = write!(out, " {u}");
            }
            out.push('\n');
        }
        out
    }
}

/// Inputs `x != x'` are adjacent iff their output supports intersect.
pub fn confusability_graph(w: &Channel) -> ConfusabilityGraph {
    let n = w.input_size();
    let adjacency = (0..n)
        .map(|a| (0..n).map(|b| a != b && w.confusable(a, b)).collect())
        .collect();
    ConfusabilityGraph { adjacency }
}

pub fn strong_product(g1: &ConfusabilityGraph, g2: &ConfusabilityGraph) -> Result<ConfusabilityGraph> {
    strong_product_capped(g1, g2, DEFAULT_SIZE_CAP)
}

/// Vertices `V1 x V2` (row-major); distinct pairs are adjacent iff every
/// coordinate is equal or adjacent.
pub fn strong_product_capped(
    g1: &ConfusabilityGraph,
    g2: &ConfusabilityGraph,
    cap: usize,
) -> Result<ConfusabilityGraph> {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let n = checked_size(n1, n2, cap)?;
    let close1 = |a: usize, b: usize| a == b || g1.adjacency[a][b];
    let close2 = |a: usize, b: usize| a == b || g2.adjacency[a][b];
    let adjacency = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| u != v && close1(u / n2, v / n2) && close2(u % n2, v % n2))
                .collect()
        })
        .collect();
    Ok(ConfusabilityGraph { adjacency })
}

/// `G^{⊠n}`.
pub fn strong_power(g: &ConfusabilityGraph, n: usize) -> Result<ConfusabilityGraph> {
    strong_power_capped(g, n, DEFAULT_SIZE_CAP)
}

pub fn strong_power_capped(g: &ConfusabilityGraph, n: usize, cap: usize) -> Result<ConfusabilityGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("strong power needs n >= 1".into()));
    }
    let mut acc = g.clone();
    for _ in 1..n {
        acc = strong_product_capped(&acc, g, cap)?;
    }
    Ok(acc)
}

/// Exact independence number.
pub fn independence_number(g: &ConfusabilityGraph) -> Result<usize> {
    Ok(maximum_independent_set(g)?.len())
}

/// A maximum independent set, found as a maximum clique of the complement
/// by branch and bound with greedy-coloring bounds. Vertices are ordered by
/// descending degree in the searched (complement) graph.
pub fn maximum_independent_set(g: &ConfusabilityGraph) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if n > ALPHA_BUDGET {
        return Err(Error::BudgetExceeded(n, ALPHA_BUDGET));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // relabel so that bit i is the i-th vertex in search order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut comp = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && !g.adjacency[order[i]][order[j]] {
                comp[i] |= 1 << j;
            }
        }
    }
    let mut search = CliqueSearch {
        comp,
        best: Vec::new(),
        current: Vec::new(),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.expand(all);
    let mut set: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    set.sort_unstable();
    debug_assert!(g.is_independent(&set));
    Ok(set)
}

struct CliqueSearch {
    comp: Vec<u64>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl CliqueSearch {
    fn expand(&mut self, mut candidates: u64) {
        let colored = self.color(candidates);
        for &(v, color) in colored.iter().rev() {
            if self.current.len() + color <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = candidates & self.comp[v];
            if next == 0 {
                if self.current.len() > self.best.len() {
                    self.best.clone_from(&self.current);
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates &= !(1u64 << v);
        }
    }

    /// Greedy sequential coloring of the candidates (classes are
    /// pairwise non-adjacent in the clique graph), returned in
    /// nondecreasing color order.
    fn color(&self, candidates: u64) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(candidates.count_ones() as usize);
        let mut uncolored = candidates;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut available = uncolored;
            while available != 0 {
                let v = available.trailing_zeros() as usize;
                available &= !(1u64 << v);
                available &= !self.comp[v];
                uncolored &= !(1u64 << v);
                out.push((v, color));
            }
        }
        out
    }
}

/// `(1/n) log2 alpha(G^{⊠n})` as an exact per-block rate (`psi = 1/alpha`).
pub fn c0_lower(w: &Channel, n: usize) -> Result<ExactLogRate> {
    let power = strong_power(&confusability_graph(w), n)?;
    let alpha = independence_number(&power)?;
    let block = u32::try_from(n).map_err(|_| Error::InvalidParameter("block length".into()))?;
    Ok(ExactLogRate::per_block(
        Rational::new(BigInt::from(1), BigInt::from(alpha)),
        block,
    ))
}

/// Whether some pair of distinct inputs is non-confusable.
pub fn c0_positive(w: &Channel) -> bool {
    let g = confusability_graph(w);
    let n = g.vertex_count();
    (0..n).any(|a| (a + 1..n).any(|b| !g.adjacent(a, b)))
}
