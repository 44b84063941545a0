//! Fixtures shared by the benchmarks.

use dmcbounds::zero_error::ConfusabilityGraph;
use dmcbounds::{Channel, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn typewriter(q: usize) -> Channel {
    Channel::typewriter(q, &ratio(1, 4)).expect("valid typewriter")
}

/// Random 0/1 payoff with no zero column.
pub fn random_support_payoff(seed: u64, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bits: Vec<Vec<bool>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_bool(0.4)).collect()).collect();
    for x in 0..cols {
        if bits.iter().all(|row| !row[x]) {
            bits[x % rows][x] = true;
        }
    }
    bits.iter()
        .map(|row| row.iter().map(|&b| ratio(i64::from(b), 1)).collect())
        .collect()
}

/// Erdos-Renyi graph with edge probability `p`.
pub fn random_graph(seed: u64, n: usize, p: f64) -> ConfusabilityGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacency = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = rng.gen_bool(p);
            adjacency[i][j] = e;
            adjacency[j][i] = e;
        }
    }
    ConfusabilityGraph::from_adjacency(adjacency).expect("symmetric")
}
