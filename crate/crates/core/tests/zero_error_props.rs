mod common;

use common::{channel_strategy, test_channels};
use dmcbounds::gallager::capacity;
use dmcbounds::psi_inf;
use dmcbounds::zero_error::{
    c0_lower, c0_positive, independence_number, maximum_independent_set, strong_product, ConfusabilityGraph,
};
use proptest::prelude::*;

fn brute_force_alpha(g: &ConfusabilityGraph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).all(|u| (u + 1..n).all(|v| mask >> u & 1 == 0 || mask >> v & 1 == 0 || !g.adjacent(u, v)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = ConfusabilityGraph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let adjacency = (0..n)
                .map(|i| (0..n).map(|j| i != j && bits[i.min(j) * n + i.max(j)]).collect())
                .collect();
            ConfusabilityGraph::from_adjacency(adjacency).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn matches_brute_force(g in graph_strategy(14)) {
        let set = maximum_independent_set(&g).unwrap();
        prop_assert!(g.is_independent(&set));
        prop_assert_eq!(set.len(), brute_force_alpha(&g));
    }

    #[test]
    fn super_multiplicative(g in graph_strategy(6), h in graph_strategy(6)) {
        let product = strong_product(&g, &h).unwrap();
        prop_assert!(independence_number(&product).unwrap() >= independence_number(&g).unwrap() * independence_number(&h).unwrap());
    }

    #[test]
    fn bounded_by_r_inf(w in channel_strategy(5, 5)) {
        if c0_positive(&w) {
            prop_assert!(c0_lower(&w, 1).unwrap().rate() <= psi_inf(&w).rate() + 1e-12);
        }
    }
}

#[test]
fn lower_bounds_below_capacity_and_nondecreasing() {
    for (name, w) in test_channels() {
        let c = capacity(&w);
        let mut last = 0.0;
        for n in 1..=3 {
            let Ok(rate) = c0_lower(&w, n) else { break };
            assert!(rate.rate() <= c + 1e-6, "{name}: n = {n}");
            if n == 2 {
                assert!(rate.rate() >= last - 1e-12, "{name}: alpha(G^2) < alpha(G)^2");
            }
            last = rate.rate();
        }
    }
}

#[test]
fn pentagon_square_set() {
    let c5 = ConfusabilityGraph::cycle(5);
    let sq = strong_product(&c5, &c5).unwrap();
    let set = maximum_independent_set(&sq).unwrap();
    assert_eq!(set.len(), 5);
    assert_eq!(brute_force_alpha(&c5), 2);
}
