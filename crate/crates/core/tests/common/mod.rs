#![allow(dead_code)]

use dmcbounds::{Channel, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Rows of small integer weights normalized to sum one. About a third of
/// the entries are zero; every row keeps at least one positive entry.
pub fn random_channel(rng: &mut ChaCha8Rng, inputs: usize, outputs: usize) -> Channel {
    let rows = (0..inputs)
        .map(|_| {
            let mut weights: Vec<i64> = (0..outputs)
                .map(|_| if rng.gen_bool(0.35) { 0 } else { rng.gen_range(1..=4) })
                .collect();
            if weights.iter().all(|&w| w == 0) {
                weights[rng.gen_range(0..outputs)] = rng.gen_range(1..=4);
            }
            let total: i64 = weights.iter().sum();
            weights.into_iter().map(|w| r(w, total)).collect()
        })
        .collect();
    Channel::new(rows).expect("normalized rows")
}

pub fn random_sized_channel(rng: &mut ChaCha8Rng, max_in: usize, max_out: usize) -> Channel {
    let inputs = rng.gen_range(1..=max_in);
    let outputs = rng.gen_range(1..=max_out);
    random_channel(rng, inputs, outputs)
}

/// Named channels used across the test suites.
pub fn test_channels() -> Vec<(&'static str, Channel)> {
    vec![
        ("identity2", Channel::identity(2).unwrap()),
        ("identity3", Channel::identity(3).unwrap()),
        (
            "uniform2",
            Channel::from_ratios(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]).unwrap(),
        ),
        ("bsc(1/10)", Channel::bsc(&r(1, 10)).unwrap()),
        ("tw3(1/10)", Channel::typewriter(3, &r(1, 10)).unwrap()),
        ("tw3(1/4)", Channel::typewriter(3, &r(1, 4)).unwrap()),
        ("tw4(1/4)", Channel::typewriter(4, &r(1, 4)).unwrap()),
        ("tw5(1/2)", Channel::typewriter(5, &r(1, 2)).unwrap()),
        (
            "z-channel",
            Channel::from_ratios(&[&[(1, 1), (0, 1)], &[(1, 3), (2, 3)]]).unwrap(),
        ),
        (
            "erasure",
            Channel::from_ratios(&[&[(3, 4), (1, 4), (0, 1)], &[(0, 1), (1, 4), (3, 4)]]).unwrap(),
        ),
    ]
}

/// Proptest strategy for small rational channels with random zero patterns.
pub fn channel_strategy(max_in: usize, max_out: usize) -> impl proptest::strategy::Strategy<Value = Channel> {
    use proptest::prelude::*;
    (1..=max_in, 1..=max_out).prop_flat_map(|(inputs, outputs)| {
        proptest::collection::vec(proptest::collection::vec(0i64..=4, outputs), inputs)
            .prop_map(weights_to_channel)
    })
}

/// Strategy for channels of a fixed shape.
pub fn shaped_channel_strategy(inputs: usize, outputs: usize) -> impl proptest::strategy::Strategy<Value = Channel> {
    use proptest::prelude::*;
    proptest::collection::vec(proptest::collection::vec(0i64..=4, outputs), inputs).prop_map(weights_to_channel)
}

fn weights_to_channel(mut weights: Vec<Vec<i64>>) -> Channel {
    for (i, row) in weights.iter_mut().enumerate() {
        if row.iter().all(|&w| w == 0) {
            let j = i % row.len();
            row[j] = 1;
        }
    }
    let rows = weights
        .into_iter()
        .map(|row| {
            let total: i64 = row.iter().sum();
            row.into_iter().map(|w| r(w, total)).collect()
        })
        .collect();
    Channel::new(rows).expect("normalized rows")
}
