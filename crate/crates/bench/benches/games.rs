use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dmcbounds::approx::phi_n_exact;
use dmcbounds::{psi_inf, solve_game};
use dmcbounds_bench::{random_support_payoff, typewriter};

fn games(c: &mut Criterion) {
    for n in [6, 12] {
        let payoff = random_support_payoff(1, n, n);
        c.bench_function(&format!("solve_game random {n}x{n}"), |b| {
            b.iter(|| solve_game(black_box(&payoff)))
        });
    }
    let tw = typewriter(7);
    c.bench_function("psi_inf typewriter 7", |b| b.iter(|| psi_inf(black_box(&tw))));
    let tw3 = typewriter(3);
    c.bench_function("phi_n typewriter 3, N = 100", |b| b.iter(|| phi_n_exact(black_box(&tw3), 100)));
}

criterion_group!(benches, games);
criterion_main!(benches);
