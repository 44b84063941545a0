use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dmcbounds::expurgation::e_ex;
use dmcbounds::gallager::{capacity, e_r, e_sp};
use dmcbounds::Channel;
use dmcbounds_bench::{ratio, typewriter};

fn exponents(c: &mut Criterion) {
    let bsc = Channel::bsc(&ratio(1, 10)).unwrap();
    let tw3 = typewriter(3);
    c.bench_function("capacity typewriter 3", |b| b.iter(|| capacity(black_box(&tw3))));
    c.bench_function("e_r bsc R = 0.2", |b| b.iter(|| e_r(black_box(&bsc), 0.2)));
    c.bench_function("e_sp bsc R = 0.2", |b| b.iter(|| e_sp(black_box(&bsc), 0.2)));
    c.bench_function("e_sp typewriter 3 R = 0.6", |b| b.iter(|| e_sp(black_box(&tw3), 0.6)));
    c.bench_function("e_ex bsc R = 0.01", |b| b.iter(|| e_ex(black_box(&bsc), 0.01, 1)));
}

criterion_group!(benches, exponents);
criterion_main!(benches);
