use criterion::{criterion_group, criterion_main, Criterion};
use levytandem::heavy_traffic::regime2_downstream_lst;
use levytandem::laplace_inversion::invert_tail;
use levytandem::{InversionConfig, C64};
use levytandem_bench::pareto_system;
use std::hint::black_box;

fn inversion(c: &mut Criterion) {
    let euler = InversionConfig::default();
    let stehfest = InversionConfig::stehfest();
    let r2 = |s: C64| regime2_downstream_lst(2.0, 2.0, s);
    c.bench_function("euler regime2 marginal", |b| b.iter(|| invert_tail(&r2, black_box(10.0), &euler).unwrap()));
    c.bench_function("stehfest regime2 marginal", |b| b.iter(|| invert_tail(&r2, black_box(10.0), &stehfest).unwrap()));
    let sys = pareto_system(0.5, 0.95);
    let exact = |s: C64| sys.lst_downstream(s);
    c.bench_function("euler exact pareto downstream", |b| b.iter(|| invert_tail(&exact, black_box(100.0), &euler).unwrap()));
}

criterion_group!(benches, inversion);
criterion_main!(benches);
