use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fairext_bench::{efae, is_gadget, mcq_gadget, refae};
use fairext_core::dp::solve_dp;
use fairext_core::fpt::solve_fpt_k_nt;
use fairext_core::ilp::solve_refae_ilp;
use fairext_core::{solve_bruteforce, OracleBudget};

fn open_items(c: &mut Criterion) {
    let mut group = c.benchmark_group("efae_by_k");
    for k in 1..=5 {
        let inst = efae(k as u64, 5, 2, k);
        group.bench_with_input(BenchmarkId::new("fpt-k-nt", k), &inst, |b, i| {
            b.iter(|| solve_fpt_k_nt(black_box(i)))
        });
        group.bench_with_input(BenchmarkId::new("brute", k), &inst, |b, i| {
            b.iter(|| solve_bruteforce(black_box(i), OracleBudget::default()))
        });
    }
    group.finish();
}

fn recipients(c: &mut Criterion) {
    let mut group = c.benchmark_group("refae_by_max_value");
    for v in [2, 4, 8, 16] {
        let inst = refae(v as u64, 5, 2, 8, 3, v);
        group.bench_with_input(BenchmarkId::new("dp-p-nt", v), &inst, |b, i| {
            b.iter(|| solve_dp(black_box(i)))
        });
        group.bench_with_input(BenchmarkId::new("ilp-p-mt", v), &inst, |b, i| {
            b.iter(|| solve_refae_ilp(black_box(i)))
        });
    }
    group.finish();
}

fn gadgets(c: &mut Criterion) {
    let mut group = c.benchmark_group("gadgets");
    group.sample_size(10);
    // q = 4 already has ten open items and takes about a minute per solve.
    for q in 2..=3 {
        let inst = mcq_gadget(q as u64, q, 2);
        group.bench_with_input(BenchmarkId::new("mcq/fpt-k-nt", q), &inst, |b, i| {
            b.iter(|| solve_fpt_k_nt(black_box(i)))
        });
    }
    for n in [4, 6, 8] {
        let inst = is_gadget(n as u64, n, n / 2);
        group.bench_with_input(BenchmarkId::new("is/ilp-p-mt", n), &inst, |b, i| {
            b.iter(|| solve_refae_ilp(black_box(i)))
        });
        group.bench_with_input(BenchmarkId::new("is/dp-p-nt", n), &inst, |b, i| {
            b.iter(|| solve_dp(black_box(i)))
        });
    }
    group.finish();
}

criterion_group!(benches, open_items, recipients, gadgets);
criterion_main!(benches);
