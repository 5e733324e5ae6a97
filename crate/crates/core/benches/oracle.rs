use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use slopestab::exactalg::rat::int;
use slopestab::oracle::{brute_normal_cone_weight, ToricCase};
use slopestab::par;
use slopestab::report::{run_oracle_suite, run_oracle_suite_seq, Caps, Scope};

fn suites(c: &mut Criterion) {
    let caps = Caps::uniform(16).expect("valid cap");
    let mut g = c.benchmark_group("oracle-suite");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| run_oracle_suite(black_box(Scope::All), &caps))
    });
    g.bench_function("sequential", |b| {
        b.iter(|| run_oracle_suite_seq(black_box(Scope::All), &caps))
    });
    g.finish();
}

fn p2_sweep(c: &mut Criterion) {
    let ks: Vec<u64> = (1..=30).collect();
    let case = ToricCase::p2(2);
    let one = int(1);
    let mut g = c.benchmark_group("p2-weight-sweep");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| {
            par::map(&ks, |&k| {
                brute_normal_cone_weight(&case, &one, black_box(k))
            })
        })
    });
    g.bench_function("sequential", |b| {
        b.iter(|| {
            par::map_seq(&ks, |&k| {
                brute_normal_cone_weight(&case, &one, black_box(k))
            })
        })
    });
    g.finish();
}

criterion_group!(benches, suites, p2_sweep);
criterion_main!(benches);
