use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use hodgecalc::algebra::normal_form;
use hodgecalc::catalog::relations;
use hodgecalc::checks::run_all;
use hodgecalc::good_model::{genus2_solve, hh_class, q_class};
use hodgecalc::incidence::{gheorghita_tarasca, ksz_class};
use hodgecalc::SpaceId;
use hodgecalc_bench::{dense_class, incidence_grid};

fn good_model(c: &mut Criterion) {
    c.bench_function("genus2_solve", |b| b.iter(|| genus2_solve().unwrap()));
    c.bench_function("q_class", |b| b.iter(|| q_class().unwrap()));
    c.bench_function("hh_class", |b| b.iter(|| hh_class().unwrap()));
}

fn incidence(c: &mut Criterion) {
    let grid = incidence_grid();
    c.bench_function("gheorghita_tarasca_grid", |b| {
        b.iter(|| {
            for &(g, k) in &grid {
                black_box(gheorghita_tarasca(g, k).unwrap());
            }
        })
    });
    c.bench_function("ksz_grid", |b| {
        b.iter(|| {
            for &(g, k) in grid.iter().filter(|&&gk| gk != (2, 2)) {
                black_box(ksz_class(g, k).unwrap());
            }
        })
    });
}

fn algebra(c: &mut Criterion) {
    let x = dense_class(6);
    let rels = relations(SpaceId::Mbar(6));
    c.bench_function("normal_form_m6", |b| {
        b.iter(|| normal_form(black_box(&x), &rels).unwrap())
    });
}

fn checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("checks");
    g.sample_size(10);
    g.bench_function("run_all", |b| b.iter(run_all));
    g.finish();
}

criterion_group!(benches, good_model, incidence, algebra, checks);
criterion_main!(benches);
