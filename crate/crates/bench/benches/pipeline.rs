use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jonesq_core::circuit::{compile_controlled_diagonal, htest, iqp_from_graph, stretch_cnots};
use jonesq_core::noise::evolve;
use jonesq_core::potts::partition_contract;
use jonesq_core::seed::rng;
use jonesq_core::zne::{bootstrap, Resampling};
use jonesq_core::{builtin_knots, FitModel, NoiseModel, Part, ZneDataset};
use rand::Rng;

fn contraction(c: &mut Criterion) {
    let mut group = c.benchmark_group("contraction");
    for k in builtin_knots() {
        for q in [2u32, 3, 4] {
            group.bench_with_input(BenchmarkId::new(k.name.clone(), q), &q, |b, &q| {
                b.iter(|| partition_contract(black_box(&k.tait_graph), q).unwrap())
            });
        }
    }
    group.finish();
}

fn synthesis(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesis");
    for k in builtin_knots() {
        let ht = htest(&iqp_from_graph(&k.tait_graph), Part::Imag).unwrap();
        group.bench_function(k.name.clone(), |b| {
            b.iter(|| compile_controlled_diagonal(black_box(&ht)).unwrap())
        });
    }
    group.finish();
}

fn density(c: &mut Criterion) {
    let mut group = c.benchmark_group("density_evolve");
    let k = &builtin_knots()[0];
    let compiled =
        compile_controlled_diagonal(&htest(&iqp_from_graph(&k.tait_graph), Part::Real).unwrap())
            .unwrap();
    let nm = NoiseModel::default();
    for stretch in [1u32, 3, 5, 7] {
        let circuit = stretch_cnots(&compiled, stretch).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(stretch),
            &circuit,
            |b, circuit| b.iter(|| evolve(black_box(circuit), &nm).unwrap()),
        );
    }
    group.finish();
}

fn resampling(c: &mut Criterion) {
    let mut r = rng(1, &[]);
    let mut ds = ZneDataset::new(Part::Real);
    for stretch in [1u32, 3, 5, 7] {
        for _ in 0..150 {
            ds.push(
                stretch,
                0.4 - 0.03 * stretch as f64 + r.random_range(-0.02..0.02),
            );
        }
    }
    let mut group = c.benchmark_group("bootstrap");
    group.sample_size(10);
    for (model, cs) in [
        (FitModel::Linear, vec![1, 3]),
        (FitModel::Exponential, vec![1, 3, 5, 7]),
    ] {
        group.bench_function(model.as_str(), |b| {
            b.iter(|| {
                bootstrap(black_box(&ds), model, &cs, 2000, 7, Resampling::Independent).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, contraction, synthesis, density, resampling);
criterion_main!(benches);
