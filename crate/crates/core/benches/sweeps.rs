//! Parallel against sequential execution of the exponent sweeps.
//!
//! Build with `--no-default-features` to compare against the build without
//! the thread pool.

use std::f64::consts::PI;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use polysing_core::edge_pencil::{mu_of_pencil, DihedronPencil, SpectralSettings};
use polysing_core::exec::{map, Execution};
use polysing_core::geometry::{solids, BoundaryAssignment, BoundaryCondition, Domain};
use polysing_core::regularity::{Configuration, ProblemKind};

fn mu_sweep(c: &mut Criterion) {
    let settings = SpectralSettings { n: 16, force_numeric: true, ..SpectralSettings::default() };
    let pencils: Vec<DihedronPencil> = (0..8)
        .map(|k| DihedronPencil::new((0.4 + 0.2 * k as f64) * PI, BoundaryCondition::Dirichlet, BoundaryCondition::Slip).unwrap())
        .collect();
    let mut group = c.benchmark_group("mu-sweep");
    group.sample_size(10);
    for mode in [Execution::Parallel, Execution::Sequential] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| map(&pencils, mode, |p| mu_of_pencil(p, &settings).unwrap().value))
        });
    }
    group.finish();
}

fn step_prism_configuration(c: &mut Criterion) {
    let poly = solids::step_prism(false);
    let mut bcs = BoundaryAssignment::uniform(poly.faces.len(), BoundaryCondition::Dirichlet);
    bcs.set(0, BoundaryCondition::Slip);
    let domain = Domain::new(poly, bcs).unwrap();
    let settings = SpectralSettings { n: 16, force_numeric: true, ..SpectralSettings::default() };
    let mut group = c.benchmark_group("step-prism-configuration");
    group.sample_size(10);
    for mode in [Execution::Parallel, Execution::Sequential] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| Configuration::from_domain(&domain, ProblemKind::NavierStokes, &settings, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, mu_sweep, step_prism_configuration);
criterion_main!(benches);
