//! One worker versus the default rayon pool on the main data-parallel paths.
//! Build with `--no-default-features` to time the sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use oscdecay_core::analysis::{bound_sweep, geometric_grid};
use oscdecay_core::dispersive::{decay_scan, EvolutionProblem};
use oscdecay_core::numerics::{Grid, SampledField};
use oscdecay_core::osc_core::PhaseSpec;
use oscdecay_core::restriction::{necessity_quotients, GaussianProfile, RestrictionSetup, SurfaceSpec};

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    let n = default.current_num_threads();
    vec![
        (
            "1".to_string(),
            rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap(),
        ),
        (format!("default({n})"), default),
    ]
}

fn bench_bound_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("bound_sweep k=5 step 0.05");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_with_input(BenchmarkId::new("threads", name), &pool, |b, pool| {
            b.iter(|| pool.install(|| bound_sweep(5, -20.0, 20.0, 0.05, 1e-10).unwrap()))
        });
    }
    g.finish();
}

fn bench_decay_scan(c: &mut Criterion) {
    let phase = PhaseSpec::monomials(&[1.0, 1.0], &[2, 2]).unwrap();
    let grid = Grid::centered(vec![0.5, 0.5], vec![256, 256]).unwrap();
    let phi = SampledField::from_fn(grid, |x| {
        Complex64::new((-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp(), 0.0)
    })
    .unwrap();
    let problem = EvolutionProblem::new(phase, phi, 5.0, 5.0).unwrap();
    let ts = geometric_grid(1.0, 5.0, 12);
    let mut g = c.benchmark_group("decay_scan 2-D 256^2, 12 times");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_with_input(BenchmarkId::new("threads", name), &pool, |b, pool| {
            b.iter(|| pool.install(|| decay_scan(&problem, &ts).unwrap()))
        });
    }
    g.finish();
}

fn bench_surface_samples(c: &mut Criterion) {
    let surface = SurfaceSpec::new(PhaseSpec::monomials(&[1.0], &[2]).unwrap());
    let setup = RestrictionSetup {
        grid: Grid::new(vec![-12.0, -16.0], vec![0.2, 0.1], vec![121, 321]).unwrap(),
        xi_grid: Grid::new(vec![-4.5], vec![0.05], vec![181]).unwrap(),
    };
    let profile = GaussianProfile::standard(2);
    let mut g = c.benchmark_group("necessity_quotients 3 scales");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_with_input(BenchmarkId::new("threads", name), &pool, |b, pool| {
            b.iter(|| {
                pool.install(|| necessity_quotients(&profile, &surface, &[1.2], &[0.5, 1.0, 2.0], &setup).unwrap())
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bench_bound_sweep, bench_decay_scan, bench_surface_samples);
criterion_main!(benches);
