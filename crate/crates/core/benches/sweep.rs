use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nlqsl_core::dynamics::{ground_state_gaussian, propagate, HarmonicRamp, NonlinearitySpec, PropagationSettings};
use nlqsl_core::par::{self, Execution};
use nlqsl_core::qsl::{qsl_numeric, qsl_trace};
use nlqsl_core::SpatialGrid;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn kappa_sweep(c: &mut Criterion) {
    let grid = SpatialGrid::new(-8.0, 8.0, 512).unwrap();
    let psi0 = ground_state_gaussian(grid, 1.0, 5.0, 1.0).unwrap();
    let trap = HarmonicRamp::new(5.0, 1.0, 2.0).unwrap().with_mass(1.0);
    let settings = PropagationSettings { t_final: 0.1, dt: 1e-4, sample_every: usize::MAX };
    let kappas: Vec<f64> = (0..8).map(|i| 1.25 * i as f64).collect();

    let mut group = c.benchmark_group("kappa_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                par::map(&kappas, exec, |&kappa| {
                    let nl = NonlinearitySpec::cubic(kappa).unwrap();
                    let traj = propagate(&psi0, &trap, &nl, settings).unwrap();
                    let (t, psi) = traj.last().unwrap();
                    qsl_numeric(psi, &trap, t, &nl).unwrap()
                })
            })
        });
    }
    group.finish();
}

fn trace(c: &mut Criterion) {
    let grid = SpatialGrid::new(-8.0, 8.0, 1024).unwrap();
    let psi0 = ground_state_gaussian(grid, 1.0, 5.0, 1.0).unwrap();
    let trap = HarmonicRamp::new(5.0, 1.0, 2.0).unwrap().with_mass(1.0);
    let nl = NonlinearitySpec::cubic(5.0).unwrap();
    let settings = PropagationSettings { t_final: 0.4, dt: 1e-4, sample_every: 10 };
    let traj = propagate(&psi0, &trap, &nl, settings).unwrap();

    let mut group = c.benchmark_group("qsl_trace");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| qsl_trace(&traj, &trap, &nl, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, kappa_sweep, trace);
criterion_main!(benches);
