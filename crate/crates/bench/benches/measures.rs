use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tritangle::convexroof::{curve_minimum, lower_convex_envelope, unit_grid, RoofConfig};
use tritangle::families::{family_state, optimal_decomposition, FamilyId, FamilySpec};
use tritangle::qstate::{partial_trace, PureState, Subsystem, C64};
use tritangle::tangle::concurrence_two_qubit;
use tritangle::{estimate_roof, three_tangle_pure};

fn random_states(n: usize, seed: u64) -> Vec<PureState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut amps = [C64::new(0.0, 0.0); 8];
            for a in &mut amps {
                *a = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
            let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            for a in &mut amps {
                *a /= norm;
            }
            PureState::new(amps).unwrap()
        })
        .collect()
}

fn bench_three_tangle(c: &mut Criterion) {
    let states = random_states(256, 7);
    c.bench_function("three_tangle_pure_256", |b| {
        b.iter(|| {
            states
                .iter()
                .map(|s| three_tangle_pure(s).value())
                .sum::<f64>()
        })
    });
}

fn bench_concurrence(c: &mut Criterion) {
    let states = random_states(32, 11);
    let marginals: Vec<_> = states
        .iter()
        .map(|s| partial_trace(&s.projector(), &[Subsystem::A, Subsystem::B]).unwrap())
        .collect();
    c.bench_function("concurrence_two_qubit_32", |b| {
        b.iter(|| {
            marginals
                .iter()
                .map(|rho| concurrence_two_qubit(rho).unwrap())
                .sum::<f64>()
        })
    });
}

fn bench_decomposition(c: &mut Criterion) {
    let f = FamilySpec::built_in(FamilyId::Rank8);
    c.bench_function("optimal_decomposition_rank8_zero_region", |b| {
        b.iter(|| optimal_decomposition(f, 0.1).unwrap().len())
    });
}

fn bench_roof_search(c: &mut Criterion) {
    let f = FamilySpec::built_in(FamilyId::Rank5);
    let rho = family_state(f, 0.9).unwrap();
    let cfg = RoofConfig {
        ensemble_size: 10,
        restarts: 2,
        max_iters: 2000,
        step_init: 0.5,
        step_min: 1e-3,
        seed: 3,
    };
    c.bench_function("estimate_roof_sigma09_small", |b| {
        b.iter(|| estimate_roof(&rho, &cfg).unwrap().value.value())
    });
}

fn bench_curve_envelope(c: &mut Criterion) {
    let f = FamilySpec::built_in(FamilyId::Rank5);
    let grid = unit_grid(100);
    c.bench_function("curve_minimum_pi_over_2_grid100", |b| {
        b.iter(|| {
            let mins = curve_minimum(f, std::f64::consts::FRAC_PI_2, &grid).unwrap();
            let pts: Vec<(f64, f64)> = grid.iter().copied().zip(mins).collect();
            lower_convex_envelope(&pts).unwrap().vertices().len()
        })
    });
}

criterion_group!(
    measures,
    bench_three_tangle,
    bench_concurrence,
    bench_decomposition,
    bench_roof_search,
    bench_curve_envelope
);
criterion_main!(measures);
