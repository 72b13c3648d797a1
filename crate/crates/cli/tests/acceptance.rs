//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every tolerance is pinned here. Two criteria assert reference values that
//! the implementation measurably cannot meet; they are asserted as written
//! and fail with the measured numbers rather than being loosened:
//!
//! - C1 pins the rank-8 tangent point at 0.8649, but the tangent of the
//!   rank-8 closed-form curve lies at 0.836450 (0.8649 corresponds to the
//!   same stationarity condition with the constant term of the quadratic
//!   background coefficient dropped).
//! - C6 requires the decomposition search never to land below the analytic
//!   curve; the search finds valid decompositions strictly below it (the
//!   curve is the best value within the frozen-weight superposition family,
//!   not over all decompositions), audited by witness reconstruction.
//! - C7 requires the phase-lattice envelope within 2e-3 of the curve; the
//!   lattice floor at the left endpoint is 3.0e-3 (first-order in the phase
//!   step, since the tangle zero set needs off-lattice phases there).

use std::fs;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tritangle::convexroof::{curve_minimum, lower_convex_envelope, unit_grid, RoofConfig};
use tritangle::families::{
    average_tangle, family_state, find_x0, find_x1, find_xstar, g_one, optimal_decomposition,
    reconstruction_residual, tau3_family, FamilyId, FamilySpec,
};
use tritangle::qstate::{partial_trace, DensityMatrixJson, PureState, Subsystem, C64};
use tritangle::tangle::{
    concurrence_two_qubit, one_tangle_pure, tau3_z_closed_form, three_tangle_pure, z_state,
    ZStateSpec,
};
use tritangle::{ckw, estimate_roof};

fn spec(id: FamilyId) -> &'static FamilySpec {
    FamilySpec::built_in(id)
}

fn random_pure(rng: &mut ChaCha8Rng) -> PureState {
    let mut amps = [C64::new(0.0, 0.0); 8];
    for a in &mut amps {
        *a = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    }
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    PureState::new(amps).unwrap()
}

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "[acceptance] {criterion}: {} — {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "{criterion}: {detail}");
}

#[test]
fn c01_transition_constants() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut lines = Vec::new();

    let p0 = (2.0 - 3f64.sqrt()) / 2.0;
    let got = find_x0(spec(FamilyId::Rank4));
    lines.push(format!("rank4 x0 = {got:.12} (reference {p0:.12})"));
    if (got - p0).abs() > 1e-12 {
        failures.push(format!("rank4 x0: {got:.12} vs {p0:.12}"));
    }

    let table = [
        (FamilyId::Rank5, 0.7377, 0.9559),
        (FamilyId::Rank6, 0.2143, 0.8290),
        (FamilyId::Rank7, 0.2062, 0.8375),
        (FamilyId::Rank8, 0.2490, 0.8649),
    ];
    for (id, x0_ref, x1_ref) in table {
        let f = spec(id);
        let x0 = find_x0(f);
        let x1 = find_x1(f).unwrap();
        lines.push(format!(
            "{id} x0 = {x0:.6} (ref {x0_ref}), x1 = {x1:.6} (ref {x1_ref})"
        ));
        if (x0 - x0_ref).abs() > 5e-4 {
            failures.push(format!("{id} x0: computed {x0:.6} vs reference {x0_ref}"));
        }
        if (x1 - x1_ref).abs() > 5e-4 {
            failures.push(format!("{id} x1: computed {x1:.6} vs reference {x1_ref}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 1.0 {
        failures.push(format!("runtime {elapsed:?} exceeds 1 s"));
    }
    for l in &lines {
        println!("  {l}");
    }
    report(
        "C1 transition constants",
        failures.is_empty(),
        &if failures.is_empty() {
            format!("all constants within 5e-4 in {elapsed:?}")
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn c02_closed_form_tangent_identity() {
    let x1 = find_x1(spec(FamilyId::Rank5)).unwrap();
    let closed = 0.5 + 73.0 * 6409f64.sqrt() / 12818.0;
    let diff = (x1 - closed).abs();
    // stationarity: 3 sqrt(30) (sqrt(p/(1-p)) - sqrt((1-p)/p)) = 73
    let relation = 3.0 * 30f64.sqrt() * ((x1 / (1.0 - x1)).sqrt() - ((1.0 - x1) / x1).sqrt());
    let rel_err = (relation - 73.0).abs();
    report(
        "C2 closed-form tangent point",
        diff <= 1e-9 && rel_err <= 1e-6,
        &format!("|x1 - closed| = {diff:.2e}, |stationarity - 73| = {rel_err:.2e}"),
    );
}

#[test]
fn c03_convexity_breakpoint() {
    let xstar = find_xstar(spec(FamilyId::Rank5)).unwrap();
    report(
        "C3 convexity breakpoint",
        (xstar - 0.9750).abs() <= 1e-3,
        &format!("xstar = {xstar:.6}"),
    );
}

#[test]
fn c04_formula_cross_validation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20240);
    let mut worst_closed: f64 = 0.0;
    for id in [FamilyId::Rank4, FamilyId::Rank5] {
        let f = spec(id);
        let arity = f.background().len();
        for _ in 0..1000 {
            let x: f64 = rng.random_range(0.0..1.0);
            let phases: Vec<f64> = (0..arity)
                .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
                .collect();
            let zs = ZStateSpec::new(f, x, &phases).unwrap();
            let closed = tau3_z_closed_form(&zs).value();
            let direct = three_tangle_pure(&z_state(&zs)).value();
            worst_closed = worst_closed.max((closed - direct).abs());
        }
    }
    let mut worst_gi: f64 = 0.0;
    for id in [
        FamilyId::Rank5,
        FamilyId::Rank6,
        FamilyId::Rank7,
        FamilyId::Rank8,
    ] {
        let f = spec(id);
        let x0 = find_x0(f);
        let arity = f.background().len();
        for _ in 0..1000 {
            let x: f64 = rng.random_range(x0..1.0);
            let zs = ZStateSpec::new(f, x, &vec![0.0; arity]).unwrap();
            let direct = three_tangle_pure(&z_state(&zs)).value();
            let gi = g_one(f, x).unwrap();
            worst_gi = worst_gi.max((direct - gi).abs());
        }
    }
    let elapsed = start.elapsed();
    report(
        "C4 formula cross-validation",
        worst_closed <= 1e-12 && worst_gi <= 1e-10 && elapsed.as_secs_f64() < 5.0,
        &format!(
            "closed-form vs polynomial {worst_closed:.2e} (<=1e-12), g_I vs zero-phase {worst_gi:.2e} (<=1e-10), {elapsed:?}"
        ),
    );
}

#[test]
fn c05_optimal_decompositions() {
    let mut worst_residual: f64 = 0.0;
    let mut worst_avg: f64 = 0.0;
    let mut worst_zero: f64 = 0.0;
    for id in [
        FamilyId::Rank5,
        FamilyId::Rank6,
        FamilyId::Rank7,
        FamilyId::Rank8,
    ] {
        let f = spec(id);
        let x0 = find_x0(f);
        for x in unit_grid(50) {
            let ens = optimal_decomposition(f, x).unwrap();
            let rho = family_state(f, x).unwrap();
            worst_residual = worst_residual.max(reconstruction_residual(&ens, &rho));
            let avg = average_tangle(&ens);
            let want = tau3_family(f, x).unwrap().value();
            worst_avg = worst_avg.max((avg - want).abs());
            if x <= x0 {
                worst_zero = worst_zero.max(avg);
            }
        }
    }
    report(
        "C5 optimal decompositions",
        worst_residual <= 1e-12 && worst_avg <= 1e-9 && worst_zero <= 1e-9,
        &format!(
            "residual {worst_residual:.2e} (<=1e-12), |avg - curve| {worst_avg:.2e} (<=1e-9), zero-region avg {worst_zero:.2e} (<=1e-9)"
        ),
    );
}

#[test]
fn c06_optimizer_vs_analytic() {
    let start = Instant::now();
    let f = spec(FamilyId::Rank5);
    let cfg = RoofConfig::for_rank(5, 42);
    let mut detail = Vec::new();
    let mut ok = true;
    for p in [0.8, 0.85, 0.9, 0.95] {
        let rho = family_state(f, p).unwrap();
        let est = estimate_roof(&rho, &cfg).unwrap();
        let analytic = tau3_family(f, p).unwrap().value();
        let gap = est.value.value() - analytic;
        // audit the witness so a low value is demonstrably feasible
        let residual = reconstruction_residual(&est.witness, &rho);
        detail.push(format!(
            "p={p}: value {:.6} vs curve {analytic:.6} (gap {gap:+.2e}, witness residual {residual:.1e})",
            est.value.value()
        ));
        if !(-1e-9..=5e-3).contains(&gap) || residual > 1e-10 {
            ok = false;
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 60.0 {
        ok = false;
        detail.push(format!("runtime {elapsed:?} exceeds 60 s"));
    }
    for l in &detail {
        println!("  {l}");
    }
    report(
        "C6 optimizer vs analytic curve",
        ok,
        &format!("{} ({elapsed:?})", detail.join("; ")),
    );
}

#[test]
fn c07_characteristic_curve_envelope() {
    let start = Instant::now();
    let f = spec(FamilyId::Rank5);
    let grid = unit_grid(200);
    let mins = curve_minimum(f, 0.3, &grid).unwrap();
    let points: Vec<(f64, f64)> = grid.iter().copied().zip(mins).collect();
    let envelope = lower_convex_envelope(&points).unwrap();
    let mut max_diff: f64 = 0.0;
    let mut arg_max = 0.0;
    for &x in &grid {
        let diff = (envelope.eval(x) - tau3_family(f, x).unwrap().value()).abs();
        if diff > max_diff {
            max_diff = diff;
            arg_max = x;
        }
    }
    let elapsed = start.elapsed();
    report(
        "C7 characteristic-curve envelope",
        max_diff <= 2e-3 && elapsed.as_secs_f64() < 600.0,
        &format!(
            "21^4 curves, max |envelope - curve| = {max_diff:.3e} at x = {arg_max:.4} (bound 2e-3), {elapsed:?}"
        ),
    );
}

#[test]
fn c08_ckw_report() {
    let f = spec(FamilyId::Rank5);
    let cfg = RoofConfig::for_rank(5, 1);
    let rep = ckw::ckw_report(f, 200, &cfg).unwrap();
    let mut worst_c2: f64 = 0.0;
    let mut flags_ok = true;
    for row in &rep.rows {
        worst_c2 = worst_c2.max(row.c2_ab + row.c2_ac);
        flags_ok &= row.inequality_ok && row.strong_ok;
    }
    let first = rep.rows.first().unwrap().one_tangle_closed;
    let last = rep.rows.last().unwrap().one_tangle_closed;
    let endpoints_ok = (first - 0.64).abs() <= 1e-12 && (last - 1.0).abs() <= 1e-12;
    report(
        "C8 monogamy report",
        worst_c2 <= 1e-10 && flags_ok && endpoints_ok,
        &format!(
            "max c2_sum {worst_c2:.2e} (<=1e-10), endpoints ({first:.6}, {last:.6}), flags all true: {flags_ok}"
        ),
    );
}

#[test]
fn c09_pure_state_monogamy_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let psi = random_pure(&mut rng);
        let rho = psi.projector();
        let c_ab =
            concurrence_two_qubit(&partial_trace(&rho, &[Subsystem::A, Subsystem::B]).unwrap())
                .unwrap();
        let c_ac =
            concurrence_two_qubit(&partial_trace(&rho, &[Subsystem::A, Subsystem::C]).unwrap())
                .unwrap();
        let lhs = one_tangle_pure(&psi, Subsystem::A);
        let rhs = c_ab * c_ab + c_ac * c_ac + three_tangle_pure(&psi).value();
        worst = worst.max((lhs - rhs).abs());
    }
    report(
        "C9 pure-state monogamy identity",
        worst <= 1e-9,
        &format!("max |4det(rho_A) - C2_AB - C2_AC - tau3| = {worst:.2e} over 1000 states"),
    );
}

#[test]
fn c10_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let rho = family_state(spec(FamilyId::Rank5), 0.85).unwrap();
    let input = dir.path().join("sigma.json");
    fs::write(
        &input,
        serde_json::to_string(&DensityMatrixJson::from(&rho)).unwrap(),
    )
    .unwrap();
    let run_once = || -> String {
        let out = Command::new(env!("CARGO_BIN_EXE_tangle"))
            .args([
                "optimize",
                "--input",
                input.to_str().unwrap(),
                "--seed",
                "7",
                "--restarts",
                "4",
                "--iters",
                "4000",
                "--out",
                "-",
            ])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let strip_timestamp = |text: &str| -> String {
        let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
        v["manifest"].as_object_mut().unwrap().remove("timestamp");
        serde_json::to_string_pretty(&v).unwrap()
    };
    let a = strip_timestamp(&run_once());
    let b = strip_timestamp(&run_once());
    report(
        "C10 determinism",
        a.as_bytes() == b.as_bytes(),
        "two seeded runs byte-identical modulo timestamp",
    );
}
