//! Entanglement invariants for three-qubit states: the pure-state
//! three-tangle polynomial, Z-state constructors with their closed-form
//! tangles, two-qubit Wootters concurrence and the pure-state one-tangle.

use crate::families::FamilySpec;
use crate::qstate::{
    hermitian_eigensystem, rebuild_with, singular_values, DensityMatrix, Matrix, PureState,
    Subsystem, C64, STATE_DIM,
};
use crate::{Error, Result};

/// Three-tangle value, constrained to [0, 1] up to floating-point slack.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct TangleValue(f64);

impl TangleValue {
    /// Accepts values in [-1e-9, 1 + 1e-12]; small negatives (roundoff from
    /// piecewise curve evaluation near a zero crossing) clamp to 0.
    pub fn new(v: f64) -> Result<Self> {
        if !(-1e-9..=1.0 + 1e-12).contains(&v) {
            return Err(Error::TangleRange(v));
        }
        Ok(TangleValue(v.max(0.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for TangleValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.12}", self.0)
    }
}

/// The three monomial sums of the degree-4 invariant, on raw amplitudes.
pub(crate) fn d_coefficients_raw(a: &[C64; STATE_DIM]) -> (C64, C64, C64) {
    let d1 = a[0b000] * a[0b000] * a[0b111] * a[0b111]
        + a[0b001] * a[0b001] * a[0b110] * a[0b110]
        + a[0b010] * a[0b010] * a[0b101] * a[0b101]
        + a[0b100] * a[0b100] * a[0b011] * a[0b011];
    let d2 = a[0b000] * a[0b111] * a[0b011] * a[0b100]
        + a[0b000] * a[0b111] * a[0b101] * a[0b010]
        + a[0b000] * a[0b111] * a[0b110] * a[0b001]
        + a[0b011] * a[0b100] * a[0b101] * a[0b010]
        + a[0b011] * a[0b100] * a[0b110] * a[0b001]
        + a[0b101] * a[0b010] * a[0b110] * a[0b001];
    let d3 = a[0b000] * a[0b110] * a[0b101] * a[0b011] + a[0b111] * a[0b001] * a[0b010] * a[0b100];
    (d1, d2, d3)
}

/// The three monomial sums (d1, d2, d3) of a pure state, with
/// `three_tangle == 4|d1 - 2 d2 + 4 d3|`.
pub fn d_coefficients(psi: &PureState) -> (C64, C64, C64) {
    d_coefficients_raw(psi.amplitudes())
}

/// `4|d1 - 2 d2 + 4 d3|` on raw, possibly unnormalized amplitudes. The
/// polynomial is homogeneous of degree 4: scaling the amplitudes by `c`
/// scales the result by `|c|^4`.
pub fn tau3_unnormalized(a: &[C64; STATE_DIM]) -> f64 {
    let (d1, d2, d3) = d_coefficients_raw(a);
    4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm()
}

/// Three-tangle of a normalized pure state.
pub fn three_tangle_pure(psi: &PureState) -> TangleValue {
    let v = tau3_unnormalized(psi.amplitudes());
    TangleValue(v.clamp(0.0, 1.0 + 1e-12))
}

/// A family superposition: sqrt(x) on the leading GHZ state minus
/// phase-decorated square-root weights on the background states.
#[derive(Clone, Debug)]
pub struct ZStateSpec {
    family: FamilySpec,
    mix: f64,
    phases: Vec<f64>,
}

impl ZStateSpec {
    pub fn new(family: &FamilySpec, mix: f64, phases: &[f64]) -> Result<Self> {
        let expected = family.background().len();
        if phases.len() != expected {
            return Err(Error::PhaseArity {
                expected,
                got: phases.len(),
            });
        }
        if !(0.0..=1.0).contains(&mix) {
            return Err(Error::Domain {
                name: "mix",
                value: mix,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(ZStateSpec {
            family: family.clone(),
            mix,
            phases: phases.to_vec(),
        })
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    pub fn mix(&self) -> f64 {
        self.mix
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }
}

/// Raw amplitudes of the Z superposition; separated out so sweeps can avoid
/// per-call allocation and validation.
pub(crate) fn z_amplitudes(family: &FamilySpec, x: f64, phases: &[f64]) -> [C64; STATE_DIM] {
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = [C64::new(0.0, 0.0); STATE_DIM];
    let (p, q) = family.lead().computational_pair();
    let lead = x.sqrt() * inv;
    amps[p] += C64::new(lead, 0.0);
    amps[q] += C64::new(family.lead().sign().factor() * lead, 0.0);
    for ((w, label), phi) in family.background().iter().zip(phases.iter()) {
        let mag = ((1.0 - x) * w.value()).sqrt() * inv;
        let coeff = -C64::from_polar(mag, *phi);
        let (bp, bq) = label.computational_pair();
        amps[bp] += coeff;
        amps[bq] += coeff * label.sign().factor();
    }
    amps
}

/// Builds the normalized Z state of a spec.
pub fn z_state(spec: &ZStateSpec) -> PureState {
    PureState::from_raw(z_amplitudes(&spec.family, spec.mix, &spec.phases))
}

/// Closed-form three-tangle of a Z state. Closed forms exist for the rank-4
/// and rank-5 families; ranks 6-8 evaluate the invariant polynomial on the
/// constructed state directly.
pub fn tau3_z_closed_form(spec: &ZStateSpec) -> TangleValue {
    let x = spec.mix;
    let v = match spec.family.rank() {
        4 => closed_form_rank4(x, &spec.phases),
        5 => closed_form_rank5(x, &spec.phases),
        _ => return three_tangle_pure(&z_state(spec)),
    };
    TangleValue(v.clamp(0.0, 1.0 + 1e-12))
}

fn closed_form_rank4(p: f64, phases: &[f64]) -> f64 {
    let e2: Vec<C64> = phases
        .iter()
        .map(|f| C64::from_polar(1.0, 2.0 * f))
        .collect();
    let e4: Vec<C64> = phases
        .iter()
        .map(|f| C64::from_polar(1.0, 4.0 * f))
        .collect();
    let q = 1.0 - p;
    let val = C64::new(p * p, 0.0)
        + (q * q / 9.0) * (e4[0] + e4[1] + e4[2])
        + (2.0 / 3.0 * p * q) * (e2[0] + e2[1] + e2[2])
        - (2.0 * q * q / 9.0) * (e2[0] * e2[1] + e2[0] * e2[2] + e2[1] * e2[2]);
    val.norm()
}

fn closed_form_rank5(p: f64, phases: &[f64]) -> f64 {
    let e2: Vec<C64> = phases
        .iter()
        .map(|f| C64::from_polar(1.0, 2.0 * f))
        .collect();
    let e4: Vec<C64> = phases
        .iter()
        .map(|f| C64::from_polar(1.0, 4.0 * f))
        .collect();
    let q = 1.0 - p;
    let odd = C64::from_polar(1.0, phases[1] + phases[2] + phases[3]);
    let val = C64::new(p * p, 0.0)
        + (q * q / 100.0) * e4[0]
        + (9.0 * q * q / 100.0) * (e4[1] + e4[2] + e4[3])
        - (p * q / 5.0) * e2[0]
        - (3.0 * p * q / 5.0) * (e2[1] + e2[2] + e2[3])
        + (3.0 * q * q / 50.0) * (e2[0] * e2[1] + e2[0] * e2[2] + e2[0] * e2[3])
        - (9.0 * q * q / 50.0) * (e2[1] * e2[2] + e2[1] * e2[3] + e2[2] * e2[3])
        - (6.0 / 25.0 * 30f64.sqrt() * (p * q * q * q).sqrt()) * odd;
    val.norm()
}

// Y ⊗ Y in the computational basis; real entries.
fn spin_flip_kernel() -> Matrix {
    let mut yy = Matrix::zeros(4);
    yy.set(0, 3, C64::new(-1.0, 0.0));
    yy.set(1, 2, C64::new(1.0, 0.0));
    yy.set(2, 1, C64::new(1.0, 0.0));
    yy.set(3, 0, C64::new(-1.0, 0.0));
    yy
}

/// Wootters concurrence of a two-qubit density matrix:
/// `max(0, l1 - l2 - l3 - l4)` with `l_i` the descending square roots of the
/// eigenvalues of `rho * rho_tilde`.
///
/// Those square roots equal the singular values of
/// `sqrt(rho) (Y⊗Y) conj(sqrt(rho))`, which is how they are computed here:
/// the factored form is linear in each factor, so the near-zero values come
/// out at full absolute accuracy instead of the ~1e-8 floor that squaring
/// leaves behind. Eigenvalues of rho below 1e-12 are treated as exact zeros
/// when the square root is formed.
pub fn concurrence_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        });
    }
    let eig = hermitian_eigensystem(rho.matrix())?;
    let root = rebuild_with(&eig, |v| if v < 1e-12 { 0.0 } else { v.sqrt() });
    let m = root.mul(&spin_flip_kernel()).mul(&root.conj());
    let lam = singular_values(&m);
    Ok((lam[0] - lam[1] - lam[2] - lam[3]).max(0.0))
}

/// One-tangle 4 det(rho_X) of a pure state for a single-qubit subsystem.
pub fn one_tangle_pure(psi: &PureState, subsystem: Subsystem) -> f64 {
    one_tangle_raw(psi.amplitudes(), subsystem) / {
        let n: f64 = psi.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        n * n
    }
}

/// 4 det of the unnormalized single-qubit reduction; degree-4 homogeneous in
/// the amplitudes, which is what the decomposition search relies on.
pub(crate) fn one_tangle_raw(a: &[C64; STATE_DIM], subsystem: Subsystem) -> f64 {
    let bit = subsystem.bit();
    let mut r00 = 0.0;
    let mut r11 = 0.0;
    let mut r01 = C64::new(0.0, 0.0);
    for idx in 0..STATE_DIM {
        if (idx >> bit) & 1 == 0 {
            let partner = idx | (1 << bit);
            r00 += a[idx].norm_sqr();
            r11 += a[partner].norm_sqr();
            r01 += a[idx] * a[partner].conj();
        }
    }
    4.0 * (r00 * r11 - r01.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{FamilyId, FamilySpec};
    use crate::qstate::{ghz_state, partial_trace, GhzLabel, Sign};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Spin-flipped conjugate (Y ⊗ Y) ρ* (Y ⊗ Y), the defining product form.
    fn spin_flip(rho: &DensityMatrix) -> Matrix {
        let yy = spin_flip_kernel();
        yy.mul(&rho.matrix().conj()).mul(&yy)
    }

    fn ghz1p() -> PureState {
        ghz_state(GhzLabel::new(1, Sign::Plus).unwrap())
    }

    fn w_state() -> PureState {
        let v = 1.0 / 3f64.sqrt();
        let mut amps = [c(0.0, 0.0); 8];
        amps[0b001] = c(v, 0.0);
        amps[0b010] = c(v, 0.0);
        amps[0b100] = c(v, 0.0);
        PureState::new(amps).unwrap()
    }

    fn random_pure(rng: &mut ChaCha8Rng) -> PureState {
        let mut amps = [c(0.0, 0.0); 8];
        for a in &mut amps {
            *a = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        PureState::new(amps).unwrap()
    }

    #[test]
    fn ghz_three_tangle_is_one() {
        assert!((three_tangle_pure(&ghz1p()).value() - 1.0).abs() < 1e-14);
        let (d1, d2, d3) = d_coefficients(&ghz1p());
        assert!((d1 - c(0.25, 0.0)).norm() < 1e-15);
        assert!(d2.norm() < 1e-15);
        assert!(d3.norm() < 1e-15);
    }

    #[test]
    fn w_state_three_tangle_is_zero() {
        assert!(three_tangle_pure(&w_state()).value() < 1e-14);
    }

    #[test]
    fn product_state_d_coefficients_vanish() {
        let mut amps = [c(0.0, 0.0); 8];
        amps[0] = c(1.0, 0.0);
        let psi = PureState::new(amps).unwrap();
        let (d1, d2, d3) = d_coefficients(&psi);
        assert!(d1.norm() < 1e-15 && d2.norm() < 1e-15 && d3.norm() < 1e-15);
    }

    #[test]
    fn rank4_zero_phase_vanishing_point() {
        let p0 = (2.0 - 3f64.sqrt()) / 2.0;
        let spec = ZStateSpec::new(FamilySpec::built_in(FamilyId::Rank4), p0, &[0.0; 3]).unwrap();
        assert!(three_tangle_pure(&z_state(&spec)).value() < 1e-12);
        assert!(tau3_z_closed_form(&spec).value() < 1e-12);
    }

    #[test]
    fn rank5_zero_phase_vanishing_point() {
        // 0.7377 is the threshold rounded to four decimals; the closed form
        // is ~3e-5 there
        let spec =
            ZStateSpec::new(FamilySpec::built_in(FamilyId::Rank5), 0.7377, &[0.0; 4]).unwrap();
        assert!(tau3_z_closed_form(&spec).value() < 1e-3);
    }

    #[test]
    fn rank5_pure_limit() {
        let spec = ZStateSpec::new(
            FamilySpec::built_in(FamilyId::Rank5),
            1.0,
            &[0.3, 1.0, 2.0, 4.0],
        )
        .unwrap();
        let z = z_state(&spec);
        assert!((three_tangle_pure(&z).value() - 1.0).abs() < 1e-12);
        assert!(z.inner(&ghz1p()).norm() > 1.0 - 1e-12);
        assert!((tau3_z_closed_form(&spec).value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank4_zero_phase_state_matches_reference_combination() {
        let p = 0.42;
        let spec = ZStateSpec::new(FamilySpec::built_in(FamilyId::Rank4), p, &[0.0; 3]).unwrap();
        let z = z_state(&spec);
        let mut expected = [c(0.0, 0.0); 8];
        let lead = ghz_state(GhzLabel::new(1, Sign::Minus).unwrap());
        for (i, e) in expected.iter_mut().enumerate() {
            *e += lead.amplitude(i) * p.sqrt();
        }
        for k in 2..=4 {
            let b = ghz_state(GhzLabel::new(k, Sign::Plus).unwrap());
            for (i, e) in expected.iter_mut().enumerate() {
                *e -= b.amplitude(i) * ((1.0 - p) / 3.0).sqrt();
            }
        }
        for (i, e) in expected.iter().enumerate() {
            assert!((z.amplitude(i) - e).norm() < 1e-14);
        }
    }

    #[test]
    fn rank6_background_weights_at_zero_mix() {
        let spec = ZStateSpec::new(FamilySpec::built_in(FamilyId::Rank6), 0.0, &[0.0; 5]).unwrap();
        let z = z_state(&spec);
        let weights = [1.0 / 11.0, 1.0 / 11.0, 3.0 / 11.0, 3.0 / 11.0, 3.0 / 11.0];
        for ((_, label), w) in FamilySpec::built_in(FamilyId::Rank6)
            .background()
            .iter()
            .zip(weights)
        {
            let overlap = ghz_state(*label).inner(&z).norm_sqr();
            assert!((overlap - w).abs() < 1e-12, "weight on {label}");
        }
    }

    #[test]
    fn phase_arity_is_enforced() {
        let err =
            ZStateSpec::new(FamilySpec::built_in(FamilyId::Rank5), 0.5, &[0.0; 3]).unwrap_err();
        assert!(matches!(
            err,
            crate::Error::PhaseArity {
                expected: 4,
                got: 3
            }
        ));
    }

    #[test]
    fn closed_forms_match_direct_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for id in [FamilyId::Rank4, FamilyId::Rank5] {
            let family = FamilySpec::built_in(id);
            let arity = family.background().len();
            for _ in 0..1000 {
                let x: f64 = rng.random_range(0.0..1.0);
                let phases: Vec<f64> = (0..arity)
                    .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
                    .collect();
                let spec = ZStateSpec::new(family, x, &phases).unwrap();
                let closed = tau3_z_closed_form(&spec).value();
                let direct = three_tangle_pure(&z_state(&spec)).value();
                assert!(
                    (closed - direct).abs() <= 1e-12,
                    "rank {} x={x} phases={phases:?}: {closed} vs {direct}",
                    family.rank()
                );
            }
        }
    }

    #[test]
    fn rank5_d_coefficients_consistent_with_closed_form_at_half() {
        let spec = ZStateSpec::new(FamilySpec::built_in(FamilyId::Rank5), 0.5, &[0.0; 4]).unwrap();
        let direct = three_tangle_pure(&z_state(&spec)).value();
        let closed = tau3_z_closed_form(&spec).value();
        assert!((direct - closed).abs() < 1e-14);
        assert!((closed - 0.598633534503100).abs() < 1e-12);
    }

    #[test]
    fn homogeneity_degree_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let psi = random_pure(&mut rng);
            let scale = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let mut scaled = *psi.amplitudes();
            for a in &mut scaled {
                *a *= scale;
            }
            let base = tau3_unnormalized(psi.amplitudes());
            let mag = scale.norm();
            assert!(
                (tau3_unnormalized(&scaled) - mag.powi(4) * base).abs() < 1e-10,
                "scaling failed"
            );
        }
    }

    #[test]
    fn local_phase_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let psi = random_pure(&mut rng);
            let base = three_tangle_pure(&psi).value();
            for q in [Subsystem::A, Subsystem::B, Subsystem::C] {
                for k in 0..8 {
                    let theta = k as f64 * std::f64::consts::TAU / 8.0;
                    let rotated = psi.apply_phase(q, theta);
                    assert!((three_tangle_pure(&rotated).value() - base).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn qubit_permutation_invariance() {
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let psi = random_pure(&mut rng);
            let base = three_tangle_pure(&psi).value();
            for perm in perms {
                let permuted = psi.permute_qubits(perm);
                assert!((three_tangle_pure(&permuted).value() - base).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn concurrence_bell_state_is_one() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)];
        let rho = crate::qstate::mixture(&[(1.0, &bell[..])]).unwrap();
        assert!((concurrence_two_qubit(&rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn concurrence_product_state_is_zero() {
        let prod = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]; // |01>
        let rho = crate::qstate::mixture(&[(1.0, &prod[..])]).unwrap();
        assert!(concurrence_two_qubit(&rho).unwrap() < 1e-12);
    }

    #[test]
    fn concurrence_random_pure_product_two_qubit() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let a = [
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            ];
            let b = [
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            ];
            let mut v = [c(0.0, 0.0); 4];
            for i in 0..2 {
                for j in 0..2 {
                    v[2 * i + j] = a[i] * b[j];
                }
            }
            let norm: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-3 {
                continue;
            }
            for x in &mut v {
                *x /= norm;
            }
            let rho = crate::qstate::mixture(&[(1.0, &v[..])]).unwrap();
            assert!(concurrence_two_qubit(&rho).unwrap() < 1e-12);
        }
    }

    #[test]
    fn concurrence_bell_diagonal_matches_spectral_formula() {
        // Bell-diagonal states: C = max(0, 2*lambda_max - 1)
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let bells: [[C64; 4]; 4] = [
            [c(0.0, 0.0), c(inv, 0.0), c(inv, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(inv, 0.0), c(-inv, 0.0), c(0.0, 0.0)],
            [c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)],
            [c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-inv, 0.0)],
        ];
        for lams in [
            [0.7, 0.1, 0.1, 0.1],
            [0.4, 0.3, 0.2, 0.1],
            [0.25, 0.25, 0.25, 0.25],
            [0.9, 0.05, 0.03, 0.02],
        ] {
            let members: Vec<(f64, &[C64])> = lams
                .iter()
                .zip(bells.iter())
                .map(|(l, b)| (*l, &b[..]))
                .collect();
            let rho = crate::qstate::mixture(&members).unwrap();
            let expected = (2.0 * lams.iter().cloned().fold(f64::MIN, f64::max) - 1.0).max(0.0);
            let got = concurrence_two_qubit(&rho).unwrap();
            assert!(
                (got - expected).abs() < 1e-12,
                "{lams:?}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn concurrence_singular_values_match_spin_flip_spectrum() {
        // cross-check the factored pipeline against the defining product
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let mut members = Vec::new();
            let mut vs = Vec::new();
            for _ in 0..3 {
                let mut v = [c(0.0, 0.0); 4];
                for x in &mut v {
                    *x = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                }
                let norm: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                for x in &mut v {
                    *x /= norm;
                }
                vs.push(v);
            }
            for v in &vs {
                members.push((1.0 / 3.0, &v[..]));
            }
            let rho = crate::qstate::mixture(&members).unwrap();
            let eig = hermitian_eigensystem(rho.matrix()).unwrap();
            let root = rebuild_with(&eig, |v| if v < 1e-12 { 0.0 } else { v.sqrt() });
            let r = root.mul(&spin_flip(&rho)).mul(&root);
            let evals = hermitian_eigensystem(&r).unwrap().values;
            let lam_sq: Vec<f64> = evals.iter().map(|v| v.max(0.0).sqrt()).collect();
            let m = root.mul(&spin_flip_kernel()).mul(&root.conj());
            let lam = singular_values(&m);
            for (a, b) in lam.iter().zip(lam_sq.iter()) {
                assert!((a - b).abs() < 1e-7, "{lam:?} vs {lam_sq:?}");
            }
        }
    }

    #[test]
    fn one_tangle_examples() {
        assert!((one_tangle_pure(&ghz1p(), Subsystem::A) - 1.0).abs() < 1e-14);
        let mut amps = [c(0.0, 0.0); 8];
        amps[0] = c(1.0, 0.0);
        let product = PureState::new(amps).unwrap();
        assert!(one_tangle_pure(&product, Subsystem::A).abs() < 1e-14);
    }

    #[test]
    fn one_tangle_matches_partial_trace_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let psi = random_pure(&mut rng);
            for q in [Subsystem::A, Subsystem::B, Subsystem::C] {
                let reduced = partial_trace(&psi.projector(), &[q]).unwrap();
                let det = reduced.entry(0, 0) * reduced.entry(1, 1)
                    - reduced.entry(0, 1) * reduced.entry(1, 0);
                assert!((one_tangle_pure(&psi, q) - 4.0 * det.re).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn monogamy_identity_on_random_pure_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(4243);
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
        assert!(worst <= 1e-9, "worst identity violation {worst:.3e}");
    }
}
