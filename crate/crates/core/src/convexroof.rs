//! Numerical convex-roof estimation for three-qubit mixed states, plus the
//! characteristic-curve sweep and lower convex envelope used as optimality
//! evidence for the family curves.
//!
//! Every size-m pure-state decomposition of a rank-n state arises from an
//! m×n matrix with orthonormal columns acting on the scaled eigenvectors
//! sqrt(lambda_k)|e_k>. The search walks that manifold with random two-member
//! Givens rotations (feasible by construction), accepting only strict
//! objective decreases, and shrinks the rotation step after repeated
//! rejections. Restarts are independent and deterministically seeded, so the
//! result does not depend on the parallel schedule.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::families::{g_one, FamilySpec};
use crate::qstate::{hermitian_eigensystem, DensityMatrix, Ensemble, PureState, C64, STATE_DIM};
use crate::tangle::{tau3_unnormalized, TangleValue};
use crate::{Error, Result};

/// Search configuration for the decomposition minimizer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoofConfig {
    /// Number of ensemble members m; must be at least the state rank and at
    /// most 24.
    pub ensemble_size: usize,
    /// Independent random restarts.
    pub restarts: u32,
    /// Move attempts per restart.
    pub max_iters: u32,
    /// Initial rotation half-width in radians.
    pub step_init: f64,
    /// Search stops once the step decays below this.
    pub step_min: f64,
    /// Seed; restart r derives its own generator from (seed, r).
    pub seed: u64,
}

/// Rejections in a row before the step halves.
const DECAY_PATIENCE: u32 = 200;
/// Eigenvalues above this count toward the state rank.
const RANK_TOL: f64 = 1e-10;

impl RoofConfig {
    /// Defaults scaled to a state of the given rank: twice the rank as
    /// ensemble size, 32 restarts, 20000 iterations, step 0.5 -> 1e-4.
    pub fn for_rank(rank: usize, seed: u64) -> Self {
        RoofConfig {
            ensemble_size: 2 * rank,
            restarts: 32,
            max_iters: 20_000,
            step_init: 0.5,
            step_min: 1e-4,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ensemble_size == 0 || self.ensemble_size > 24 {
            return Err(Error::InvalidConfig(format!(
                "ensemble size {} must be in 1..=24",
                self.ensemble_size
            )));
        }
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(Error::InvalidConfig("counts must be positive".into()));
        }
        if !(self.step_min > 0.0 && self.step_min < self.step_init) {
            return Err(Error::InvalidConfig("need 0 < step_min < step_init".into()));
        }
        Ok(())
    }
}

/// Outcome of one restart.
#[derive(Clone, Debug)]
pub struct RestartReport {
    pub restart: u32,
    pub initial: f64,
    pub value: f64,
    pub accepted: u32,
    pub iterations: u32,
    /// Objective after every accepted move; non-increasing.
    pub history: Vec<f64>,
}

/// Best value found with its witness decomposition.
#[derive(Clone, Debug)]
pub struct RoofEstimate {
    pub value: TangleValue,
    pub witness: Ensemble,
    pub best_restart: u32,
    pub restarts: Vec<RestartReport>,
}

fn splitmix(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add((index.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller on open uniforms
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    (-2.0 * u1.ln()).sqrt() * u2.cos()
}

struct SearchResult {
    report: RestartReport,
    members: Vec<[C64; STATE_DIM]>,
}

fn run_search<F>(
    scaled: &[[C64; STATE_DIM]],
    cfg: &RoofConfig,
    restart: u32,
    objective: &F,
) -> SearchResult
where
    F: Fn(&[C64; STATE_DIM]) -> f64 + Sync,
{
    let m = cfg.ensemble_size;
    let n = scaled.len();
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix(cfg.seed, restart as u64));

    // random start: Gaussian m×n, columns orthonormalized (Gram-Schmidt)
    let mut mat = vec![vec![C64::new(0.0, 0.0); n]; m];
    for row in mat.iter_mut() {
        for v in row.iter_mut() {
            *v = C64::new(gaussian(&mut rng), gaussian(&mut rng));
        }
    }
    for k in 0..n {
        for prev in 0..k {
            let dot: C64 = mat.iter().map(|row| row[prev].conj() * row[k]).sum();
            for row in mat.iter_mut() {
                let delta = row[prev] * dot;
                row[k] -= delta;
            }
        }
        let norm: f64 = mat.iter().map(|row| row[k].norm_sqr()).sum::<f64>().sqrt();
        for row in mat.iter_mut() {
            row[k] /= norm;
        }
    }

    // unnormalized members psi_i = sum_k M[i][k] * scaled[k]
    let build = |row: &[C64]| {
        let mut psi = [C64::new(0.0, 0.0); STATE_DIM];
        for (k, vk) in scaled.iter().enumerate() {
            let c = row[k];
            for (a, b) in psi.iter_mut().zip(vk.iter()) {
                *a += c * b;
            }
        }
        psi
    };
    let member_objective = |psi: &[C64; STATE_DIM]| {
        let norm_sqr: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr < 1e-30 {
            0.0
        } else {
            objective(psi) / norm_sqr
        }
    };

    let mut members: Vec<[C64; STATE_DIM]> = mat.iter().map(|row| build(row)).collect();
    let mut parts: Vec<f64> = members.iter().map(member_objective).collect();
    let mut total: f64 = parts.iter().sum();
    let initial = total;
    let mut history = vec![total];

    let mut step = cfg.step_init;
    let mut rejections = 0u32;
    let mut accepted = 0u32;
    let mut iterations = 0u32;

    for _ in 0..cfg.max_iters {
        iterations += 1;
        let i = rng.random_range(0..m);
        let mut j = rng.random_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let theta: f64 = rng.random_range(-step..step);
        let beta: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let phase = C64::from_polar(1.0, beta);
        let (c, s) = (theta.cos(), theta.sin());

        let mut new_i = [C64::new(0.0, 0.0); STATE_DIM];
        let mut new_j = [C64::new(0.0, 0.0); STATE_DIM];
        for k in 0..STATE_DIM {
            new_i[k] = members[i][k] * c + members[j][k] * (phase * s);
            new_j[k] = members[i][k] * (-phase.conj() * s) + members[j][k] * c;
        }
        let oi = member_objective(&new_i);
        let oj = member_objective(&new_j);
        let candidate = total - parts[i] - parts[j] + oi + oj;
        if candidate < total {
            members[i] = new_i;
            members[j] = new_j;
            parts[i] = oi;
            parts[j] = oj;
            total = candidate;
            history.push(total);
            accepted += 1;
            rejections = 0;
        } else {
            rejections += 1;
            if rejections >= DECAY_PATIENCE {
                rejections = 0;
                step *= 0.5;
                if step < cfg.step_min {
                    break;
                }
            }
        }
    }

    SearchResult {
        report: RestartReport {
            restart,
            initial,
            value: total,
            accepted,
            iterations,
            history,
        },
        members,
    }
}

fn witness_from_members(members: &[[C64; STATE_DIM]]) -> Result<Ensemble> {
    let mut out = Vec::new();
    let mut total = 0.0;
    for psi in members {
        let w: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        if w > 1e-12 {
            let mut state = *psi;
            let norm = w.sqrt();
            for a in &mut state {
                *a /= norm;
            }
            out.push((w, PureState::from_raw(state)));
            total += w;
        }
    }
    let members: Vec<(f64, PureState)> = out.into_iter().map(|(w, s)| (w / total, s)).collect();
    Ensemble::new(members)
}

/// Minimizes the decomposition average of a degree-4 homogeneous pure-state
/// measure over all size-m decompositions of `rho`.
pub(crate) fn minimize_decompositions<F>(
    rho: &DensityMatrix,
    cfg: &RoofConfig,
    objective: &F,
) -> Result<RoofEstimate>
where
    F: Fn(&[C64; STATE_DIM]) -> f64 + Sync,
{
    cfg.validate()?;
    if rho.dim() != STATE_DIM {
        return Err(Error::DimensionMismatch {
            expected: STATE_DIM,
            got: rho.dim(),
        });
    }
    let eig = hermitian_eigensystem(rho.matrix())?;
    let rank = eig.values.iter().filter(|&&v| v > RANK_TOL).count();
    if cfg.ensemble_size < rank {
        return Err(Error::InfeasibleEnsemble {
            size: cfg.ensemble_size,
            rank,
        });
    }
    let scaled: Vec<[C64; STATE_DIM]> = (0..rank)
        .map(|k| {
            let root = eig.values[k].sqrt();
            let mut v = [C64::new(0.0, 0.0); STATE_DIM];
            for (i, a) in v.iter_mut().enumerate() {
                *a = eig.vectors.get(i, k) * root;
            }
            v
        })
        .collect();

    let results: Vec<SearchResult> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_search(&scaled, cfg, r, objective))
        .collect();

    let best = results
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| {
            a.report
                .value
                .partial_cmp(&b.report.value)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(ia.cmp(ib))
        })
        .map(|(i, _)| i)
        .expect("restarts >= 1");

    let witness = witness_from_members(&results[best].members)?;
    let value = TangleValue::new(results[best].report.value.clamp(0.0, 1.0 + 1e-12))?;
    let best_restart = results[best].report.restart;
    let restarts = results.into_iter().map(|r| r.report).collect();
    Ok(RoofEstimate {
        value,
        witness,
        best_restart,
        restarts,
    })
}

/// Upper-bound estimate of the convex-roof three-tangle of `rho`, with the
/// witness decomposition that achieves it. Deterministic for a fixed config,
/// independent of thread scheduling.
pub fn estimate_roof(rho: &DensityMatrix, cfg: &RoofConfig) -> Result<RoofEstimate> {
    minimize_decompositions(rho, cfg, &tau3_unnormalized)
}

// ---------------------------------------------------------------------------
// Characteristic curves
// ---------------------------------------------------------------------------

/// Default cap on the number of curves a sweep may materialize.
pub const DEFAULT_CURVE_CAP: usize = 250_000;

/// One phase assignment and its tangle values over the x grid.
#[derive(Clone, Debug)]
pub struct CharacteristicCurve {
    pub phases: Vec<f64>,
    pub values: Vec<f64>,
}

/// A family of characteristic curves over a shared x grid.
#[derive(Clone, Debug)]
pub struct CurveSet {
    pub x_grid: Vec<f64>,
    pub curves: Vec<CharacteristicCurve>,
}

/// Grid of `n` points covering [0, 1] inclusive.
pub fn unit_grid(n: usize) -> Vec<f64> {
    assert!(n >= 2, "grid needs at least two points");
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

/// Axis values {0, step, 2 step, ...} below 2 pi.
pub fn phase_axis(phase_step: f64) -> Vec<f64> {
    let mut vals = Vec::new();
    let mut k = 0usize;
    loop {
        let v = phase_step * k as f64;
        if v >= std::f64::consts::TAU {
            break;
        }
        vals.push(v);
        k += 1;
    }
    vals
}

fn sweep_prepare(
    f: &FamilySpec,
    phase_step: f64,
    x_grid: &[f64],
    cap: usize,
) -> Result<(Vec<f64>, usize)> {
    if !(5..=8).contains(&f.rank()) {
        return Err(Error::UnsupportedRank {
            rank: f.rank(),
            op: "characteristic_curves",
        });
    }
    if !phase_step.is_finite() || phase_step <= 0.0 {
        return Err(Error::InvalidConfig("phase step must be positive".into()));
    }
    if x_grid.is_empty() {
        return Err(Error::InvalidConfig("x grid is empty".into()));
    }
    for &x in x_grid {
        check_unit("x grid entry", x)?;
    }
    let axis = phase_axis(phase_step);
    let arity = f.background().len();
    let count = (axis.len() as u128).pow(arity as u32);
    if count > cap as u128 {
        return Err(Error::TooManyCurves {
            requested: count as usize,
            cap,
        });
    }
    Ok((axis, count as usize))
}

fn check_unit(name: &'static str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            name,
            value: x,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

fn lattice_phases(axis: &[f64], arity: usize, mut index: usize) -> Vec<f64> {
    let mut phases = vec![0.0; arity];
    for slot in (0..arity).rev() {
        phases[slot] = axis[index % axis.len()];
        index /= axis.len();
    }
    phases
}

/// Evaluates one characteristic curve: tangle of the Z state over the x
/// grid, using a precomputed background combination so each grid point costs
/// O(1) basis work.
pub fn curve_values(f: &FamilySpec, phases: &[f64], x_grid: &[f64]) -> Vec<f64> {
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    let mut background = [C64::new(0.0, 0.0); STATE_DIM];
    for ((w, label), phi) in f.background().iter().zip(phases.iter()) {
        let coeff = -C64::from_polar(w.value().sqrt() * inv, *phi);
        let (bp, bq) = label.computational_pair();
        background[bp] += coeff;
        background[bq] += coeff * label.sign().factor();
    }
    let (lp, lq) = f.lead().computational_pair();
    let lead_sign = f.lead().sign().factor();
    x_grid
        .iter()
        .map(|&x| {
            let a = x.sqrt() * inv;
            let b = (1.0 - x).sqrt();
            let mut amps = background;
            for amp in amps.iter_mut() {
                *amp *= b;
            }
            amps[lp] += C64::new(a, 0.0);
            amps[lq] += C64::new(lead_sign * a, 0.0);
            tau3_unnormalized(&amps)
        })
        .collect()
}

/// All characteristic curves on the phase lattice `{0, step, ...}^(rank-1)`,
/// materialized. Fails when the lattice exceeds `cap` curves.
pub fn characteristic_curves_with_cap(
    f: &FamilySpec,
    phase_step: f64,
    x_grid: &[f64],
    cap: usize,
) -> Result<CurveSet> {
    let (axis, count) = sweep_prepare(f, phase_step, x_grid, cap)?;
    let arity = f.background().len();
    let curves: Vec<CharacteristicCurve> = (0..count)
        .into_par_iter()
        .map(|idx| {
            let phases = lattice_phases(&axis, arity, idx);
            let values = curve_values(f, &phases, x_grid);
            CharacteristicCurve { phases, values }
        })
        .collect();
    Ok(CurveSet {
        x_grid: x_grid.to_vec(),
        curves,
    })
}

/// As `characteristic_curves_with_cap` with the default cap.
pub fn characteristic_curves(f: &FamilySpec, phase_step: f64, x_grid: &[f64]) -> Result<CurveSet> {
    characteristic_curves_with_cap(f, phase_step, x_grid, DEFAULT_CURVE_CAP)
}

/// Pointwise minimum over the lattice curves, computed by streaming folds so
/// the full curve set is never materialized. Exact elementwise minima, so the
/// result is independent of the parallel schedule.
pub fn curve_minimum(f: &FamilySpec, phase_step: f64, x_grid: &[f64]) -> Result<Vec<f64>> {
    let (axis, count) = sweep_prepare(f, phase_step, x_grid, usize::MAX)?;
    let arity = f.background().len();
    let mins = (0..count)
        .into_par_iter()
        .fold(
            || vec![f64::INFINITY; x_grid.len()],
            |mut acc, idx| {
                let phases = lattice_phases(&axis, arity, idx);
                let values = curve_values(f, &phases, x_grid);
                for (a, v) in acc.iter_mut().zip(values) {
                    if v < *a {
                        *a = v;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![f64::INFINITY; x_grid.len()],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    if y < *x {
                        *x = y;
                    }
                }
                a
            },
        );
    Ok(mins)
}

/// The zero-phase curve of a rank 5-8 family equals the signed closed form
/// in absolute value; convenience wrapper used by sweeps and tests.
pub fn zero_phase_curve(f: &FamilySpec, x_grid: &[f64]) -> Result<Vec<f64>> {
    let arity = f.background().len();
    let _ = g_one(f, 0.5)?; // rank gate
    Ok(curve_values(f, &vec![0.0; arity], x_grid))
}

// ---------------------------------------------------------------------------
// Lower convex envelope
// ---------------------------------------------------------------------------

/// Piecewise-linear lower convex envelope, as its hull vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    vertices: Vec<(f64, f64)>,
}

impl Envelope {
    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    /// Linear interpolation between hull vertices; clamps outside the span.
    pub fn eval(&self, x: f64) -> f64 {
        let v = &self.vertices;
        if x <= v[0].0 {
            return v[0].1;
        }
        if x >= v[v.len() - 1].0 {
            return v[v.len() - 1].1;
        }
        let mut lo = 0;
        let mut hi = v.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if v[mid].0 <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (x0, y0) = v[lo];
        let (x1, y1) = v[hi];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

/// Greatest convex function lying at or below the points (monotone-chain
/// lower hull). Duplicate x values collapse to their minimum y first.
pub fn lower_convex_envelope(points: &[(f64, f64)]) -> Result<Envelope> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut collapsed: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for p in pts {
        match collapsed.last_mut() {
            Some(last) if last.0 == p.0 => {
                if p.1 < last.1 {
                    last.1 = p.1;
                }
            }
            _ => collapsed.push(p),
        }
    }
    if collapsed.len() < 2 {
        return Err(Error::DegenerateEnvelopeInput);
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(collapsed.len());
    for p in collapsed {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    Ok(Envelope { vertices: hull })
}
