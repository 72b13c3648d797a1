//! Monogamy bookkeeping over the family curves: one-tangle, squared
//! concurrences of the two-qubit marginals, three-tangle, and the resulting
//! inequality flags. Subsystem A (the first qubit) is the anchor throughout.

use crate::convexroof::{minimize_decompositions, unit_grid, RoofConfig};
use crate::families::{family_state, tau3_family, FamilySpec};
use crate::qstate::{partial_trace, DensityMatrix, Subsystem};
use crate::tangle::{concurrence_two_qubit, one_tangle_raw};
use crate::{Error, Result};

/// Closed-form minimum one-tangle of the rank-5 family:
/// `1 - (8/5) p (1-p) - (9/25) (1-p)^2 + (6 sqrt(30)/25) sqrt(p (1-p)^3)`.
pub fn one_tangle_rank5_closed(p: f64) -> f64 {
    let q = 1.0 - p;
    1.0 - 1.6 * p * q - 0.36 * q * q + 6.0 * 30f64.sqrt() / 25.0 * (p * q * q * q).max(0.0).sqrt()
}

/// Convex-roof-style minimization of the decomposition-averaged one-tangle
/// `sum_i p_i 4 det(rho_A(psi_i))`, reusing the decomposition search with the
/// one-tangle objective. Returns an upper bound on the minimum.
pub fn min_one_tangle_estimate(rho: &DensityMatrix, cfg: &RoofConfig) -> Result<f64> {
    let est = minimize_decompositions(rho, cfg, &|a| one_tangle_raw(a, Subsystem::A))?;
    Ok(est.value.value())
}

/// One row of a monogamy report.
#[derive(Clone, Debug)]
pub struct CkwRow {
    pub x: f64,
    /// Closed form for rank 5; decomposition-minimum estimate otherwise.
    pub one_tangle_closed: f64,
    /// 4 det(rho_A) of the mixed family state itself, for comparison.
    pub one_tangle_direct: f64,
    /// Squared concurrence of the AB marginal.
    pub c2_ab: f64,
    /// Squared concurrence of the AC marginal.
    pub c2_ac: f64,
    pub tau3: f64,
    /// one_tangle_closed + 1e-9 >= c2_ab + c2_ac
    pub inequality_ok: bool,
    /// one_tangle_closed + 1e-9 >= c2_ab + c2_ac + tau3
    pub strong_ok: bool,
}

/// Monogamy report over a family sweep.
#[derive(Clone, Debug)]
pub struct CkwReport {
    pub rows: Vec<CkwRow>,
    /// True when the one-tangle column is estimated rather than closed-form.
    pub one_tangle_estimated: bool,
}

/// Per grid point: marginals, squared concurrences, family tangle, and both
/// one-tangle columns with the inequality flags. Rank 5 uses the closed form
/// for the one-tangle; ranks 6-8 run the decomposition estimate and flag the
/// column as estimated.
pub fn ckw_report(f: &FamilySpec, grid: usize, cfg: &RoofConfig) -> Result<CkwReport> {
    if f.rank() == 4 {
        return Err(Error::UnsupportedRank {
            rank: 4,
            op: "ckw_report",
        });
    }
    if grid < 2 {
        return Err(Error::InvalidConfig(
            "grid needs at least two points".into(),
        ));
    }
    let estimated = f.rank() != 5;
    let mut rows = Vec::with_capacity(grid);
    for x in unit_grid(grid) {
        let rho = family_state(f, x)?;
        let rho_ab = partial_trace(&rho, &[Subsystem::A, Subsystem::B])?;
        let rho_ac = partial_trace(&rho, &[Subsystem::A, Subsystem::C])?;
        let c_ab = concurrence_two_qubit(&rho_ab)?;
        let c_ac = concurrence_two_qubit(&rho_ac)?;
        let c2_ab = c_ab * c_ab;
        let c2_ac = c_ac * c_ac;
        let tau3 = tau3_family(f, x)?.value();
        let rho_a = partial_trace(&rho, &[Subsystem::A])?;
        let det = rho_a.entry(0, 0) * rho_a.entry(1, 1) - rho_a.entry(0, 1) * rho_a.entry(1, 0);
        let one_tangle_direct = 4.0 * det.re;
        let one_tangle_closed = if estimated {
            min_one_tangle_estimate(&rho, cfg)?
        } else {
            one_tangle_rank5_closed(x)
        };
        rows.push(CkwRow {
            x,
            one_tangle_closed,
            one_tangle_direct,
            c2_ab,
            c2_ac,
            tau3,
            inequality_ok: one_tangle_closed + 1e-9 >= c2_ab + c2_ac,
            strong_ok: one_tangle_closed + 1e-9 >= c2_ab + c2_ac + tau3,
        });
    }
    Ok(CkwReport {
        rows,
        one_tangle_estimated: estimated,
    })
}
