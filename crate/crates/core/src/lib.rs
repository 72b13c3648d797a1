//! Three-qubit entanglement toolkit.
//!
//! The crate is organized around five modules:
//!
//! - [`qstate`]: state representations (pure states, density matrices,
//!   ensembles), the GHZ basis, partial traces and a small dense Hermitian
//!   eigensolver everything else relies on.
//! - [`tangle`]: entanglement invariants — the pure-state three-tangle
//!   polynomial, Z-state constructors with closed-form tangles, Wootters
//!   concurrence and the pure-state one-tangle.
//! - [`families`]: the built-in GHZ-mixture families of rank 4 through 8,
//!   their piecewise-analytic three-tangle curves, transition constants and
//!   explicit optimal decompositions.
//! - [`convexroof`]: numerical convex-roof estimation over pure-state
//!   decompositions, characteristic-curve sweeps and lower convex envelopes.
//! - [`ckw`]: monogamy bookkeeping — one-tangle, squared concurrences and
//!   inequality reports over the family curves.
//!
//! ```
//! use tritangle::{families, ghz_state, tau3_family, three_tangle_pure, GhzLabel, Sign};
//!
//! // the GHZ state is maximally three-tangled
//! let ghz = ghz_state(GhzLabel::new(1, Sign::Plus)?);
//! assert!((three_tangle_pure(&ghz).value() - 1.0).abs() < 1e-12);
//!
//! // the built-in mixed families carry analytic piecewise curves
//! let rank5 = families::FamilySpec::built_in(families::FamilyId::Rank5);
//! assert_eq!(tau3_family(rank5, 0.5)?.value(), 0.0);
//! assert!(tau3_family(rank5, 0.9)?.value() > 0.5);
//! # Ok::<(), tritangle::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod ckw;
pub mod convexroof;
pub mod families;
pub mod qstate;
pub mod tangle;

pub use ckw::{ckw_report, min_one_tangle_estimate, one_tangle_rank5_closed, CkwReport, CkwRow};
pub use convexroof::{
    characteristic_curves, curve_minimum, estimate_roof, lower_convex_envelope, CurveSet, Envelope,
    RoofConfig, RoofEstimate,
};
pub use families::{
    family_state, find_x0, find_x1, find_xstar, g_one, optimal_decomposition, piecewise_curve,
    sign_patterns, tau3_family, FamilyId, FamilySpec, PiecewiseTangleCurve, SignPattern,
};
pub use qstate::{
    density_from_ensemble, ghz_state, hermitian_eigensystem, partial_trace, psd_sqrt,
    DensityMatrix, Ensemble, GhzLabel, Matrix, PureState, Sign, Subsystem, C64,
};
pub use tangle::{
    concurrence_two_qubit, d_coefficients, one_tangle_pure, tau3_z_closed_form, three_tangle_pure,
    z_state, TangleValue, ZStateSpec,
};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported dimension {0} (must be 2, 4 or 8)")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("invalid GHZ label index {0} (must be 1..=4)")]
    InvalidGhzIndex(u8),

    #[error("ensemble weight {0} is not positive")]
    NonPositiveWeight(f64),

    #[error("ensemble weights sum to {0}, expected 1")]
    WeightSum(f64),

    #[error("kept subsystem set must be a nonempty proper subset of {{A,B,C}}")]
    InvalidSubsystem,

    #[error("expected {expected} phases, got {got}")]
    PhaseArity { expected: usize, got: usize },

    #[error("{name} = {value} is outside [{min}, {max}]")]
    Domain {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("operation `{op}` is not available for the rank-{rank} family")]
    UnsupportedRank { rank: u8, op: &'static str },

    #[error("rank-4 family is only established on [0, {max:.12}]; got x = {x}")]
    OutOfEstablishedRange { x: f64, max: f64 },

    #[error("ensemble size {size} is below the state rank {rank}")]
    InfeasibleEnsemble { size: usize, rank: usize },

    #[error("phase lattice would produce {requested} curves; raise the cap (currently {cap}) or coarsen the step")]
    TooManyCurves { requested: usize, cap: usize },

    #[error("need at least two points with distinct x for an envelope")]
    DegenerateEnvelopeInput,

    #[error("no curvature sign change found while locating the convexity breakpoint")]
    NoBreakpoint,

    #[error("invalid value in [0, 1] range value: {0}")]
    TangleRange(f64),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
