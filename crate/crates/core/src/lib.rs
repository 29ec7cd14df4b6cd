//! Variational solver and verifier for Eulerian collinear periodic orbits
//! of the three-body problem.
//!
//! The configuration of three bodies on a moving line with the Euler
//! spacing ratio is determined by the relative curve `r = q2 - q1` alone;
//! representing `r` as an odd-harmonic Fourier loop removes the center of
//! mass, the collinearity constraint and the half-period antisymmetry from
//! the search space entirely. On top of that representation the crate
//! provides
//!
//! - the collinear ratio solver and every derived scalar constant
//!   ([`config`]),
//! - the loop-space discretization with spectral differentiation and
//!   quadrature ([`loops`]),
//! - action and fixed-energy functionals with analytic coefficient
//!   gradients ([`functionals`]),
//! - action minimization, a numerical mountain-pass saddle search with
//!   continuation in the perturbation strength, and the frequency rescaling
//!   to prescribed energy ([`optimize`]),
//! - independent verification by time integration and residual checks
//!   ([`dynamics`]), and
//! - self-describing orbit records ([`record`]).

pub mod config;
pub mod dynamics;
pub mod error;
pub mod functionals;
pub mod loops;
pub mod optimize;
pub mod record;
pub mod vec3;

pub use config::{
    central_config_residual, euler_condition_residual, reconstruct_configuration, solve_lambda0,
    CollinearGeometry, ConfigurationState, MassTriple,
};
pub use dynamics::{
    closure_error, collinearity_drift, compare_orbits, eom_residual_spectral, integrate,
    reduced_closure_error, reduced_eom_residual, DistinctionReport, EomResiduals,
    OrbitTimeSeries, SeriesMeta, DEFAULT_INTEGRATION_STEPS,
};
pub use error::{Error, Result};
pub use functionals::{
    action_f, action_f1, energy_residual, identity_3_9_ratio, jensen_gap, kepler_lower_bound,
    phi_eps, potential_v_eps, reduced_action, state_v_eps, EnergyParams, GradedValue,
    COLLISION_GUARD,
};
pub use loops::{random_loop, FourierLoop, Harmonic, SampledLoop, DEFAULT_GRID, DEFAULT_HARMONICS};
pub use optimize::{
    build_mp_endpoints, continuation_in_eps, minimize_f1, mountain_pass, mountain_pass_on_path,
    rescale_to_energy, MinimizeOptions, MountainPassOptions, MpEndpoints, PathOfLoops, Rescaled,
    SolverReport, TerminationReason,
};
pub use record::{
    diagnose, series_from_loop, verification_grid, Diagnostics, HarmonicEntry, OrbitRecord,
    SolveSummary, SolverKind, ORBIT_SCHEMA,
};
pub use vec3::Vec3;
