//! Error type shared by all solver and verification routines.

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("masses must be positive, got ({m1}, {m2}, {m3})")]
    NonPositiveMass { m1: f64, m2: f64, m3: f64 },

    #[error("collinear ratio must lie in (0, 1), got {0}")]
    LambdaOutOfRange(f64),

    #[error("no sign change found while bracketing the collinear ratio")]
    BracketingFailed,

    #[error("bodies closer than the collision guard (min separation {min_sep:.3e})")]
    Collision { min_sep: f64 },

    #[error("{got} grid points undersample a loop with {harmonics} harmonics (need at least {required})")]
    Undersampled {
        required: usize,
        got: usize,
        harmonics: usize,
    },

    #[error("harmonic index {0} is not an odd, strictly increasing loop index")]
    InvalidHarmonic(usize),

    #[error("unsupported orbit schema `{got}`; expected `{expected}`")]
    SchemaMismatch { expected: &'static str, got: String },

    #[error("malformed orbit record: {0}")]
    MalformedRecord(&'static str),

    #[error("coefficient vector length {0} is not a multiple of 6")]
    BadCoefficientLength(usize),

    #[error("energy {h} outside the admissible range ({lo}, 0)")]
    EnergyOutOfRange { h: f64, lo: f64 },

    #[error("perturbation strength must be nonnegative, got {0}")]
    NegativeEps(f64),

    #[error("perturbed potential needs negative energy, got eps = {eps}, h = {h}")]
    PerturbationSign { eps: f64, h: f64 },

    #[error("mountain-pass endpoints need a positive perturbation strength")]
    PerturbationRequired,

    #[error("zero loop where a nonzero loop is required")]
    ZeroLoop,

    #[error("loop is not a critical point (gradient norm {grad_norm:.3e} exceeds {tol:.3e})")]
    NotCritical { grad_norm: f64, tol: f64 },

    #[error("omega^2 = {omega_sq:.3e} is not positive; period rescaling undefined")]
    NonPositiveOmegaSq { omega_sq: f64 },

    #[error("mountain-pass anchors must be pairwise distinct")]
    DegenerateAnchors,

    #[error("continuation schedule must be strictly decreasing and positive")]
    BadSchedule,

    #[error("path needs at least {min} nodes, got {got}")]
    PathTooShort { min: usize, got: usize },

    #[error("time series must hold at least one state")]
    EmptySeries,

    #[error("step count must be positive")]
    ZeroSteps,
}

pub type Result<T> = std::result::Result<T, Error>;
