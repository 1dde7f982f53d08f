//! Stochastic six-vertex weights, deformed boson rows, the quasi-open
//! six-vertex model and its matching with the free-boundary Hall–Littlewood
//! process.

mod boson;
mod matching;
mod quad;
mod sampler;
mod strip;
mod weights;

pub use boson::{
    boson_equals_skew_hl, boson_row, boson_row_finite, boundary_pair_verify, boundary_row_check, boundary_row_verify,
    u_power_shift_verify, yb_boson_residual, yb_boson_verify, BosonKind, Crossing, DualCoefficient,
};
pub use matching::{chi_law, matching_residuals, parity_violations, theorem_matching_verify, to_strip_variables, ChiForm};
pub use quad::Quad;
pub use sampler::{
    adaptive_l, exact_numeric, mc_sample, open_chain_frequencies, sampler_tv_verify, stationary_cross_check, total_variation,
    Outcome, SampleRun, SamplerConfig,
};
pub use strip::{
    bits_to_string, formal_at, quasi_open_distribution, stabilized_formal, strip_dp, strip_ring, Distribution, DumpValue,
    LocalParams, NumericParams, Op, SignedDistribution, StripMode, StripSpec, Triangle,
};
pub use weights::{
    boundary_h, k_dual_weight, k_weight, r_weight, stochasticity_verify, yang_baxter_residual, yang_baxter_verify, Weight,
};

/// Failures of the strip computations and the sampler.
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error(transparent)]
    Series(#[from] crate::series::SeriesError),
    #[error("strip distribution did not stabilize by L = {0}")]
    NotStabilized(usize),
    #[error("parameters outside the stochastic regime: {0}")]
    NonStochastic(String),
    #[error("{0}")]
    Invalid(String),
}
