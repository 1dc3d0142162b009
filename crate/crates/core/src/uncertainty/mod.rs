//! Concentration operators and the Donoho-Stark type inequalities for the
//! wavelet transform.

mod checks;
mod operators;
mod region;

pub use checks::{
    check_all, check_band_corollary, check_donoho_stark, check_final_corollary, check_proposition_41, reports_to_csv,
    sweep, ConcentrationReport, Inequality, Nest, RegionConfig, RegionFile, Status, VACUOUS_EPSILON,
};
pub use operators::{
    epsilon_concentration, epsilon_concentration_coeffs, freq_limit, l2_restrict_norm, phi_constant, time_limit,
    Analyzer, FrequencyLimited, Phi,
};
pub use region::{Ball, BoxShape, RegionAB, RegionX};
