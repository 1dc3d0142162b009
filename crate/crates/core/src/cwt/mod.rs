//! Continuous wavelet transform over scales and translations.

mod coeffs;
mod scales;
mod transform;
mod verify;
mod wavelet;

pub use coeffs::{CoefficientField, Convention};
pub use scales::ScaleGrid;
pub(crate) use transform::correlate_scalar;
pub use transform::{
    check_resolution, forward_direct, forward_fft, reconstruct_direct, reconstruct_fft, CwtSetup, MIN_SAMPLES,
};
pub use verify::{
    forward, isometry_pair, plancherel_check, plancherel_ratio, reconstruct, reconstruction_check, truncation_gate,
    truncation_report, Method, PlancherelReport, ReconstructionReport, TruncationReport, TRUNCATION_LIMIT,
};
pub use wavelet::{Wavelet, SUPPORT_ENERGY};
