//! Sampled multivector fields on uniform grids and their Fourier transforms.

mod fft;
mod fourier;
mod grid;
mod sampled;

pub use fft::NdFft;
pub use fourier::{
    admissibility_grid, admissibility_radial, fourier, fourier_at, hankel_integral, log_radial_integral,
    wynn_epsilon, Admissibility, FourierField, FourierProfile, WeightRouteProfile, BOUNDARY_DECAY,
};
pub use grid::GridSpec;
pub use sampled::SampledField;
pub(crate) use sampled::{fmt_num, header, join, parse_list};
