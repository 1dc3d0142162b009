//! Exact calculus on `A(|x|^2) + x B(|x|^2)` and the Clifford-Gegenbauer
//! wavelet family built from it.

mod function;
mod gegenbauer;
mod moments;
mod sum;

pub use function::{CliffordRadialFunction, RadialProfile};
pub use gegenbauer::{gegenbauer_recurrence, gegenbauer_rodrigues, MotherWavelet};
pub use moments::{l1_norm, l2_norm, moment, radial_integral};
pub use sum::{CanonicalForm, RadialSum, RadialTerm};
