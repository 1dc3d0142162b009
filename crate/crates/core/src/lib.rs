//! Clifford algebra arithmetic, Clifford-Gegenbauer radial wavelets, the
//! continuous Clifford wavelet transform on sampled fields and
//! Donoho-Stark type concentration checks.
//!
//! Numeric code is generic over [`scalar::Scalar`] (`f32`, `f64`); the
//! symbolic radial layer also runs over exact rationals. The aliases below
//! fix the common choices.

pub mod clifford;
pub mod cwt;
pub mod error;
pub mod field;
pub mod quadrature;
pub mod radial;
pub mod reduce;
pub mod scalar;
pub mod special;
pub mod uncertainty;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub type Multivector64 = clifford::Multivector<f64>;
pub type Multivector32 = clifford::Multivector<f32>;
pub type MultivectorQ = clifford::Multivector<Rational>;
pub type CliffordVector64 = clifford::CliffordVector<f64>;
pub type Spinor64 = clifford::Spinor<f64>;

pub type RadialSumQ = radial::RadialSum<Rational>;
pub type RadialFunctionQ = radial::CliffordRadialFunction<Rational>;
pub type RadialFunction64 = radial::CliffordRadialFunction<f64>;
pub type MotherWaveletQ = radial::MotherWavelet<Rational>;
pub type MotherWavelet64 = radial::MotherWavelet<f64>;

pub type GridSpec64 = field::GridSpec<f64>;
pub type SampledField64 = field::SampledField<f64>;
pub type SampledField32 = field::SampledField<f32>;

pub type Wavelet64 = cwt::Wavelet<f64>;
pub type ScaleGrid64 = cwt::ScaleGrid<f64>;
pub type CoefficientField64 = cwt::CoefficientField<f64>;
pub type Analyzer64 = uncertainty::Analyzer<f64>;
