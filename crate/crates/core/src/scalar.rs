//! Numeric traits the crate is generic over.
//!
//! [`Coefficient`] is the ring used by the exact symbolic layer (floats and
//! rationals). [`Scalar`] adds everything the sampled/FFT layer needs and is
//! implemented for `f32` and `f64`.

use std::fmt::{Debug, Display, LowerExp};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, One, ToPrimitive, Zero};
use rustfft::FftNum;

/// A commutative ring element usable as a multivector or radial coefficient.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_int(v: i64) -> Self;

    /// Nearest `f64`; lossy for rationals.
    fn as_f64(&self) -> f64;

    fn parse_coeff(s: &str) -> Option<Self>;

    /// Whether `self` counts as zero next to values of magnitude `scale`.
    /// Exact rings only accept zero itself.
    fn negligible(&self, scale: f64) -> bool {
        let _ = scale;
        self.is_zero()
    }
}

macro_rules! float_coefficient {
    ($t:ty) => {
        impl Coefficient for $t {
            #[inline]
            fn from_int(v: i64) -> Self {
                v as $t
            }
            #[inline]
            fn as_f64(&self) -> f64 {
                *self as f64
            }
            fn parse_coeff(s: &str) -> Option<Self> {
                s.trim().parse().ok()
            }
            fn negligible(&self, scale: f64) -> bool {
                (*self as f64).abs() <= 64.0 * (<$t>::EPSILON as f64) * scale
            }
        }
    };
}

float_coefficient!(f32);
float_coefficient!(f64);

impl Coefficient for Ratio<i64> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v)
    }
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn parse_coeff(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

impl Coefficient for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn parse_coeff(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

/// Floating-point scalar for sampled fields, quadrature and transforms.
pub trait Scalar:
    Coefficient + Float + FloatConst + FromPrimitive + NumAssign + FftNum + LowerExp + FromStr + Default + Copy
{
    /// Converts an `f64` literal or measurement into `Self`.
    #[inline]
    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite literal")
    }

    #[inline]
    fn from_usize_lossy(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("representable")
    }

    /// Tolerance for identities that hold exactly in real arithmetic:
    /// `1e-12` in double precision, a few ulps-scaled equivalent otherwise.
    #[inline]
    fn identity_tol() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(64.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
