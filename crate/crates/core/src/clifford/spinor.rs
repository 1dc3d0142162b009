use crate::clifford::blade::{BladeIndex, Signature};
use crate::clifford::multivector::Multivector;
use crate::clifford::vector::CliffordVector;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Even unit element acting on vectors by `x -> s x conj(s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spinor<T> {
    value: Multivector<T>,
}

impl<T: Scalar> Spinor<T> {
    /// Validates even grade and `s rev(s) = 1`.
    pub fn new(value: Multivector<T>) -> Result<Self> {
        let tol = T::identity_tol();
        let scale = T::one().max(value.max_abs());
        let odd = value
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(mask, _)| (*mask as u32).count_ones() % 2 == 1)
            .fold(T::zero(), |acc, (_, c)| acc.max(c.abs()));
        if odd > tol * scale {
            return Err(Error::InvalidSpinor(format!("odd-grade component of size {odd:e}")));
        }
        let unit = &value * &value.reverse();
        let dev = unit.relative_distance(&Multivector::one(value.signature()));
        if dev > tol {
            return Err(Error::InvalidSpinor(format!("s rev(s) deviates from 1 by {dev:e}")));
        }
        Ok(Spinor { value })
    }

    pub fn identity(sig: Signature) -> Self {
        Spinor { value: Multivector::one(sig) }
    }

    /// `cos(theta/2) + sin(theta/2) e_jk` for 1-based axes `j < k`.
    pub fn from_plane_angle(m: usize, j: usize, k: usize, theta: T) -> Result<Self> {
        let sig = Signature::new(m)?;
        if j == 0 || k == 0 || j >= k || k > m {
            return Err(Error::InvalidPlane { j, k, m });
        }
        let half = theta / T::lit(2.0);
        let mut value = Multivector::scalar(sig, half.cos());
        value.set(BladeIndex((1 << (j - 1)) | (1 << (k - 1))), half.sin());
        Self::new(value)
    }

    #[inline]
    pub fn value(&self) -> &Multivector<T> {
        &self.value
    }

    /// `conj(s)`; equals the reverse on even elements.
    pub fn conjugate(&self) -> Multivector<T> {
        self.value.conjugate()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Self::new(self.value.geometric_product(&other.value)?)
    }

    /// Rotation `s x conj(s)`.
    pub fn rotate(&self, x: &CliffordVector<T>) -> Result<CliffordVector<T>> {
        let xm = x.to_multivector();
        let out = self.value.geometric_product(&xm)?.geometric_product(&self.conjugate())?;
        CliffordVector::from_multivector(&out)
    }

    /// Conjugation action on an arbitrary multivector, `s u conj(s)`.
    pub fn sandwich(&self, u: &Multivector<T>) -> Result<Multivector<T>> {
        self.value.geometric_product(u)?.geometric_product(&self.conjugate())
    }
}
