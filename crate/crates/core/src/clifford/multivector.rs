use std::ops::{Add, Mul, Neg, Sub};

use crate::clifford::blade::{BladeIndex, ProductTable, Signature};
use crate::error::{Error, Result};
use crate::scalar::{Coefficient, Scalar};

/// Dense element `sum_A u_A e_A` of R_m, coefficients indexed by blade mask.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector<T> {
    sig: Signature,
    coeffs: Vec<T>,
}

impl<T: Coefficient> Multivector<T> {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, coeffs: vec![T::zero(); sig.dim()] }
    }

    pub fn scalar(sig: Signature, value: T) -> Self {
        let mut mv = Self::zero(sig);
        mv.coeffs[0] = value;
        mv
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, T::one())
    }

    /// Unit blade `e_A`.
    pub fn blade(sig: Signature, blade: BladeIndex) -> Self {
        let mut mv = Self::zero(sig);
        mv.coeffs[blade.mask()] = T::one();
        mv
    }

    /// Generator `e_j`, `j` counted from 1.
    pub fn generator(sig: Signature, j: usize) -> Self {
        Self::blade(sig, BladeIndex::generator(j))
    }

    /// Coefficients in mask order.
    pub fn from_coeffs(sig: Signature, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != sig.dim() {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients for m = {}, got {}",
                sig.dim(),
                sig.m(),
                coeffs.len()
            )));
        }
        Ok(Multivector { sig, coeffs })
    }

    #[inline]
    pub fn signature(&self) -> Signature {
        self.sig
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.sig.m()
    }

    #[inline]
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    #[inline]
    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    #[inline]
    pub fn coeff(&self, blade: BladeIndex) -> &T {
        &self.coeffs[blade.mask()]
    }

    pub fn set(&mut self, blade: BladeIndex, value: T) {
        self.coeffs[blade.mask()] = value;
    }

    pub fn scalar_part(&self) -> T {
        self.coeffs[0].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Keeps only the blades of grade `k`.
    pub fn grade_project(&self, k: u32) -> Self {
        self.map_blades(|b, c| if b.grade() == k { c.clone() } else { T::zero() })
    }

    /// `true` if every nonzero coefficient sits on a blade of grade `k`.
    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(mask, c)| c.is_zero() || (mask as u32).count_ones() == k)
    }

    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(mask, c)| c.is_zero() || (mask as u32).count_ones() % 2 == 0)
    }

    /// Clifford conjugation `e_A -> (-1)^{|A|(|A|+1)/2} e_A`, an anti-automorphism.
    pub fn conjugate(&self) -> Self {
        self.map_blades(|b, c| if b.conjugate_flips() { -c.clone() } else { c.clone() })
    }

    /// Reversion `e_A -> (-1)^{|A|(|A|-1)/2} e_A`.
    pub fn reverse(&self) -> Self {
        self.map_blades(|b, c| if b.reverse_flips() { -c.clone() } else { c.clone() })
    }

    pub fn scale(&self, s: &T) -> Self {
        Multivector { sig: self.sig, coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    /// Geometric (Clifford) product.
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let table = ProductTable::for_dim(self.m());
        let mut out = vec![T::zero(); self.coeffs.len()];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let term = ca.clone() * cb.clone();
                let slot = &mut out[a ^ b];
                *slot = if table.is_negative(a, b) {
                    slot.clone() - term
                } else {
                    slot.clone() + term
                };
            }
        }
        Ok(Multivector { sig: self.sig, coeffs: out })
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch { left: self.m(), right: other.m() });
        }
        Ok(())
    }

    fn map_blades(&self, f: impl Fn(BladeIndex, &T) -> T) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| f(BladeIndex(mask as u32), c))
            .collect();
        Multivector { sig: self.sig, coeffs }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        Multivector { sig: self.sig, coeffs }
    }
}

impl<T: Scalar> Multivector<T> {
    /// Euclidean norm of the coefficient vector; equals `sqrt(sc(conj(u) u))`.
    pub fn norm_sqr(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, &c| acc + c * c)
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc.max(c.abs()))
    }

    /// Max coefficient deviation relative to `max(1, |self|, |other|)`.
    pub fn relative_distance(&self, other: &Self) -> T {
        let scale = T::one().max(self.max_abs()).max(other.max_abs());
        let diff = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()));
        diff / scale
    }

    pub fn to_f64(&self) -> Multivector<f64> {
        Multivector { sig: self.sig, coeffs: self.coeffs.iter().map(|c| c.as_f64()).collect() }
    }
}

/// Accumulates `sign * a * b` into `out` over all blade pairs (slice kernel
/// for the sampled-field and transform loops).
#[inline]
pub(crate) fn gp_accumulate<T: Scalar>(table: &ProductTable, a: &[T], b: &[T], weight: T, out: &mut [T]) {
    for (ia, &ca) in a.iter().enumerate() {
        if ca == T::zero() {
            continue;
        }
        let ca = ca * weight;
        for (ib, &cb) in b.iter().enumerate() {
            let term = ca * cb;
            if table.is_negative(ia, ib) {
                out[ia ^ ib] -= term;
            } else {
                out[ia ^ ib] += term;
            }
        }
    }
}

/// In-place Clifford conjugation of a raw coefficient slice.
#[inline]
pub(crate) fn conjugate_in_place<T: Scalar>(c: &mut [T]) {
    for (mask, v) in c.iter_mut().enumerate() {
        if BladeIndex(mask as u32).conjugate_flips() {
            *v = -*v;
        }
    }
}

impl<T: Coefficient> Add for Multivector<T> {
    type Output = Multivector<T>;
    /// # Panics
    /// On signature mismatch; use [`Multivector::try_add`] to handle it.
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("multivector signature mismatch")
    }
}

impl<T: Coefficient> Sub for Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("multivector signature mismatch")
    }
}

impl<T: Coefficient> Neg for Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Self {
        Multivector { sig: self.sig, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<'a, T: Coefficient> Mul<&'a Multivector<T>> for &'a Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: &'a Multivector<T>) -> Multivector<T> {
        self.geometric_product(rhs).expect("multivector signature mismatch")
    }
}

impl<T: Coefficient> Mul for Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}
