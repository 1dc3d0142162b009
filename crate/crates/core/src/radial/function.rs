//! Clifford-valued radial functions `A(t) + x B(t)`, `t = |x|^2`.

use std::fmt;

use crate::clifford::{CliffordVector, Multivector, Signature};
use crate::error::{Error, Result};
use crate::radial::sum::{CanonicalForm, RadialSum};
use crate::scalar::{Coefficient, Scalar};

/// `f(x) = A(|x|^2) + x B(|x|^2)` on R^m.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordRadialFunction<C> {
    m: usize,
    a: RadialSum<C>,
    b: RadialSum<C>,
}

impl<C: Coefficient> CliffordRadialFunction<C> {
    pub fn new(m: usize, a: RadialSum<C>, b: RadialSum<C>) -> Result<Self> {
        Signature::new(m)?;
        Ok(Self { m, a, b })
    }

    pub fn zero(m: usize) -> Result<Self> {
        Self::new(m, RadialSum::zero(), RadialSum::zero())
    }

    pub fn constant(m: usize, c: C) -> Result<Self> {
        Self::new(m, RadialSum::constant(c), RadialSum::zero())
    }

    /// The identity vector field `x`.
    pub fn vector(m: usize) -> Result<Self> {
        Self::new(m, RadialSum::zero(), RadialSum::constant(C::one()))
    }

    /// `(1 - t)^alpha (1 + t)^beta`.
    pub fn weight(m: usize, alpha: i32, beta: i32) -> Result<Self> {
        Self::new(m, RadialSum::term(C::one(), 0, alpha, beta), RadialSum::zero())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Scalar radial part `A`.
    pub fn a(&self) -> &RadialSum<C> {
        &self.a
    }

    /// Coefficient `B` of `x`.
    pub fn b(&self) -> &RadialSum<C> {
        &self.b
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.m, other.m, "dimension mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self { m: self.m, a: self.a.add(&other.a), b: self.b.add(&other.b) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self { m: self.m, a: self.a.sub(&other.a), b: self.b.sub(&other.b) }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self { m: self.m, a: self.a.scale(c), b: self.b.scale(c) }
    }

    /// `d(A + xB) = (-m B - 2t B') + x (2 A')`.
    pub fn dirac(&self) -> Self {
        let two = C::from_int(2);
        let a = self
            .b
            .scale(&C::from_int(-(self.m as i64)))
            .sub(&self.b.derivative().shift(1, 0, 0).scale(&two));
        let b = self.a.derivative().scale(&two);
        Self { m: self.m, a, b }
    }

    pub fn dirac_pow(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.dirac())
    }

    /// Left multiplication by `x`: `(A, B) -> (-t B, A)`.
    pub fn mul_by_x(&self) -> Self {
        Self { m: self.m, a: self.b.shift(1, 0, 0).neg(), b: self.a.clone() }
    }

    /// Multiplication by a scalar radial function (central, so sides agree).
    pub fn mul_radial(&self, r: &RadialSum<C>) -> Self {
        Self { m: self.m, a: self.a.mul(r), b: self.b.mul(r) }
    }

    /// Pointwise squared norm `A^2 + t B^2`.
    pub fn norm_sqr_profile(&self) -> RadialSum<C> {
        self.a.mul(&self.a).add(&self.b.mul(&self.b).shift(1, 0, 0))
    }

    pub fn same_function(&self, other: &Self) -> bool {
        self.m == other.m && self.a.same_function(&other.a) && self.b.same_function(&other.b)
    }

    pub fn canonical(&self) -> (CanonicalForm<C>, CanonicalForm<C>) {
        (self.a.canonical(), self.b.canonical())
    }

    /// Largest pole order at `|x| = 1` over both parts.
    pub fn pole_order(&self) -> u32 {
        let (a, b) = self.canonical();
        a.pole_order().max(b.pole_order())
    }

    /// `e` with `|f(x)| ~ |x|^e` as `|x| -> inf`; `None` for the zero function.
    pub fn decay_exponent(&self) -> Option<i64> {
        let (a, b) = self.canonical();
        let ea = a.degree_at_infinity().map(|d| 2 * d);
        let eb = b.degree_at_infinity().map(|d| 2 * d + 1);
        match (ea, eb) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        }
    }

    /// Rejects poles on the unit sphere and decay too slow for `L^1(R^m)`.
    pub fn check_integrable(&self) -> Result<()> {
        let pole = self.pole_order();
        if pole > 0 {
            return Err(Error::Integrability(format!(
                "pole of order {pole} on the unit sphere |x| = 1 is not integrable"
            )));
        }
        if let Some(e) = self.decay_exponent() {
            if e >= -(self.m as i64) {
                return Err(Error::Integrability(format!(
                    "decays like |x|^{e} at infinity; L^1(R^{}) needs an exponent below -{}",
                    self.m, self.m
                )));
            }
        }
        Ok(())
    }

    /// Termwise evaluation at a point.
    pub fn evaluate<S: Scalar>(&self, x: &CliffordVector<S>) -> Result<Multivector<S>> {
        if x.m() != self.m {
            return Err(Error::SignatureMismatch { left: self.m, right: x.m() });
        }
        let t = x.components().iter().fold(S::zero(), |acc, &v| acc + v * v);
        let (a, b) = (self.a.evaluate(t), self.b.evaluate(t));
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Pole { context: format!("f is singular at |x|^2 = {t:e}") });
        }
        Ok(assemble(self.m, a, b, x.components()))
    }

    /// Fast evaluator through the canonical forms.
    pub fn profile<S: Scalar>(&self) -> RadialProfile<S> {
        let (a, b) = self.canonical();
        RadialProfile { m: self.m, a: a.to_scalar(), b: b.to_scalar() }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D + Copy) -> CliffordRadialFunction<D> {
        CliffordRadialFunction { m: self.m, a: self.a.map_coeffs(f), b: self.b.map_coeffs(f) }
    }
}

fn assemble<S: Scalar>(m: usize, a: S, b: S, x: &[S]) -> Multivector<S> {
    let sig = Signature::new(m).expect("validated dimension");
    let mut coeffs = vec![S::zero(); sig.dim()];
    coeffs[0] = a;
    for (j, &xj) in x.iter().enumerate() {
        coeffs[1 << j] = b * xj;
    }
    Multivector::from_coeffs(sig, coeffs).expect("length matches")
}

/// Floating-point evaluator of a [`CliffordRadialFunction`].
#[derive(Clone, Debug)]
pub struct RadialProfile<S> {
    m: usize,
    a: CanonicalForm<S>,
    b: CanonicalForm<S>,
}

impl<S: Scalar> RadialProfile<S> {
    pub fn m(&self) -> usize {
        self.m
    }

    /// `(A(t), B(t))`.
    #[inline]
    pub fn parts(&self, t: S) -> (S, S) {
        (self.a.evaluate(t), self.b.evaluate(t))
    }

    /// Coefficients of `f(x)` written into `out` (length `2^m`, zeroed by the
    /// caller apart from the scalar and grade-1 slots, which are overwritten).
    #[inline]
    pub fn write(&self, x: &[S], out: &mut [S]) {
        let t = x.iter().fold(S::zero(), |acc, &v| acc + v * v);
        let (a, b) = self.parts(t);
        out[0] = a;
        for (j, &xj) in x.iter().enumerate() {
            out[1 << j] = b * xj;
        }
    }

    pub fn evaluate(&self, x: &[S]) -> Multivector<S> {
        let t = x.iter().fold(S::zero(), |acc, &v| acc + v * v);
        let (a, b) = self.parts(t);
        assemble(self.m, a, b, x)
    }

    /// `|f|^2 = A^2 + t B^2`.
    #[inline]
    pub fn norm_sqr(&self, t: S) -> S {
        let (a, b) = self.parts(t);
        a * a + t * b * b
    }
}

impl<C: Coefficient> fmt::Display for CliffordRadialFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A = {}", self.a)?;
        write!(f, "B = {}", self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type F = CliffordRadialFunction<f64>;

    /// Central finite-difference Dirac operator, `sum_j e_j d/dx_j f`.
    fn fd_dirac(f: &F, x: &[f64], h: f64) -> Multivector<f64> {
        let m = x.len();
        let sig = Signature::new(m).unwrap();
        let mut acc = Multivector::zero(sig);
        for j in 0..m {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[j] += h;
            xm[j] -= h;
            let fp = f.evaluate(&CliffordVector::new(xp).unwrap()).unwrap();
            let fm = f.evaluate(&CliffordVector::new(xm).unwrap()).unwrap();
            let d = (fp - fm).scale(&(1.0 / (2.0 * h)));
            acc = acc + Multivector::generator(sig, j + 1) * d;
        }
        acc
    }

    fn assert_fd(f: &F, x: &[f64]) {
        let exact = f.dirac().evaluate(&CliffordVector::new(x.to_vec()).unwrap()).unwrap();
        let fd = fd_dirac(f, x, 1e-4);
        let err = (exact.clone() - fd).norm() / exact.norm().max(1.0);
        assert!(err < 1e-6, "err {err}");
    }

    #[test]
    fn dirac_examples() {
        let t = F::new(2, RadialSum::term(1.0, 1, 0, 0), RadialSum::zero()).unwrap();
        let d = t.dirac();
        assert!(d.a().is_empty());
        assert_eq!(d.b(), &RadialSum::constant(2.0));

        let x = F::vector(2).unwrap();
        assert_eq!(x.dirac().a(), &RadialSum::constant(-2.0));
        assert_fd(&x, &[0.3, -0.7]);

        let w = F::weight(2, 1, 0).unwrap();
        assert!(w.dirac().b().same_function(&RadialSum::constant(-2.0)));
        assert_fd(&w, &[0.4, 1.3]);
    }

    #[test]
    fn mul_by_x_examples() {
        let one = F::constant(3, 1.0).unwrap();
        assert_eq!(one.mul_by_x(), F::vector(3).unwrap());
        let xx = F::vector(3).unwrap().mul_by_x();
        assert_eq!(xx.a(), &RadialSum::term(-1.0, 1, 0, 0));
        let f = F::new(3, RadialSum::term(2.0, 1, -2, 1), RadialSum::term(-1.0, 0, 1, 0)).unwrap();
        let g = f.mul_by_x().mul_by_x();
        let x = CliffordVector::new(vec![0.2, 0.5, -0.9]).unwrap();
        let t = 0.04 + 0.25 + 0.81;
        let lhs = g.evaluate(&x).unwrap();
        let rhs = f.evaluate(&x).unwrap().scale(&-t);
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn evaluate_matches_vector_product() {
        let f = F::new(2, RadialSum::term(1.5, 0, 0, -1), RadialSum::term(2.0, 1, 0, 0)).unwrap();
        let x = CliffordVector::new(vec![0.5, 2.0]).unwrap();
        let t: f64 = 4.25;
        let expect = Multivector::scalar(Signature::new(2).unwrap(), 1.5 / (1.0 + t))
            + x.to_multivector().scale(&(2.0 * t));
        let got = f.evaluate(&x).unwrap();
        assert!((got.clone() - expect).norm() < 1e-14);
        let prof = f.profile::<f64>().evaluate(&[0.5, 2.0]);
        assert!((prof - got).norm() < 1e-13);
    }

    #[test]
    fn poles_are_reported() {
        let f = F::weight(2, -1, 0).unwrap();
        let x = CliffordVector::new(vec![1.0, 0.0]).unwrap();
        assert!(matches!(f.evaluate(&x), Err(Error::Pole { .. })));
        assert_eq!(f.pole_order(), 1);
        assert!(f.check_integrable().is_err());
    }

    #[test]
    fn decay_exponents() {
        let f = F::weight(2, 0, -3).unwrap();
        assert_eq!(f.decay_exponent(), Some(-6));
        assert!(f.check_integrable().is_ok());
        assert_eq!(f.mul_by_x().decay_exponent(), Some(-5));
        let slow = F::weight(3, 0, -1).unwrap();
        assert!(matches!(slow.check_integrable(), Err(Error::Integrability(_))));
        assert_eq!(F::zero(2).unwrap().decay_exponent(), None);
    }

    #[test]
    fn laplacian_of_radial_scalar_is_scalar() {
        type R = Ratio<i64>;
        let f = CliffordRadialFunction::<R>::weight(3, 2, -3).unwrap();
        let g = f.dirac().dirac();
        assert!(g.b().is_empty());
        // -Laplacian of (1-t)^2 (1+t)^-3 at t = 0: A'' terms vanish, -2m A'(0) remains
        let a1 = f.a().derivative().evaluate(0.0f64);
        assert!((g.a().evaluate(0.0f64) + 6.0 * a1).abs() < 1e-14);
    }
}
