use crate::clifford::blade::{BladeIndex, Signature};
use crate::clifford::multivector::Multivector;
use crate::error::{Error, Result};
use crate::scalar::{Coefficient, Scalar};

/// Vector `x = sum_j x_j e_j` of R^m.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordVector<T> {
    components: Vec<T>,
}

impl<T: Coefficient> CliffordVector<T> {
    pub fn new(components: Vec<T>) -> Result<Self> {
        Signature::new(components.len())?;
        Ok(CliffordVector { components })
    }

    /// Unit vector `e_j`, `j` counted from 1.
    pub fn unit(m: usize, j: usize) -> Self {
        let mut components = vec![T::zero(); m];
        components[j - 1] = T::one();
        CliffordVector { components }
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.components.len()
    }

    #[inline]
    pub fn components(&self) -> &[T] {
        &self.components
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.m()).expect("validated at construction")
    }

    /// Grade-1 embedding.
    pub fn to_multivector(&self) -> Multivector<T> {
        let sig = self.signature();
        let mut mv = Multivector::zero(sig);
        for (j, c) in self.components.iter().enumerate() {
            mv.set(BladeIndex::generator(j + 1), c.clone());
        }
        mv
    }

    /// Euclidean inner product `<x, y> = sum x_j y_j`.
    pub fn euclidean_dot(&self, other: &Self) -> Result<T> {
        self.check_dim(other)?;
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    /// Clifford dot product `x . y = -<x, y>`.
    pub fn dot(&self, other: &Self) -> Result<T> {
        Ok(-self.euclidean_dot(other)?)
    }

    /// Outer product `sum_{j<k} e_j e_k (x_j y_k - x_k y_j)`.
    pub fn wedge(&self, other: &Self) -> Result<Multivector<T>> {
        self.check_dim(other)?;
        let mut mv = Multivector::zero(self.signature());
        let (x, y) = (&self.components, &other.components);
        for j in 0..self.m() {
            for k in j + 1..self.m() {
                let c = x[j].clone() * y[k].clone() - x[k].clone() * y[j].clone();
                mv.set(BladeIndex((1 << j) | (1 << k)), c);
            }
        }
        Ok(mv)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.m() != other.m() {
            return Err(Error::SignatureMismatch { left: self.m(), right: other.m() });
        }
        Ok(())
    }
}

impl<T: Scalar> CliffordVector<T> {
    pub fn norm(&self) -> T {
        self.components.iter().fold(T::zero(), |acc, &c| acc + c * c).sqrt()
    }

    /// Reads back a grade-1 multivector; other grades must vanish to
    /// `identity_tol` relative to the norm.
    pub fn from_multivector(mv: &Multivector<T>) -> Result<Self> {
        let tol = T::identity_tol() * T::one().max(mv.max_abs());
        for (mask, c) in mv.coeffs().iter().enumerate() {
            if (mask as u32).count_ones() != 1 && c.abs() > tol {
                return Err(Error::InvalidInput(format!(
                    "multivector has a grade-{} component {c:e}; expected a vector",
                    (mask as u32).count_ones()
                )));
            }
        }
        Ok(CliffordVector { components: (0..mv.m()).map(|j| mv.coeffs()[1 << j]).collect() })
    }

    /// Reflection `w x w` across the hyperplane orthogonal to the unit vector `w`.
    pub fn reflect(w: &Self, x: &Self) -> Result<Self> {
        let n = w.norm();
        if (n - T::one()).abs() > T::identity_tol() {
            return Err(Error::NotUnit { norm: n.as_f64() });
        }
        let wm = w.to_multivector();
        let out = (&(&wm * &x.to_multivector()) * &wm).grade_project(1);
        Self::from_multivector(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> CliffordVector<f64> {
        CliffordVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn dot_examples() {
        let e1 = CliffordVector::<f64>::unit(2, 1);
        let e2 = CliffordVector::<f64>::unit(2, 2);
        assert_eq!(e1.dot(&e1).unwrap(), -1.0);
        assert_eq!(e1.dot(&e2).unwrap(), 0.0);
        assert_eq!(v(&[1.0, 2.0]).dot(&v(&[3.0, 4.0])).unwrap(), -11.0);
    }

    #[test]
    fn wedge_examples() {
        let e1 = CliffordVector::<f64>::unit(2, 1);
        let e2 = CliffordVector::<f64>::unit(2, 2);
        assert_eq!(e1.wedge(&e2).unwrap(), Multivector::blade(e1.signature(), BladeIndex(0b11)));
        let x = v(&[0.3, -1.7]);
        assert!(x.wedge(&x).unwrap().is_zero());
        let w = v(&[1.0, 0.0, 0.0]).wedge(&v(&[0.0, 2.0, 0.0])).unwrap();
        assert_eq!(w.coeffs()[0b011], 2.0);
        assert_eq!(w.norm(), 2.0);
    }

    #[test]
    fn reflection_examples() {
        let e1 = CliffordVector::<f64>::unit(3, 1);
        let e2 = CliffordVector::<f64>::unit(3, 2);
        let r = CliffordVector::reflect(&e1, &e1).unwrap();
        assert_eq!(r, v(&[-1.0, 0.0, 0.0]));
        assert_eq!(CliffordVector::reflect(&e1, &e2).unwrap(), e2);
        assert!(matches!(
            CliffordVector::reflect(&v(&[2.0, 0.0, 0.0]), &e2),
            Err(Error::NotUnit { .. })
        ));
    }

    #[test]
    fn reflection_negates_parallel_part() {
        let s = 0.5f64.sqrt();
        let w = v(&[s, s]);
        let x = v(&[3.0, 1.0]);
        let r = CliffordVector::reflect(&w, &x).unwrap();
        // parallel part 2*sqrt2*w flips, orthogonal part (1,-1) stays
        assert!((r.components()[0] - -1.0).abs() < 1e-14);
        assert!((r.components()[1] - -3.0).abs() < 1e-14);
    }
}
