//! Text form `c0 + c1*e1 + ... + c*e1..em`, blades ordered by (grade, mask).

use std::fmt;
use std::str::FromStr;

use crate::clifford::blade::{blade_order, BladeIndex, Signature};
use crate::clifford::multivector::Multivector;
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

impl<T: Coefficient> fmt::Display for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m();
        for (i, blade) in blade_order(m).into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let c = self.coeff(blade);
            if blade == BladeIndex::SCALAR {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{}", blade.name(m))?;
            }
        }
        Ok(())
    }
}

/// Parses the text form for a known dimension. Terms may appear in any order
/// and may be omitted (taken as zero); repeated blades are rejected.
pub fn parse_multivector<T: Coefficient>(s: &str, m: usize) -> Result<Multivector<T>> {
    let sig = Signature::new(m)?;
    let mut mv = Multivector::zero(sig);
    let mut seen = vec![false; sig.dim()];
    for term in s.split(" + ") {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let (coeff, blade) = match term.rsplit_once('*') {
            Some((c, b)) => (c, BladeIndex::parse_name(b, m)?),
            None => (term, BladeIndex::SCALAR),
        };
        let value = T::parse_coeff(coeff).ok_or_else(|| Error::Parse(format!("bad coefficient '{coeff}'")))?;
        if std::mem::replace(&mut seen[blade.mask()], true) {
            return Err(Error::Parse(format!("blade {} repeated", blade.name(m))));
        }
        mv.set(blade, value);
    }
    Ok(mv)
}

impl<T: Coefficient> FromStr for Multivector<T> {
    type Err = Error;

    /// Infers `m` from a complete listing of `2^m` terms.
    fn from_str(s: &str) -> Result<Self> {
        let n = s.split(" + ").count();
        if !n.is_power_of_two() || n < 2 {
            return Err(Error::Parse(format!("{n} terms is not a complete 2^m listing")));
        }
        parse_multivector(s, n.trailing_zeros() as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn prints_in_grade_order() {
        let sig = Signature::new(2).unwrap();
        let mv = Multivector::from_coeffs(sig, vec![1.0, -2.5, 3.0, 0.125]).unwrap();
        assert_eq!(mv.to_string(), "1 + -2.5*e1 + 3*e2 + 0.125*e12");
    }

    #[test]
    fn exact_round_trip() {
        let sig = Signature::new(3).unwrap();
        let coeffs = vec![0.1, -1e-300, 2.0 / 3.0, 1e300, -0.0, f64::MIN_POSITIVE, 7.0, -3.25];
        let mv = Multivector::from_coeffs(sig, coeffs).unwrap();
        let back: Multivector<f64> = mv.to_string().parse().unwrap();
        for (a, b) in mv.coeffs().iter().zip(back.coeffs()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        let q = Multivector::from_coeffs(sig, (0..8).map(|i| Ratio::<i64>::new(i - 3, 7)).collect()).unwrap();
        assert_eq!(q.to_string().parse::<Multivector<Ratio<i64>>>().unwrap(), q);
    }

    #[test]
    fn partial_listing_with_known_dimension() {
        let mv: Multivector<f64> = parse_multivector("2*e13 + 1", 3).unwrap();
        assert_eq!(mv.coeffs()[0], 1.0);
        assert_eq!(mv.coeffs()[0b101], 2.0);
        assert!(parse_multivector::<f64>("1 + 2*e4", 3).is_err());
        assert!(parse_multivector::<f64>("1 + 2*e1 + 3*e1", 3).is_err());
        assert!(parse_multivector::<f64>("abc", 3).is_err());
    }
}
