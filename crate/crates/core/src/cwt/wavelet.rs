use crate::clifford::{Multivector, Signature, Spinor};
use crate::error::{Error, Result};
use crate::radial::{radial_integral, CliffordRadialFunction, MotherWavelet, RadialProfile};
use crate::scalar::{Coefficient, Scalar};

/// Energy fraction that defines the effective radius of a wavelet.
pub const SUPPORT_ENERGY: f64 = 0.999;

/// A radial analysing wavelet ready for sampling.
#[derive(Clone, Debug)]
pub struct Wavelet<S> {
    profile: RadialProfile<S>,
    norm_sqr: S,
    radius: S,
    label: String,
}

impl<S: Scalar> Wavelet<S> {
    pub fn from_function<C: Coefficient>(f: &CliffordRadialFunction<C>, label: impl Into<String>) -> Result<Self> {
        f.check_integrable()?;
        let profile = f.profile::<S>();
        let m = f.m();
        let energy = |r: S| profile.norm_sqr(r * r);
        let norm_sqr = radial_integral(m, energy, S::zero(), S::lit(1e-12)).value;
        if !(norm_sqr > S::zero()) {
            return Err(Error::ZeroField("wavelet has zero energy".into()));
        }
        let radius = energy_radius(m, &energy, norm_sqr * S::lit(SUPPORT_ENERGY));
        Ok(Self { profile, norm_sqr, radius, label: label.into() })
    }

    pub fn from_mother<C: Coefficient>(w: &MotherWavelet<C>) -> Result<Self> {
        Self::from_function(
            w.function(),
            format!("psi(l={}, alpha={}, beta={}, m={})", w.ell(), w.alpha(), w.beta(), w.m()),
        )
    }

    pub fn m(&self) -> usize {
        self.profile.m()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn profile(&self) -> &RadialProfile<S> {
        &self.profile
    }

    /// `‖psi‖_2^2`.
    pub fn norm_sqr(&self) -> S {
        self.norm_sqr
    }

    /// Radius of the ball holding [`SUPPORT_ENERGY`] of the energy.
    pub fn effective_radius(&self) -> S {
        self.radius
    }

    /// `psi(y)` into `out` (length `2^m`).
    #[inline]
    pub fn write(&self, y: &[S], out: &mut [S]) {
        self.profile.write(y, out);
    }

    /// `a^{-m/2} s psi(conj(s) y s / a) conj(s)` at offset `y = x - b`.
    pub fn write_copy(&self, a: S, spin: Option<&Spinor<S>>, y: &[S], out: &mut [S]) {
        let m = y.len();
        let norm = a.powf(-S::lit(m as f64 / 2.0));
        match spin {
            None => {
                let mut z = [S::zero(); crate::clifford::MAX_DIM];
                for j in 0..m {
                    z[j] = y[j] / a;
                }
                for v in out.iter_mut() {
                    *v = S::zero();
                }
                self.profile.write(&z[..m], out);
            }
            Some(s) => {
                let sig = Signature::new(m).expect("validated");
                let mut yv = Multivector::zero(sig);
                for (j, &v) in y.iter().enumerate() {
                    yv.set(crate::clifford::BladeIndex::generator(j + 1), v / a);
                }
                let back = Spinor::new(s.conjugate()).expect("inverse of a spinor");
                let z = back.sandwich(&yv).expect("same signature");
                let z: Vec<S> = (0..m).map(|j| z.coeffs()[1 << j]).collect();
                let u = self.profile.evaluate(&z);
                let r = s.sandwich(&u).expect("same signature");
                out.copy_from_slice(r.coeffs());
            }
        }
        for v in out.iter_mut() {
            *v *= norm;
        }
    }
}

/// Smallest `R` with `∫_{|x| < R} e(|x|) dV >= target`, by bisection.
fn energy_radius<S: Scalar>(m: usize, e: &impl Fn(S) -> S, target: S) -> S {
    let area = crate::special::sphere_area::<S>(m);
    let inside = |r: S| {
        crate::quadrature::integrate(|s: S| s.powi(m as i32 - 1) * e(s), S::zero(), r, S::zero(), S::lit(1e-10)).value
            * area
    };
    let mut hi = S::one();
    while inside(hi) < target && hi < S::lit(1e6) {
        hi *= S::lit(2.0);
    }
    let mut lo = S::zero();
    for _ in 0..60 {
        let mid = (lo + hi) / S::lit(2.0);
        if inside(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn norms_and_radius() {
        let w = MotherWavelet::<f64>::new(1, -1, -4, 2).unwrap();
        let wav = Wavelet::<f64>::from_mother(&w).unwrap();
        // ‖6 x (1+t)^-4‖^2 = 36 * 2 pi ∫ r^3 (1+r^2)^-8 dr = 36 pi / 42
        assert!((wav.norm_sqr() - 36.0 * PI / 42.0).abs() < 1e-12);
        let r = wav.effective_radius();
        assert!(r > 0.5 && r < 5.0);
        assert!(wav.label().contains("l=1"));
    }

    #[test]
    fn spin_copies_of_radial_wavelets_agree() {
        let w = MotherWavelet::<f64>::new(1, -1, -4, 2).unwrap();
        let wav = Wavelet::<f64>::from_mother(&w).unwrap();
        let s = Spinor::from_plane_angle(2, 1, 2, 0.9).unwrap();
        let y = [0.7, -1.3];
        let mut plain = [0.0; 4];
        let mut spun = [0.0; 4];
        wav.write_copy(1.7, None, &y, &mut plain);
        wav.write_copy(1.7, Some(&s), &y, &mut spun);
        for (a, b) in plain.iter().zip(&spun) {
            assert!((a - b).abs() < 1e-14);
        }
        // L^2-normalized copies
        let mut v = [0.0; 4];
        wav.write(&[0.7 / 1.7, -1.3 / 1.7], &mut v);
        assert!((plain[1] - v[1] / 1.7).abs() < 1e-15);
    }
}
