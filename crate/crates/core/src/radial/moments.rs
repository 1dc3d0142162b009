//! Moments and norms of radial functions by one-dimensional quadrature.

use crate::clifford::{Multivector, Signature};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_half_line, Quadrature};
use crate::radial::function::CliffordRadialFunction;
use crate::scalar::{Coefficient, Scalar};
use crate::special::sphere_area;

/// `∫_{R^m} g(|x|) dV = |S^{m-1}| ∫_0^inf r^{m-1} g(r) dr`.
pub fn radial_integral<S: Scalar>(m: usize, g: impl Fn(S) -> S, abs_tol: S, rel_tol: S) -> Quadrature<S> {
    let area = sphere_area::<S>(m);
    let q = integrate_half_line(|r: S| r.powi(m as i32 - 1) * g(r), abs_tol / area, rel_tol);
    Quadrature { value: q.value * area, error: q.error * area, intervals: q.intervals }
}

/// `‖f‖_1`.
pub fn l1_norm<S: Scalar, C: Coefficient>(f: &CliffordRadialFunction<C>) -> Result<S> {
    f.check_integrable()?;
    let prof = f.profile::<S>();
    let q = radial_integral(f.m(), |r: S| prof.norm_sqr(r * r).sqrt(), S::zero(), S::lit(1e-12));
    Ok(q.value)
}

/// `‖f‖_2`.
pub fn l2_norm<S: Scalar, C: Coefficient>(f: &CliffordRadialFunction<C>) -> Result<S> {
    if f.pole_order() > 0 {
        return Err(Error::Integrability("pole on the unit sphere".into()));
    }
    if let Some(e) = f.decay_exponent() {
        if 2 * e >= -(f.m() as i64) {
            return Err(Error::Integrability(format!("|f|^2 decays like |x|^{} only", 2 * e)));
        }
    }
    let prof = f.profile::<S>();
    let q = radial_integral(f.m(), |r: S| prof.norm_sqr(r * r), S::zero(), S::lit(1e-12));
    Ok(q.value.sqrt())
}

/// `∫ x^k f(x) dV`. The `x B` part of `x^k f` is odd and integrates to zero,
/// so only the scalar radial part is integrated.
pub fn moment<S: Scalar, C: Coefficient>(k: u32, f: &CliffordRadialFunction<C>) -> Result<Multivector<S>> {
    let g = (0..k).fold(f.clone(), |g, _| g.mul_by_x());
    if let Err(e) = g.check_integrable() {
        let limit = f.decay_exponent().map(|d| -(f.m() as i64) - d);
        return Err(Error::DivergentMoment(format!(
            "moment of order {k} diverges ({e}); convergent orders are k < {}",
            limit.map_or("inf".to_string(), |l| l.to_string())
        )));
    }
    let prof = g.profile::<S>();
    let m = f.m();
    let scale = radial_integral(m, |r: S| prof.norm_sqr(r * r).sqrt(), S::zero(), S::lit(1e-10)).value;
    let value = radial_integral(m, |r: S| prof.parts(r * r).0, scale * S::lit(1e-14), S::lit(1e-13)).value;
    Ok(Multivector::scalar(Signature::new(m)?, value))
}
