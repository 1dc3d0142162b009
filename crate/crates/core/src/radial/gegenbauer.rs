//! Clifford-Gegenbauer polynomials and the associated mother wavelets.

use crate::error::{Error, Result};
use crate::radial::function::CliffordRadialFunction;
use crate::radial::sum::RadialSum;
use crate::scalar::Coefficient;

fn sign<C: Coefficient>(n: usize) -> C {
    if n % 2 == 0 {
        C::one()
    } else {
        -C::one()
    }
}

/// `Z = (-1)^l (1-t)^(l-alpha) (1+t)^(l-beta) d^l [(1-t)^alpha (1+t)^beta]`,
/// using `1 + x^2 = 1 - t` and `1 - x^2 = 1 + t`.
pub fn gegenbauer_rodrigues<C: Coefficient>(
    ell: usize,
    alpha: i32,
    beta: i32,
    m: usize,
) -> Result<CliffordRadialFunction<C>> {
    let l = ell as i32;
    let inner = CliffordRadialFunction::<C>::weight(m, alpha, beta)?.dirac_pow(ell);
    let outer = RadialSum::term(sign::<C>(ell), 0, l - alpha, l - beta);
    Ok(inner.mul_radial(&outer))
}

/// `Z_{j+1} = x [2(alpha-j)(1+t) - 2(beta-j)(1-t)] Z_j - (1-t)(1+t) d Z_j`,
/// starting from `Z_0 = 1`.
pub fn gegenbauer_recurrence<C: Coefficient>(
    ell: usize,
    alpha: i32,
    beta: i32,
    m: usize,
) -> Result<CliffordRadialFunction<C>> {
    let mut z = CliffordRadialFunction::<C>::constant(m, C::one())?;
    let w11 = RadialSum::term(C::one(), 0, 1, 1);
    for j in 0..ell as i64 {
        let factor = RadialSum::term(C::from_int(2 * (alpha as i64 - j)), 0, 0, 1)
            .add(&RadialSum::term(C::from_int(-2 * (beta as i64 - j)), 0, 1, 0));
        z = z.mul_radial(&factor).mul_by_x().sub(&z.dirac().mul_radial(&w11));
    }
    Ok(z)
}

/// `psi = Z_l^{alpha+l, beta+l} (1-t)^alpha (1+t)^beta = (-1)^l d^l (1-t)^(alpha+l) (1+t)^(beta+l)`.
#[derive(Clone, Debug)]
pub struct MotherWavelet<C> {
    ell: usize,
    alpha: i32,
    beta: i32,
    psi: CliffordRadialFunction<C>,
    polynomial: CliffordRadialFunction<C>,
    decay: i64,
    form_defect: f64,
}

impl<C: Coefficient> MotherWavelet<C> {
    /// Builds both defining expressions, checks that they agree, and rejects
    /// parameters for which `psi` is not in `L^1 ∩ L^2`.
    pub fn new(ell: usize, alpha: i32, beta: i32, m: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidInput("wavelet order must be at least 1".into()));
        }
        let l = ell as i32;
        let derivative_form = CliffordRadialFunction::<C>::weight(m, alpha + l, beta + l)?
            .dirac_pow(ell)
            .scale(&sign(ell));
        let polynomial = gegenbauer_recurrence::<C>(ell, alpha + l, beta + l, m)?;
        let product_form = polynomial.mul_radial(&RadialSum::term(C::one(), 0, alpha, beta));
        let form_defect = pointwise_defect(&derivative_form, &product_form);
        if !derivative_form.same_function(&product_form) || form_defect > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "the two defining forms disagree (relative defect {form_defect:e})"
            )));
        }
        derivative_form.check_integrable().map_err(|e| match e {
            Error::Integrability(msg) => Error::Integrability(format!(
                "psi(l={ell}, alpha={alpha}, beta={beta}, m={m}): {msg}"
            )),
            other => other,
        })?;
        let decay = derivative_form.decay_exponent().ok_or_else(|| {
            Error::InvalidInput("wavelet vanishes identically".into())
        })?;
        Ok(Self { ell, alpha, beta, psi: derivative_form, polynomial, decay, form_defect })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn alpha(&self) -> i32 {
        self.alpha
    }

    pub fn beta(&self) -> i32 {
        self.beta
    }

    pub fn m(&self) -> usize {
        self.psi.m()
    }

    pub fn function(&self) -> &CliffordRadialFunction<C> {
        &self.psi
    }

    /// `Z_l^{alpha+l, beta+l}` from the recurrence.
    pub fn polynomial(&self) -> &CliffordRadialFunction<C> {
        &self.polynomial
    }

    /// `e` with `|psi(x)| ~ |x|^e` at infinity.
    pub fn decay_exponent(&self) -> i64 {
        self.decay
    }

    /// Largest relative pointwise gap between the two defining forms.
    pub fn form_defect(&self) -> f64 {
        self.form_defect
    }

    /// Orders `k` with `0 < k < l` and `k < -m - l - 2(alpha + beta)`, for
    /// which `∫ x^k psi dV` vanishes.
    pub fn vanishing_moment_orders(&self) -> std::ops::Range<u32> {
        let bound = -(self.m() as i64) - self.ell as i64 - 2 * (self.alpha as i64 + self.beta as i64);
        let hi = bound.min(self.ell as i64).max(1);
        1..hi as u32
    }

    /// Moments `∫ x^k psi dV` converge absolutely for `k` below this value.
    pub fn moment_limit(&self) -> u32 {
        (-(self.m() as i64) - self.decay).max(0) as u32
    }
}

/// Relative difference of two functions on a fixed spread of points in
/// `0.1 <= |x| <= 3`, staying clear of `|x| = 1`.
fn pointwise_defect<C: Coefficient>(f: &CliffordRadialFunction<C>, g: &CliffordRadialFunction<C>) -> f64 {
    let golden = 0.618_033_988_749_894_9;
    let mut worst = 0.0f64;
    for i in 0..100 {
        let r = 0.1 + 2.9 * ((i as f64 + 0.5) * golden).fract();
        if (r - 1.0).abs() < 0.05 {
            continue;
        }
        let t = r * r;
        let (fa, fb) = (f.a().evaluate(t), f.b().evaluate(t));
        let (ga, gb) = (g.a().evaluate(t), g.b().evaluate(t));
        let scale = (fa * fa + t * fb * fb).sqrt().max(f64::MIN_POSITIVE);
        let diff = ((fa - ga).powi(2) + t * (fb - gb).powi(2)).sqrt();
        worst = worst.max(diff / scale);
    }
    worst
}
