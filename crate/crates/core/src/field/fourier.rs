//! Componentwise Fourier transform `F[f](xi) = ∫ f(x) exp(-i<x, xi>) dV(x)`
//! on grids, and the radial (Hankel) form for radial wavelets.

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::FftDirection;

use crate::clifford::{blade_order, Multivector, Signature};
use crate::error::{Error, Result};
use crate::field::fft::NdFft;
use crate::field::grid::GridSpec;
use crate::field::sampled::{fmt_num, join, SampledField};
use crate::quadrature::{integrate_half_line, integrate_pieces};
use crate::radial::{moment, CanonicalForm, CliffordRadialFunction, MotherWavelet};
use crate::reduce;
use crate::scalar::{Coefficient, Scalar};
use crate::special::{bessel_j, sphere_area};

/// Relative size of boundary samples above which the transform is flagged.
pub const BOUNDARY_DECAY: f64 = 1e-6;

/// Complexified multivector samples on the dual frequency grid.
#[derive(Clone, Debug)]
pub struct FourierField<S> {
    grid: GridSpec<S>,
    data: Vec<Complex<S>>,
    warnings: Vec<String>,
}

/// Continuous-transform approximation by a DFT with origin phase correction
/// and cell-volume scaling. The frequency grid has spacing `2 pi / (N h)` and
/// is centred on `xi = 0` (node `floor(N/2)` on each axis).
pub fn fourier<S: Scalar>(f: &SampledField<S>) -> FourierField<S> {
    let g = f.grid();
    let m = g.m();
    let shape = g.shape().to_vec();
    let two_pi = S::PI() * S::lit(2.0);
    let dxi: Vec<S> = (0..m)
        .map(|j| two_pi / (S::from_usize_lossy(shape[j]) * g.spacing()[j]))
        .collect();
    let origin: Vec<S> = (0..m).map(|j| -S::from_usize_lossy(shape[j] / 2) * dxi[j]).collect();
    let fgrid = GridSpec::new(origin, dxi.clone(), shape.clone()).expect("dual grid is valid");

    // per-axis source index and phase factor h_j exp(-i o_j xi)
    let axes: Vec<Vec<(usize, Complex<S>)>> = (0..m)
        .map(|j| {
            let n = shape[j];
            (0..n)
                .map(|u| {
                    let k = u as i64 - (n / 2) as i64;
                    let src = k.rem_euclid(n as i64) as usize;
                    let xi = S::lit(k as f64) * dxi[j];
                    (src, Complex::from_polar(g.spacing()[j], -g.origin()[j] * xi))
                })
                .collect()
        })
        .collect();

    let plan = NdFft::new(&shape, FftDirection::Forward);
    let nodes = g.len();
    let mut data = Vec::with_capacity(nodes << m);
    for c in 0..f.components() {
        let mut buf: Vec<Complex<S>> = f.component(c).iter().map(|&v| Complex::new(v, S::zero())).collect();
        plan.process(&mut buf);
        let out: Vec<Complex<S>> = (0..nodes)
            .into_par_iter()
            .map(|i| {
                let mut idx = vec![0usize; m];
                fgrid.multi_index(i, &mut idx);
                let mut src = 0;
                let mut phase = Complex::new(S::one(), S::zero());
                for j in 0..m {
                    let (s, p) = axes[j][idx[j]];
                    src = src * shape[j] + s;
                    phase = phase * p;
                }
                buf[src] * phase
            })
            .collect();
        data.extend(out);
    }

    let mut warnings = Vec::new();
    let peak = (0..nodes).map(|i| f.value(i).norm()).fold(S::zero(), S::max);
    let edge = f.boundary_max();
    if peak > S::zero() && edge > S::lit(BOUNDARY_DECAY) * peak {
        warnings.push(format!(
            "boundary samples reach {:.3e} of the peak (limit {BOUNDARY_DECAY:e}); the transform is affected by truncation",
            (edge / peak).as_f64()
        ));
    }
    FourierField { grid: fgrid, data, warnings }
}

/// `F[f](xi)` at an arbitrary frequency by direct summation over the nodes.
pub fn fourier_at<S: Scalar>(f: &SampledField<S>, xi: &[S]) -> Vec<Complex<S>> {
    let g = f.grid();
    let m = g.m();
    let phases: Vec<Complex<S>> = (0..g.len())
        .into_par_iter()
        .map(|i| {
            let mut x = vec![S::zero(); m];
            g.node(i, &mut x);
            let arg = x.iter().zip(xi).fold(S::zero(), |acc, (&a, &b)| acc + a * b);
            Complex::from_polar(S::one(), -arg)
        })
        .collect();
    let dv = g.cell_volume();
    (0..f.components())
        .map(|c| {
            let comp = f.component(c);
            let re = reduce::sum_by(comp.len(), |i| comp[i] * phases[i].re);
            let im = reduce::sum_by(comp.len(), |i| comp[i] * phases[i].im);
            Complex::new(re * dv, im * dv)
        })
        .collect()
}

impl<S: Scalar> FourierField<S> {
    pub fn grid(&self) -> &GridSpec<S> {
        &self.grid
    }

    pub fn m(&self) -> usize {
        self.grid.m()
    }

    pub fn nodes(&self) -> usize {
        self.grid.len()
    }

    pub fn components(&self) -> usize {
        1 << self.m()
    }

    pub fn component(&self, mask: usize) -> &[Complex<S>] {
        let n = self.nodes();
        &self.data[mask * n..(mask + 1) * n]
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Index of the `xi = 0` node.
    pub fn zero_node(&self) -> usize {
        let idx: Vec<usize> = self.grid.shape().iter().map(|&n| n / 2).collect();
        self.grid.flat_index(&idx)
    }

    /// `(real part, imaginary part)` at a node.
    pub fn value(&self, node: usize) -> (Multivector<S>, Multivector<S>) {
        let sig = Signature::new(self.m()).expect("validated");
        let n = self.nodes();
        let re = (0..self.components()).map(|c| self.data[c * n + node].re).collect();
        let im = (0..self.components()).map(|c| self.data[c * n + node].im).collect();
        (
            Multivector::from_coeffs(sig, re).expect("length"),
            Multivector::from_coeffs(sig, im).expect("length"),
        )
    }

    /// `sum_A |F_A(xi)|^2`.
    pub fn abs_sqr(&self, node: usize) -> S {
        let n = self.nodes();
        (0..self.components()).fold(S::zero(), |acc, c| acc + self.data[c * n + node].norm_sqr())
    }

    /// `∫ |F(xi)|^2 dxi`; equals `(2 pi)^m ‖f‖_2^2` for the DFT pair.
    pub fn norm_sqr(&self) -> S {
        reduce::sum_by(self.data.len(), |k| self.data[k].norm_sqr()) * self.grid.cell_volume()
    }

    /// Largest `|F(-xi) - conj F(xi)|` over nodes whose mirror is on the grid,
    /// relative to the largest `|F|`. Zero (up to rounding) for real input.
    pub fn hermitian_defect(&self) -> S {
        let shape = self.grid.shape().to_vec();
        let m = self.m();
        let n = self.nodes();
        let mut worst = S::zero();
        let mut peak = S::zero();
        let mut idx = vec![0usize; m];
        for i in 0..n {
            self.grid.multi_index(i, &mut idx);
            let mut mirror = Vec::with_capacity(m);
            for j in 0..m {
                let k = idx[j] as i64 - (shape[j] / 2) as i64;
                let u = -k + (shape[j] / 2) as i64;
                if u < 0 || u >= shape[j] as i64 {
                    break;
                }
                mirror.push(u as usize);
            }
            for c in 0..self.components() {
                peak = peak.max(self.data[c * n + i].norm());
            }
            if mirror.len() != m {
                continue;
            }
            let mi = self.grid.flat_index(&mirror);
            for c in 0..self.components() {
                let d = (self.data[c * n + mi] - self.data[c * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        if peak > S::zero() {
            worst / peak
        } else {
            S::zero()
        }
    }

    /// Header as for sampled fields plus `complex=true`; each row lists the
    /// real and imaginary part of every component in (grade, mask) order.
    pub fn to_csv(&self) -> String {
        let g = &self.grid;
        let mut s = String::new();
        s.push_str(&format!("m={}\n", g.m()));
        s.push_str(&format!("shape={}\n", join(g.shape().iter().map(|v| v.to_string()))));
        s.push_str(&format!("origin={}\n", join(g.origin().iter().map(|v| fmt_num(*v)))));
        s.push_str(&format!("spacing={}\n", join(g.spacing().iter().map(|v| fmt_num(*v)))));
        s.push_str(&format!("components={}\n", self.components()));
        s.push_str("complex=true\n");
        let order = blade_order(g.m());
        let n = self.nodes();
        for i in 0..n {
            let row = join(order.iter().flat_map(|b| {
                let v = self.data[b.mask() * n + i];
                [fmt_num(v.re), fmt_num(v.im)]
            }));
            s.push_str(&row);
            s.push('\n');
        }
        s
    }
}

/// `∫_0^inf g(r) J_nu(rho r) dr`, `nu = twice_nu / 2`: adaptive quadrature on
/// a core interval, then half-period pieces summed with Wynn's epsilon
/// acceleration.
pub fn hankel_integral<S: Scalar>(g: &impl Fn(S) -> S, twice_nu: i32, rho: S, abs_tol: S) -> S {
    let f = |r: S| g(r) * bessel_j(twice_nu, r * rho);
    let half = S::PI() / rho;
    let core = S::lit(8.0);
    let pieces_in_core = (core / half).ceil().max(S::one());
    let r0 = half * pieces_in_core;
    let mut breaks = vec![S::zero()];
    let mut b = S::lit(0.125);
    while b < r0 {
        breaks.push(b);
        b *= S::lit(2.0);
    }
    // keep the core rule from resolving thousands of oscillations at once
    if pieces_in_core > S::lit(4.0) {
        breaks.retain(|&x| x < S::lit(1.0));
        let mut x = S::one();
        while x < r0 {
            breaks.push(x);
            x += half.max(S::lit(0.25));
        }
    }
    breaks.push(r0);
    breaks.dedup();
    let head = integrate_pieces(&f, &breaks, abs_tol / S::lit(4.0), S::lit(1e-13), 20_000).value;

    let mut sums = vec![head];
    let mut acc = head;
    let mut start = r0;
    let mut last_est = head;
    let mut stable = 0;
    for _ in 0..4000 {
        let piece = integrate_pieces(&f, &[start, start + half], abs_tol / S::lit(64.0), S::lit(1e-13), 200).value;
        start += half;
        acc += piece;
        sums.push(acc);
        if piece.abs() < abs_tol * S::lit(1e-3) {
            return acc;
        }
        let window = &sums[sums.len().saturating_sub(24)..];
        let est = wynn_epsilon(window);
        if (est - last_est).abs() < abs_tol {
            stable += 1;
            if stable >= 3 {
                return est;
            }
        } else {
            stable = 0;
        }
        last_est = est;
    }
    last_est
}

/// Wynn's epsilon extrapolation of a sequence of partial sums.
pub fn wynn_epsilon<S: Scalar>(s: &[S]) -> S {
    let n = s.len();
    if n < 3 {
        return *s.last().unwrap_or(&S::zero());
    }
    let mut prev = vec![S::zero(); n + 1];
    let mut cur = s.to_vec();
    let mut best = s[n - 1];
    for k in 1..n {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d == S::zero() || !d.is_finite() {
                return best;
            }
            next.push(prev[i + 1] + S::one() / d);
        }
        prev = cur;
        cur = next;
        if k % 2 == 0 {
            match cur.last() {
                Some(&v) if v.is_finite() => best = v,
                _ => return best,
            }
        }
        if cur.len() < 2 {
            break;
        }
    }
    best
}

/// `r^{m/2}` without losing the integer case to `powf` rounding.
fn half_power<S: Scalar>(r: S, m: usize) -> S {
    if m % 2 == 0 {
        r.powi((m / 2) as i32)
    } else {
        r.powi((m / 2) as i32) * r.sqrt()
    }
}

/// Fourier transform of a radial function `A + x B` through one-dimensional
/// Hankel integrals:
/// `F[f](xi) = Ahat(rho) - i xi Btil(rho)` with
/// `Ahat = (2 pi)^{m/2} rho^{1-m/2} ∫ A(r^2) r^{m/2} J_{m/2-1}(r rho) dr` and
/// `Btil = (2 pi)^{m/2} rho^{-m/2} ∫ B(r^2) r^{m/2+1} J_{m/2}(r rho) dr`.
#[derive(Clone, Debug)]
pub struct FourierProfile<S> {
    m: usize,
    a: CanonicalForm<S>,
    b: CanonicalForm<S>,
    tol_a: S,
    tol_b: S,
}

impl<S: Scalar> FourierProfile<S> {
    pub fn new<C: Coefficient>(f: &CliffordRadialFunction<C>) -> Result<Self> {
        f.check_integrable()?;
        let (a, b) = f.canonical();
        let (a, b) = (a.to_scalar::<S>(), b.to_scalar::<S>());
        let m = f.m();
        let tol = S::lit(1e-13);
        let scale_a = integrate_half_line(|r: S| (a.evaluate(r * r) * half_power(r, m)).abs(), S::zero(), S::lit(1e-8)).value;
        let scale_b =
            integrate_half_line(|r: S| (b.evaluate(r * r) * half_power(r, m) * r).abs(), S::zero(), S::lit(1e-8)).value;
        Ok(Self { m, a, b, tol_a: scale_a * tol + S::min_positive_value(), tol_b: scale_b * tol + S::min_positive_value() })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `(Ahat(rho), Btil(rho))` for `rho > 0`.
    pub fn at(&self, rho: S) -> (S, S) {
        let m = self.m;
        let c = (S::PI() * S::lit(2.0)).powf(S::lit(m as f64 / 2.0));
        let ahat = if self.a.is_zero() {
            S::zero()
        } else {
            let g = |r: S| self.a.evaluate(r * r) * half_power(r, m);
            c * rho.powf(S::one() - S::lit(m as f64 / 2.0)) * hankel_integral(&g, m as i32 - 2, rho, self.tol_a)
        };
        let btil = if self.b.is_zero() {
            S::zero()
        } else {
            let g = |r: S| self.b.evaluate(r * r) * half_power(r, m) * r;
            c * rho.powf(-S::lit(m as f64 / 2.0)) * hankel_integral(&g, m as i32, rho, self.tol_b)
        };
        (ahat, btil)
    }

    /// `|F[f](xi)|^2 = Ahat^2 + rho^2 Btil^2`.
    pub fn abs_sqr(&self, rho: S) -> S {
        let (a, b) = self.at(rho);
        a * a + rho * rho * b * b
    }

    /// Complexified value at `xi`: real part `Ahat`, imaginary part `-xi Btil`.
    pub fn value(&self, xi: &[S]) -> (Multivector<S>, Multivector<S>) {
        let sig = Signature::new(self.m).expect("validated");
        let rho = xi.iter().fold(S::zero(), |acc, &v| acc + v * v).sqrt();
        let (a, b) = self.at(rho);
        let re = Multivector::scalar(sig, a);
        let mut im = Multivector::zero(sig);
        for (j, &x) in xi.iter().enumerate() {
            im.set(crate::clifford::BladeIndex::generator(j + 1), -x * b);
        }
        (re, im)
    }
}

/// `F[psi]` for a mother wavelet from the transform of its generating weight:
/// `psi = (-1)^l d^l W` gives `F[psi](xi) = (-i)^l xi^l F[W](rho)`, so
/// `Ahat = rho^l What` for even `l` and `Btil = rho^{l-1} What` for odd `l`.
#[derive(Clone, Debug)]
pub struct WeightRouteProfile<S> {
    ell: usize,
    weight: FourierProfile<S>,
}

impl<S: Scalar> WeightRouteProfile<S> {
    pub fn new<C: Coefficient>(w: &MotherWavelet<C>) -> Result<Self> {
        let l = w.ell() as i32;
        let weight = CliffordRadialFunction::<C>::weight(w.m(), w.alpha() + l, w.beta() + l)?;
        let weight = FourierProfile::new(&weight).map_err(|e| {
            Error::Integrability(format!("generating weight is not integrable, weight route unavailable: {e}"))
        })?;
        Ok(Self { ell: w.ell(), weight })
    }

    pub fn at(&self, rho: S) -> (S, S) {
        let (w, _) = self.weight.at(rho);
        if self.ell % 2 == 0 {
            (rho.powi(self.ell as i32) * w, S::zero())
        } else {
            (S::zero(), rho.powi(self.ell as i32 - 1) * w)
        }
    }

    pub fn abs_sqr(&self, rho: S) -> S {
        let (a, b) = self.at(rho);
        a * a + rho * rho * b * b
    }
}

/// Admissibility constant with both normalizations.
#[derive(Clone, Copy, Debug)]
pub struct Admissibility<S> {
    /// `(1/|S^{m-1}|) ∫ |F[psi](xi)|^2 / |xi|^m dxi = ∫_0^inf |F[psi](rho)|^2 drho / rho`.
    pub value: S,
    /// `(2 pi)^m ∫ |F[psi](xi)|^2 / |xi|^m dxi`.
    pub fourier_normalized: S,
    /// `|∫ psi dV|`, which must vanish for a finite constant.
    pub mean: S,
}

impl<S: Scalar> Admissibility<S> {
    fn from_value(m: usize, value: S, mean: S) -> Self {
        let fourier_normalized = (S::PI() * S::lit(2.0)).powi(m as i32) * sphere_area::<S>(m) * value;
        Self { value, fourier_normalized, mean }
    }
}

/// Radial route: `∫ |F[psi](rho)|^2 d(ln rho)` by adaptive quadrature on the
/// Hankel profile.
pub fn admissibility_radial<S: Scalar, C: Coefficient>(psi: &CliffordRadialFunction<C>) -> Result<Admissibility<S>> {
    let profile = FourierProfile::<S>::new(psi)?;
    let mean = moment::<S, C>(0, psi)?.scalar_part().abs();
    let l1 = crate::radial::l1_norm::<S, C>(psi)?;
    if mean > S::lit(1e-8) * l1 {
        return Err(Error::DivergentAdmissibility(format!(
            "∫ psi dV = {:e} is not zero (‖psi‖_1 = {:e}); |F[psi]|^2/|xi|^m is not integrable at 0",
            mean.as_f64(),
            l1.as_f64()
        )));
    }
    let value = log_radial_integral(|rho| profile.abs_sqr(rho));
    Ok(Admissibility::from_value(psi.m(), value, mean))
}

/// `∫_0^inf e(rho) drho / rho` for a nonnegative profile that vanishes at
/// both ends: the support is bracketed on a coarse logarithmic scan, then
/// integrated in `u = ln rho`.
pub fn log_radial_integral<S: Scalar>(e: impl Fn(S) -> S + Sync) -> S {
    let (lo, hi, step) = (-12.0f64, 8.0f64, 0.25f64);
    let us: Vec<f64> = (0..=((hi - lo) / step) as usize).map(|i| lo + step * i as f64).collect();
    let vals: Vec<S> = us.par_iter().map(|&u| e(S::lit(u.exp()))).collect();
    let peak = vals.iter().fold(S::zero(), |acc, &v| acc.max(v));
    if peak == S::zero() {
        return S::zero();
    }
    let keep = |v: S| v > peak * S::lit(1e-18);
    let first = vals.iter().position(|&v| keep(v)).unwrap_or(0).saturating_sub(1);
    let last = (vals.iter().rposition(|&v| keep(v)).unwrap_or(us.len() - 1) + 1).min(us.len() - 1);
    let breaks: Vec<S> = us[first..=last].iter().map(|&u| S::lit(u)).collect();
    let chunks: Vec<S> = breaks
        .par_windows(2)
        .map(|w| integrate_pieces(&|u: S| e(u.exp()), w, peak * S::lit(1e-14), S::lit(1e-11), 200).value)
        .collect();
    reduce::pairwise(&chunks)
}

/// Grid route: `(1/|S^{m-1}|) sum_{xi != 0} |F[psi](xi)|^2 / |xi|^m dxi`.
pub fn admissibility_grid<S: Scalar>(psi_hat: &FourierField<S>, mean_tol: S) -> Result<Admissibility<S>> {
    let m = psi_hat.m();
    let zero = psi_hat.zero_node();
    let peak = (0..psi_hat.nodes()).map(|i| psi_hat.abs_sqr(i)).fold(S::zero(), S::max).sqrt();
    let mean = psi_hat.abs_sqr(zero).sqrt();
    if mean > mean_tol * peak {
        return Err(Error::DivergentAdmissibility(format!(
            "|F[psi](0)| = {:e} is not negligible next to the peak {:e}",
            mean.as_f64(),
            peak.as_f64()
        )));
    }
    let g = psi_hat.grid();
    let sum = reduce::sum_by(psi_hat.nodes(), |i| {
        if i == zero {
            return S::zero();
        }
        let mut xi = vec![S::zero(); m];
        g.node(i, &mut xi);
        let rho2 = xi.iter().fold(S::zero(), |acc, &v| acc + v * v);
        psi_hat.abs_sqr(i) / rho2.powf(S::lit(m as f64 / 2.0))
    });
    let value = sum * g.cell_volume() / sphere_area::<S>(m);
    Ok(Admissibility::from_value(m, value, mean))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::RadialSum;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_pair_in_one_dimension() {
        let grid = GridSpec::centered(1, 256, 0.1).unwrap();
        let f = SampledField::from_fn(grid, |x: &[f64], out: &mut [f64]| out[0] = (-x[0] * x[0] / 2.0).exp());
        let fh = fourier(&f);
        assert!(fh.warnings().is_empty());
        for i in 0..fh.nodes() {
            let xi: f64 = fh.grid().node_vec(i)[0];
            if xi.abs() > 5.0 {
                continue;
            }
            let expect = (2.0 * PI).sqrt() * (-xi * xi / 2.0).exp();
            let got = fh.component(0)[i];
            assert!((got.re - expect).abs() < 1e-10 && got.im.abs() < 1e-10, "xi={xi}");
        }
    }

    #[test]
    fn plancherel_and_hermitian_symmetry() {
        let grid = GridSpec::new(vec![-3.0, -2.5], vec![0.25, 0.2], vec![24, 26]).unwrap();
        let f = SampledField::from_fn(grid, |x: &[f64], out: &mut [f64]| {
            out[0] = (-(x[0] * x[0] + x[1] * x[1])).exp();
            out[3] = x[0] * (-(x[0] - 0.3).powi(2) - x[1] * x[1]).exp();
        });
        let fh = fourier(&f);
        let lhs = fh.norm_sqr();
        let rhs = (2.0 * PI).powi(2) * f.norm_sqr();
        assert!((lhs - rhs).abs() < 1e-12 * rhs);
        assert!(fh.hermitian_defect() < 1e-12);
        let dc = fh.component(0)[fh.zero_node()];
        let integral: f64 = f.component(0).iter().sum::<f64>() * f.grid().cell_volume();
        assert!((dc.re - integral).abs() < 1e-12);
    }

    #[test]
    fn fft_matches_direct_summation() {
        let grid = GridSpec::new(vec![-1.1, 0.4], vec![0.3, 0.35], vec![8, 6]).unwrap();
        let f = SampledField::from_fn(grid, |x: &[f64], out: &mut [f64]| {
            out[1] = x[0].sin() + x[1];
            out[2] = (x[0] * x[1]).cos();
        });
        let fh = fourier(&f);
        for i in [0, 5, 17, 47] {
            let xi = fh.grid().node_vec(i);
            let direct = fourier_at(&f, &xi);
            for c in 0..4 {
                assert!((direct[c] - fh.component(c)[i]).norm() < 1e-12);
            }
        }
        assert!(!fh.warnings().is_empty());
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        // log 2 = 1 - 1/2 + 1/3 - ...
        let mut s = 0.0;
        let sums: Vec<f64> = (1..20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert!((wynn_epsilon(&sums) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn hankel_of_rational_function() {
        // ∫ r J_0(rho r) / (1 + r^2)^{3/2} dr = exp(-rho) / ... use the
        // classical pair ∫ r J_0(k r) (r^2+1)^{-3/2} dr = exp(-k)
        for rho in [0.01, 0.3, 1.0, 4.0, 20.0] {
            let v = hankel_integral(&|r: f64| r * (1.0 + r * r).powf(-1.5), 0, rho, 1e-14);
            assert!((v - (-rho).exp()).abs() < 1e-10, "rho={rho}: {v}");
        }
    }

    #[test]
    fn radial_profile_of_two_dimensional_pairs() {
        // F[(1+t)^-2](xi) in R^2 = pi rho K_1(rho); check rho -> 0 value pi
        // and compare with direct node summation at a few radii.
        let f = CliffordRadialFunction::<f64>::weight(2, 0, -2).unwrap();
        let prof = FourierProfile::<f64>::new(&f).unwrap();
        let (a, _) = prof.at(1e-6);
        assert!((a - PI).abs() < 1e-6);
        let grid = GridSpec::centered(2, 400, 0.1).unwrap();
        let sampled = SampledField::sample(&f, grid).unwrap();
        for rho in [0.5, 1.5, 3.0] {
            let xi = [rho * 0.6, rho * 0.8];
            let direct = fourier_at(&sampled, &xi)[0].re;
            let (a, _) = prof.at(rho);
            assert!((direct - a).abs() < 2e-3 * a.abs(), "rho={rho}: {direct} vs {a}");
        }
    }

    #[test]
    fn vector_part_profile() {
        // x (1+t)^-3 = -(1/4) d (1+t)^-2, so its transform is -(1/4) i xi F[(1+t)^-2]
        let f = CliffordRadialFunction::<f64>::new(2, RadialSum::zero(), RadialSum::term(1.0, 0, 0, -3)).unwrap();
        let g = CliffordRadialFunction::<f64>::weight(2, 0, -2).unwrap();
        let (pf, pg) = (FourierProfile::<f64>::new(&f).unwrap(), FourierProfile::<f64>::new(&g).unwrap());
        for rho in [0.2, 1.0, 2.5] {
            let (_, b) = pf.at(rho);
            let (a, _) = pg.at(rho);
            assert!((b - a / 4.0).abs() < 1e-10 * a.abs(), "rho={rho}");
        }
    }

    #[test]
    fn routes_agree_for_mother_wavelets() {
        for (ell, a, b, m) in [(1, -1, -4, 2), (2, -2, -5, 2), (2, 1, -8, 3), (3, 0, -8, 2)] {
            let w = MotherWavelet::<f64>::new(ell, a, b, m).unwrap();
            let hankel = FourierProfile::<f64>::new(w.function()).unwrap();
            let weight = WeightRouteProfile::<f64>::new(&w).unwrap();
            for rho in [0.1, 0.7, 1.9, 5.0] {
                let (h1, h2) = hankel.at(rho);
                let (w1, w2) = weight.at(rho);
                let scale = (h1 * h1 + h2 * h2).sqrt();
                assert!((h1 - w1).abs() + (h2 - w2).abs() < 1e-8 * scale, "l={ell} rho={rho}");
            }
        }
    }

    #[test]
    fn admissibility_is_quadratic() {
        let w = MotherWavelet::<f64>::new(2, -2, -5, 2).unwrap();
        let a1 = admissibility_radial::<f64, f64>(w.function()).unwrap();
        assert!(a1.value > 0.0 && a1.value.is_finite());
        let a3 = admissibility_radial::<f64, f64>(&w.function().scale(&3.0)).unwrap();
        assert!((a3.value - 9.0 * a1.value).abs() < 1e-9 * a3.value);
        let expect = (2.0 * PI).powi(2) * 2.0 * PI * a1.value;
        assert!((a1.fourier_normalized - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn nonzero_mean_is_rejected() {
        let g = CliffordRadialFunction::<f64>::weight(2, 0, -3).unwrap();
        assert!(matches!(admissibility_radial::<f64, f64>(&g), Err(Error::DivergentAdmissibility(_))));
    }
}
