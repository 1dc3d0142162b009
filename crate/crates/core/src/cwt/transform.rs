//! Forward and inverse transforms: direct quadrature and the FFT path.

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::FftDirection;

use crate::clifford::multivector::{conjugate_in_place, gp_accumulate};
use crate::clifford::{ProductTable, Spinor};
use crate::cwt::coeffs::{CoefficientField, Convention};
use crate::cwt::scales::ScaleGrid;
use crate::cwt::wavelet::Wavelet;
use crate::error::{Error, Result};
use crate::field::{GridSpec, NdFft, SampledField};
use crate::scalar::Scalar;

/// Samples required across the effective support at the smallest scale.
pub const MIN_SAMPLES: f64 = 8.0;

/// Everything that fixes the coefficient domain of a transform.
#[derive(Clone, Debug)]
pub struct CwtSetup<S> {
    pub scales: ScaleGrid<S>,
    pub translations: GridSpec<S>,
    /// Spin(2) angles, `m = 2` only.
    pub angles: Option<Vec<S>>,
    pub convention: Convention,
}

impl<S: Scalar> CwtSetup<S> {
    pub fn new(scales: ScaleGrid<S>, translations: GridSpec<S>) -> Self {
        Self { scales, translations, angles: None, convention: Convention::default() }
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    /// `n` angles `2 pi k / n`.
    pub fn with_spin_angles(mut self, n: usize) -> Self {
        self.angles = if n == 0 {
            None
        } else {
            Some((0..n).map(|k| S::PI() * S::lit(2.0) * S::from_usize_lossy(k) / S::from_usize_lossy(n)).collect())
        };
        self
    }

    fn spinors(&self) -> Result<Vec<Option<Spinor<S>>>> {
        match &self.angles {
            None => Ok(vec![None]),
            Some(angles) => {
                if self.translations.m() != 2 {
                    return Err(Error::InvalidInput("spin angles are supported for m = 2 only".into()));
                }
                if angles.is_empty() {
                    return Err(Error::InvalidInput("empty spin angle list".into()));
                }
                angles.iter().map(|&t| Spinor::from_plane_angle(2, 1, 2, t).map(Some)).collect()
            }
        }
    }

    fn empty_field(&self) -> CoefficientField<S> {
        CoefficientField::zeros(self.scales.clone(), self.translations.clone(), self.angles.clone(), self.convention)
    }
}

/// Rejects scale grids whose smallest copy is sampled too coarsely.
pub fn check_resolution<S: Scalar>(w: &Wavelet<S>, grid: &GridSpec<S>, scales: &ScaleGrid<S>) -> Result<()> {
    let h = grid.spacing().iter().fold(S::zero(), |acc, &v| acc.max(v));
    let width = S::lit(2.0) * w.effective_radius() * scales.min();
    let samples = width / h;
    if samples < S::lit(MIN_SAMPLES) {
        return Err(Error::UnderResolved(format!(
            "smallest scale a = {:.4e} spans {:.2} samples across the effective support of diameter {:.4e} \
             (spacing {:.4e}); at least {MIN_SAMPLES} are required",
            scales.min().as_f64(),
            samples.as_f64(),
            width.as_f64(),
            h.as_f64()
        )));
    }
    Ok(())
}

fn check_dims<S: Scalar>(w: &Wavelet<S>, f: &GridSpec<S>, b: &GridSpec<S>) -> Result<()> {
    if w.m() != f.m() {
        return Err(Error::SignatureMismatch { left: w.m(), right: f.m() });
    }
    if b.m() != f.m() {
        return Err(Error::SignatureMismatch { left: f.m(), right: b.m() });
    }
    Ok(())
}

/// Node-major copy of a component-major block.
fn node_major<S: Scalar>(data: &[S], nodes: usize, dim: usize) -> Vec<S> {
    let mut out = vec![S::zero(); nodes * dim];
    for c in 0..dim {
        for i in 0..nodes {
            out[i * dim + c] = data[c * nodes + i];
        }
    }
    out
}

fn scatter<S: Scalar>(node_major: &[S], nodes: usize, dim: usize, out: &mut [S]) {
    for i in 0..nodes {
        for c in 0..dim {
            out[c * nodes + i] = node_major[i * dim + c];
        }
    }
}

/// Forward transform by full quadrature over the sample grid for every
/// coefficient.
pub fn forward_direct<S: Scalar>(w: &Wavelet<S>, f: &SampledField<S>, setup: &CwtSetup<S>) -> Result<CoefficientField<S>> {
    check_dims(w, f.grid(), &setup.translations)?;
    check_resolution(w, f.grid(), &setup.scales)?;
    let spinors = setup.spinors()?;
    let m = f.m();
    let dim = 1usize << m;
    let table = ProductTable::for_dim(m);
    let nf = f.nodes();
    let fvals = node_major(f.data(), nf, dim);
    let fx: Vec<S> = (0..nf).flat_map(|i| f.grid().node_vec(i)).collect();
    let dv = f.grid().cell_volume();
    let bgrid = &setup.translations;
    let nb = bgrid.len();
    let mut out = setup.empty_field();
    for (ia, &a) in setup.scales.values().iter().enumerate() {
        for (k, spin) in spinors.iter().enumerate() {
            let values: Vec<S> = (0..nb)
                .into_par_iter()
                .flat_map_iter(|j| {
                    let b = bgrid.node_vec(j);
                    let mut acc = vec![S::zero(); dim];
                    let mut kern = vec![S::zero(); dim];
                    let mut y = vec![S::zero(); m];
                    for i in 0..nf {
                        for d in 0..m {
                            y[d] = fx[i * m + d] - b[d];
                        }
                        w.write_copy(a, spin.as_ref(), &y, &mut kern);
                        let fi = &fvals[i * dim..(i + 1) * dim];
                        match setup.convention {
                            Convention::ConjugateLeft => {
                                conjugate_in_place(&mut kern);
                                gp_accumulate(table, &kern, fi, dv, &mut acc);
                            }
                            Convention::ProductRight => gp_accumulate(table, fi, &kern, dv, &mut acc),
                        }
                    }
                    acc
                })
                .collect();
            scatter(&values, nb, dim, out.slice_mut(ia, k));
        }
    }
    Ok(out)
}

/// Inverse transform by direct summation over the coefficient grid.
pub fn reconstruct_direct<S: Scalar>(
    w: &Wavelet<S>,
    coeffs: &CoefficientField<S>,
    target: &GridSpec<S>,
    admissibility: S,
) -> Result<SampledField<S>> {
    check_dims(w, target, coeffs.grid())?;
    let setup = CwtSetup {
        scales: coeffs.scales().clone(),
        translations: coeffs.grid().clone(),
        angles: coeffs.angles().map(|a| a.to_vec()),
        convention: coeffs.convention(),
    };
    let spinors = setup.spinors()?;
    let m = target.m();
    let dim = 1usize << m;
    let table = ProductTable::for_dim(m);
    let bgrid = coeffs.grid();
    let nb = bgrid.len();
    let bx: Vec<S> = (0..nb).flat_map(|j| bgrid.node_vec(j)).collect();
    let slices: Vec<Vec<S>> = (0..coeffs.scales().len())
        .flat_map(|ia| (0..spinors.len()).map(move |k| (ia, k)))
        .map(|(ia, k)| node_major(coeffs.slice(ia, k), nb, dim))
        .collect();
    let nt = target.len();
    let values: Vec<S> = (0..nt)
        .into_par_iter()
        .flat_map_iter(|i| {
            let x = target.node_vec(i);
            let mut acc = vec![S::zero(); dim];
            let mut kern = vec![S::zero(); dim];
            let mut y = vec![S::zero(); m];
            for (ia, &a) in coeffs.scales().values().iter().enumerate() {
                let weight = coeffs.cell_measure(ia) / admissibility;
                for (k, spin) in spinors.iter().enumerate() {
                    let t = &slices[ia * spinors.len() + k];
                    for j in 0..nb {
                        for d in 0..m {
                            y[d] = x[d] - bx[j * m + d];
                        }
                        w.write_copy(a, spin.as_ref(), &y, &mut kern);
                        let tj = &t[j * dim..(j + 1) * dim];
                        match coeffs.convention() {
                            Convention::ConjugateLeft => gp_accumulate(table, &kern, tj, weight, &mut acc),
                            Convention::ProductRight => {
                                conjugate_in_place(&mut kern);
                                gp_accumulate(table, tj, &kern, weight, &mut acc);
                            }
                        }
                    }
                }
            }
            acc
        })
        .collect();
    let mut data = vec![S::zero(); nt * dim];
    scatter(&values, nt, dim, &mut data);
    SampledField::from_components(target.clone(), data)
}

/// Smallest `2^a 3^b 5^c >= n`.
fn fast_len(n: usize) -> usize {
    let mut best = n.next_power_of_two();
    let mut p5 = 1;
    while p5 < best {
        let mut p35 = p5;
        while p35 < best {
            let mut v = p35;
            while v < n {
                v *= 2;
            }
            best = best.min(v);
            p35 *= 3;
        }
        p5 *= 5;
    }
    best
}

/// Padded FFT workspace shared by forward and inverse fast paths.
struct Lattice<S: Scalar> {
    m: usize,
    dims: Vec<usize>,
    fwd: NdFft<S>,
    inv: NdFft<S>,
}

impl<S: Scalar> Lattice<S> {
    fn new(dims: Vec<usize>) -> Self {
        let fwd = NdFft::new(&dims, FftDirection::Forward);
        let inv = NdFft::new(&dims, FftDirection::Inverse);
        Self { m: dims.len(), dims, fwd, inv }
    }

    fn len(&self) -> usize {
        self.dims.iter().product()
    }

    fn index(&self, pos: &[i64]) -> usize {
        pos.iter()
            .zip(&self.dims)
            .fold(0, |acc, (&p, &l)| acc * l + p.rem_euclid(l as i64) as usize)
    }

    /// Places `values(node)` of a box with `shape`, starting at `start`, into
    /// a zero-padded buffer (wrapping modulo the lattice) and transforms it.
    fn embed(&self, start: &[i64], shape: &[usize], comp: impl Fn(usize) -> S) -> Vec<Complex<S>> {
        let mut buf = vec![Complex::new(S::zero(), S::zero()); self.len()];
        let total: usize = shape.iter().product();
        let mut pos = vec![0i64; self.m];
        for i in 0..total {
            let mut r = i;
            for j in (0..self.m).rev() {
                pos[j] = start[j] + (r % shape[j]) as i64;
                r /= shape[j];
            }
            buf[self.index(&pos)] = Complex::new(comp(i), S::zero());
        }
        self.fwd.process(&mut buf);
        buf
    }

    /// Inverse transform and read a box back out.
    fn extract(&self, mut buf: Vec<Complex<S>>, start: &[i64], shape: &[usize], out: &mut [S]) {
        self.inv.process(&mut buf);
        let norm = S::one() / S::from_usize_lossy(self.len());
        let mut pos = vec![0i64; self.m];
        for (i, v) in out.iter_mut().enumerate() {
            let mut r = i;
            for j in (0..self.m).rev() {
                pos[j] = start[j] + (r % shape[j]) as i64;
                r /= shape[j];
            }
            *v = buf[self.index(&pos)].re * norm;
        }
    }
}

/// Samples `factor * copy(d h)` for lattice offsets `d` in a box.
fn kernel_box<S: Scalar>(
    w: &Wavelet<S>,
    a: S,
    spin: Option<&Spinor<S>>,
    conj: bool,
    h: &[S],
    lo: &[i64],
    shape: &[usize],
    sign: S,
    factor: S,
) -> Vec<S> {
    let m = h.len();
    let dim = 1usize << m;
    let total: usize = shape.iter().product();
    let node_major: Vec<S> = (0..total)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut y = vec![S::zero(); m];
            let mut r = i;
            for j in (0..m).rev() {
                y[j] = sign * S::lit((lo[j] + (r % shape[j]) as i64) as f64) * h[j];
                r /= shape[j];
            }
            let mut kern = vec![S::zero(); dim];
            w.write_copy(a, spin, &y, &mut kern);
            if conj {
                conjugate_in_place(&mut kern);
            }
            kern.into_iter().map(move |v| v * factor)
        })
        .collect();
    let mut out = vec![S::zero(); total * dim];
    scatter(&node_major, total, dim, &mut out);
    out
}

/// `acc_C += sum_{A xor B = C} sign(A, B) left_A * right_B` pointwise.
fn combine<S: Scalar>(table: &ProductTable, left: &[Vec<Complex<S>>], right: &[Vec<Complex<S>>], acc: &mut [Vec<Complex<S>>]) {
    let dim = left.len();
    acc.par_iter_mut().enumerate().for_each(|(c, out)| {
        for a in 0..dim {
            let b = a ^ c;
            let (l, r) = (&left[a], &right[b]);
            if table.is_negative(a, b) {
                for ((o, x), y) in out.iter_mut().zip(l).zip(r) {
                    *o -= *x * *y;
                }
            } else {
                for ((o, x), y) in out.iter_mut().zip(l).zip(r) {
                    *o += *x * *y;
                }
            }
        }
    });
}

/// Forward transform with per-scale FFT cross-correlation. The translation
/// lattice must be a sub-lattice (same spacing) of the sample lattice.
pub fn forward_fft<S: Scalar>(w: &Wavelet<S>, f: &SampledField<S>, setup: &CwtSetup<S>) -> Result<CoefficientField<S>> {
    check_dims(w, f.grid(), &setup.translations)?;
    check_resolution(w, f.grid(), &setup.scales)?;
    let spinors = setup.spinors()?;
    let fg = f.grid();
    let bg = &setup.translations;
    let off = fg.lattice_offset(bg)?;
    let m = fg.m();
    let dim = 1usize << m;
    let table = ProductTable::for_dim(m);
    let (nf, nb) = (fg.shape().to_vec(), bg.shape().to_vec());
    let lat = Lattice::new((0..m).map(|j| fast_len(nf[j] + nb[j] - 1)).collect());
    let zero = vec![0i64; m];
    let fhat: Vec<Vec<Complex<S>>> = (0..dim).map(|c| lat.embed(&zero, &nf, |i| f.component(c)[i])).collect();
    // G_n = K(-n h), n in [off - (N_f - 1), off + N_b - 1]
    let lo: Vec<i64> = (0..m).map(|j| off[j] - (nf[j] as i64 - 1)).collect();
    let span: Vec<usize> = (0..m).map(|j| nf[j] + nb[j] - 1).collect();
    let conj = setup.convention == Convention::ConjugateLeft;
    let mut out = setup.empty_field();
    let nbt = bg.len();
    for (ia, &a) in setup.scales.values().iter().enumerate() {
        for (k, spin) in spinors.iter().enumerate() {
            let g = kernel_box(w, a, spin.as_ref(), conj, fg.spacing(), &lo, &span, -S::one(), fg.cell_volume());
            let total: usize = span.iter().product();
            let ghat: Vec<Vec<Complex<S>>> =
                (0..dim).map(|c| lat.embed(&lo, &span, |i| g[c * total + i])).collect();
            let mut acc = vec![vec![Complex::new(S::zero(), S::zero()); lat.len()]; dim];
            match setup.convention {
                Convention::ConjugateLeft => combine(table, &ghat, &fhat, &mut acc),
                Convention::ProductRight => combine(table, &fhat, &ghat, &mut acc),
            }
            let block = out.slice_mut(ia, k);
            for (c, buf) in acc.into_iter().enumerate() {
                lat.extract(buf, &off, &nb, &mut block[c * nbt..(c + 1) * nbt]);
            }
        }
    }
    Ok(out)
}

/// Inverse transform with FFT convolutions, accumulated over all scales in
/// the frequency domain.
pub fn reconstruct_fft<S: Scalar>(
    w: &Wavelet<S>,
    coeffs: &CoefficientField<S>,
    target: &GridSpec<S>,
    admissibility: S,
) -> Result<SampledField<S>> {
    check_dims(w, target, coeffs.grid())?;
    let setup = CwtSetup {
        scales: coeffs.scales().clone(),
        translations: coeffs.grid().clone(),
        angles: coeffs.angles().map(|a| a.to_vec()),
        convention: coeffs.convention(),
    };
    let spinors = setup.spinors()?;
    let bg = coeffs.grid();
    let off = target.lattice_offset(bg)?;
    let m = target.m();
    let dim = 1usize << m;
    let table = ProductTable::for_dim(m);
    let (nf, nb) = (target.shape().to_vec(), bg.shape().to_vec());
    let lat = Lattice::new((0..m).map(|j| fast_len(nf[j] + nb[j] - 1)).collect());
    // K'_d = copy(d h), d = i - J in [-(off + N_b - 1), N_f - 1 - off]
    let lo: Vec<i64> = (0..m).map(|j| -(off[j] + nb[j] as i64 - 1)).collect();
    let span: Vec<usize> = (0..m).map(|j| nf[j] + nb[j] - 1).collect();
    let total: usize = span.iter().product();
    let conj = coeffs.convention() == Convention::ProductRight;
    let nbt = bg.len();
    let mut acc = vec![vec![Complex::new(S::zero(), S::zero()); lat.len()]; dim];
    for (ia, &a) in coeffs.scales().values().iter().enumerate() {
        let weight = coeffs.cell_measure(ia) / admissibility;
        for (k, spin) in spinors.iter().enumerate() {
            let kern = kernel_box(w, a, spin.as_ref(), conj, target.spacing(), &lo, &span, S::one(), weight);
            let khat: Vec<Vec<Complex<S>>> =
                (0..dim).map(|c| lat.embed(&lo, &span, |i| kern[c * total + i])).collect();
            let block = coeffs.slice(ia, k);
            let that: Vec<Vec<Complex<S>>> =
                (0..dim).map(|c| lat.embed(&off, &nb, |i| block[c * nbt + i])).collect();
            match coeffs.convention() {
                Convention::ConjugateLeft => combine(table, &khat, &that, &mut acc),
                Convention::ProductRight => combine(table, &that, &khat, &mut acc),
            }
        }
    }
    let nt = target.len();
    let zero = vec![0i64; m];
    let mut data = vec![S::zero(); nt * dim];
    for (c, buf) in acc.into_iter().enumerate() {
        lat.extract(buf, &zero, &nf, &mut data[c * nt..(c + 1) * nt]);
    }
    SampledField::from_components(target.clone(), data)
}

/// `C(b_j) = sum_i v(x_i) k(x_i - b_j) dV` for every node of `bgrid`, by FFT.
pub(crate) fn correlate_scalar<S: Scalar>(
    fgrid: &GridSpec<S>,
    values: &[S],
    bgrid: &GridSpec<S>,
    kernel: impl Fn(&[S]) -> S + Sync,
) -> Result<Vec<S>> {
    let off = fgrid.lattice_offset(bgrid)?;
    let m = fgrid.m();
    let (nf, nb) = (fgrid.shape().to_vec(), bgrid.shape().to_vec());
    let lat = Lattice::new((0..m).map(|j| fast_len(nf[j] + nb[j] - 1)).collect());
    let lo: Vec<i64> = (0..m).map(|j| off[j] - (nf[j] as i64 - 1)).collect();
    let span: Vec<usize> = (0..m).map(|j| nf[j] + nb[j] - 1).collect();
    let h = fgrid.spacing();
    let dv = fgrid.cell_volume();
    let total: usize = span.iter().product();
    let g: Vec<S> = (0..total)
        .into_par_iter()
        .map(|i| {
            let mut y = vec![S::zero(); m];
            let mut r = i;
            for j in (0..m).rev() {
                y[j] = -S::lit((lo[j] + (r % span[j]) as i64) as f64) * h[j];
                r /= span[j];
            }
            kernel(&y) * dv
        })
        .collect();
    let zero = vec![0i64; m];
    let mut fhat = lat.embed(&zero, &nf, |i| values[i]);
    let ghat = lat.embed(&lo, &span, |i| g[i]);
    fhat.par_iter_mut().zip(ghat.par_iter()).for_each(|(a, b)| *a *= *b);
    let mut out = vec![S::zero(); bgrid.len()];
    lat.extract(fhat, &off, &nb, &mut out);
    Ok(out)
}
