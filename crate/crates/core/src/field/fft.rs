//! In-place n-dimensional FFT on row-major complex buffers.

use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::scalar::Scalar;

/// Plans for every axis of a fixed shape, reusable across buffers.
pub struct NdFft<S: Scalar> {
    shape: Vec<usize>,
    plans: Vec<Arc<dyn Fft<S>>>,
}

impl<S: Scalar> NdFft<S> {
    pub fn new(shape: &[usize], direction: FftDirection) -> Self {
        let mut planner = FftPlanner::new();
        let plans = shape.iter().map(|&n| planner.plan_fft(n, direction)).collect();
        Self { shape: shape.to_vec(), plans }
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Unnormalized transform of `buf` (length = product of the shape).
    pub fn process(&self, buf: &mut [Complex<S>]) {
        assert_eq!(buf.len(), self.len());
        let m = self.shape.len();
        for axis in 0..m {
            let n = self.shape[axis];
            if n == 1 {
                continue;
            }
            let stride: usize = self.shape[axis + 1..].iter().product();
            let plan = &self.plans[axis];
            if stride == 1 {
                buf.par_chunks_mut(n).for_each(|line| plan.process(line));
                continue;
            }
            let block = n * stride;
            let mut lines = vec![Complex::new(S::zero(), S::zero()); block];
            for chunk in buf.chunks_mut(block) {
                // gather columns into contiguous lines, transform, scatter back
                lines.par_chunks_mut(n).enumerate().for_each(|(col, line)| {
                    for (k, v) in line.iter_mut().enumerate() {
                        *v = chunk[k * stride + col];
                    }
                    plan.process(line);
                });
                chunk.par_chunks_mut(stride).enumerate().for_each(|(k, row)| {
                    for (col, v) in row.iter_mut().enumerate() {
                        *v = lines[col * n + k];
                    }
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft(shape: &[usize], data: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let total: usize = shape.iter().product();
        let idx = |mut i: usize| {
            let mut out = vec![0; shape.len()];
            for j in (0..shape.len()).rev() {
                out[j] = i % shape[j];
                i /= shape[j];
            }
            out
        };
        (0..total)
            .map(|k| {
                let kk = idx(k);
                (0..total).fold(Complex::new(0.0, 0.0), |acc, n| {
                    let nn = idx(n);
                    let phase: f64 = (0..shape.len())
                        .map(|j| -2.0 * std::f64::consts::PI * (kk[j] * nn[j]) as f64 / shape[j] as f64)
                        .sum();
                    acc + data[n] * Complex::from_polar(1.0, phase)
                })
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        for shape in [vec![7], vec![4, 6], vec![3, 2, 5]] {
            let total: usize = shape.iter().product();
            let data: Vec<Complex<f64>> =
                (0..total).map(|i| Complex::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos())).collect();
            let mut buf = data.clone();
            NdFft::new(&shape, FftDirection::Forward).process(&mut buf);
            let expect = naive_dft(&shape, &data);
            for (a, b) in buf.iter().zip(&expect) {
                assert!((a - b).norm() < 1e-11, "{shape:?}");
            }
        }
    }
}
