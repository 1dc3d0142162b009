//! Summation with a fixed association order, independent of the number of
//! worker threads.

use rayon::prelude::*;

use crate::scalar::Scalar;

/// Items per leaf block. Blocks are summed sequentially, then combined
/// pairwise in index order.
pub const BLOCK: usize = 4096;

/// `sum_{i < n} f(i)`.
pub fn sum_by<S: Scalar>(n: usize, f: impl Fn(usize) -> S + Sync) -> S {
    let blocks = n.div_ceil(BLOCK);
    let partial: Vec<S> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let end = ((b + 1) * BLOCK).min(n);
            (b * BLOCK..end).fold(S::zero(), |acc, i| acc + f(i))
        })
        .collect();
    pairwise(&partial)
}

pub fn sum<S: Scalar>(xs: &[S]) -> S {
    sum_by(xs.len(), |i| xs[i])
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    assert_eq!(a.len(), b.len());
    sum_by(a.len(), |i| a[i] * b[i])
}

/// Pairwise (tree) sum of a short slice.
pub fn pairwise<S: Scalar>(xs: &[S]) -> S {
    match xs.len() {
        0 => S::zero(),
        1 => xs[0],
        n => pairwise(&xs[..n / 2]) + pairwise(&xs[n / 2..]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_of_thread_count() {
        let xs: Vec<f64> = (0..100_003).map(|i| ((i as f64) * 0.7).sin() * 1e3f64.powi((i % 7) as i32 - 3)).collect();
        let reference = sum(&xs);
        for threads in [1, 2, 3, 8] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let s = pool.install(|| sum(&xs));
            assert_eq!(s.to_bits(), reference.to_bits());
        }
        let naive: f64 = xs.iter().sum();
        assert!((reference - naive).abs() < 1e-9 * naive.abs().max(1.0));
    }

    #[test]
    fn empty_and_small() {
        assert_eq!(sum::<f64>(&[]), 0.0);
        assert_eq!(dot(&[1.0f64, 2.0], &[3.0, 4.0]), 11.0);
    }
}
