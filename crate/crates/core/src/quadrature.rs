//! One-dimensional adaptive Gauss-Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::scalar::Scalar;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

/// G7/K15 rule on `[a, b]`: (Kronrod estimate, |K15 - G7|).
pub fn gauss_kronrod_15<T: Scalar>(f: &impl Fn(T) -> T, a: T, b: T) -> (T, T) {
    let half = (b - a) / T::lit(2.0);
    let center = (a + b) / T::lit(2.0);
    let fc = f(center);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = half * T::lit(XGK[i]);
        let pair = f(center - dx) + f(center + dx);
        kronrod += T::lit(WGK[i]) * pair;
        if i % 2 == 1 {
            gauss += T::lit(WG[i / 2]) * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Piece<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Scalar> PartialEq for Piece<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Scalar> Eq for Piece<T> {}
impl<T: Scalar> PartialOrd for Piece<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Piece<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

/// Globally adaptive integration over `[a, b]`, bisecting the interval with the
/// largest error until `error <= max(abs_tol, rel_tol * |value|)`.
pub fn integrate<T: Scalar>(f: impl Fn(T) -> T, a: T, b: T, abs_tol: T, rel_tol: T) -> Quadrature<T> {
    integrate_pieces(&f, &[a, b], abs_tol, rel_tol, 4000)
}

/// Like [`integrate`] but starts from the given breakpoints.
pub fn integrate_pieces<T: Scalar>(
    f: &impl Fn(T) -> T,
    breaks: &[T],
    abs_tol: T,
    rel_tol: T,
    max_pieces: usize,
) -> Quadrature<T> {
    let mut heap = BinaryHeap::new();
    let (mut value, mut error) = (T::zero(), T::zero());
    for w in breaks.windows(2) {
        let (v, e) = gauss_kronrod_15(f, w[0], w[1]);
        value += v;
        error += e;
        heap.push(Piece { a: w[0], b: w[1], value: v, error: e });
    }
    while error > abs_tol.max(rel_tol * value.abs()) && heap.len() < max_pieces {
        let worst = heap.pop().expect("non-empty");
        let mid = (worst.a + worst.b) / T::lit(2.0);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let (v1, e1) = gauss_kronrod_15(f, worst.a, mid);
        let (v2, e2) = gauss_kronrod_15(f, mid, worst.b);
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        heap.push(Piece { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // re-sum to shed the drift of the running totals
    let pieces = heap.into_sorted_vec();
    let value = pieces.iter().fold(T::zero(), |acc, p| acc + p.value);
    let error = pieces.iter().fold(T::zero(), |acc, p| acc + p.error);
    Quadrature { value, error, intervals: pieces.len() }
}

/// `int_0^inf f(r) dr` for algebraically decaying `f`: `[0, 1]` directly and
/// `[1, inf)` through `r = 1/s`.
pub fn integrate_half_line<T: Scalar>(f: impl Fn(T) -> T, abs_tol: T, rel_tol: T) -> Quadrature<T> {
    let breaks = [T::zero(), T::lit(0.25), T::lit(0.5), T::lit(0.75), T::one()];
    let head = integrate_pieces(&f, &breaks, abs_tol / T::lit(2.0), rel_tol, 4000);
    let tail = integrate_pieces(
        &|s: T| if s == T::zero() { T::zero() } else { f(T::one() / s) / (s * s) },
        &breaks,
        abs_tol / T::lit(2.0),
        rel_tol,
        4000,
    );
    Quadrature {
        value: head.value + tail.value,
        error: head.error + tail.error,
        intervals: head.intervals + tail.intervals,
    }
}
