//! Bessel functions of the first kind and sphere measures.

use crate::scalar::Scalar;

/// Surface area `2 pi^{m/2} / Gamma(m/2)` of the unit sphere `S^{m-1}` in R^m.
pub fn sphere_area<T: Scalar>(m: usize) -> T {
    T::lit(2.0) * T::PI().powf(T::lit(m as f64 / 2.0)) / gamma_half(m)
}

/// `Gamma(n/2)` for positive integer `n`.
pub fn gamma_half<T: Scalar>(n: usize) -> T {
    assert!(n > 0, "Gamma(0) is undefined");
    let (mut acc, mut x) = if n % 2 == 0 {
        (T::one(), T::one())
    } else {
        (T::PI().sqrt(), T::lit(0.5))
    };
    let target = T::lit(n as f64 / 2.0);
    while x < target {
        acc *= x;
        x += T::one();
    }
    acc
}

/// Volume of the unit ball in R^m.
pub fn ball_volume<T: Scalar>(m: usize) -> T {
    sphere_area::<T>(m) / T::lit(m as f64)
}

/// `J_nu(x)` for `nu = twice_nu / 2`, with `twice_nu >= -1`: every integer
/// order and every half-integer order `>= -1/2`.
pub fn bessel_j<T: Scalar>(twice_nu: i32, x: T) -> T {
    assert!(twice_nu >= -1, "order below -1/2 is not supported");
    if twice_nu % 2 == 0 {
        bessel_j_int(twice_nu / 2, x)
    } else {
        bessel_j_half(twice_nu, x)
    }
}

/// Integer order, via Miller's backward recurrence on `|x| <= 25` and the
/// Hankel asymptotic expansion beyond.
pub fn bessel_j_int<T: Scalar>(n: i32, x: T) -> T {
    let sign_n = if n < 0 && n % 2 != 0 { -T::one() } else { T::one() };
    let n = n.unsigned_abs() as usize;
    if x < T::zero() {
        let s = if n % 2 == 1 { -T::one() } else { T::one() };
        return sign_n * s * bessel_j_int(n as i32, -x);
    }
    if x == T::zero() {
        return if n == 0 { sign_n } else { T::zero() };
    }
    let nf = n as f64;
    if x > T::lit(25.0_f64.max(nf * nf)) {
        return sign_n * hankel_asymptotic(T::lit(nf), x);
    }
    sign_n * miller(n, x)
}

fn miller<T: Scalar>(n: usize, x: T) -> T {
    let xf = x.as_f64();
    let top = (xf.max(n as f64) + 30.0 + (40.0 * (n as f64 + 1.0)).sqrt()).ceil() as usize;
    let start = top + top % 2;
    let two_over_x = T::lit(2.0) / x;
    let big = T::max_value().sqrt();
    let (mut jp, mut j) = (T::zero(), big.recip());
    let mut norm = T::zero();
    let mut wanted = T::zero();
    for k in (1..=start).rev() {
        let jm = T::from_usize_lossy(k) * two_over_x * j - jp;
        jp = j;
        j = jm;
        if j.abs() > big {
            j /= big;
            jp /= big;
            norm /= big;
            wanted /= big;
        }
        let idx = k - 1;
        if idx == n {
            wanted = j;
        }
        if idx % 2 == 0 && idx > 0 {
            norm += T::lit(2.0) * j;
        }
    }
    norm += j;
    wanted / norm
}

/// `J_nu(x) ~ sqrt(2/(pi x)) (P cos chi - Q sin chi)`, summed until the
/// terms stop decreasing.
fn hankel_asymptotic<T: Scalar>(nu: T, x: T) -> T {
    let mu = T::lit(4.0) * nu * nu;
    let eight_x = T::lit(8.0) * x;
    let (mut p, mut q) = (T::one(), T::zero());
    let mut term = T::one();
    let mut prev = T::infinity();
    for k in 1..80usize {
        let odd = T::from_usize_lossy(2 * k - 1);
        term = term * (mu - odd * odd) / (T::from_usize_lossy(k) * eight_x);
        if term.abs() >= prev || term.abs() < T::epsilon() * T::lit(1e-3) {
            break;
        }
        prev = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    let chi = x - (nu / T::lit(2.0) + T::lit(0.25)) * T::PI();
    (T::lit(2.0) / (T::PI() * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Half-integer order `nu = twice_nu / 2` through spherical Bessel functions.
fn bessel_j_half<T: Scalar>(twice_nu: i32, x: T) -> T {
    if x < T::zero() {
        // only needed on the non-negative half line
        return T::nan();
    }
    if twice_nu == -1 {
        if x == T::zero() {
            return T::infinity();
        }
        return (T::lit(2.0) / (T::PI() * x)).sqrt() * x.cos();
    }
    if x == T::zero() {
        return T::zero();
    }
    let n = ((twice_nu - 1) / 2) as usize;
    (T::lit(2.0) * x / T::PI()).sqrt() * spherical_j(n, x)
}

/// Spherical Bessel `j_n(x)`, `x > 0`.
fn spherical_j<T: Scalar>(n: usize, x: T) -> T {
    if x < T::lit((n as f64 + 1.0).max(2.0)) {
        // power series: x^n / (2n+1)!! * sum_k (-x^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
        let mut lead = T::one();
        for i in 0..n {
            lead = lead * x / T::from_usize_lossy(2 * i + 3);
        }
        let h = -x * x / T::lit(2.0);
        let (mut sum, mut term) = (T::one(), T::one());
        for k in 1..60usize {
            term = term * h / (T::from_usize_lossy(k) * T::from_usize_lossy(2 * n + 2 * k + 1));
            sum += term;
            if term.abs() < T::epsilon() * sum.abs() * T::lit(1e-2) {
                break;
            }
        }
        return lead * sum;
    }
    let (s, c) = (x.sin(), x.cos());
    let mut jm = s / x;
    if n == 0 {
        return jm;
    }
    let mut j = s / (x * x) - c / x;
    for k in 1..n {
        let next = T::from_usize_lossy(2 * k + 1) / x * j - jm;
        jm = j;
        j = next;
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Trapezoid rule on the periodic integral representation
    /// `J_n(x) = (1/pi) int_0^pi cos(n tau - x sin tau) dtau`, exponentially
    /// convergent once the node count exceeds |x| + n.
    fn integral_oracle(n: i32, x: f64) -> f64 {
        let pts = (x.abs() as usize + n.unsigned_abs() as usize + 60) * 2;
        let h = 2.0 * PI / pts as f64;
        (0..pts)
            .map(|i| {
                let tau = i as f64 * h;
                (n as f64 * tau - x * tau.sin()).cos()
            })
            .sum::<f64>()
            / pts as f64
    }

    #[test]
    fn integer_orders_match_integral_representation() {
        for n in 0..5 {
            for i in 0..400 {
                let x = 0.013 + i as f64 * 0.37;
                let got = bessel_j_int::<f64>(n, x);
                let want = integral_oracle(n, x);
                assert!((got - want).abs() < 2e-14, "J_{n}({x}) = {got} vs {want}");
            }
        }
    }

    #[test]
    fn known_values() {
        assert!((bessel_j::<f64>(0, 1.0) - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j::<f64>(2, 2.404_825_557_695_773) - 0.519_147_497_289_466_1).abs() < 1e-14);
        assert!(bessel_j::<f64>(0, 2.404_825_557_695_773).abs() < 1e-15);
    }

    #[test]
    fn half_integer_orders_closed_forms() {
        for i in 1..300 {
            let x = i as f64 * 0.11;
            let pref = (2.0 / (PI * x)).sqrt();
            let j12 = pref * x.sin();
            let j32 = pref * (x.sin() / x - x.cos());
            let j52 = pref * ((3.0 / (x * x) - 1.0) * x.sin() - 3.0 * x.cos() / x);
            assert!((bessel_j::<f64>(1, x) - j12).abs() < 1e-14);
            assert!((bessel_j::<f64>(3, x) - j32).abs() < 1e-12 * (1.0 + 1.0 / x));
            assert!((bessel_j::<f64>(5, x) - j52).abs() < 1e-11 * (1.0 + 1.0 / (x * x * x)));
            assert!((bessel_j::<f64>(-1, x) - pref * x.cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn negative_arguments_and_orders() {
        assert!((bessel_j_int::<f64>(1, -2.0) + bessel_j_int::<f64>(1, 2.0)).abs() < 1e-16);
        assert!((bessel_j_int::<f64>(-1, 2.0) + bessel_j_int::<f64>(1, 2.0)).abs() < 1e-16);
    }

    #[test]
    fn sphere_measures() {
        assert!((sphere_area::<f64>(1) - 2.0).abs() < 1e-15);
        assert!((sphere_area::<f64>(2) - 2.0 * PI).abs() < 1e-15);
        assert!((sphere_area::<f64>(3) - 4.0 * PI).abs() < 1e-14);
        assert!((ball_volume::<f64>(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((gamma_half::<f64>(5) - 0.75 * PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn single_precision_is_usable() {
        assert!((bessel_j::<f32>(0, 1.0) - 0.765_197_7).abs() < 1e-6);
    }
}
