use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Geometric scale grid. Each scale stands for a cell of width `log_step` in
/// `ln a`, so `da / a^{m+1}` becomes `log_step / a^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleGrid<S> {
    pub(crate) values: Vec<S>,
    pub(crate) log_step: S,
}

impl<S: Scalar> ScaleGrid<S> {
    /// `n >= 2` scales from `a_min` to `a_max` inclusive.
    pub fn geometric(a_min: S, a_max: S, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("a scale grid needs at least two scales".into()));
        }
        if !(a_min > S::zero()) || !(a_max > a_min) || !a_max.is_finite() {
            return Err(Error::InvalidInput("scales need 0 < a_min < a_max".into()));
        }
        let log_step = (a_max / a_min).ln() / S::from_usize_lossy(n - 1);
        Self::from_log_step(a_min, log_step, n)
    }

    /// `a_min * exp(i * log_step)` for `i < n`.
    pub fn from_log_step(a_min: S, log_step: S, n: usize) -> Result<Self> {
        if n == 0 || !(a_min > S::zero()) || !(log_step > S::zero()) {
            return Err(Error::InvalidInput("scales need a_min > 0, a positive log step and n > 0".into()));
        }
        let values = (0..n).map(|i| a_min * (log_step * S::from_usize_lossy(i)).exp()).collect();
        Ok(Self { values, log_step })
    }

    /// Takes explicit scales; they must be increasing with a constant ratio.
    pub fn from_values(values: Vec<S>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput("a scale grid needs at least two scales".into()));
        }
        if values[0] <= S::zero() {
            return Err(Error::InvalidInput("scales must be positive".into()));
        }
        let log_step = (values[1] / values[0]).ln();
        if !(log_step > S::zero()) {
            return Err(Error::InvalidInput("scales must increase".into()));
        }
        for w in values.windows(2) {
            let step = (w[1] / w[0]).ln();
            if (step - log_step).abs() > S::lit(1e-9) * log_step {
                return Err(Error::InvalidInput("scales must be geometrically spaced".into()));
            }
        }
        Ok(Self { values, log_step })
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn log_step(&self) -> S {
        self.log_step
    }

    pub fn min(&self) -> S {
        self.values[0]
    }

    pub fn max(&self) -> S {
        self.values[self.values.len() - 1]
    }

    /// Measure weight `log_step / a_i^m` of scale cell `i`.
    pub fn weight(&self, i: usize, m: usize) -> S {
        self.log_step / self.values[i].powi(m as i32)
    }

    /// Edges `a_i exp(-+log_step/2)` of scale cell `i`.
    pub fn cell(&self, i: usize) -> (S, S) {
        let h = (self.log_step / S::lit(2.0)).exp();
        (self.values[i] / h, self.values[i] * h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_spacing() {
        let s = ScaleGrid::<f64>::geometric(2.0, 32.0, 5).unwrap();
        for (got, want) in s.values().iter().zip([2.0f64, 4.0, 8.0, 16.0, 32.0]) {
            assert!((got - want).abs() < 1e-12 * want);
        }
        assert!((s.log_step() - 2f64.ln()).abs() < 1e-15);
        assert!((s.weight(1, 2) - 2f64.ln() / 16.0).abs() < 1e-15);
        let (lo, hi) = s.cell(0);
        assert!((hi / lo - 2.0).abs() < 1e-12);
        assert_eq!(ScaleGrid::from_values(s.values().to_vec()).unwrap().len(), 5);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(ScaleGrid::geometric(0.0, 1.0, 4).is_err());
        assert!(ScaleGrid::geometric(2.0, 1.0, 4).is_err());
        assert!(ScaleGrid::geometric(1.0, 2.0, 1).is_err());
        assert!(ScaleGrid::from_values(vec![1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn log_measure_sums_to_analytic_value() {
        // sum_i w_i ≈ ∫ da / a^{m+1} over the covered range, m = 2
        let s = ScaleGrid::geometric(1.0, 8.0, 200).unwrap();
        let approx: f64 = (0..s.len()).map(|i| s.weight(i, 2)).sum();
        let (lo, _) = s.cell(0);
        let (_, hi) = s.cell(s.len() - 1);
        let exact = (lo.powi(-2) - hi.powi(-2)) / 2.0;
        assert!((approx - exact).abs() < 1e-4 * exact);
    }
}
