use crate::clifford::MAX_DIM;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Uniform tensor grid: node `i` sits at `origin + i * spacing`
/// (componentwise), nodes stored row-major (last axis fastest).
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec<S> {
    origin: Vec<S>,
    spacing: Vec<S>,
    shape: Vec<usize>,
}

impl<S: Scalar> GridSpec<S> {
    pub fn new(origin: Vec<S>, spacing: Vec<S>, shape: Vec<usize>) -> Result<Self> {
        let m = shape.len();
        if m == 0 || m > MAX_DIM {
            return Err(Error::UnsupportedDimension(m));
        }
        if origin.len() != m || spacing.len() != m {
            return Err(Error::InvalidInput(format!(
                "grid needs {m} origin and spacing entries, got {} and {}",
                origin.len(),
                spacing.len()
            )));
        }
        if shape.iter().any(|&n| n == 0) {
            return Err(Error::InvalidInput("grid shape entries must be positive".into()));
        }
        if spacing.iter().any(|&h| !(h > S::zero()) || !h.is_finite()) {
            return Err(Error::InvalidInput("grid spacing must be positive and finite".into()));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::InvalidInput("grid origin must be finite".into()));
        }
        Ok(Self { origin, spacing, shape })
    }

    /// `n` nodes per axis with spacing `h`, symmetric about the origin.
    /// For even `n` no node lies on a coordinate hyperplane.
    pub fn centered(m: usize, n: usize, h: S) -> Result<Self> {
        let o = -h * S::from_usize_lossy(n.saturating_sub(1)) / S::lit(2.0);
        Self::new(vec![o; m], vec![h; m], vec![n; m])
    }

    pub fn m(&self) -> usize {
        self.shape.len()
    }

    pub fn origin(&self) -> &[S] {
        &self.origin
    }

    pub fn spacing(&self) -> &[S] {
        &self.spacing
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> S {
        self.spacing.iter().fold(S::one(), |acc, &h| acc * h)
    }

    /// Multi-index of flat node `i`.
    pub fn multi_index(&self, mut i: usize, out: &mut [usize]) {
        for j in (0..self.m()).rev() {
            out[j] = i % self.shape[j];
            i /= self.shape[j];
        }
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    /// Coordinates of flat node `i`.
    pub fn node(&self, mut i: usize, out: &mut [S]) {
        for j in (0..self.m()).rev() {
            let n = self.shape[j];
            out[j] = self.origin[j] + S::from_usize_lossy(i % n) * self.spacing[j];
            i /= n;
        }
    }

    pub fn node_vec(&self, i: usize) -> Vec<S> {
        let mut x = vec![S::zero(); self.m()];
        self.node(i, &mut x);
        x
    }

    /// Whether flat node `i` lies on the outer face of the box.
    pub fn on_boundary(&self, mut i: usize) -> bool {
        for j in (0..self.m()).rev() {
            let n = self.shape[j];
            let k = i % n;
            if k == 0 || k + 1 == n {
                return true;
            }
            i /= n;
        }
        false
    }

    /// Same nodes up to a relative tolerance on origin and spacing.
    pub fn matches(&self, other: &Self) -> bool {
        if self.shape != other.shape {
            return false;
        }
        let tol = S::lit(1e-9);
        self.spacing.iter().zip(&other.spacing).all(|(&a, &b)| (a - b).abs() <= tol * a)
            && self
                .origin
                .iter()
                .zip(&other.origin)
                .zip(&self.spacing)
                .all(|((&a, &b), &h)| (a - b).abs() <= tol * h)
    }

    pub fn ensure_matches(&self, other: &Self) -> Result<()> {
        if self.matches(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "grids differ: shape {:?} vs {:?}",
                self.shape, other.shape
            )))
        }
    }

    /// Integer offset `(other.origin - self.origin) / spacing` per axis when
    /// both grids share spacing and their lattices coincide.
    pub fn lattice_offset(&self, other: &Self) -> Result<Vec<i64>> {
        if self.m() != other.m() {
            return Err(Error::IncompatibleLattice("dimension differs".into()));
        }
        let tol = S::lit(1e-9);
        let mut out = Vec::with_capacity(self.m());
        for j in 0..self.m() {
            let h = self.spacing[j];
            if (h - other.spacing[j]).abs() > tol * h {
                return Err(Error::IncompatibleLattice(format!("spacing differs on axis {j}")));
            }
            let k = (other.origin[j] - self.origin[j]) / h;
            let r = k.round();
            if (k - r).abs() > S::lit(1e-6) {
                return Err(Error::IncompatibleLattice(format!(
                    "origins differ by a non-integer number of cells on axis {j}"
                )));
            }
            out.push(r.to_i64().expect("finite offset"));
        }
        Ok(out)
    }

    pub fn to_f64(&self) -> GridSpec<f64> {
        GridSpec {
            origin: self.origin.iter().map(|v| v.as_f64()).collect(),
            spacing: self.spacing.iter().map(|v| v.as_f64()).collect(),
            shape: self.shape.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_row_major() {
        let g = GridSpec::new(vec![1.0, -2.0], vec![0.5, 2.0], vec![3, 4]).unwrap();
        assert_eq!(g.len(), 12);
        assert_eq!(g.cell_volume(), 1.0);
        assert_eq!(g.node_vec(0), vec![1.0, -2.0]);
        assert_eq!(g.node_vec(1), vec![1.0, 0.0]);
        assert_eq!(g.node_vec(5), vec![1.5, 0.0]);
        let mut idx = [0; 2];
        g.multi_index(7, &mut idx);
        assert_eq!(idx, [1, 3]);
        assert_eq!(g.flat_index(&idx), 7);
        assert!(g.on_boundary(0) && g.on_boundary(7) && !g.on_boundary(5));
    }

    #[test]
    fn centered_grid_is_symmetric() {
        let g = GridSpec::<f64>::centered(2, 4, 1.0).unwrap();
        assert_eq!(g.node_vec(0), vec![-1.5, -1.5]);
        assert_eq!(g.node_vec(15), vec![1.5, 1.5]);
    }

    #[test]
    fn validation() {
        assert!(GridSpec::new(vec![0.0], vec![0.0], vec![3]).is_err());
        assert!(GridSpec::new(vec![0.0], vec![1.0], vec![0]).is_err());
        assert!(GridSpec::<f64>::new(vec![], vec![], vec![]).is_err());
        assert!(GridSpec::new(vec![0.0, 0.0], vec![1.0], vec![2, 2]).is_err());
    }

    #[test]
    fn lattice_offsets() {
        let a = GridSpec::new(vec![0.5, 0.5], vec![1.0, 1.0], vec![8, 8]).unwrap();
        let b = GridSpec::new(vec![2.5, -1.5], vec![1.0, 1.0], vec![3, 3]).unwrap();
        assert_eq!(a.lattice_offset(&b).unwrap(), vec![2, -2]);
        let c = GridSpec::new(vec![0.0, 0.5], vec![1.0, 1.0], vec![3, 3]).unwrap();
        assert!(matches!(a.lattice_offset(&c), Err(Error::IncompatibleLattice(_))));
    }
}
