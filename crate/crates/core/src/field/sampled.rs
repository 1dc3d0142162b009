use std::fmt::Write as _;

use rayon::prelude::*;

use crate::clifford::{blade_order, BladeIndex, Multivector, ProductTable, Signature};
use crate::error::{Error, Result};
use crate::field::grid::GridSpec;
use crate::radial::{CliffordRadialFunction, RadialProfile};
use crate::reduce;
use crate::scalar::{Coefficient, Scalar};

/// Multivector-valued samples on a [`GridSpec`], stored component-major:
/// `data[blade_mask * nodes + node]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledField<S> {
    grid: GridSpec<S>,
    data: Vec<S>,
}

impl<S: Scalar> SampledField<S> {
    pub fn zeros(grid: GridSpec<S>) -> Self {
        let n = grid.len() << grid.m();
        Self { grid, data: vec![S::zero(); n] }
    }

    pub fn from_components(grid: GridSpec<S>, data: Vec<S>) -> Result<Self> {
        if data.len() != grid.len() << grid.m() {
            return Err(Error::InvalidInput(format!(
                "expected {} samples, got {}",
                grid.len() << grid.m(),
                data.len()
            )));
        }
        Ok(Self { grid, data })
    }

    /// Evaluates `f(x, out)` at every node; `out` has `2^m` zeroed slots
    /// indexed by blade mask.
    pub fn from_fn(grid: GridSpec<S>, f: impl Fn(&[S], &mut [S]) + Sync) -> Self {
        let m = grid.m();
        let dim = 1usize << m;
        let nodes = grid.len();
        let mut node_major = vec![S::zero(); nodes * dim];
        node_major.par_chunks_mut(dim).enumerate().for_each(|(i, out)| {
            let mut x = vec![S::zero(); m];
            grid.node(i, &mut x);
            f(&x, out);
        });
        let mut data = vec![S::zero(); nodes * dim];
        data.par_chunks_mut(nodes).enumerate().for_each(|(c, comp)| {
            for (i, v) in comp.iter_mut().enumerate() {
                *v = node_major[i * dim + c];
            }
        });
        Self { grid, data }
    }

    /// Samples a radial function; fails on the first singular node.
    pub fn sample<C: Coefficient>(f: &CliffordRadialFunction<C>, grid: GridSpec<S>) -> Result<Self> {
        if f.m() != grid.m() {
            return Err(Error::SignatureMismatch { left: f.m(), right: grid.m() });
        }
        Self::sample_profile(&f.profile(), grid)
    }

    pub fn sample_profile(p: &RadialProfile<S>, grid: GridSpec<S>) -> Result<Self> {
        let field = Self::from_fn(grid, |x, out| p.write(x, out));
        if let Some(i) = field.first_non_finite() {
            let x = field.grid.node_vec(i);
            return Err(Error::Pole {
                context: format!("sample at node {i} ({x:?}) is not finite"),
            });
        }
        Ok(field)
    }

    fn first_non_finite(&self) -> Option<usize> {
        let n = self.nodes();
        self.data.iter().position(|v| !v.is_finite()).map(|k| k % n)
    }

    pub fn grid(&self) -> &GridSpec<S> {
        &self.grid
    }

    pub fn m(&self) -> usize {
        self.grid.m()
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.m()).expect("grid dimension validated")
    }

    pub fn nodes(&self) -> usize {
        self.grid.len()
    }

    pub fn components(&self) -> usize {
        1 << self.m()
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    pub fn component(&self, mask: usize) -> &[S] {
        let n = self.nodes();
        &self.data[mask * n..(mask + 1) * n]
    }

    pub fn component_mut(&mut self, mask: usize) -> &mut [S] {
        let n = self.nodes();
        &mut self.data[mask * n..(mask + 1) * n]
    }

    pub fn value(&self, node: usize) -> Multivector<S> {
        let n = self.nodes();
        let coeffs = (0..self.components()).map(|c| self.data[c * n + node]).collect();
        Multivector::from_coeffs(self.signature(), coeffs).expect("component count")
    }

    pub fn set_value(&mut self, node: usize, v: &Multivector<S>) {
        let n = self.nodes();
        for (c, &x) in v.coeffs().iter().enumerate() {
            self.data[c * n + node] = x;
        }
    }

    pub fn scale(&self, s: S) -> Self {
        Self { grid: self.grid.clone(), data: self.data.iter().map(|&v| v * s).collect() }
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: S, other: &Self) -> Result<Self> {
        self.grid.ensure_matches(&other.grid)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + s * b).collect();
        Ok(Self { grid: self.grid.clone(), data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(S::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(-S::one(), other)
    }

    /// Keeps nodes where `keep[node]` holds and zeroes the rest.
    pub fn masked(&self, keep: &[bool]) -> Self {
        let n = self.nodes();
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(k, &v)| if keep[k % n] { v } else { S::zero() })
            .collect();
        Self { grid: self.grid.clone(), data }
    }

    /// `keep[node] = pred(x_node)`.
    pub fn node_mask(&self, pred: impl Fn(&[S]) -> bool + Sync) -> Vec<bool> {
        let m = self.m();
        (0..self.nodes())
            .into_par_iter()
            .map(|i| {
                let mut x = vec![S::zero(); m];
                self.grid.node(i, &mut x);
                pred(&x)
            })
            .collect()
    }

    /// `‖f‖_2^2`: scalar part of `∫ f† f dV`, i.e. the sum of squared
    /// coefficients, by the midpoint rule.
    pub fn norm_sqr(&self) -> S {
        reduce::sum_by(self.data.len(), |k| self.data[k] * self.data[k]) * self.grid.cell_volume()
    }

    pub fn norm(&self) -> S {
        self.norm_sqr().sqrt()
    }

    /// Squared norm over the nodes with `keep[node] == inside`.
    pub fn restricted_norm_sqr(&self, keep: &[bool], inside: bool) -> S {
        let n = self.nodes();
        reduce::sum_by(self.data.len(), |k| {
            if keep[k % n] == inside {
                self.data[k] * self.data[k]
            } else {
                S::zero()
            }
        }) * self.grid.cell_volume()
    }

    pub fn max_abs(&self) -> S {
        self.data.iter().fold(S::zero(), |acc, v| acc.max(v.abs()))
    }

    /// Largest pointwise coefficient magnitude `|f(x)|` on the outer face.
    pub fn boundary_max(&self) -> S {
        let n = self.nodes();
        (0..n)
            .filter(|&i| self.grid.on_boundary(i))
            .map(|i| (0..self.components()).fold(S::zero(), |acc, c| acc + self.data[c * n + i].powi(2)).sqrt())
            .fold(S::zero(), S::max)
    }

    /// `∫ f(x)† g(x) dV` by the midpoint rule. Each of the `4^m` component
    /// products is reduced separately and recombined with the blade signs.
    pub fn inner_product(&self, other: &Self) -> Result<Multivector<S>> {
        self.grid.ensure_matches(&other.grid)?;
        let dim = self.components();
        let table = ProductTable::for_dim(self.m());
        let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|a| (0..dim).map(move |b| (a, b))).collect();
        let dots: Vec<S> = pairs
            .iter()
            .map(|&(a, b)| reduce::dot(self.component(a), other.component(b)))
            .collect();
        let mut out = vec![S::zero(); dim];
        for (&(a, b), &d) in pairs.iter().zip(&dots) {
            let mut neg = table.is_negative(a, b);
            if BladeIndex(a as u32).conjugate_flips() {
                neg = !neg;
            }
            if neg {
                out[a ^ b] -= d;
            } else {
                out[a ^ b] += d;
            }
        }
        let dv = self.grid.cell_volume();
        Multivector::from_coeffs(self.signature(), out.into_iter().map(|v| v * dv).collect())
    }

    /// Text form: header lines then one row per node, coefficient columns in
    /// (grade, mask) order, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let g = &self.grid;
        let mut s = String::new();
        writeln!(s, "m={}", g.m()).unwrap();
        writeln!(s, "shape={}", join(g.shape().iter().map(|v| v.to_string()))).unwrap();
        writeln!(s, "origin={}", join(g.origin().iter().map(|v| fmt_num(*v)))).unwrap();
        writeln!(s, "spacing={}", join(g.spacing().iter().map(|v| fmt_num(*v)))).unwrap();
        writeln!(s, "components={}", self.components()).unwrap();
        let order = blade_order(g.m());
        let n = self.nodes();
        for i in 0..n {
            let row = join(order.iter().map(|b| fmt_num(self.data[b.mask() * n + i])));
            s.push_str(&row);
            s.push('\n');
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let m: usize = header(lines.next(), "m")?
            .parse()
            .map_err(|_| Error::Parse("bad m".into()))?;
        let shape: Vec<usize> = parse_list(&header(lines.next(), "shape")?)?;
        let origin: Vec<S> = parse_list(&header(lines.next(), "origin")?)?;
        let spacing: Vec<S> = parse_list(&header(lines.next(), "spacing")?)?;
        let comps: usize = header(lines.next(), "components")?
            .parse()
            .map_err(|_| Error::Parse("bad components".into()))?;
        if shape.len() != m || comps != 1usize.checked_shl(m as u32).unwrap_or(0) {
            return Err(Error::Parse(format!("header inconsistent with m={m}")));
        }
        let grid = GridSpec::new(origin, spacing, shape).map_err(|e| Error::Parse(e.to_string()))?;
        let order = blade_order(m);
        let n = grid.len();
        let mut data = vec![S::zero(); n * comps];
        let mut count = 0;
        for (i, line) in lines.enumerate() {
            if i >= n {
                return Err(Error::Parse(format!("more than {n} data rows")));
            }
            let vals: Vec<S> = parse_list(line)?;
            if vals.len() != comps {
                return Err(Error::Parse(format!("row {i} has {} columns, expected {comps}", vals.len())));
            }
            for (b, v) in order.iter().zip(vals) {
                data[b.mask() * n + i] = v;
            }
            count += 1;
        }
        if count != n {
            return Err(Error::Parse(format!("expected {n} data rows, found {count}")));
        }
        Ok(Self { grid, data })
    }

    pub fn to_f64(&self) -> SampledField<f64> {
        SampledField { grid: self.grid.to_f64(), data: self.data.iter().map(|v| v.as_f64()).collect() }
    }
}

pub(crate) fn fmt_num<S: Scalar>(v: S) -> String {
    format!("{v:.16e}")
}

pub(crate) fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(",")
}

pub(crate) fn header(line: Option<&str>, key: &str) -> Result<String> {
    let line = line.ok_or_else(|| Error::Parse(format!("missing `{key}=` header")))?;
    line.trim()
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .map(|r| r.trim().to_string())
        .ok_or_else(|| Error::Parse(format!("expected `{key}=`, found `{line}`")))
}

pub(crate) fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|v| v.trim().parse().map_err(|_| Error::Parse(format!("bad number `{}`", v.trim()))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_field(grid: &GridSpec<f64>, seed: u64) -> SampledField<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = grid.len() << grid.m();
        SampledField::from_components(grid.clone(), (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
    }

    #[test]
    fn constant_and_odd_fields() {
        let grid = GridSpec::centered(2, 6, 0.5).unwrap();
        let one = CliffordRadialFunction::<f64>::constant(2, 1.0).unwrap();
        let f = SampledField::sample(&one, grid.clone()).unwrap();
        assert!((0..f.nodes()).all(|i| f.value(i) == Multivector::one(Signature::new(2).unwrap())));
        let x = CliffordRadialFunction::<f64>::vector(2).unwrap();
        let f = SampledField::sample(&x, grid).unwrap();
        for c in 0..4 {
            let s: f64 = f.component(c).iter().sum();
            assert!(s.abs() < 1e-12);
        }
    }

    #[test]
    fn pole_nodes_are_rejected() {
        let grid = GridSpec::new(vec![0.0, 0.0], vec![1.0, 1.0], vec![3, 3]).unwrap();
        let w = CliffordRadialFunction::<f64>::weight(2, -1, 0).unwrap();
        let err = SampledField::sample(&w, grid).unwrap_err();
        assert!(matches!(err, Error::Pole { ref context } if context.contains("node 1")), "{err}");
    }

    #[test]
    fn inner_product_blade_bookkeeping() {
        // one node: <e1 phi, e2 phi> = phi^2 conj(e1) e2 = -e12 phi^2
        let grid = GridSpec::new(vec![0.0, 0.0], vec![1.0, 1.0], vec![1, 1]).unwrap();
        let mut f = SampledField::zeros(grid.clone());
        let mut g = SampledField::zeros(grid);
        f.component_mut(1)[0] = 3.0;
        g.component_mut(2)[0] = 3.0;
        let ip = f.inner_product(&g).unwrap();
        assert_eq!(ip.scalar_part(), 0.0);
        assert_eq!(*ip.coeff(BladeIndex(3)), -9.0);
    }

    #[test]
    fn inner_product_matches_pointwise_products() {
        let grid = GridSpec::centered(3, 3, 0.7).unwrap();
        let f = random_field(&grid, 1);
        let g = random_field(&grid, 2);
        let ip = f.inner_product(&g).unwrap();
        let mut direct = Multivector::zero(f.signature());
        for i in 0..f.nodes() {
            direct = direct + f.value(i).conjugate() * g.value(i);
        }
        let direct = direct.scale(&grid.cell_volume());
        assert!(ip.relative_distance(&direct) < 1e-13);
        // scalar part is the plain coefficient dot product
        let plain: f64 = f.data().iter().zip(g.data()).map(|(a, b)| a * b).sum::<f64>() * grid.cell_volume();
        assert!((ip.scalar_part() - plain).abs() < 1e-12);
        let ff = f.inner_product(&f).unwrap();
        assert!((ff.scalar_part() - f.norm_sqr()).abs() < 1e-12 * f.norm_sqr());
    }

    #[test]
    fn inner_product_is_linear_in_second_argument() {
        let grid = GridSpec::centered(2, 8, 0.3).unwrap();
        let (f, g, h) = (random_field(&grid, 3), random_field(&grid, 4), random_field(&grid, 5));
        let lhs = f.inner_product(&g.axpy(-2.5, &h).unwrap()).unwrap();
        let rhs = f.inner_product(&g).unwrap() - f.inner_product(&h).unwrap().scale(&2.5);
        assert!(lhs.relative_distance(&rhs) < 1e-12);
        let other = GridSpec::centered(2, 7, 0.3).unwrap();
        assert!(matches!(f.inner_product(&random_field(&other, 6)), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn restricted_norms_partition() {
        let grid = GridSpec::centered(2, 10, 0.4).unwrap();
        let f = random_field(&grid, 7);
        let keep = f.node_mask(|x| x[0] * x[0] + x[1] < 0.8);
        let inside = f.restricted_norm_sqr(&keep, true);
        let outside = f.restricted_norm_sqr(&keep, false);
        assert!((inside + outside - f.norm_sqr()).abs() <= 1e-12 * f.norm_sqr());
        assert_eq!(f.masked(&keep).norm_sqr(), inside);
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let grid = GridSpec::new(vec![-0.1, 1.0 / 3.0], vec![0.1, 1e-7], vec![3, 2]).unwrap();
        let mut f = random_field(&grid, 8);
        f.component_mut(3)[1] = -0.0;
        f.component_mut(0)[2] = 1e300;
        f.component_mut(1)[4] = f64::MIN_POSITIVE;
        let text = f.to_csv();
        let back = SampledField::<f64>::from_csv(&text).unwrap();
        assert_eq!(back.grid(), f.grid());
        for (a, b) in back.data().iter().zip(f.data()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(back.to_csv(), text);
        assert!(SampledField::<f64>::from_csv("m=2\nshape=1,1\n").is_err());
        let truncated: String = text.lines().take(7).collect::<Vec<_>>().join("\n");
        assert!(SampledField::<f64>::from_csv(&truncated).is_err());
    }
}
