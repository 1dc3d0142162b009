use std::fmt;
use std::str::FromStr;

use crate::clifford::{blade_order, Multivector, Signature};
use crate::cwt::scales::ScaleGrid;
use crate::error::{Error, Result};
use crate::field::GridSpec;
use crate::reduce;
use crate::scalar::Scalar;

/// Operand order of the analysing product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Convention {
    /// `T(a, b) = ∫ conj(psi_{a,b}) f dV`, inverted with `psi_{a,b} T`.
    #[default]
    ConjugateLeft,
    /// `T(a, b) = ∫ f psi_{a,b} dV`, inverted with `T conj(psi_{a,b})`.
    ProductRight,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::ConjugateLeft => "conjugate-left",
            Convention::ProductRight => "product-right",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "conjugate-left" => Ok(Convention::ConjugateLeft),
            "product-right" => Ok(Convention::ProductRight),
            other => Err(Error::Parse(format!("unknown convention `{other}`"))),
        }
    }
}

/// Wavelet coefficients on a scale x (angle) x translation grid. Layout:
/// `data[((scale * n_angles + angle) * 2^m + blade) * n_b + node]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientField<S> {
    scales: ScaleGrid<S>,
    grid: GridSpec<S>,
    angles: Option<Vec<S>>,
    convention: Convention,
    data: Vec<S>,
}

impl<S: Scalar> CoefficientField<S> {
    pub fn zeros(scales: ScaleGrid<S>, grid: GridSpec<S>, angles: Option<Vec<S>>, convention: Convention) -> Self {
        let n_angles = angles.as_ref().map_or(1, |a| a.len());
        let len = scales.len() * n_angles * (grid.len() << grid.m());
        Self { scales, grid, angles, convention, data: vec![S::zero(); len] }
    }

    pub fn scales(&self) -> &ScaleGrid<S> {
        &self.scales
    }

    pub fn grid(&self) -> &GridSpec<S> {
        &self.grid
    }

    pub fn angles(&self) -> Option<&[S]> {
        self.angles.as_deref()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn m(&self) -> usize {
        self.grid.m()
    }

    pub fn n_angles(&self) -> usize {
        self.angles.as_ref().map_or(1, |a| a.len())
    }

    /// Number of `(scale, angle)` slices.
    pub fn slices(&self) -> usize {
        self.scales.len() * self.n_angles()
    }

    fn slice_len(&self) -> usize {
        self.grid.len() << self.m()
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [S] {
        &mut self.data
    }

    /// Component-major block for one `(scale, angle)` pair.
    pub fn slice(&self, scale: usize, angle: usize) -> &[S] {
        let len = self.slice_len();
        let k = scale * self.n_angles() + angle;
        &self.data[k * len..(k + 1) * len]
    }

    pub fn slice_mut(&mut self, scale: usize, angle: usize) -> &mut [S] {
        let len = self.slice_len();
        let k = scale * self.n_angles() + angle;
        &mut self.data[k * len..(k + 1) * len]
    }

    pub fn value(&self, scale: usize, angle: usize, node: usize) -> Multivector<S> {
        let n = self.grid.len();
        let s = self.slice(scale, angle);
        let coeffs = (0..1usize << self.m()).map(|c| s[c * n + node]).collect();
        Multivector::from_coeffs(Signature::new(self.m()).expect("valid"), coeffs).expect("length")
    }

    /// Measure of one `(scale, angle, node)` cell under
    /// `da dV(b) / a^{m+1}` with the angle axis averaged.
    pub fn cell_measure(&self, scale: usize) -> S {
        self.scales.weight(scale, self.m()) * self.grid.cell_volume() / S::from_usize_lossy(self.n_angles())
    }

    /// `∫∫ |T|^2 da dV(b) / a^{m+1}` restricted by `keep(scale, node)`.
    pub fn energy_where(&self, keep: impl Fn(usize, usize) -> bool + Sync) -> S {
        let n = self.grid.len();
        let dim = 1usize << self.m();
        let per_slice: Vec<S> = (0..self.slices())
            .map(|k| {
                let scale = k / self.n_angles();
                let s = &self.data[k * n * dim..(k + 1) * n * dim];
                let e = reduce::sum_by(s.len(), |i| if keep(scale, i % n) { s[i] * s[i] } else { S::zero() });
                e * self.cell_measure(scale)
            })
            .collect();
        reduce::pairwise(&per_slice)
    }

    pub fn energy(&self) -> S {
        self.energy_where(|_, _| true)
    }

    /// Scalar part of `∫∫ conj(T) U da dV(b) / a^{m+1}`.
    pub fn inner_scalar(&self, other: &Self) -> Result<S> {
        if self.scales != other.scales || !self.grid.matches(&other.grid) || self.angles != other.angles {
            return Err(Error::GridMismatch("coefficient layouts differ".into()));
        }
        let len = self.slice_len();
        let per_slice: Vec<S> = (0..self.slices())
            .map(|k| {
                let (a, b) = (&self.data[k * len..(k + 1) * len], &other.data[k * len..(k + 1) * len]);
                reduce::dot(a, b) * self.cell_measure(k / self.n_angles())
            })
            .collect();
        Ok(reduce::pairwise(&per_slice))
    }

    /// Energy of each scale (angles summed), in scale order.
    pub fn scale_energies(&self) -> Vec<S> {
        (0..self.scales.len())
            .map(|i| self.energy_where(|s, _| s == i))
            .collect()
    }

    /// Zeroes the coefficients where `keep(scale, node)` is false.
    pub fn masked(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        let mut out = self.clone();
        let n = self.grid.len();
        let len = self.slice_len();
        for (k, chunk) in out.data.chunks_mut(len).enumerate() {
            let scale = k / self.n_angles();
            for (i, v) in chunk.iter_mut().enumerate() {
                if !keep(scale, i % n) {
                    *v = S::zero();
                }
            }
        }
        out
    }

    pub fn scaled(&self, c: S) -> Self {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v *= c;
        }
        out
    }

    /// `self + c other` on identical layouts.
    pub fn axpy(&self, c: S, other: &Self) -> Result<Self> {
        if self.scales != other.scales || !self.grid.matches(&other.grid) || self.angles != other.angles {
            return Err(Error::GridMismatch("coefficient layouts differ".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += c * *b;
        }
        Ok(out)
    }

    /// Header lines (`m`, `n_a`, `scales`, `log_step`, translation grid,
    /// `components`, `convention`, optional `angles`) followed by rows
    /// `scale_index[,angle_index],node_index,coefficients...`.
    pub fn to_csv(&self) -> String {
        use crate::field::{fmt_num, join};
        let g = &self.grid;
        let mut s = String::new();
        s.push_str(&format!("m={}\n", g.m()));
        s.push_str(&format!("n_a={}\n", self.scales.len()));
        s.push_str(&format!("scales={}\n", join(self.scales.values().iter().map(|v| fmt_num(*v)))));
        s.push_str(&format!("log_step={}\n", fmt_num(self.scales.log_step())));
        s.push_str(&format!("shape={}\n", join(g.shape().iter().map(|v| v.to_string()))));
        s.push_str(&format!("origin={}\n", join(g.origin().iter().map(|v| fmt_num(*v)))));
        s.push_str(&format!("spacing={}\n", join(g.spacing().iter().map(|v| fmt_num(*v)))));
        s.push_str(&format!("components={}\n", 1usize << g.m()));
        s.push_str(&format!("convention={}\n", self.convention));
        if let Some(angles) = &self.angles {
            s.push_str(&format!("angles={}\n", join(angles.iter().map(|v| fmt_num(*v)))));
        }
        let order = blade_order(g.m());
        let n = g.len();
        for scale in 0..self.scales.len() {
            for angle in 0..self.n_angles() {
                let block = self.slice(scale, angle);
                for node in 0..n {
                    let key = if self.angles.is_some() {
                        format!("{scale},{angle},{node}")
                    } else {
                        format!("{scale},{node}")
                    };
                    s.push_str(&key);
                    for b in &order {
                        s.push(',');
                        s.push_str(&fmt_num(block[b.mask() * n + node]));
                    }
                    s.push('\n');
                }
            }
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        use crate::field::{header, parse_list};
        let mut lines = text.lines().filter(|l| !l.trim().is_empty()).peekable();
        let m: usize = header(lines.next(), "m")?.parse().map_err(|_| Error::Parse("bad m".into()))?;
        let n_a: usize = header(lines.next(), "n_a")?.parse().map_err(|_| Error::Parse("bad n_a".into()))?;
        let values: Vec<S> = parse_list(&header(lines.next(), "scales")?)?;
        let log_step: S = header(lines.next(), "log_step")?
            .parse()
            .map_err(|_| Error::Parse("bad log_step".into()))?;
        let shape: Vec<usize> = parse_list(&header(lines.next(), "shape")?)?;
        let origin: Vec<S> = parse_list(&header(lines.next(), "origin")?)?;
        let spacing: Vec<S> = parse_list(&header(lines.next(), "spacing")?)?;
        let comps: usize = header(lines.next(), "components")?
            .parse()
            .map_err(|_| Error::Parse("bad components".into()))?;
        let convention: Convention = header(lines.next(), "convention")?.parse()?;
        let angles: Option<Vec<S>> = match lines.peek() {
            Some(l) if l.starts_with("angles=") => Some(parse_list(&header(lines.next(), "angles")?)?),
            _ => None,
        };
        if values.len() != n_a || shape.len() != m || comps != 1usize.checked_shl(m as u32).unwrap_or(0) {
            return Err(Error::Parse("coefficient header is inconsistent".into()));
        }
        let scales = ScaleGrid { values, log_step };
        if scales.values.is_empty() || scales.values.iter().any(|a| !(*a > S::zero())) {
            return Err(Error::Parse("scales must be positive".into()));
        }
        let grid = GridSpec::new(origin, spacing, shape).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::zeros(scales, grid, angles, convention);
        let keys = if out.angles.is_some() { 3 } else { 2 };
        let order = blade_order(m);
        let n = out.grid.len();
        let expected = out.slices() * n;
        let mut count = 0;
        for line in lines {
            let vals: Vec<&str> = line.split(',').collect();
            if vals.len() != keys + comps {
                return Err(Error::Parse(format!("row `{line}` has {} columns", vals.len())));
            }
            let key: Vec<usize> = vals[..keys]
                .iter()
                .map(|v| v.trim().parse().map_err(|_| Error::Parse(format!("bad index in `{line}`"))))
                .collect::<Result<_>>()?;
            let (scale, angle, node) = if keys == 3 { (key[0], key[1], key[2]) } else { (key[0], 0, key[1]) };
            if scale >= n_a || angle >= out.n_angles() || node >= n {
                return Err(Error::Parse(format!("index out of range in `{line}`")));
            }
            let block = out.slice_mut(scale, angle);
            for (b, v) in order.iter().zip(&vals[keys..]) {
                block[b.mask() * n + node] =
                    v.trim().parse().map_err(|_| Error::Parse(format!("bad number `{v}`")))?;
            }
            count += 1;
        }
        if count != expected {
            return Err(Error::Parse(format!("expected {expected} coefficient rows, found {count}")));
        }
        Ok(out)
    }
}
