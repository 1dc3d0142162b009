use serde::{Deserialize, Serialize};

use crate::cwt::{CoefficientField, ScaleGrid};
use crate::error::{Error, Result};
use crate::field::GridSpec;
use crate::scalar::Scalar;

/// Relative slack on region boundaries so that nodes lying on a face count
/// as inside regardless of rounding in the node coordinates.
const EDGE_TOL: f64 = 1e-9;

/// Nodes used per region when a union has to be measured by quadrature.
const VOLUME_NODES: f64 = 4.0e6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxShape<S> {
    pub lo: Vec<S>,
    pub hi: Vec<S>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ball<S> {
    pub center: Vec<S>,
    pub radius: S,
}

impl<S: Scalar> BoxShape<S> {
    fn contains(&self, x: &[S]) -> bool {
        x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(&v, (&lo, &hi))| {
            let tol = S::lit(EDGE_TOL) * (hi - lo).abs().max(S::one());
            v >= lo - tol && v <= hi + tol
        })
    }

    fn volume(&self) -> S {
        self.lo.iter().zip(&self.hi).fold(S::one(), |acc, (&lo, &hi)| acc * (hi - lo))
    }

    fn bounds(&self) -> (Vec<S>, Vec<S>) {
        (self.lo.clone(), self.hi.clone())
    }

    fn center(&self) -> Vec<S> {
        self.lo.iter().zip(&self.hi).map(|(&lo, &hi)| (lo + hi) / S::lit(2.0)).collect()
    }

    fn scaled(&self, factor: S) -> Self {
        let c = self.center();
        Self {
            lo: self.lo.iter().zip(&c).map(|(&v, &c)| c + (v - c) * factor).collect(),
            hi: self.hi.iter().zip(&c).map(|(&v, &c)| c + (v - c) * factor).collect(),
        }
    }
}

impl<S: Scalar> Ball<S> {
    fn contains(&self, x: &[S]) -> bool {
        let d2 = x.iter().zip(&self.center).fold(S::zero(), |acc, (&v, &c)| acc + (v - c) * (v - c));
        d2 <= self.radius * self.radius * (S::one() + S::lit(2.0 * EDGE_TOL))
    }

    fn volume(&self) -> S {
        crate::special::ball_volume::<S>(self.center.len()) * self.radius.powi(self.center.len() as i32)
    }

    fn bounds(&self) -> (Vec<S>, Vec<S>) {
        (
            self.center.iter().map(|&c| c - self.radius).collect(),
            self.center.iter().map(|&c| c + self.radius).collect(),
        )
    }
}

/// A union of axis-aligned boxes and balls in `R^m`, or all of `R^m`.
///
/// On a sample grid a node belongs to the region when it lies inside or on
/// the boundary; box faces placed half-way between nodes therefore give
/// node counts equal to the exact volume.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "S: Deserialize<'de>"))]
pub struct RegionX<S> {
    #[serde(default)]
    pub whole: bool,
    #[serde(default)]
    pub boxes: Vec<BoxShape<S>>,
    #[serde(default)]
    pub balls: Vec<Ball<S>>,
}

impl<S: Scalar> RegionX<S> {
    pub fn empty() -> Self {
        Self { whole: false, boxes: Vec::new(), balls: Vec::new() }
    }

    pub fn whole() -> Self {
        Self { whole: true, boxes: Vec::new(), balls: Vec::new() }
    }

    pub fn cuboid(lo: Vec<S>, hi: Vec<S>) -> Self {
        Self { whole: false, boxes: vec![BoxShape { lo, hi }], balls: Vec::new() }
    }

    pub fn ball(center: Vec<S>, radius: S) -> Self {
        Self { whole: false, boxes: Vec::new(), balls: vec![Ball { center, radius }] }
    }

    pub fn union(mut self, other: Self) -> Self {
        self.whole |= other.whole;
        self.boxes.extend(other.boxes);
        self.balls.extend(other.balls);
        self
    }

    pub fn is_empty(&self) -> bool {
        !self.whole && self.boxes.is_empty() && self.balls.is_empty()
    }

    /// Checks shape dimensions against `m` and rejects inverted boxes or
    /// negative radii.
    pub fn validate(&self, m: usize) -> Result<()> {
        for b in &self.boxes {
            if b.lo.len() != m || b.hi.len() != m {
                return Err(Error::InvalidInput(format!("box has dimension {} but the field has m = {m}", b.lo.len())));
            }
            if b.lo.iter().zip(&b.hi).any(|(lo, hi)| !(lo <= hi)) {
                return Err(Error::InvalidInput("box with lo > hi".into()));
            }
        }
        for b in &self.balls {
            if b.center.len() != m {
                return Err(Error::InvalidInput(format!(
                    "ball has dimension {} but the field has m = {m}",
                    b.center.len()
                )));
            }
            if !(b.radius >= S::zero()) {
                return Err(Error::InvalidInput("ball with negative radius".into()));
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: &[S]) -> bool {
        self.whole || self.boxes.iter().any(|b| b.contains(x)) || self.balls.iter().any(|b| b.contains(x))
    }

    pub fn node_mask(&self, grid: &GridSpec<S>) -> Vec<bool> {
        (0..grid.len()).map(|i| self.contains(&grid.node_vec(i))).collect()
    }

    /// Lebesgue volume: exact for a single shape or pairwise separated
    /// shapes, midpoint quadrature over the bounding box otherwise.
    pub fn volume(&self) -> Result<S> {
        if self.whole {
            return Err(Error::InfiniteMeasure("the whole space has infinite volume".into()));
        }
        let bounds: Vec<(Vec<S>, Vec<S>)> =
            self.boxes.iter().map(BoxShape::bounds).chain(self.balls.iter().map(Ball::bounds)).collect();
        let separated = bounds.iter().enumerate().all(|(i, (lo1, hi1))| {
            bounds[i + 1..].iter().all(|(lo2, hi2)| {
                lo1.iter().zip(hi1).zip(lo2.iter().zip(hi2)).any(|((&l1, &h1), (&l2, &h2))| h1 < l2 || h2 < l1)
            })
        });
        if separated {
            let v = self.boxes.iter().map(BoxShape::volume).chain(self.balls.iter().map(Ball::volume));
            return Ok(v.fold(S::zero(), |a, b| a + b));
        }
        let m = bounds[0].0.len();
        let lo: Vec<S> = (0..m).map(|j| bounds.iter().fold(bounds[0].0[j], |a, b| a.min(b.0[j]))).collect();
        let hi: Vec<S> = (0..m).map(|j| bounds.iter().fold(bounds[0].1[j], |a, b| a.max(b.1[j]))).collect();
        let n = VOLUME_NODES.powf(1.0 / m as f64).floor().max(2.0) as usize;
        let spacing: Vec<S> = (0..m).map(|j| (hi[j] - lo[j]) / S::from_usize_lossy(n)).collect();
        let origin: Vec<S> = (0..m).map(|j| lo[j] + spacing[j] / S::lit(2.0)).collect();
        if spacing.iter().any(|&h| h == S::zero()) {
            return Ok(S::zero());
        }
        let grid = GridSpec::new(origin, spacing, vec![n; m])?;
        let count = crate::reduce::sum_by(grid.len(), |i| if self.contains(&grid.node_vec(i)) { S::one() } else { S::zero() });
        Ok(count * grid.cell_volume())
    }

    /// Each shape dilated by `factor` about its own center.
    pub fn scaled(&self, factor: S) -> Self {
        Self {
            whole: self.whole,
            boxes: self.boxes.iter().map(|b| b.scaled(factor)).collect(),
            balls: self.balls.iter().map(|b| Ball { center: b.center.clone(), radius: b.radius * factor }).collect(),
        }
    }
}

/// A region of the coefficient domain `(a, b)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RegionAB<S> {
    Empty,
    /// Every computed coefficient.
    All,
    /// `[a_min, a_max] x [lo, hi]`.
    Box { a_min: S, a_max: S, lo: Vec<S>, hi: Vec<S> },
    /// `[alpha, inf) x [lo, hi]`.
    Band { alpha: S, lo: Vec<S>, hi: Vec<S> },
}

impl<S: Scalar> RegionAB<S> {
    pub fn validate(&self, m: usize) -> Result<()> {
        let check_b = |lo: &[S], hi: &[S]| {
            if lo.len() != m || hi.len() != m {
                return Err(Error::InvalidInput(format!("b-box has dimension {} but m = {m}", lo.len())));
            }
            if lo.iter().zip(hi).any(|(l, h)| !(l <= h)) {
                return Err(Error::InvalidInput("b-box with lo > hi".into()));
            }
            Ok(())
        };
        match self {
            Self::Empty | Self::All => Ok(()),
            Self::Box { a_min, a_max, lo, hi } => {
                if !(*a_min > S::zero() && a_min <= a_max) {
                    return Err(Error::InvalidInput("scale range needs 0 < a_min <= a_max".into()));
                }
                check_b(lo, hi)
            }
            Self::Band { alpha, lo, hi } => {
                if !(*alpha > S::zero()) {
                    return Err(Error::InvalidInput("band needs alpha > 0".into()));
                }
                check_b(lo, hi)
            }
        }
    }

    pub fn is_band(&self) -> bool {
        matches!(self, Self::Band { .. })
    }

    fn b_box(&self) -> Option<(&[S], &[S])> {
        match self {
            Self::Box { lo, hi, .. } | Self::Band { lo, hi, .. } => Some((lo, hi)),
            _ => None,
        }
    }

    /// `|Omega~|`, the volume of the translation box.
    pub fn b_volume(&self) -> Option<S> {
        self.b_box().map(|(lo, hi)| lo.iter().zip(hi).fold(S::one(), |acc, (&l, &h)| acc * (h - l)))
    }

    pub fn contains(&self, a: S, b: &[S]) -> bool {
        let tol = S::lit(EDGE_TOL);
        let in_b = |lo: &[S], hi: &[S]| BoxShape { lo: lo.to_vec(), hi: hi.to_vec() }.contains(b);
        match self {
            Self::Empty => false,
            Self::All => true,
            Self::Box { a_min, a_max, lo, hi } => {
                a >= *a_min * (S::one() - tol) && a <= *a_max * (S::one() + tol) && in_b(lo, hi)
            }
            Self::Band { alpha, lo, hi } => a >= *alpha * (S::one() - tol) && in_b(lo, hi),
        }
    }

    /// Measure under `da dV(b) / a^{m+1}`.
    pub fn measure(&self, m: usize) -> Result<S> {
        let mm = S::from_usize_lossy(m);
        match self {
            Self::Empty => Ok(S::zero()),
            Self::All => Err(Error::InfiniteMeasure("the full coefficient domain has infinite measure".into())),
            Self::Box { a_min, a_max, .. } => {
                Ok((a_min.powi(-(m as i32)) - a_max.powi(-(m as i32))) / mm * self.b_volume().expect("box"))
            }
            Self::Band { alpha, .. } => Ok(self.b_volume().expect("band") / (mm * alpha.powi(m as i32))),
        }
    }

    /// `keep(scale, node)` membership on a coefficient layout.
    pub fn mask(&self, scales: &ScaleGrid<S>, grid: &GridSpec<S>) -> impl Fn(usize, usize) -> bool + Sync {
        let nodes: Vec<bool> = match self.b_box() {
            Some((lo, hi)) => {
                let shape = BoxShape { lo: lo.to_vec(), hi: hi.to_vec() };
                (0..grid.len()).map(|i| shape.contains(&grid.node_vec(i))).collect()
            }
            None => vec![!matches!(self, Self::Empty); grid.len()],
        };
        let scales: Vec<bool> = scales.values().iter().map(|&a| self.contains_scale(a)).collect();
        move |s, i| scales[s] && nodes[i]
    }

    pub fn coefficient_mask(&self, coeffs: &CoefficientField<S>) -> impl Fn(usize, usize) -> bool + Sync {
        self.mask(coeffs.scales(), coeffs.grid())
    }

    fn contains_scale(&self, a: S) -> bool {
        let tol = S::lit(EDGE_TOL);
        match self {
            Self::Empty => false,
            Self::All => true,
            Self::Box { a_min, a_max, .. } => a >= *a_min * (S::one() - tol) && a <= *a_max * (S::one() + tol),
            Self::Band { alpha, .. } => a >= *alpha * (S::one() - tol),
        }
    }

    /// Sum of the cell measures of the layout's nodes inside the region.
    pub fn discrete_measure(&self, scales: &ScaleGrid<S>, grid: &GridSpec<S>) -> S {
        let keep = self.mask(scales, grid);
        let mut total = S::zero();
        for s in 0..scales.len() {
            let count = (0..grid.len()).filter(|&i| keep(s, i)).count();
            total += S::from_usize_lossy(count) * scales.weight(s, grid.m()) * grid.cell_volume();
        }
        total
    }

    /// The translation box dilated by `factor` about its center.
    pub fn scaled(&self, factor: S) -> Self {
        let dilate = |lo: &[S], hi: &[S]| {
            let b = BoxShape { lo: lo.to_vec(), hi: hi.to_vec() }.scaled(factor);
            (b.lo, b.hi)
        };
        match self {
            Self::Empty | Self::All => self.clone(),
            Self::Box { a_min, a_max, lo, hi } => {
                let (lo, hi) = dilate(lo, hi);
                Self::Box { a_min: *a_min, a_max: *a_max, lo, hi }
            }
            Self::Band { alpha, lo, hi } => {
                let (lo, hi) = dilate(lo, hi);
                Self::Band { alpha: *alpha, lo, hi }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn volumes() {
        let b = RegionX::cuboid(vec![-1.0, 0.0], vec![2.0, 0.5]);
        assert_eq!(b.volume().unwrap(), 1.5);
        let d = RegionX::ball(vec![5.0, 5.0], 2.0);
        assert!((d.volume().unwrap() - 4.0 * PI).abs() < 1e-12);
        let both = b.clone().union(d);
        assert!((both.volume().unwrap() - 1.5 - 4.0 * PI).abs() < 1e-12);
        // overlapping union by quadrature: two unit squares sharing half
        let u = RegionX::<f64>::cuboid(vec![0.0, 0.0], vec![1.0, 1.0]).union(RegionX::cuboid(vec![0.5, 0.0], vec![1.5, 1.0]));
        assert!((u.volume().unwrap() - 1.5).abs() < 1e-3);
        assert!(RegionX::<f64>::whole().volume().is_err());
        assert_eq!(RegionX::<f64>::empty().volume().unwrap(), 0.0);
    }

    #[test]
    fn node_counts_match_volume_for_cell_aligned_faces() {
        let grid = GridSpec::centered(2, 21, 1.0).unwrap();
        let r = RegionX::cuboid(vec![-3.5, -2.5], vec![3.5, 4.5]);
        let count = r.node_mask(&grid).iter().filter(|&&k| k).count();
        assert_eq!(count as f64, r.volume().unwrap());
    }

    #[test]
    fn band_measure() {
        let band = RegionAB::<f64>::Band { alpha: 2.0, lo: vec![0.0, 0.0], hi: vec![3.0, 4.0] };
        // |Omega~| / (m alpha^m) = 12 / (2 * 4)
        assert!((band.measure(2).unwrap() - 1.5).abs() < 1e-15);
        let b = RegionAB::<f64>::Box { a_min: 1.0, a_max: 2.0, lo: vec![0.0], hi: vec![2.0] };
        assert!((b.measure(1).unwrap() - 1.0).abs() < 1e-15);
        assert!(RegionAB::<f64>::All.measure(2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = RegionX::cuboid(vec![-1.0, -1.0], vec![1.0, 1.0]).union(RegionX::ball(vec![0.0, 3.0], 1.0));
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<RegionX<f64>>(&text).unwrap(), r);
        let o: RegionAB<f64> = serde_json::from_str(r#"{"kind":"band","alpha":2.0,"lo":[0,0],"hi":[1,1]}"#).unwrap();
        assert!(o.is_band());
        assert!(serde_json::from_str::<RegionAB<f64>>(r#"{"kind":"band","alpha":2.0}"#).is_err());
    }
}
