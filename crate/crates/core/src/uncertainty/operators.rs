use crate::cwt::{forward, reconstruct_direct, reconstruct_fft, truncation_gate, CoefficientField, CwtSetup, Method, Wavelet};
use crate::error::{Error, Result};
use crate::field::{GridSpec, SampledField};
use crate::scalar::Scalar;
use crate::uncertainty::region::{RegionAB, RegionX};

/// Wavelet, admissibility constant and coefficient layout shared by the
/// concentration checks.
#[derive(Clone, Debug)]
pub struct Analyzer<S> {
    pub wavelet: Wavelet<S>,
    pub admissibility: S,
    pub setup: CwtSetup<S>,
    pub method: Method,
}

impl<S: Scalar> Analyzer<S> {
    pub fn new(wavelet: Wavelet<S>, admissibility: S, setup: CwtSetup<S>) -> Result<Self> {
        if !(admissibility > S::zero()) {
            return Err(Error::InvalidInput("admissibility constant must be positive".into()));
        }
        Ok(Self { wavelet, admissibility, setup, method: Method::Fast })
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn m(&self) -> usize {
        self.wavelet.m()
    }

    pub fn transform(&self, f: &SampledField<S>) -> Result<CoefficientField<S>> {
        forward(&self.wavelet, f, &self.setup, self.method)
    }

    pub(crate) fn inverse(&self, coeffs: &CoefficientField<S>, target: &GridSpec<S>) -> Result<SampledField<S>> {
        match self.method {
            Method::Fast => reconstruct_fft(&self.wavelet, coeffs, target, self.admissibility),
            Method::Direct => reconstruct_direct(&self.wavelet, coeffs, target, self.admissibility),
        }
    }
}

/// `P_T f`: zero outside `T`, untouched inside.
pub fn time_limit<S: Scalar>(f: &SampledField<S>, t: &RegionX<S>) -> SampledField<S> {
    f.masked(&t.node_mask(f.grid()))
}

/// `‖f‖` over the nodes inside (`inside = true`) or outside `T`.
pub fn l2_restrict_norm<S: Scalar>(f: &SampledField<S>, t: &RegionX<S>, inside: bool) -> S {
    f.restricted_norm_sqr(&t.node_mask(f.grid()), inside).sqrt()
}

/// Smallest `eps` with `‖f‖_{outside T} <= eps ‖f‖`.
pub fn epsilon_concentration<S: Scalar>(f: &SampledField<S>, t: &RegionX<S>) -> Result<S> {
    let total = f.norm_sqr();
    if total == S::zero() {
        return Err(Error::ZeroField("concentration of the zero field is undefined".into()));
    }
    let outside = f.restricted_norm_sqr(&t.node_mask(f.grid()), false);
    Ok((outside / total).sqrt().min(S::one()))
}

/// Smallest `eps` with `‖T‖_{outside Omega} <= eps ‖T‖` under the
/// coefficient measure.
pub fn epsilon_concentration_coeffs<S: Scalar>(c: &CoefficientField<S>, omega: &RegionAB<S>) -> Result<S> {
    let total = c.energy();
    if total == S::zero() {
        return Err(Error::ZeroField("concentration of a zero coefficient field is undefined".into()));
    }
    let keep = omega.coefficient_mask(c);
    let outside = c.energy_where(|s, i| !keep(s, i));
    Ok((outside / total).sqrt().min(S::one()))
}

/// Result of frequency limiting.
#[derive(Clone, Debug)]
pub struct FrequencyLimited<S> {
    pub field: SampledField<S>,
    /// Energy share of `T[Q f]` lying outside `Omega`.
    pub idempotence_defect: S,
}

/// `Q_Omega f`: reconstruction from the coefficients of `f` inside `Omega`.
pub fn freq_limit<S: Scalar>(an: &Analyzer<S>, f: &SampledField<S>, omega: &RegionAB<S>) -> Result<FrequencyLimited<S>> {
    omega.validate(f.m())?;
    let c = an.transform(f)?;
    truncation_gate(&c)?;
    let keep = omega.coefficient_mask(&c);
    let limited = c.masked(&keep);
    let field = an.inverse(&limited, f.grid())?;
    let again = an.transform(&field)?;
    let total = again.energy();
    let idempotence_defect = if total == S::zero() {
        S::zero()
    } else {
        let keep = omega.coefficient_mask(&again);
        again.energy_where(|s, i| !keep(s, i)) / total
    };
    Ok(FrequencyLimited { field, idempotence_defect })
}

/// The coupling constant and how it was assembled.
#[derive(Clone, Debug, PartialEq)]
pub struct Phi<S> {
    pub value: S,
    /// Midpoint sum over the computed `(a, b)` nodes inside `Omega`.
    pub grid_part: S,
    /// Closed-form bound for band scales above the computed range.
    pub tail_part: S,
    /// Measure of `Omega` matching the two parts.
    pub measure: S,
}

/// `phi = ∫_Omega ∫_{(T - b)/a} |psi|^2 dV da dV(b) / a^{m+1}`.
///
/// The inner integral is the sum of `|psi_{a,b}|^2 dV` over the nodes of
/// `fgrid` inside `T` (exactly `‖psi‖^2` for the whole space), evaluated for
/// all translations at once by FFT correlation. Band scales beyond the
/// computed range contribute `‖psi‖^2 |Omega~| / (m a^m)` from the upper edge
/// of the last scale cell.
pub fn phi_constant<S: Scalar>(an: &Analyzer<S>, fgrid: &GridSpec<S>, t: &RegionX<S>, omega: &RegionAB<S>) -> Result<Phi<S>> {
    let m = fgrid.m();
    t.validate(m)?;
    omega.validate(m)?;
    if *omega == RegionAB::All {
        return Err(Error::InfiniteMeasure(
            "the full coefficient domain has no band structure; phi needs a finite-measure Omega".into(),
        ));
    }
    let scales = &an.setup.scales;
    let bgrid = &an.setup.translations;
    let keep = omega.mask(scales, bgrid);
    let norm_sqr = an.wavelet.norm_sqr();
    let t_mask: Vec<S> = t.node_mask(fgrid).into_iter().map(|k| if k { S::one() } else { S::zero() }).collect();
    let dvb = bgrid.cell_volume();
    let profile = an.wavelet.profile();
    let mut parts = Vec::with_capacity(scales.len());
    let mut measure = S::zero();
    for (s, &a) in scales.values().iter().enumerate() {
        let nodes: Vec<usize> = (0..bgrid.len()).filter(|&i| keep(s, i)).collect();
        if nodes.is_empty() {
            continue;
        }
        let weight = scales.weight(s, m) * dvb;
        measure += weight * S::from_usize_lossy(nodes.len());
        let inner: Vec<S> = if t.whole {
            vec![norm_sqr; nodes.len()]
        } else if t.is_empty() {
            vec![S::zero(); nodes.len()]
        } else {
            let amp = a.powi(-(m as i32));
            let a2 = a * a;
            let all = crate::cwt::correlate_scalar(fgrid, &t_mask, bgrid, |y: &[S]| {
                let r2 = y.iter().fold(S::zero(), |acc, &v| acc + v * v);
                amp * profile.norm_sqr(r2 / a2)
            })?;
            // FFT round-off can leave tiny negative values far from T.
            nodes.iter().map(|&i| all[i].max(S::zero())).collect()
        };
        parts.push(crate::reduce::sum(&inner) * weight);
    }
    let grid_part = crate::reduce::pairwise(&parts);
    let mut tail_part = S::zero();
    if let RegionAB::Band { alpha, .. } = omega {
        let edge = scales.cell(scales.len() - 1).1.max(*alpha);
        let tail_measure = omega.b_volume().expect("band") / (S::from_usize_lossy(m) * edge.powi(m as i32));
        tail_part = norm_sqr * tail_measure;
        measure += tail_measure;
    }
    Ok(Phi { value: grid_part + tail_part, grid_part, tail_part, measure })
}
