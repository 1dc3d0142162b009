//! Plancherel, reconstruction and truncation diagnostics.

use crate::cwt::coeffs::CoefficientField;
use crate::cwt::transform::{forward_direct, forward_fft, reconstruct_direct, reconstruct_fft, CwtSetup};
use crate::cwt::wavelet::Wavelet;
use crate::error::{Error, Result};
use crate::field::{GridSpec, SampledField};
use crate::scalar::Scalar;

/// Largest coefficient energy fraction allowed on an outermost shell.
pub const TRUNCATION_LIMIT: f64 = 0.01;

/// Which quadrature evaluates the transform.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    #[default]
    Fast,
    Direct,
}

pub fn forward<S: Scalar>(w: &Wavelet<S>, f: &SampledField<S>, setup: &CwtSetup<S>, method: Method) -> Result<CoefficientField<S>> {
    match method {
        Method::Fast => forward_fft(w, f, setup),
        Method::Direct => forward_direct(w, f, setup),
    }
}

/// Inverse transform behind the truncation gate.
pub fn reconstruct<S: Scalar>(
    w: &Wavelet<S>,
    coeffs: &CoefficientField<S>,
    target: &GridSpec<S>,
    admissibility: S,
    method: Method,
) -> Result<SampledField<S>> {
    truncation_gate(coeffs)?;
    match method {
        Method::Fast => reconstruct_fft(w, coeffs, target, admissibility),
        Method::Direct => reconstruct_direct(w, coeffs, target, admissibility),
    }
}

/// Share of coefficient energy on the edges of the coefficient domain.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationReport<S> {
    pub smallest_scale: S,
    pub largest_scale: S,
    pub translation_shell: S,
}

impl<S: Scalar> TruncationReport<S> {
    pub fn worst(&self) -> S {
        self.smallest_scale.max(self.largest_scale).max(self.translation_shell)
    }

    pub fn passes(&self) -> bool {
        self.worst() <= S::lit(TRUNCATION_LIMIT)
    }
}

pub fn truncation_report<S: Scalar>(coeffs: &CoefficientField<S>) -> TruncationReport<S> {
    let total = coeffs.energy();
    if total == S::zero() {
        return TruncationReport { smallest_scale: S::zero(), largest_scale: S::zero(), translation_shell: S::zero() };
    }
    let per_scale = coeffs.scale_energies();
    let grid = coeffs.grid();
    let shell = coeffs.energy_where(|_, node| grid.on_boundary(node));
    TruncationReport {
        smallest_scale: per_scale[0] / total,
        largest_scale: per_scale[per_scale.len() - 1] / total,
        translation_shell: shell / total,
    }
}

pub fn truncation_gate<S: Scalar>(coeffs: &CoefficientField<S>) -> Result<TruncationReport<S>> {
    let r = truncation_report(coeffs);
    if !r.passes() {
        return Err(Error::TruncationGate(format!(
            "coefficient energy on the domain edge exceeds {TRUNCATION_LIMIT}: smallest scale {:.3e}, \
             largest scale {:.3e}, translation shell {:.3e}",
            r.smallest_scale.as_f64(),
            r.largest_scale.as_f64(),
            r.translation_shell.as_f64()
        )));
    }
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct PlancherelReport<S> {
    /// `∫∫ |T f|^2 da dV(b) / a^{m+1}`.
    pub coefficient_energy: S,
    /// `‖f‖_2^2`.
    pub field_energy: S,
    pub admissibility: S,
    /// `coefficient_energy / (A ‖f‖^2)`; `None` for `f = 0`.
    pub ratio: Option<S>,
    /// `sqrt(coefficient_energy) / (A ‖f‖)`, the unsquared reading.
    pub unsquared_ratio: Option<S>,
    pub truncation: TruncationReport<S>,
}

impl<S: Scalar> PlancherelReport<S> {
    /// Whether the ratio lies within `tol` of one; `f = 0` passes.
    pub fn within(&self, tol: S) -> bool {
        self.ratio.map_or(true, |r| (r - S::one()).abs() <= tol)
    }
}

/// Compares the coefficient energy with `A ‖f‖^2`. Rejects coefficient
/// domains that lose more than [`TRUNCATION_LIMIT`] of the energy at an edge.
pub fn plancherel_ratio<S: Scalar>(
    coeffs: &CoefficientField<S>,
    f: &SampledField<S>,
    admissibility: S,
) -> Result<PlancherelReport<S>> {
    let field_energy = f.norm_sqr();
    let coefficient_energy = coeffs.energy();
    if field_energy == S::zero() {
        return Ok(PlancherelReport {
            coefficient_energy,
            field_energy,
            admissibility,
            ratio: None,
            unsquared_ratio: None,
            truncation: truncation_report(coeffs),
        });
    }
    let truncation = truncation_gate(coeffs)?;
    Ok(PlancherelReport {
        coefficient_energy,
        field_energy,
        admissibility,
        ratio: Some(coefficient_energy / (admissibility * field_energy)),
        unsquared_ratio: Some(coefficient_energy.sqrt() / (admissibility * field_energy.sqrt())),
        truncation,
    })
}

/// Forward transform followed by [`plancherel_ratio`].
pub fn plancherel_check<S: Scalar>(
    w: &Wavelet<S>,
    f: &SampledField<S>,
    setup: &CwtSetup<S>,
    admissibility: S,
    method: Method,
) -> Result<PlancherelReport<S>> {
    let coeffs = forward(w, f, setup, method)?;
    plancherel_ratio(&coeffs, f, admissibility)
}

#[derive(Clone, Debug)]
pub struct ReconstructionReport<S> {
    /// `‖f - f_rec‖ / ‖f‖`; `None` for `f = 0`.
    pub relative_error: Option<S>,
    pub field_norm: S,
    pub error_norm: S,
    pub truncation: TruncationReport<S>,
}

/// Round trip `f -> T f -> f_rec` on the grid of `f`.
pub fn reconstruction_check<S: Scalar>(
    w: &Wavelet<S>,
    f: &SampledField<S>,
    setup: &CwtSetup<S>,
    admissibility: S,
    method: Method,
) -> Result<(SampledField<S>, ReconstructionReport<S>)> {
    let coeffs = forward(w, f, setup, method)?;
    let truncation = truncation_gate(&coeffs)?;
    let rec = reconstruct(w, &coeffs, f.grid(), admissibility, method)?;
    let field_norm = f.norm();
    let error_norm = f.sub(&rec)?.norm();
    let relative_error = (field_norm > S::zero()).then(|| error_norm / field_norm);
    Ok((rec, ReconstructionReport { relative_error, field_norm, error_norm, truncation }))
}

/// Scalar parts of `<T f, T g> / A` and `<f, g>`.
pub fn isometry_pair<S: Scalar>(
    w: &Wavelet<S>,
    f: &SampledField<S>,
    g: &SampledField<S>,
    setup: &CwtSetup<S>,
    admissibility: S,
    method: Method,
) -> Result<(S, S)> {
    let tf = forward(w, f, setup, method)?;
    let tg = forward(w, g, setup, method)?;
    let lhs = tf.inner_scalar(&tg)? / admissibility;
    let rhs = f.inner_product(g)?.coeffs()[0];
    Ok((lhs, rhs))
}
