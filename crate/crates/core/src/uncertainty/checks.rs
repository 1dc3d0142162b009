use serde::{Deserialize, Serialize};

use crate::cwt::{truncation_report, TruncationReport};
use crate::error::{Error, Result};
use crate::field::SampledField;
use crate::scalar::Scalar;
use crate::uncertainty::operators::{epsilon_concentration, epsilon_concentration_coeffs, phi_constant, time_limit, Analyzer, Phi};
use crate::uncertainty::region::{RegionAB, RegionX};

/// `ε_Ω` at or above this makes the uncertainty bound vacuous.
pub const VACUOUS_EPSILON: f64 = 1.0 - 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    /// The premise is not met, so nothing is asserted.
    Vacuous,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Holds => "holds",
            Self::Fails => "fails",
            Self::Vacuous => "vacuous",
        })
    }
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Inequality<S> {
    pub name: &'static str,
    pub lhs: S,
    pub rhs: S,
    pub status: Status,
    /// Whether the inequality is part of the adopted, self-consistent chain.
    /// Printed variants that are not implied by it are reported only.
    pub gating: bool,
}

impl<S: Scalar> Inequality<S> {
    fn new(name: &'static str, lhs: S, rhs: S, gating: bool) -> Self {
        let status = if lhs <= rhs { Status::Holds } else { Status::Fails };
        Self { name, lhs, rhs, status, gating }
    }

    fn vacuous(name: &'static str, lhs: S, rhs: S, gating: bool) -> Self {
        Self { name, lhs, rhs, status: Status::Vacuous, gating }
    }

    pub fn slack(&self) -> S {
        self.rhs - self.lhs
    }

    pub fn holds(&self) -> bool {
        self.status != Status::Fails
    }
}

#[derive(Clone, Debug)]
pub struct ConcentrationReport<S> {
    pub label: String,
    pub epsilon_t: S,
    /// `None` when the check does not need the full transform.
    pub epsilon_omega: Option<S>,
    pub admissibility: S,
    pub phi: Phi<S>,
    pub field_norm: S,
    pub checks: Vec<Inequality<S>>,
    pub truncation: TruncationReport<S>,
}

impl<S: Scalar> ConcentrationReport<S> {
    pub fn check(&self, name: &str) -> Option<&Inequality<S>> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Every gating inequality holds or is vacuous.
    pub fn passes(&self) -> bool {
        self.checks.iter().filter(|c| c.gating).all(Inequality::holds)
    }

    pub fn csv_header() -> &'static str {
        "config,check,gating,epsilon_t,epsilon_omega,admissibility,phi,lhs,rhs,slack,status"
    }

    /// One row per inequality, numbers at 17 significant digits.
    pub fn csv_rows(&self) -> String {
        let num = |v: S| format!("{:.16e}", v.as_f64());
        let eps_o = self.epsilon_omega.map_or_else(String::new, num);
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                self.label,
                c.name,
                c.gating,
                num(self.epsilon_t),
                eps_o,
                num(self.admissibility),
                num(self.phi.value),
                num(c.lhs),
                num(c.rhs),
                num(c.slack()),
                c.status
            ));
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: eps_T = {:.6e}, eps_Omega = {}, A = {:.6e}, phi = {:.6e}\n",
            self.label,
            self.epsilon_t.as_f64(),
            self.epsilon_omega.map_or("-".into(), |v| format!("{:.6e}", v.as_f64())),
            self.admissibility.as_f64(),
            self.phi.value.as_f64()
        );
        for c in &self.checks {
            s.push_str(&format!(
                "  {:<28} {:>8}  lhs {:.6e}  rhs {:.6e}  slack {:+.3e}{}\n",
                c.name,
                c.status.to_string(),
                c.lhs.as_f64(),
                c.rhs.as_f64(),
                c.slack().as_f64(),
                if c.gating { "" } else { "  (reported)" }
            ));
        }
        s
    }
}

pub fn reports_to_csv<S: Scalar>(reports: &[ConcentrationReport<S>]) -> String {
    let mut s = String::from(ConcentrationReport::<S>::csv_header());
    s.push('\n');
    for r in reports {
        s.push_str(&r.csv_rows());
    }
    s
}

/// Quantities shared by all checks on one `(f, T, Omega)`.
struct Measured<S> {
    p_t_norm: S,
    epsilon_t: S,
    phi: Phi<S>,
    /// `‖chi_Omega T[P_T f]‖`.
    restricted: S,
    truncation: TruncationReport<S>,
}

fn measure<S: Scalar>(an: &Analyzer<S>, f: &SampledField<S>, t: &RegionX<S>, omega: &RegionAB<S>) -> Result<Measured<S>> {
    t.validate(f.m())?;
    omega.validate(f.m())?;
    let p_t = time_limit(f, t);
    let p_t_norm = p_t.norm();
    let epsilon_t = if f.norm_sqr() == S::zero() { S::zero() } else { epsilon_concentration(f, t)? };
    let phi = phi_constant(an, f.grid(), t, omega)?;
    let c = an.transform(&p_t)?;
    let keep = omega.coefficient_mask(&c);
    let restricted = c.energy_where(&keep).sqrt();
    Ok(Measured { p_t_norm, epsilon_t, phi, restricted, truncation: truncation_report(&c) })
}

/// `‖chi_Omega T[P_T f]‖ <= ‖P_T f‖ sqrt(phi)`, which follows from
/// Cauchy-Schwarz, next to the printed `‖P_T f‖ phi`.
pub fn check_proposition_41<S: Scalar>(
    an: &Analyzer<S>,
    f: &SampledField<S>,
    t: &RegionX<S>,
    omega: &RegionAB<S>,
    label: &str,
) -> Result<ConcentrationReport<S>> {
    let ms = measure(an, f, t, omega)?;
    let checks = vec![
        Inequality::new("proposition41_sqrt_phi", ms.restricted, ms.p_t_norm * ms.phi.value.sqrt(), true),
        Inequality::new("proposition41_printed", ms.restricted, ms.p_t_norm * ms.phi.value, false),
    ];
    Ok(ConcentrationReport {
        label: label.into(),
        epsilon_t: ms.epsilon_t,
        epsilon_omega: None,
        admissibility: an.admissibility,
        phi: ms.phi,
        field_norm: f.norm(),
        checks,
        truncation: ms.truncation,
    })
}

/// Band `Omega = [alpha, inf) x Omega~`: the printed bound
/// `‖P_T f‖ ‖psi‖ |Omega~|^{1/2}` and the one carrying the band measure
/// `|Omega~| / (m alpha^m)`.
pub fn check_band_corollary<S: Scalar>(
    an: &Analyzer<S>,
    f: &SampledField<S>,
    t: &RegionX<S>,
    omega: &RegionAB<S>,
    label: &str,
) -> Result<ConcentrationReport<S>> {
    if !omega.is_band() {
        return Err(Error::InvalidInput("the band corollary needs a band region [alpha, inf) x box".into()));
    }
    let ms = measure(an, f, t, omega)?;
    let psi_norm = an.wavelet.norm_sqr().sqrt();
    let printed = ms.p_t_norm * psi_norm * omega.b_volume().expect("band").sqrt();
    let with_measure = ms.p_t_norm * psi_norm * omega.measure(f.m())?.sqrt();
    let checks = vec![
        Inequality::new("band_corollary_measure", ms.restricted, with_measure, true),
        Inequality::new("band_corollary_printed", ms.restricted, printed, false),
        Inequality::new("proposition41_sqrt_phi", ms.restricted, ms.p_t_norm * ms.phi.value.sqrt(), true),
    ];
    Ok(ConcentrationReport {
        label: label.into(),
        epsilon_t: ms.epsilon_t,
        epsilon_omega: None,
        admissibility: an.admissibility,
        phi: ms.phi,
        field_norm: f.norm(),
        checks,
        truncation: ms.truncation,
    })
}

struct Full<S> {
    ms: Measured<S>,
    epsilon_omega: S,
    transform_norm: S,
    field_norm: S,
    truncation: TruncationReport<S>,
}

fn measure_full<S: Scalar>(an: &Analyzer<S>, f: &SampledField<S>, t: &RegionX<S>, omega: &RegionAB<S>) -> Result<Full<S>> {
    let field_norm = f.norm();
    if field_norm == S::zero() {
        return Err(Error::ZeroField("the uncertainty checks need f != 0".into()));
    }
    let ms = measure(an, f, t, omega)?;
    let c = an.transform(f)?;
    let epsilon_omega = epsilon_concentration_coeffs(&c, omega)?;
    if epsilon_omega >= S::lit(VACUOUS_EPSILON) {
        return Err(Error::Vacuous(format!(
            "eps_Omega = {:.6e}: the transform has no energy in Omega and the bound is vacuous",
            epsilon_omega.as_f64()
        )));
    }
    Ok(Full { ms, epsilon_omega, transform_norm: c.energy().sqrt(), field_norm, truncation: truncation_report(&c) })
}

fn theorem_checks<S: Scalar>(an: &Analyzer<S>, full: &Full<S>) -> Vec<Inequality<S>> {
    let a = an.admissibility;
    let (et, eo) = (full.ms.epsilon_t, full.epsilon_omega);
    let phi = full.ms.phi.value;
    // Normalized transform T~ = T / sqrt(A) with phi~ = sqrt(phi / A).
    let phi_n = (phi / a).sqrt();
    vec![
        Inequality::new(
            "donoho_stark_normalized",
            full.transform_norm / a.sqrt(),
            (et + phi_n) / (S::one() - eo) * full.field_norm,
            true,
        ),
        Inequality::new("donoho_stark_printed", full.transform_norm, (a * et + phi) / (S::one() - eo) * full.field_norm, false),
    ]
}

fn corollary_checks<S: Scalar>(an: &Analyzer<S>, full: &Full<S>) -> Vec<Inequality<S>> {
    let a = an.admissibility;
    let phi = full.ms.phi.value;
    let gap = S::one() - full.epsilon_omega - full.ms.epsilon_t;
    let mut out = Vec::new();
    if gap <= S::zero() {
        out.push(Inequality::vacuous("final_corollary_normalized", gap, (phi / a).sqrt(), true));
        out.push(Inequality::vacuous("final_corollary_printed", gap * a, phi, false));
    } else {
        out.push(Inequality::new("final_corollary_normalized", gap, (phi / a).sqrt(), true));
        out.push(Inequality::new("final_corollary_printed", gap * a, phi, false));
    }
    // Supp f in T: the corollary with both concentrations set to zero.
    if full.ms.epsilon_t == S::zero() {
        out.push(Inequality::new("final_corollary_support", a, phi, false));
    } else {
        out.push(Inequality::vacuous("final_corollary_support", a, phi, false));
    }
    out
}

fn full_report<S: Scalar>(an: &Analyzer<S>, full: Full<S>, checks: Vec<Inequality<S>>, label: &str) -> ConcentrationReport<S> {
    ConcentrationReport {
        label: label.into(),
        epsilon_t: full.ms.epsilon_t,
        epsilon_omega: Some(full.epsilon_omega),
        admissibility: an.admissibility,
        phi: full.ms.phi,
        field_norm: full.field_norm,
        checks,
        truncation: full.truncation,
    }
}

/// `‖T f‖ <= [A eps_T + phi] / (1 - eps_Omega) ‖f‖` as printed and its
/// normalized form `‖T~ f‖ <= [eps_T + phi~] / (1 - eps_Omega) ‖f‖`.
pub fn check_donoho_stark<S: Scalar>(
    an: &Analyzer<S>,
    f: &SampledField<S>,
    t: &RegionX<S>,
    omega: &RegionAB<S>,
    label: &str,
) -> Result<ConcentrationReport<S>> {
    let full = measure_full(an, f, t, omega)?;
    let checks = theorem_checks(an, &full);
    Ok(full_report(an, full, checks, label))
}

/// `(1 - eps_Omega - eps_T) A <= phi` as printed, its normalized form and
/// the support case `A <= phi`.
pub fn check_final_corollary<S: Scalar>(
    an: &Analyzer<S>,
    f: &SampledField<S>,
    t: &RegionX<S>,
    omega: &RegionAB<S>,
    label: &str,
) -> Result<ConcentrationReport<S>> {
    let full = measure_full(an, f, t, omega)?;
    let checks = corollary_checks(an, &full);
    Ok(full_report(an, full, checks, label))
}

/// All inequalities on one configuration.
pub fn check_all<S: Scalar>(
    an: &Analyzer<S>,
    f: &SampledField<S>,
    t: &RegionX<S>,
    omega: &RegionAB<S>,
    label: &str,
) -> Result<ConcentrationReport<S>> {
    let full = measure_full(an, f, t, omega)?;
    let ms = &full.ms;
    let mut checks = vec![
        Inequality::new("proposition41_sqrt_phi", ms.restricted, ms.p_t_norm * ms.phi.value.sqrt(), true),
        Inequality::new("proposition41_printed", ms.restricted, ms.p_t_norm * ms.phi.value, false),
    ];
    checks.extend(theorem_checks(an, &full));
    checks.extend(corollary_checks(an, &full));
    Ok(full_report(an, full, checks, label))
}

/// One `(T, Omega)` pair of a region file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionConfig<S> {
    pub label: String,
    pub t: RegionX<S>,
    pub omega: RegionAB<S>,
}

/// `{"configurations": [{"label", "t", "omega"}, ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionFile<S> {
    pub configurations: Vec<RegionConfig<S>>,
}

impl<S: Scalar + Serialize + for<'de> Deserialize<'de>> RegionFile<S> {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| Error::Parse(format!("region file: {e}")))?;
        if file.configurations.is_empty() {
            return Err(Error::InvalidInput("region file lists no configurations".into()));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

/// Which region a sweep dilates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nest {
    T,
    Omega,
}

/// Full reports over a nested family obtained by dilating one region.
pub fn sweep<S: Scalar>(
    an: &Analyzer<S>,
    f: &SampledField<S>,
    base: &RegionConfig<S>,
    nest: Nest,
    factors: &[S],
) -> Result<Vec<ConcentrationReport<S>>> {
    factors
        .iter()
        .map(|&k| {
            let (t, omega) = match nest {
                Nest::T => (base.t.scaled(k), base.omega.clone()),
                Nest::Omega => (base.t.clone(), base.omega.scaled(k)),
            };
            let label = format!("{}@{:.6}", base.label, k.as_f64());
            match check_all(an, f, &t, &omega, &label) {
                Err(Error::Vacuous(_)) => {
                    // Keep the row with the measured concentrations.
                    let mut r = check_proposition_41(an, f, &t, &omega, &label)?;
                    r.epsilon_omega = Some(epsilon_concentration_coeffs(&an.transform(f)?, &omega)?);
                    Ok(r)
                }
                other => other,
            }
        })
        .collect()
}
