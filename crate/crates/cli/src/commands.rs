use std::fmt::Write as _;
use std::path::Path;

use cliffwave::cwt::{forward, plancherel_ratio, reconstruct, reconstruction_check, truncation_report, CoefficientField, Method};
use cliffwave::field::{admissibility_grid, fourier, SampledField};
use cliffwave::radial::{l1_norm, moment, CanonicalForm, MotherWavelet};
use cliffwave::uncertainty::{
    check_all, check_band_corollary, check_proposition_41, epsilon_concentration_coeffs, reports_to_csv, sweep as run_sweep,
    Analyzer, ConcentrationReport, Nest, RegionFile,
};
use cliffwave::{Error, Rational};

use crate::config::RunConfig;
use crate::manifest::Run;
use crate::CliError;

const DEFAULT_PLANCHEREL_TOL: f64 = 0.05;
const DEFAULT_RECONSTRUCTION_TOL: f64 = 0.1;
const DEFAULT_MOMENT_TOL: f64 = 1e-8;
/// `|F[psi](0)|` relative to the peak above which the grid route refuses.
const GRID_MEAN_TOL: f64 = 1e-3;

fn read_field(run: &mut Run, path: &Path) -> Result<SampledField<f64>, CliError> {
    let text = run.read(path)?;
    SampledField::from_csv(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn wavelet_build(cfg: &RunConfig, run: &mut Run) -> Result<(), CliError> {
    let (ell, alpha, beta, m) = (
        cfg.ell.ok_or_else(|| CliError::input("missing --ell"))?,
        cfg.alpha.ok_or_else(|| CliError::input("missing --alpha"))?,
        cfg.beta.ok_or_else(|| CliError::input("missing --beta"))?,
        cfg.dim()?,
    );
    let w = MotherWavelet::<Rational>::new(ell, alpha, beta, m)?;
    let psi = w.function();
    let (ca, cb) = psi.canonical();
    let mut out = String::new();
    writeln!(out, "wavelet l={ell} alpha={alpha} beta={beta} m={m}").unwrap();
    writeln!(out, "psi = {psi}").unwrap();
    writeln!(out, "polynomial = {}", w.polynomial()).unwrap();
    writeln!(out, "scalar part canonical = {}", canonical_text(&ca)).unwrap();
    writeln!(out, "vector part canonical = {}", canonical_text(&cb)).unwrap();
    writeln!(out, "form_defect = {:e}", w.form_defect()).unwrap();
    writeln!(out, "decay_exponent = {}", w.decay_exponent()).unwrap();
    writeln!(out, "moment_limit = {}", w.moment_limit()).unwrap();
    let orders = w.vanishing_moment_orders();
    writeln!(out, "vanishing_moment_orders = {}..{}", orders.start, orders.end).unwrap();
    writeln!(out, "l1_norm = {:e}", l1_norm::<f64, Rational>(psi)?).unwrap();
    writeln!(out, "l2_norm = {:e}", cliffwave::radial::l2_norm::<f64, Rational>(psi)?).unwrap();
    print!("{out}");
    run.write("wavelet.txt", &out)?;
    Ok(())
}

/// `(1-t)^p0 (1+t)^q0 (c0 + c1 t + ...)`.
fn canonical_text(c: &CanonicalForm<Rational>) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let poly: Vec<String> = c
        .poly
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != Rational::from_integer(0.into()))
        .map(|(k, v)| if k == 0 { v.to_string() } else { format!("{v}*t^{k}") })
        .collect();
    format!("(1-t)^{} (1+t)^{} ({})", c.p0, c.q0, poly.join(" + "))
}

pub fn wavelet_moments(cfg: &RunConfig, run: &mut Run, k_max: u32) -> Result<(), CliError> {
    let w = cfg.mother()?;
    let psi = w.function();
    let l1 = l1_norm::<f64, f64>(psi)?;
    let tol = cfg.moment_tol.unwrap_or(DEFAULT_MOMENT_TOL);
    let vanishing = w.vanishing_moment_orders();
    let mut csv = String::from("k,expected_zero,converges,norm,relative,value\n");
    let mut failed = Vec::new();
    for k in 0..=k_max {
        let expected_zero = k == 0 || vanishing.contains(&k);
        if k >= w.moment_limit() {
            writeln!(csv, "{k},{expected_zero},false,,,").unwrap();
            run.warn(format!("moment of order {k} diverges (limit {})", w.moment_limit()));
            continue;
        }
        let mv = moment::<f64, f64>(k, psi)?;
        let norm = mv.norm();
        let relative = norm / l1;
        if expected_zero && relative > tol {
            failed.push(k);
        }
        writeln!(csv, "{k},{expected_zero},true,{norm:.16e},{relative:.16e},{mv}").unwrap();
    }
    print!("{csv}");
    run.write("moments.csv", &csv)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(format!("moments {failed:?} exceed {tol:e} times the L1 norm")))
    }
}

pub fn wavelet_admissibility(cfg: &RunConfig, run: &mut Run, grid_route: bool) -> Result<(), CliError> {
    let w = cfg.mother()?;
    let radial = cliffwave::field::admissibility_radial::<f64, f64>(w.function())?;
    let mut csv = String::from("route,value,fourier_normalized,mean\n");
    writeln!(csv, "radial,{:.16e},{:.16e},{:.16e}", radial.value, radial.fourier_normalized, radial.mean).unwrap();
    if grid_route {
        let sampled = SampledField::sample(w.function(), cfg.grid()?)?;
        let hat = fourier(&sampled);
        for msg in hat.warnings() {
            run.warn(msg.clone());
        }
        let g = admissibility_grid(&hat, GRID_MEAN_TOL)?;
        writeln!(csv, "grid,{:.16e},{:.16e},{:.16e}", g.value, g.fourier_normalized, g.mean).unwrap();
    }
    print!("{csv}");
    run.write("admissibility.csv", &csv)?;
    Ok(())
}

pub enum SampleSource {
    Wavelet,
    Gaussian { sigma: f64 },
    Modulated { sigma: f64, k0: f64, angle: f64 },
}

pub fn field_sample(cfg: &RunConfig, run: &mut Run, src: SampleSource) -> Result<(), CliError> {
    let grid = cfg.grid()?;
    let field = match src {
        SampleSource::Wavelet => SampledField::sample(cfg.mother()?.function(), grid)?,
        SampleSource::Gaussian { sigma } => gaussian(grid, sigma, 0.0, 0.0)?,
        SampleSource::Modulated { sigma, k0, angle } => gaussian(grid, sigma, k0, angle)?,
    };
    run.write("field.csv", &field.to_csv())?;
    println!("field: {} nodes, norm {:.6e}", field.nodes(), field.norm());
    Ok(())
}

/// `exp(-|x|^2 / 2 sigma^2) cos(k0 <d, x>)` with `d = (cos angle, sin angle, 0, ...)`.
fn gaussian(grid: cliffwave::field::GridSpec<f64>, sigma: f64, k0: f64, angle: f64) -> Result<SampledField<f64>, CliError> {
    if !(sigma > 0.0) {
        return Err(CliError::input("--sigma must be positive"));
    }
    let (c, s) = (angle.cos(), angle.sin());
    Ok(SampledField::from_fn(grid, move |x, out| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let phase = x[0] * c + x.get(1).copied().unwrap_or(0.0) * s;
        out[0] = (-r2 / (2.0 * sigma * sigma)).exp() * (k0 * phase).cos();
    }))
}

pub fn field_norm(run: &mut Run, path: &Path) -> Result<(), CliError> {
    let f = read_field(run, path)?;
    let csv = format!(
        "norm,norm_sqr,max_abs,boundary_max\n{:.16e},{:.16e},{:.16e},{:.16e}\n",
        f.norm(),
        f.norm_sqr(),
        f.max_abs(),
        f.boundary_max()
    );
    print!("{csv}");
    run.write("norm.csv", &csv)?;
    Ok(())
}

pub fn field_fft(run: &mut Run, path: &Path) -> Result<(), CliError> {
    let f = read_field(run, path)?;
    let hat = fourier(&f);
    for msg in hat.warnings() {
        run.warn(msg.clone());
    }
    run.write("fourier.csv", &hat.to_csv())?;
    println!("fourier: {} nodes, hermitian defect {:.3e}", hat.nodes(), hat.hermitian_defect());
    Ok(())
}

pub fn cwt_forward(cfg: &RunConfig, run: &mut Run, path: &Path, method: Method) -> Result<(), CliError> {
    let f = read_field(run, path)?;
    let (w, _) = cfg.wavelet()?;
    let setup = cfg.setup(f.grid())?;
    let c = forward(&w, &f, &setup, method)?;
    let tr = truncation_report(&c);
    if !tr.passes() {
        run.warn(format!(
            "edge energy above the reconstruction limit: smallest scale {:.3e}, largest scale {:.3e}, translation shell {:.3e}",
            tr.smallest_scale, tr.largest_scale, tr.translation_shell
        ));
    }
    run.write("coefficients.csv", &c.to_csv())?;
    println!("coefficients: energy {:.6e}", c.energy());
    Ok(())
}

pub fn cwt_inverse(cfg: &RunConfig, run: &mut Run, coeffs: &Path, like: Option<&Path>, method: Method) -> Result<(), CliError> {
    let text = run.read(coeffs)?;
    let c = CoefficientField::<f64>::from_csv(&text).map_err(|e| CliError::input(format!("{}: {e}", coeffs.display())))?;
    let target = match like {
        Some(p) => read_field(run, p)?.grid().clone(),
        None => c.grid().clone(),
    };
    let (w, adm) = cfg.wavelet()?;
    let g = reconstruct(&w, &c, &target, adm, method)?;
    run.write("reconstruction.csv", &g.to_csv())?;
    println!("reconstruction: norm {:.6e}", g.norm());
    Ok(())
}

pub fn verify_plancherel(cfg: &RunConfig, run: &mut Run, path: &Path, method: Method) -> Result<(), CliError> {
    let f = read_field(run, path)?;
    let (w, adm) = cfg.wavelet()?;
    let c = forward(&w, &f, &cfg.setup(f.grid())?, method)?;
    let r = plancherel_ratio(&c, &f, adm)?;
    let tol = cfg.plancherel_tol.unwrap_or(DEFAULT_PLANCHEREL_TOL);
    let ratio = r.ratio.ok_or_else(|| CliError::input("the zero field has no Plancherel ratio"))?;
    let t = &r.truncation;
    let csv = format!(
        "coefficient_energy,field_energy,admissibility,ratio,unsquared_ratio,smallest_scale,largest_scale,translation_shell,tolerance\n\
         {:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{tol:e}\n",
        r.coefficient_energy,
        r.field_energy,
        r.admissibility,
        ratio,
        r.unsquared_ratio.unwrap_or(f64::NAN),
        t.smallest_scale,
        t.largest_scale,
        t.translation_shell
    );
    print!("{csv}");
    run.write("plancherel.csv", &csv)?;
    if !t.passes() {
        return Err(Error::TruncationGate(format!(
            "edge energy fractions {:.3e} / {:.3e} / {:.3e} make the ratio meaningless",
            t.smallest_scale, t.largest_scale, t.translation_shell
        ))
        .into());
    }
    if (ratio - 1.0).abs() > tol {
        return Err(CliError::Check(format!("Plancherel ratio {ratio:.6} is off 1 by more than {tol}")));
    }
    Ok(())
}

pub fn verify_reconstruction(cfg: &RunConfig, run: &mut Run, path: &Path, method: Method) -> Result<(), CliError> {
    let f = read_field(run, path)?;
    let (w, adm) = cfg.wavelet()?;
    let (g, r) = reconstruction_check(&w, &f, &cfg.setup(f.grid())?, adm, method)?;
    let tol = cfg.reconstruction_tol.unwrap_or(DEFAULT_RECONSTRUCTION_TOL);
    let err = r.relative_error.ok_or_else(|| CliError::input("the zero field has no relative error"))?;
    let csv = format!(
        "field_norm,error_norm,relative_error,tolerance\n{:.16e},{:.16e},{err:.16e},{tol:e}\n",
        r.field_norm, r.error_norm
    );
    print!("{csv}");
    run.write("reconstruction.csv", &g.to_csv())?;
    run.write("reconstruction_error.csv", &csv)?;
    if err > tol {
        return Err(CliError::Check(format!("relative reconstruction error {err:.4e} exceeds {tol}")));
    }
    Ok(())
}

fn analyzer(cfg: &RunConfig, f: &SampledField<f64>) -> Result<Analyzer<f64>, CliError> {
    let (w, adm) = cfg.wavelet()?;
    Ok(Analyzer::new(w, adm, cfg.setup(f.grid())?)?)
}

fn region_file(cfg: &RunConfig, run: &mut Run) -> Result<RegionFile<f64>, CliError> {
    let path = cfg.regions.as_ref().ok_or_else(|| CliError::input("missing --regions"))?;
    let text = run.read(path)?;
    RegionFile::from_json(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub enum UncertaintyKind {
    Full,
    Proposition41,
}

/// A report for a configuration whose concentrations leave no room for the
/// theorem: only the projection bound is evaluated.
fn vacuous_report(
    an: &Analyzer<f64>,
    f: &SampledField<f64>,
    t: &cliffwave::uncertainty::RegionX<f64>,
    omega: &cliffwave::uncertainty::RegionAB<f64>,
    label: &str,
) -> Result<ConcentrationReport<f64>, CliError> {
    let mut r = check_proposition_41(an, f, t, omega, label)?;
    r.epsilon_omega = Some(epsilon_concentration_coeffs(&an.transform(f)?, omega)?);
    Ok(r)
}

pub fn verify_uncertainty(cfg: &RunConfig, run: &mut Run, path: &Path, kind: UncertaintyKind) -> Result<(), CliError> {
    let f = read_field(run, path)?;
    let regions = region_file(cfg, run)?;
    let an = analyzer(cfg, &f)?;
    let mut reports = Vec::new();
    let mut summary = String::new();
    for rc in &regions.configurations {
        let report = match kind {
            UncertaintyKind::Proposition41 => check_proposition_41(&an, &f, &rc.t, &rc.omega, &rc.label)?,
            UncertaintyKind::Full => match check_all(&an, &f, &rc.t, &rc.omega, &rc.label) {
                Ok(mut r) => {
                    if rc.omega.is_band() {
                        let band = check_band_corollary(&an, &f, &rc.t, &rc.omega, &rc.label)?;
                        r.checks.extend(band.checks.into_iter().filter(|c| c.name.starts_with("band_")));
                    }
                    r
                }
                Err(Error::Vacuous(msg)) => {
                    run.warn(format!("{}: vacuous, {msg}", rc.label));
                    vacuous_report(&an, &f, &rc.t, &rc.omega, &rc.label)?
                }
                Err(e) => return Err(e.into()),
            },
        };
        summary.push_str(&report.summary());
        summary.push('\n');
        reports.push(report);
    }
    print!("{summary}");
    let name = match kind {
        UncertaintyKind::Full => "concentration.csv",
        UncertaintyKind::Proposition41 => "proposition41.csv",
    };
    run.write(name, &reports_to_csv(&reports))?;
    run.write("summary.txt", &summary)?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passes()).map(|r| r.label.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(format!("gating inequalities fail for {failed:?}")))
    }
}

pub fn sweep(
    cfg: &RunConfig,
    run: &mut Run,
    path: &Path,
    nest: Nest,
    factors: &[f64],
    label: Option<&str>,
) -> Result<(), CliError> {
    if factors.is_empty() || factors.iter().any(|&k| !(k > 0.0)) {
        return Err(CliError::input("--factors must be positive"));
    }
    let f = read_field(run, path)?;
    let regions = region_file(cfg, run)?;
    let base = match label {
        None => &regions.configurations[0],
        Some(l) => regions
            .configurations
            .iter()
            .find(|c| c.label == l)
            .ok_or_else(|| CliError::input(format!("no configuration labelled {l:?}")))?,
    };
    let an = analyzer(cfg, &f)?;
    let reports = run_sweep(&an, &f, base, nest, factors)?;
    for r in &reports {
        println!("{}", r.summary());
    }
    run.write("sweep.csv", &reports_to_csv(&reports))?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passes()).map(|r| r.label.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(format!("gating inequalities fail for {failed:?}")))
    }
}
