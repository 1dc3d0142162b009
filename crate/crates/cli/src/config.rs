use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

use cliffwave::cwt::{Convention, CwtSetup, Method, ScaleGrid, Wavelet};
use cliffwave::field::{admissibility_radial, GridSpec};
use cliffwave::radial::MotherWavelet;

use crate::CliError;

/// Every knob of a run. Flags fill it in, a config file given with
/// `--config` overrides them, and the effective result is saved next to the
/// outputs so the run can be repeated.
#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Dimension m of the space.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Wavelet order l.
    #[arg(long, global = true)]
    pub ell: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<i32>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<i32>,
    /// Nodes per axis of generated grids.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Grid spacing of generated grids.
    #[arg(long, global = true)]
    pub h: Option<f64>,
    #[arg(long, global = true)]
    pub a_min: Option<f64>,
    #[arg(long, global = true)]
    pub a_max: Option<f64>,
    #[arg(long, global = true)]
    pub n_scales: Option<usize>,
    /// conjugate-left or product-right.
    #[arg(long, global = true)]
    pub convention: Option<String>,
    /// Number of Spin(2) angles (m = 2 only).
    #[arg(long, global = true)]
    pub spin_angles: Option<usize>,
    /// Region description file (JSON).
    #[arg(long, global = true)]
    pub regions: Option<PathBuf>,
    #[arg(long, global = true)]
    pub plancherel_tol: Option<f64>,
    #[arg(long, global = true)]
    pub reconstruction_tol: Option<f64>,
    #[arg(long, global = true)]
    pub moment_tol: Option<f64>,
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
}

macro_rules! overlay {
    ($dst:expr, $src:expr, $($f:ident),*) => {
        $(if $src.$f.is_some() { $dst.$f = $src.$f.clone(); })*
    };
}

impl RunConfig {
    /// Reads a TOML or JSON file (by extension, TOML otherwise).
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
        } else {
            toml::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
        }
    }

    pub fn overlay(&mut self, file: &RunConfig) {
        overlay!(
            self, file, dim, ell, alpha, beta, n, h, a_min, a_max, n_scales, convention, spin_angles, regions,
            plancherel_tol, reconstruction_tol, moment_tol, out_dir
        );
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| PathBuf::from("."))
    }

    fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T, CliError> {
        v.clone().ok_or_else(|| CliError::input(format!("missing --{name}")))
    }

    pub fn dim(&self) -> Result<usize, CliError> {
        Self::need(&self.dim, "dim")
    }

    pub fn mother(&self) -> Result<MotherWavelet<f64>, CliError> {
        let ell = Self::need(&self.ell, "ell")?;
        let alpha = Self::need(&self.alpha, "alpha")?;
        let beta = Self::need(&self.beta, "beta")?;
        Ok(MotherWavelet::new(ell, alpha, beta, self.dim()?)?)
    }

    /// Sampled wavelet together with its admissibility constant.
    pub fn wavelet(&self) -> Result<(Wavelet<f64>, f64), CliError> {
        let mother = self.mother()?;
        let adm = admissibility_radial::<f64, f64>(mother.function())?;
        Ok((Wavelet::from_mother(&mother)?, adm.value))
    }

    pub fn grid(&self) -> Result<GridSpec<f64>, CliError> {
        Ok(GridSpec::centered(self.dim()?, Self::need(&self.n, "n")?, Self::need(&self.h, "h")?)?)
    }

    pub fn scales(&self) -> Result<ScaleGrid<f64>, CliError> {
        Ok(ScaleGrid::geometric(
            Self::need(&self.a_min, "a-min")?,
            Self::need(&self.a_max, "a-max")?,
            Self::need(&self.n_scales, "n-scales")?,
        )?)
    }

    pub fn convention(&self) -> Result<Convention, CliError> {
        match &self.convention {
            None => Ok(Convention::default()),
            Some(s) => s.parse().map_err(|_| CliError::input(format!("unknown convention {s:?}"))),
        }
    }

    /// Translations on the sample grid.
    pub fn setup(&self, grid: &GridSpec<f64>) -> Result<CwtSetup<f64>, CliError> {
        Ok(CwtSetup::new(self.scales()?, grid.clone())
            .with_convention(self.convention()?)
            .with_spin_angles(self.spin_angles.unwrap_or(0)))
    }

    pub fn method(direct: bool) -> Method {
        if direct {
            Method::Direct
        } else {
            Method::Fast
        }
    }
}
