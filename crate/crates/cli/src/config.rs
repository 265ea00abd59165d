//! Run parameters: command-line flags layered over an optional flat TOML file
//! whose keys mirror the flag names (with `_` for `-`).

use crate::error::{CliError, CliResult};
use clap::{Args, ValueEnum};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Edge hopping Δ in (0, 1]
    #[arg(long)]
    pub delta: Option<f64>,
    /// Final time (units of inverse bulk hopping)
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Sample spacing for `exact`, integrator step for `evolve`
    #[arg(long)]
    pub dt: Option<f64>,
    /// Measurement interval (lattice time); segment length in mm for `bpm`/`figure fig4`
    #[arg(long)]
    pub tau: Option<f64>,
    /// Flat TOML file with default values for any of these flags
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Output file (directory for `figure`); stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Number of measurements for `zeno --tau`
    #[arg(long)]
    pub count: Option<usize>,
    /// Lattice size for `evolve` (default 2·tmax + 20)
    #[arg(long)]
    pub sites: Option<usize>,
    /// Sites written by `evolve`
    #[arg(long)]
    pub show: Option<usize>,
    /// Store every integrator step
    #[arg(long)]
    pub full_resolution: Option<bool>,

    /// Propagation length (mm)
    #[arg(long)]
    pub zmax: Option<f64>,
    /// Propagation step (mm)
    #[arg(long)]
    pub dz: Option<f64>,
    /// Transverse grid step (µm)
    #[arg(long)]
    pub dx: Option<f64>,
    /// Spacing of intensity-map rows (mm)
    #[arg(long)]
    pub map_every: Option<f64>,
    /// Boundary gap a₀ (µm)
    #[arg(long)]
    pub first_gap: Option<f64>,
    /// Bulk period a (µm)
    #[arg(long)]
    pub spacing: Option<f64>,
    #[arg(long)]
    pub n_guides: Option<usize>,
    /// Channel half-width w (µm)
    #[arg(long)]
    pub channel_width: Option<f64>,
    #[arg(long)]
    pub profile_exponent: Option<u32>,
    #[arg(long)]
    pub delta_n: Option<f64>,
    /// Free-space wavelength (µm)
    #[arg(long)]
    pub wavelength: Option<f64>,
    #[arg(long)]
    pub n_substrate: Option<f64>,
    /// `modes`: solve for the channel width giving this Δ
    #[arg(long)]
    pub calibrate: Option<f64>,
}

macro_rules! overlay {
    ($top:expr, $base:expr, $($f:ident),*) => {
        Settings { $($f: $top.$f.or($base.$f),)* }
    };
}

impl Settings {
    /// Flags win over file values.
    pub fn over(self, base: Settings) -> Settings {
        overlay!(
            self,
            base,
            delta,
            tmax,
            dt,
            tau,
            config,
            out,
            format,
            count,
            sites,
            show,
            full_resolution,
            zmax,
            dz,
            dx,
            map_every,
            first_gap,
            spacing,
            n_guides,
            channel_width,
            profile_exponent,
            delta_n,
            wavelength,
            n_substrate,
            calibrate
        )
    }

    pub fn from_toml(text: &str) -> CliResult<Settings> {
        toml::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Settings> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Applies `--config`, if any.
    pub fn resolve(self) -> CliResult<Settings> {
        match &self.config {
            Some(p) => {
                let file = Settings::load(p)?;
                Ok(self.over(file))
            }
            None => Ok(self),
        }
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn require_delta(&self) -> CliResult<f64> {
        self.delta
            .ok_or_else(|| CliError::Validation("--delta is required".into()))
    }
}
