use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use num_complex::Complex64 as C64;
use raman_core::collective::CollectiveState;
use raman_core::raman::{Geometry, RamanConfig};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// W-state enhancement against 2 - 2/N for N = 2..=n-max
    ScanW,
    /// Closed-form vs brute-force enhancement for every occupation triple
    ScanPartitions,
    /// Pair correlation of two-level Dicke states
    DickeCorr,
    /// Fidelity of the scattered W state with its complementary W state
    GeometryFidelity,
    /// Manifold-summed Raman rate of one collective state
    Rate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ScanW => "scan-w",
            Command::ScanPartitions => "scan-partitions",
            Command::DickeCorr => "dicke-corr",
            Command::GeometryFidelity => "geometry-fidelity",
            Command::Rate => "rate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Command-line configuration of one batch run.
#[derive(Clone, Debug, Parser)]
#[command(
    name = "raman-lab",
    version,
    about = "Raman enhancement for entangled atomic chains"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Number of atoms for single-size commands
    #[arg(long)]
    pub n: Option<usize>,

    /// Largest number of atoms for scans
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,

    /// Pump detuning from the i -> l transition
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub detuning: f64,

    #[arg(long, default_value_t = 1.0)]
    pub field_plus: f64,

    #[arg(long, default_value_t = 1.0)]
    pub field_minus: f64,

    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub dipole_il: f64,

    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub dipole_fl: f64,

    /// JSON geometry file with positions, k_laser and k_scattered
    #[arg(long)]
    pub geometry: Option<PathBuf>,

    /// Occupations "n_i,n_l,n_f" for the rate command
    #[arg(long, value_parser = parse_state)]
    pub state: Option<CollectiveState>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file; standard output when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Largest accepted residual
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
}

impl RunConfig {
    /// Defaults for `command` with every optional flag unset.
    pub fn new(command: Command) -> Self {
        Self {
            command,
            n: None,
            n_max: None,
            detuning: 1.0,
            field_plus: 1.0,
            field_minus: 1.0,
            dipole_il: 1.0,
            dipole_fl: 1.0,
            geometry: None,
            state: None,
            format: Format::Csv,
            out: None,
            tolerance: 1e-9,
        }
    }

    pub fn raman_config(&self) -> Result<RamanConfig, CliError> {
        let mut cfg = RamanConfig::with_detuning(self.detuning);
        cfg.field_plus = self.field_plus;
        cfg.field_minus = self.field_minus;
        cfg.dipole_il = C64::new(self.dipole_il, 0.0);
        cfg.dipole_fl = C64::new(self.dipole_fl, 0.0);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(CliError::Config(format!(
                "tolerance must be a positive number, got {}",
                self.tolerance
            )));
        }
        self.raman_config()?;
        Ok(())
    }
}

fn parse_state(s: &str) -> Result<CollectiveState, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| format!("expected n_i,n_l,n_f: {e}"))?;
    match parts[..] {
        [n_i, n_l, n_f] => Ok(CollectiveState::new(n_i, n_l, n_f)),
        _ => Err(format!("expected three occupations, got {}", parts.len())),
    }
}

/// On-disk geometry: `{"positions": [[x,y,z],...], "k_laser": [x,y,z], "k_scattered": [x,y,z]}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFile {
    pub positions: Vec<[f64; 3]>,
    pub k_laser: [f64; 3],
    pub k_scattered: [f64; 3],
}

impl GeometryFile {
    pub fn parse(text: &str) -> Result<Geometry, CliError> {
        let file: GeometryFile = serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("malformed geometry: {e}")))?;
        Ok(Geometry::new(
            file.positions,
            file.k_laser,
            file.k_scattered,
        )?)
    }

    pub fn load(path: &Path) -> Result<Geometry, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }
}
