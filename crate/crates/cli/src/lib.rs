//! Batch front end for `raman-core`.
//!
//! Every command maps to one library entry point and produces a [`Table`]
//! that is rendered as CSV or JSON. Output is deterministic for a given
//! configuration.
//!
//! Exit codes: `0` success, `1` a residual exceeded the tolerance or an
//! I/O failure, `2` invalid configuration, `3` resource cap exceeded,
//! `4` singular detuning.

pub mod config;
pub mod table;

use std::f64::consts::PI;
use std::path::PathBuf;

use raman_core::analysis::{
    dicke_pair_correlation, rate_ratio_in, scan_partitions, scan_w, single_atom_rate,
    EnhancementRecord,
};
use raman_core::collective::{embed_collective, CollectiveState};
use raman_core::raman::{scattered_state, total_rate, Geometry, RamanConfig};
use thiserror::Error;

pub use config::{Command, Format, GeometryFile, RunConfig};
pub use table::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_SINGULAR: i32 = 4;

const DEFAULT_W_N_MAX: usize = 8;
const DEFAULT_PARTITIONS_N_MAX: usize = 6;
const DEFAULT_DICKE_N_MAX: usize = 10;
const DEFAULT_N: usize = 3;
const SWEEP_STEPS: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] raman_core::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use raman_core::Error as E;
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Core(E::ResourceLimit(_)) => EXIT_RESOURCE,
            CliError::Core(E::SingularDenominator(_)) => EXIT_SINGULAR,
            CliError::Core(_) => EXIT_CONFIG,
            CliError::Io { .. } => EXIT_TOLERANCE,
        }
    }
}

/// Computes the table for `config` without writing anything.
pub fn run(config: &RunConfig) -> Result<Table, CliError> {
    config.validate()?;
    let cfg = config.raman_config()?;
    match config.command {
        Command::ScanW => run_scan_w(config, &cfg),
        Command::ScanPartitions => run_scan_partitions(config, &cfg),
        Command::DickeCorr => run_dicke_corr(config),
        Command::GeometryFidelity => run_geometry_fidelity(config, &cfg),
        Command::Rate => run_rate(config, &cfg),
    }
}

/// Runs `config`, writes the rendered table, and returns the exit code.
pub fn execute(config: &RunConfig) -> Result<i32, CliError> {
    let table = run(config)?;
    let text = table.render(config.format);
    match &config.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => print!("{text}"),
    }
    if table.within(config.tolerance) {
        Ok(EXIT_OK)
    } else {
        eprintln!(
            "raman-lab: largest residual {:e} exceeds tolerance {:e}",
            table.max_residual().unwrap_or(f64::NAN),
            config.tolerance
        );
        Ok(EXIT_TOLERANCE)
    }
}

fn scan_n_max(config: &RunConfig, default: usize) -> usize {
    config.n_max.or(config.n).unwrap_or(default)
}

fn run_scan_w(config: &RunConfig, cfg: &RamanConfig) -> Result<Table, CliError> {
    let mut table = Table::new(Command::ScanW, &["N", "formula", "bruteforce", "residual"]);
    for r in scan_w(scan_n_max(config, DEFAULT_W_N_MAX), cfg)? {
        table.push(vec![
            Cell::Int(r.num_atoms),
            Cell::Real(r.formula_value),
            Cell::Real(r.bruteforce_value),
            Cell::Residual(r.residual),
        ]);
    }
    Ok(table)
}

fn partition_row(r: &EnhancementRecord) -> Vec<Cell> {
    vec![
        Cell::Int(r.num_atoms),
        Cell::Int(r.n_i),
        Cell::Int(r.n_l),
        Cell::Int(r.n_f),
        Cell::Real(r.formula_value),
        Cell::Real(r.bruteforce_value),
        Cell::Residual(r.residual),
    ]
}

fn run_scan_partitions(config: &RunConfig, cfg: &RamanConfig) -> Result<Table, CliError> {
    let mut table = Table::new(
        Command::ScanPartitions,
        &[
            "N",
            "n_i",
            "n_l",
            "n_f",
            "formula",
            "bruteforce",
            "residual",
        ],
    );
    for r in scan_partitions(scan_n_max(config, DEFAULT_PARTITIONS_N_MAX), cfg)? {
        table.push(partition_row(&r));
    }
    Ok(table)
}

fn run_dicke_corr(config: &RunConfig) -> Result<Table, CliError> {
    let sizes: Vec<usize> = match (config.n, config.n_max) {
        (Some(n), None) => vec![n],
        (_, n_max) => (2..=n_max.unwrap_or(DEFAULT_DICKE_N_MAX)).collect(),
    };
    if sizes.is_empty() || sizes[0] < 2 {
        return Err(CliError::Config("dicke-corr needs N >= 2".into()));
    }
    let mut table = Table::new(Command::DickeCorr, &["N", "correlation"]);
    table
        .notes
        .push("state |N/2, M> with M = 0 for even N and M = -1/2 for odd N".into());
    for n in sizes {
        let m = if n % 2 == 0 { 0.0 } else { -0.5 };
        table.push(vec![
            Cell::Int(n),
            Cell::Real(dicke_pair_correlation(n, m)?),
        ]);
    }
    Ok(table)
}

/// Fidelity of the scattered `(N-1, 0, 1)` W state with `(N-2, 0, 2)` and
/// its squared norm relative to one atom.
fn w_scattering(g: &Geometry, cfg: &RamanConfig) -> Result<(f64, f64), CliError> {
    let n = g.num_atoms();
    if n < 2 {
        return Err(CliError::Config(
            "geometry-fidelity needs at least two atoms".into(),
        ));
    }
    let initial = embed_collective(CollectiveState::new(n - 1, 0, 1))?;
    let target = embed_collective(CollectiveState::new(n - 2, 0, 2))?;
    let scattered = scattered_state(&initial, cfg, g)?;
    let fidelity = scattered.fidelity_with(&target)?;
    Ok((fidelity, scattered.squared_norm / single_atom_rate(cfg)?))
}

/// Atoms on the x axis at unit spacing; pump and Stokes beams tilted by
/// `+-theta` from the z axis with `|k| = pi / 2`, so the momentum transfer is
/// `(pi sin(theta), 0, 0)`.
pub fn tilted_line_geometry(num_atoms: usize, theta: f64) -> Result<Geometry, CliError> {
    let k = PI / 2.0;
    let positions = (0..num_atoms).map(|a| [a as f64, 0.0, 0.0]).collect();
    Ok(Geometry::new(
        positions,
        [k * theta.sin(), 0.0, k * theta.cos()],
        [-k * theta.sin(), 0.0, k * theta.cos()],
    )?)
}

fn run_geometry_fidelity(config: &RunConfig, cfg: &RamanConfig) -> Result<Table, CliError> {
    if let Some(path) = &config.geometry {
        let g = GeometryFile::load(path)?;
        if config.n.is_some_and(|n| n != g.num_atoms()) {
            return Err(CliError::Config(format!(
                "--n disagrees with the {} atoms in the geometry file",
                g.num_atoms()
            )));
        }
        let (fidelity, ratio) = w_scattering(&g, cfg)?;
        let mut table = Table::new(
            Command::GeometryFidelity,
            &["N", "fidelity", "squared_norm_ratio"],
        );
        table.push(vec![
            Cell::Int(g.num_atoms()),
            Cell::Real(fidelity),
            Cell::Real(ratio),
        ]);
        return Ok(table);
    }
    let n = config.n.unwrap_or(DEFAULT_N);
    let mut table = Table::new(
        Command::GeometryFidelity,
        &["theta", "fidelity", "squared_norm_ratio"],
    );
    table.notes.push(format!(
        "{n} atoms at unit spacing on x, momentum transfer (pi sin(theta), 0, 0)"
    ));
    for step in 0..=SWEEP_STEPS {
        let theta = PI / 2.0 * step as f64 / SWEEP_STEPS as f64;
        let (fidelity, ratio) = w_scattering(&tilted_line_geometry(n, theta)?, cfg)?;
        table.push(vec![
            Cell::Real(theta),
            Cell::Real(fidelity),
            Cell::Real(ratio),
        ]);
    }
    Ok(table)
}

fn run_rate(config: &RunConfig, cfg: &RamanConfig) -> Result<Table, CliError> {
    let geometry = config
        .geometry
        .as_deref()
        .map(GeometryFile::load)
        .transpose()?;
    let state = match (config.state, config.n) {
        (Some(cs), Some(n)) if cs.num_atoms() != n => {
            return Err(CliError::Config(format!(
                "--state {cs:?} does not have {n} atoms"
            )))
        }
        (Some(cs), _) => cs,
        (None, n) => {
            let n = n
                .or(geometry.as_ref().map(Geometry::num_atoms))
                .unwrap_or(DEFAULT_N);
            if n < 2 {
                return Err(CliError::Config(
                    "the default W state needs N >= 2; pass --state".into(),
                ));
            }
            CollectiveState::new(n - 1, 0, 1)
        }
    };
    let n = state.num_atoms();
    if n == 0 {
        return Err(CliError::Config("state has no atoms".into()));
    }
    let g = geometry.unwrap_or_else(|| Geometry::uniform(n));
    if g.num_atoms() != n {
        return Err(CliError::Config(format!(
            "state has {n} atoms but the geometry has {}",
            g.num_atoms()
        )));
    }
    let rate = total_rate(&embed_collective(state)?, cfg, &g)?;
    let single = single_atom_rate(cfg)?;
    let ratio = if state.n_i == 0 {
        0.0
    } else {
        rate_ratio_in(state, cfg, &g)?
    };
    let mut table = Table::new(
        Command::Rate,
        &[
            "N",
            "n_i",
            "n_l",
            "n_f",
            "rate",
            "single_atom_rate",
            "ratio",
        ],
    );
    table.push(vec![
        Cell::Int(n),
        Cell::Int(state.n_i),
        Cell::Int(state.n_l),
        Cell::Int(state.n_f),
        Cell::Real(rate),
        Cell::Real(single),
        Cell::Real(ratio),
    ]);
    Ok(table)
}
