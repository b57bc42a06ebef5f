//! Second-order amplitude for stimulated Raman scattering on a chain of
//! three-level atoms.
//!
//! An `i -> l` absorption of the pump photon (`omega_plus`, wavevector
//! `k_laser`) is followed by stimulated `l -> f` emission into the Stokes
//! mode (`omega_minus`, wavevector `k_scattered`). Only this time ordering
//! is kept. The amplitude is
//!
//! ```text
//! <f| V- G V+ |i>,   G = sum_m |m><m| / (E_i - E_m + omega_plus)
//! ```
//!
//! with `m` running over product eigenstates of the free Hamiltonian.
//! Energy conservation fixes `omega_minus = omega_plus - (e_f - e_i)`.
//! Units have `hbar = 1`.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::error::{invalid, Error, Result};
use crate::hilbert::{occupations_of, StateVector, TransitionSum};
use crate::states::{fidelity, LevelLabels};

const LEVELS: LevelLabels = LevelLabels::RAMAN;

/// Level energies, pump frequency, field amplitudes and dipole elements.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RamanConfig {
    pub energy_i: f64,
    pub energy_l: f64,
    pub energy_f: f64,
    pub omega_plus: f64,
    pub field_plus: f64,
    pub field_minus: f64,
    pub dipole_il: C64,
    pub dipole_fl: C64,
}

impl Default for RamanConfig {
    fn default() -> Self {
        Self::with_detuning(1.0)
    }
}

impl RamanConfig {
    /// Unit fields and dipoles with the pump detuned by `detuning` from the
    /// `i -> l` line. Level energies are `0`, `10`, `1`.
    pub fn with_detuning(detuning: f64) -> Self {
        let energy_l = 10.0;
        Self {
            energy_i: 0.0,
            energy_l,
            energy_f: 1.0,
            omega_plus: energy_l - detuning,
            field_plus: 1.0,
            field_minus: 1.0,
            dipole_il: C64::new(1.0, 0.0),
            dipole_fl: C64::new(1.0, 0.0),
        }
    }

    /// `e_l - e_i - omega_plus`.
    pub fn detuning(&self) -> f64 {
        self.energy_l - self.energy_i - self.omega_plus
    }

    /// Stokes frequency on the energy shell.
    pub fn omega_minus(&self) -> f64 {
        self.omega_plus - (self.energy_f - self.energy_i)
    }

    pub fn level_energy(&self, level: usize) -> f64 {
        match level {
            0 => self.energy_i,
            1 => self.energy_l,
            _ => self.energy_f,
        }
    }

    /// Free energy of a chain with the given per-level occupations.
    pub fn free_energy(&self, occupations: &[usize]) -> f64 {
        occupations
            .iter()
            .enumerate()
            .map(|(level, &n)| n as f64 * self.level_energy(level))
            .sum()
    }

    /// `E+ E- |d_il| |d_fl|`, the single-atom coupling scale.
    pub fn coupling(&self) -> f64 {
        self.field_plus * self.field_minus * self.dipole_il.norm() * self.dipole_fl.norm()
    }

    pub fn validate(&self) -> Result<()> {
        let reals = [
            self.energy_i,
            self.energy_l,
            self.energy_f,
            self.omega_plus,
            self.field_plus,
            self.field_minus,
        ];
        if reals.iter().any(|x| !x.is_finite())
            || !self.dipole_il.is_finite()
            || !self.dipole_fl.is_finite()
        {
            return invalid("configuration values must be finite");
        }
        if self.detuning() == 0.0 {
            return Err(Error::SingularDenominator(
                "pump is resonant with the i -> l transition".into(),
            ));
        }
        if self.omega_minus() <= 0.0 {
            return invalid(format!(
                "Stokes frequency {} must be positive",
                self.omega_minus()
            ));
        }
        if self.field_plus <= 0.0 || self.field_minus <= 0.0 {
            return invalid("field amplitudes must be positive");
        }
        if self.dipole_il.norm() == 0.0 || self.dipole_fl.norm() == 0.0 {
            return invalid("dipole matrix elements must be nonzero");
        }
        Ok(())
    }
}

/// Atom positions and the pump/Stokes wavevectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Geometry {
    pub positions: Vec<[f64; 3]>,
    pub k_laser: [f64; 3],
    pub k_scattered: [f64; 3],
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn phase(angle: f64) -> C64 {
    C64::from_polar(1.0, angle)
}

impl Geometry {
    pub fn new(positions: Vec<[f64; 3]>, k_laser: [f64; 3], k_scattered: [f64; 3]) -> Result<Self> {
        if positions.is_empty() {
            return invalid("geometry needs at least one atom");
        }
        let all = positions.iter().chain([&k_laser, &k_scattered]);
        if all.flat_map(|v| v.iter()).any(|x| !x.is_finite()) {
            return invalid("geometry coordinates must be finite");
        }
        Ok(Self {
            positions,
            k_laser,
            k_scattered,
        })
    }

    /// All atoms at the origin with zero wavevectors: every phase is one.
    pub fn uniform(num_atoms: usize) -> Self {
        Self {
            positions: vec![[0.0; 3]; num_atoms],
            k_laser: [0.0; 3],
            k_scattered: [0.0; 3],
        }
    }

    pub fn num_atoms(&self) -> usize {
        self.positions.len()
    }

    /// `k_laser - k_scattered`.
    pub fn momentum_transfer(&self) -> [f64; 3] {
        [
            self.k_laser[0] - self.k_scattered[0],
            self.k_laser[1] - self.k_scattered[1],
            self.k_laser[2] - self.k_scattered[2],
        ]
    }

    /// Copy with every position shifted by `shift`.
    pub fn translated(&self, shift: [f64; 3]) -> Self {
        Self {
            positions: self
                .positions
                .iter()
                .map(|r| [r[0] + shift[0], r[1] + shift[1], r[2] + shift[2]])
                .collect(),
            ..self.clone()
        }
    }
}

/// `exp(i (k_laser - k_scattered) . R_a)` for every atom.
pub fn phase_factors(g: &Geometry) -> Vec<C64> {
    let q = g.momentum_transfer();
    g.positions.iter().map(|r| phase(dot(&q, r))).collect()
}

/// `V+ = E+ d_il sum_a exp(i k_laser . R_a) |l>_a <i|`.
pub fn absorption_operator(cfg: &RamanConfig, g: &Geometry) -> Result<TransitionSum> {
    let scale = cfg.dipole_il * cfg.field_plus;
    let coefficients = g
        .positions
        .iter()
        .map(|r| scale * phase(dot(&g.k_laser, r)))
        .collect();
    TransitionSum::new(3, LEVELS.intermediate, LEVELS.initial, coefficients)
}

/// `V- = E- d_fl sum_a exp(-i k_scattered . R_a) |f>_a <l|`.
pub fn emission_operator(cfg: &RamanConfig, g: &Geometry) -> Result<TransitionSum> {
    let scale = cfg.dipole_fl * cfg.field_minus;
    let coefficients = g
        .positions
        .iter()
        .map(|r| scale * phase(-dot(&g.k_scattered, r)))
        .collect();
    TransitionSum::new(3, LEVELS.final_, LEVELS.intermediate, coefficients)
}

/// Splits `v` into its components of fixed level occupations, each of
/// which is an eigenvector of the free Hamiltonian.
fn energy_sectors(v: &StateVector) -> Result<BTreeMap<Vec<usize>, StateVector>> {
    let (n, d) = (v.num_atoms(), v.num_levels());
    let mut sectors: BTreeMap<Vec<usize>, Vec<(usize, C64)>> = BTreeMap::new();
    for (index, amp) in v.nonzero() {
        sectors
            .entry(occupations_of(index, n, d))
            .or_default()
            .push((index, amp));
    }
    sectors
        .into_iter()
        .map(|(occupations, entries)| {
            let mut amps = vec![C64::new(0.0, 0.0); v.dim()];
            for (index, amp) in entries {
                amps[index] = amp;
            }
            Ok((occupations, StateVector::from_amplitudes(n, d, amps)?))
        })
        .collect()
}

/// Applies `sum_m |m><m| / (initial_energy - E_m + omega_plus)`.
fn apply_propagator(
    v: &StateVector,
    initial_energy: f64,
    cfg: &RamanConfig,
) -> Result<StateVector> {
    let (n, d) = (v.num_atoms(), v.num_levels());
    let mut amps = vec![C64::new(0.0, 0.0); v.dim()];
    for (index, amp) in v.nonzero() {
        let energy_m = cfg.free_energy(&occupations_of(index, n, d));
        let denominator = initial_energy - energy_m + cfg.omega_plus;
        if denominator == 0.0 {
            return Err(Error::SingularDenominator(format!(
                "intermediate state {index} is resonant with the pump"
            )));
        }
        amps[index] = amp / denominator;
    }
    StateVector::from_amplitudes(n, d, amps)
}

fn check_inputs(v: &StateVector, cfg: &RamanConfig, g: &Geometry) -> Result<()> {
    cfg.validate()?;
    if v.num_levels() != 3 {
        return invalid(format!(
            "Raman scattering needs three-level atoms, got {}",
            v.num_levels()
        ));
    }
    if v.num_atoms() != g.num_atoms() {
        return invalid(format!(
            "state has {} atoms but the geometry has {}",
            v.num_atoms(),
            g.num_atoms()
        ));
    }
    Ok(())
}

/// `V- G V+ |initial>`, unnormalized.
pub fn second_order_image(
    initial: &StateVector,
    cfg: &RamanConfig,
    g: &Geometry,
) -> Result<StateVector> {
    check_inputs(initial, cfg, g)?;
    let absorb = absorption_operator(cfg, g)?;
    let emit = emission_operator(cfg, g)?;
    let mut intermediate = StateVector::zeros(initial.num_atoms(), 3)?;
    for (occupations, sector) in energy_sectors(initial)? {
        let raised = absorb.apply(&sector)?;
        let propagated = apply_propagator(&raised, cfg.free_energy(&occupations), cfg)?;
        intermediate = intermediate.add(&propagated)?;
    }
    emit.apply(&intermediate)
}

/// `<final| V- G V+ |initial>`.
pub fn raman_amplitude(
    initial: &StateVector,
    final_state: &StateVector,
    cfg: &RamanConfig,
    g: &Geometry,
) -> Result<C64> {
    final_state.inner(&second_order_image(initial, cfg, g)?)
}

/// Normalized result of one scattering event and its squared norm before
/// normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatteredState {
    pub state: StateVector,
    pub squared_norm: f64,
}

impl ScatteredState {
    pub fn fidelity_with(&self, target: &StateVector) -> Result<f64> {
        fidelity(&self.state, target)
    }
}

pub fn scattered_state(
    initial: &StateVector,
    cfg: &RamanConfig,
    g: &Geometry,
) -> Result<ScatteredState> {
    let image = second_order_image(initial, cfg, g)?;
    let squared_norm = image.norm_sqr();
    if squared_norm == 0.0 {
        return Err(Error::Degenerate(
            "initial state has no Raman-active component".into(),
        ));
    }
    Ok(ScatteredState {
        state: image.normalize()?,
        squared_norm,
    })
}

/// Transition probability summed over the degenerate final manifold,
/// `||V- G V+ |initial>||^2`.
pub fn total_rate(initial: &StateVector, cfg: &RamanConfig, g: &Geometry) -> Result<f64> {
    Ok(second_order_image(initial, cfg, g)?.norm_sqr())
}
