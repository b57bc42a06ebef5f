//! Enhancement of the Raman rate for collective states relative to `N`
//! independent atoms, by closed form and by brute force, plus the pair
//! correlation of two-level Dicke states.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::collective::{embed_collective, CollectiveState};
use crate::error::{invalid, Error, Result};
use crate::hilbert::{ProductBasisState, StateVector};
use crate::raman::{total_rate, Geometry, RamanConfig};
use crate::states::{dicke_two_level, EXCITED, GROUND};

/// Largest chain handled by the brute-force scans (`3^8` amplitudes).
pub const BRUTE_FORCE_MAX_ATOMS: usize = 8;

/// One row of an enhancement scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnhancementRecord {
    pub num_atoms: usize,
    pub n_i: usize,
    pub n_l: usize,
    pub n_f: usize,
    pub formula_value: f64,
    pub bruteforce_value: f64,
    pub residual: f64,
}

impl EnhancementRecord {
    pub fn state(&self) -> CollectiveState {
        CollectiveState::new(self.n_i, self.n_l, self.n_f)
    }
}

/// `n_i (n_f + 1) (n_l + 1)^2 / N`.
pub fn enhancement_formula(n_i: usize, n_l: usize, n_f: usize) -> Result<f64> {
    if n_i == 0 {
        return Err(Error::NoTransition(format!(
            "no atom in the initial level of ({n_i}, {n_l}, {n_f})"
        )));
    }
    let n = (n_i + n_l + n_f) as f64;
    let (n_i, n_l, n_f) = (n_i as f64, n_l as f64, n_f as f64);
    Ok(n_i * (n_f + 1.0) * (n_l + 1.0).powi(2) / n)
}

/// Raman rate of a lone atom starting in the initial level.
pub fn single_atom_rate(cfg: &RamanConfig) -> Result<f64> {
    let atom = StateVector::basis(&ProductBasisState::new(vec![0], 3)?)?;
    total_rate(&atom, cfg, &Geometry::uniform(1))
}

/// `total_rate(|cs>) / single_atom_rate` in the given geometry.
pub fn rate_ratio_in(cs: CollectiveState, cfg: &RamanConfig, g: &Geometry) -> Result<f64> {
    if cs.n_i == 0 {
        return Err(Error::NoTransition(format!(
            "no atom in the initial level of {cs:?}"
        )));
    }
    let rate = total_rate(&embed_collective(cs)?, cfg, g)?;
    Ok(rate / single_atom_rate(cfg)?)
}

/// Rate of `|cs>` over the rate of `N` independent atoms, in `g`.
pub fn enhancement_in(cs: CollectiveState, cfg: &RamanConfig, g: &Geometry) -> Result<f64> {
    Ok(rate_ratio_in(cs, cfg, g)? / cs.num_atoms() as f64)
}

/// [`enhancement_in`] for all atoms at a common phase.
pub fn enhancement_bruteforce(cs: CollectiveState, cfg: &RamanConfig) -> Result<f64> {
    enhancement_in(cs, cfg, &Geometry::uniform(cs.num_atoms()))
}

fn check_cap(n_max: usize) -> Result<()> {
    if n_max > BRUTE_FORCE_MAX_ATOMS {
        return Err(Error::ResourceLimit(format!(
            "brute-force scans are limited to {BRUTE_FORCE_MAX_ATOMS} atoms, got {n_max}"
        )));
    }
    Ok(())
}

/// Formula and brute-force enhancement for one occupation triple.
pub fn compare(cs: CollectiveState, cfg: &RamanConfig) -> Result<EnhancementRecord> {
    check_cap(cs.num_atoms())?;
    let formula_value = enhancement_formula(cs.n_i, cs.n_l, cs.n_f)?;
    let bruteforce_value = enhancement_bruteforce(cs, cfg)?;
    Ok(EnhancementRecord {
        num_atoms: cs.num_atoms(),
        n_i: cs.n_i,
        n_l: cs.n_l,
        n_f: cs.n_f,
        formula_value,
        bruteforce_value,
        residual: (formula_value - bruteforce_value).abs(),
    })
}

fn compare_all(states: Vec<CollectiveState>, cfg: &RamanConfig) -> Result<Vec<EnhancementRecord>> {
    cfg.validate()?;
    states.into_par_iter().map(|cs| compare(cs, cfg)).collect()
}

/// W states `(N - 1, 0, 1)` for `N = 2..=n_max`.
pub fn scan_w(n_max: usize, cfg: &RamanConfig) -> Result<Vec<EnhancementRecord>> {
    check_cap(n_max)?;
    compare_all(
        (2..=n_max)
            .map(|n| CollectiveState::new(n - 1, 0, 1))
            .collect(),
        cfg,
    )
}

/// Every triple with `n_i >= 1` for `N = 1..=n_max`, ordered by `N` and
/// then lexicographically.
pub fn scan_partitions(n_max: usize, cfg: &RamanConfig) -> Result<Vec<EnhancementRecord>> {
    check_cap(n_max)?;
    let states = (1..=n_max)
        .flat_map(CollectiveState::all)
        .filter(|cs| cs.n_i >= 1)
        .collect();
    compare_all(states, cfg)
}

fn ladder(to: usize, from: usize) -> Array2<C64> {
    let mut m = Array2::zeros((2, 2));
    m[(to, from)] = C64::new(1.0, 0.0);
    m
}

/// `<s_a^+ s_b^-> - <s_a^+><s_b^->` in the Dicke state `|N/2, M>`.
pub fn dicke_pair_correlation_between(num_atoms: usize, m: f64, a: usize, b: usize) -> Result<f64> {
    if num_atoms < 2 {
        return invalid("pair correlations need at least two atoms");
    }
    if a == b || a >= num_atoms || b >= num_atoms {
        return invalid(format!(
            "({a}, {b}) is not a pair of distinct atoms out of {num_atoms}"
        ));
    }
    let psi = dicke_two_level(num_atoms, m)?;
    let raise = ladder(EXCITED, GROUND);
    let lower = ladder(GROUND, EXCITED);
    let joint = psi.inner(
        &psi.apply_single_atom(b, &lower)?
            .apply_single_atom(a, &raise)?,
    )?;
    let mean_raise = psi.inner(&psi.apply_single_atom(a, &raise)?)?;
    let mean_lower = psi.inner(&psi.apply_single_atom(b, &lower)?)?;
    Ok((joint - mean_raise * mean_lower).re)
}

/// Pair correlation for the first two atoms; every pair gives the same
/// value since the state is symmetric.
pub fn dicke_pair_correlation(num_atoms: usize, m: f64) -> Result<f64> {
    dicke_pair_correlation_between(num_atoms, m, 0, 1)
}
