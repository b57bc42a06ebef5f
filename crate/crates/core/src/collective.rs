//! Collective SU(3) operators `S_ij = sum_a |i>_a <j|` in two realizations:
//! matrix-free on the full `3^N` product space, and as Schwinger-boson
//! ladder rules on occupation triples `|n_i, n_l, n_f>`.
//!
//! [`embed_collective`] identifies an occupation triple with the normalized
//! symmetric product-space state. The two realizations agree under this
//! identification, which the bridge tests check entrywise.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{invalid, Error, Result};
use crate::hilbert::{StateVector, TransitionSum};
use crate::states::symmetric_state;

/// Default atom-number cap for [`commutator_residual`].
pub const DEFAULT_COMMUTATOR_CAP: usize = 4;

/// Occupations of the initial, intermediate and final levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CollectiveState {
    pub n_i: usize,
    pub n_l: usize,
    pub n_f: usize,
}

impl CollectiveState {
    pub fn new(n_i: usize, n_l: usize, n_f: usize) -> Self {
        Self { n_i, n_l, n_f }
    }

    pub fn from_counts(counts: [usize; 3]) -> Self {
        Self::new(counts[0], counts[1], counts[2])
    }

    pub fn counts(&self) -> [usize; 3] {
        [self.n_i, self.n_l, self.n_f]
    }

    pub fn num_atoms(&self) -> usize {
        self.n_i + self.n_l + self.n_f
    }

    /// All triples with `n_i + n_l + n_f = num_atoms`, lexicographic.
    pub fn all(num_atoms: usize) -> impl Iterator<Item = CollectiveState> {
        (0..=num_atoms).flat_map(move |n_i| {
            (0..=num_atoms - n_i)
                .map(move |n_l| CollectiveState::new(n_i, n_l, num_atoms - n_i - n_l))
        })
    }
}

/// A superposition of occupation triples sharing one atom number.
///
/// Terms are kept sorted by state with like terms combined.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CollectiveKet {
    terms: Vec<(C64, CollectiveState)>,
}

impl CollectiveKet {
    pub fn new(terms: impl IntoIterator<Item = (C64, CollectiveState)>) -> Result<Self> {
        let mut combined: BTreeMap<CollectiveState, C64> = BTreeMap::new();
        let mut num_atoms = None;
        for (coefficient, state) in terms {
            match num_atoms {
                None => num_atoms = Some(state.num_atoms()),
                Some(n) if n != state.num_atoms() => {
                    return invalid(format!(
                        "ket mixes atom numbers {n} and {}",
                        state.num_atoms()
                    ))
                }
                Some(_) => {}
            }
            *combined.entry(state).or_default() += coefficient;
        }
        Ok(Self {
            terms: combined.into_iter().map(|(s, c)| (c, s)).collect(),
        })
    }

    pub fn single(state: CollectiveState) -> Self {
        Self {
            terms: vec![(C64::new(1.0, 0.0), state)],
        }
    }

    pub fn terms(&self) -> &[(C64, CollectiveState)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn check_level(level: usize) -> Result<()> {
    if level >= 3 {
        return invalid(format!(
            "collective operators act on levels 0..3, got {level}"
        ));
    }
    Ok(())
}

/// `S_{to,from}` on the full product space of `num_atoms` three-level atoms.
pub fn collective_operator_full(to: usize, from: usize, num_atoms: usize) -> Result<TransitionSum> {
    check_level(to)?;
    check_level(from)?;
    TransitionSum::uniform(num_atoms, 3, to, from)
}

/// `S_{to,from} = a_to^dag a_from` on occupation triples.
///
/// Each term picks up `sqrt(n_from (n_to + 1))` for `to != from`, or `n_to`
/// for the diagonal operator. Terms with `n_from = 0` vanish.
pub fn ladder_apply(to: usize, from: usize, ket: &CollectiveKet) -> Result<CollectiveKet> {
    check_level(to)?;
    check_level(from)?;
    let terms = ket.terms.iter().filter_map(|&(coefficient, state)| {
        let mut counts = state.counts();
        let n_from = counts[from];
        if n_from == 0 {
            return None;
        }
        if to == from {
            return Some((coefficient * n_from as f64, state));
        }
        let factor = ((n_from * (counts[to] + 1)) as f64).sqrt();
        counts[from] -= 1;
        counts[to] += 1;
        Some((coefficient * factor, CollectiveState::from_counts(counts)))
    });
    CollectiveKet::new(terms.collect::<Vec<_>>())
}

/// The normalized symmetric product state with occupations `cs`.
pub fn embed_collective(cs: CollectiveState) -> Result<StateVector> {
    symmetric_state(&cs.counts(), 3, cs.num_atoms())
}

/// Embeds every term of `ket`; `num_atoms` fixes the space when the ket is empty.
pub fn embed_ket(ket: &CollectiveKet, num_atoms: usize) -> Result<StateVector> {
    let mut out = StateVector::zeros(num_atoms, 3)?;
    for &(coefficient, state) in ket.terms() {
        if state.num_atoms() != num_atoms {
            return invalid(format!(
                "ket term {state:?} does not have {num_atoms} atoms"
            ));
        }
        out = out.add(&embed_collective(state)?.scaled(coefficient))?;
    }
    Ok(out)
}

/// Largest entry of `[S_il, S_fj] - (delta_lf S_ij - delta_ij S_fl)` on the
/// full space.
///
/// Builds dense `3^N x 3^N` matrices, so `num_atoms` must not exceed `cap`.
pub fn commutator_residual(
    i: usize,
    l: usize,
    f: usize,
    j: usize,
    num_atoms: usize,
    cap: usize,
) -> Result<f64> {
    if num_atoms > cap {
        return Err(Error::ResourceLimit(format!(
            "commutator check on {num_atoms} atoms exceeds the cap of {cap}"
        )));
    }
    let dense = |to, from| collective_operator_full(to, from, num_atoms)?.to_matrix();
    let s_il = dense(i, l)?;
    let s_fj = dense(f, j)?;
    let mut residual: Array2<C64> = s_il.dot(&s_fj) - s_fj.dot(&s_il);
    if l == f {
        residual = residual - dense(i, j)?;
    }
    if i == j {
        residual = residual + dense(f, l)?;
    }
    Ok(residual.iter().map(|z| z.norm()).fold(0.0, f64::max))
}
