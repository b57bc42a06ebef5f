//! Factorized, W, Dicke and general permutation-symmetric states.

use num_complex::Complex64 as C64;

use crate::error::{invalid, Result};
use crate::hilbert::{dimension, occupations_of, StateVector};

/// Ground level of a two-level atom.
pub const GROUND: usize = 0;
/// Excited level of a two-level atom.
pub const EXCITED: usize = 1;

/// Assignment of the three Raman levels to single-atom level indices.
///
/// The initial level is the lower Zeeman state `|g->`, the intermediate
/// level the excited state `|e0>`, and the final level `|g+>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelLabels {
    pub initial: usize,
    pub intermediate: usize,
    pub final_: usize,
}

impl LevelLabels {
    /// `i = 0`, `l = 1`, `f = 2`; used everywhere in this crate.
    pub const RAMAN: LevelLabels = LevelLabels {
        initial: 0,
        intermediate: 1,
        final_: 2,
    };

    pub fn new(initial: usize, intermediate: usize, final_: usize) -> Result<Self> {
        let labels = [initial, intermediate, final_];
        if labels.iter().any(|&l| l >= 3) {
            return invalid(format!("level labels {labels:?} must lie in 0..3"));
        }
        if initial == intermediate || initial == final_ || intermediate == final_ {
            return invalid(format!("level labels {labels:?} must be distinct"));
        }
        Ok(Self {
            initial,
            intermediate,
            final_,
        })
    }
}

/// `N! / prod(k_j!)`, computed exactly as a product of binomials.
pub fn multinomial(counts: &[usize]) -> u64 {
    let mut total = 0u64;
    let mut result = 1u64;
    for &k in counts {
        for j in 1..=k as u64 {
            total += 1;
            // result * total / j stays integral at every step
            result = result * total / j;
        }
    }
    result
}

/// Equal-weight superposition of every product state whose level
/// occupations equal `counts`.
pub fn symmetric_state(
    counts: &[usize],
    num_levels: usize,
    num_atoms: usize,
) -> Result<StateVector> {
    if counts.len() != num_levels {
        return invalid(format!(
            "expected {num_levels} occupation numbers, got {}",
            counts.len()
        ));
    }
    let total: usize = counts.iter().sum();
    if total != num_atoms {
        return invalid(format!(
            "occupations {counts:?} sum to {total}, not {num_atoms}"
        ));
    }
    let dim = dimension(num_atoms, num_levels)?;
    let amp = C64::new(1.0 / (multinomial(counts) as f64).sqrt(), 0.0);
    let amplitudes: Vec<C64> = (0..dim)
        .map(|index| {
            if occupations_of(index, num_atoms, num_levels) == counts {
                amp
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    StateVector::from_amplitudes(num_atoms, num_levels, amplitudes)
}

/// Three-level symmetric state with `n_excited` atoms in `excited_level`
/// and the rest in `base_level`.
///
/// With `n_excited = 1` this is the usual W state; `n_excited = N - 1`
/// gives its complement. The end points `0` and `N` are product states.
pub fn w_state(
    num_atoms: usize,
    base_level: usize,
    excited_level: usize,
    n_excited: usize,
) -> Result<StateVector> {
    if base_level >= 3 || excited_level >= 3 || base_level == excited_level {
        return invalid(format!(
            "W state needs two distinct levels in 0..3, got {base_level} and {excited_level}"
        ));
    }
    if n_excited > num_atoms {
        return invalid(format!("{n_excited} excitations exceed {num_atoms} atoms"));
    }
    let mut counts = [0; 3];
    counts[base_level] = num_atoms - n_excited;
    counts[excited_level] = n_excited;
    symmetric_state(&counts, 3, num_atoms)
}

/// Two-level Dicke state `|N/2, M>`, which has `N/2 + M` excited atoms.
pub fn dicke_two_level(num_atoms: usize, m: f64) -> Result<StateVector> {
    let n_excited = num_atoms as f64 / 2.0 + m;
    if !n_excited.is_finite()
        || n_excited.fract() != 0.0
        || n_excited < 0.0
        || n_excited > num_atoms as f64
    {
        return invalid(format!(
            "M = {m} is not a valid projection for {num_atoms} two-level atoms"
        ));
    }
    let n_excited = n_excited as usize;
    let mut counts = [0; 2];
    counts[GROUND] = num_atoms - n_excited;
    counts[EXCITED] = n_excited;
    symmetric_state(&counts, 2, num_atoms)
}

/// `|<a|b>|^2`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::ProductBasisState;

    const G_MINUS: usize = 0;
    const G_PLUS: usize = 2;

    fn ket(levels: &[usize], d: usize) -> StateVector {
        StateVector::basis(&ProductBasisState::new(levels.to_vec(), d).unwrap()).unwrap()
    }

    fn superpose(kets: &[StateVector]) -> StateVector {
        let mut sum = StateVector::zeros(kets[0].num_atoms(), kets[0].num_levels()).unwrap();
        for k in kets {
            sum = sum.add(k).unwrap();
        }
        sum.normalize().unwrap()
    }

    fn eq5() -> StateVector {
        superpose(&[
            ket(&[G_MINUS, G_MINUS, G_PLUS], 3),
            ket(&[G_MINUS, G_PLUS, G_MINUS], 3),
            ket(&[G_PLUS, G_MINUS, G_MINUS], 3),
        ])
    }

    fn eq6() -> StateVector {
        superpose(&[
            ket(&[G_PLUS, G_MINUS, G_PLUS], 3),
            ket(&[G_PLUS, G_PLUS, G_MINUS], 3),
            ket(&[G_MINUS, G_PLUS, G_PLUS], 3),
        ])
    }

    fn assert_close(a: &StateVector, b: &StateVector) {
        let diff = a.max_abs_diff(b).unwrap();
        assert!(diff <= 1e-12, "states differ by {diff}");
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[2, 0, 1]), 3);
        assert_eq!(multinomial(&[3, 3]), 20);
        assert_eq!(multinomial(&[2, 2, 2]), 90);
        assert_eq!(multinomial(&[5, 0, 0]), 1);
    }

    #[test]
    fn symmetric_state_examples() {
        let mut counts = [0; 3];
        counts[G_MINUS] = 2;
        counts[G_PLUS] = 1;
        assert_close(&symmetric_state(&counts, 3, 3).unwrap(), &eq5());

        assert_close(
            &symmetric_state(&[4, 0, 0], 3, 4).unwrap(),
            &ket(&[0, 0, 0, 0], 3),
        );

        let bell = superpose(&[ket(&[EXCITED, GROUND], 2), ket(&[GROUND, EXCITED], 2)]);
        assert_close(&symmetric_state(&[1, 1], 2, 2).unwrap(), &bell);
    }

    #[test]
    fn symmetric_state_rejects_bad_counts() {
        assert!(symmetric_state(&[1, 1, 0], 3, 3).is_err());
        assert!(symmetric_state(&[1, 1], 3, 2).is_err());
    }

    #[test]
    fn w_state_examples() {
        assert_close(&w_state(3, G_MINUS, G_PLUS, 1).unwrap(), &eq5());
        assert_close(&w_state(3, G_MINUS, G_PLUS, 2).unwrap(), &eq6());
        assert_close(
            &w_state(1, G_MINUS, G_PLUS, 0).unwrap(),
            &ket(&[G_MINUS], 3),
        );
        assert!(w_state(3, G_MINUS, G_PLUS, 4).is_err());
        assert!(w_state(3, G_MINUS, G_MINUS, 1).is_err());
    }

    #[test]
    fn dicke_examples() {
        let bell = superpose(&[ket(&[EXCITED, GROUND], 2), ket(&[GROUND, EXCITED], 2)]);
        assert_close(&dicke_two_level(2, 0.0).unwrap(), &bell);

        let w = superpose(&[
            ket(&[EXCITED, GROUND, GROUND], 2),
            ket(&[GROUND, EXCITED, GROUND], 2),
            ket(&[GROUND, GROUND, EXCITED], 2),
        ]);
        assert_close(&dicke_two_level(3, -0.5).unwrap(), &w);

        assert_close(
            &dicke_two_level(2, 1.0).unwrap(),
            &ket(&[EXCITED, EXCITED], 2),
        );
    }

    #[test]
    fn dicke_rejects_invalid_projection() {
        assert!(dicke_two_level(3, 0.0).is_err());
        assert!(dicke_two_level(2, 1.5).is_err());
        assert!(dicke_two_level(2, -2.0).is_err());
        assert!(dicke_two_level(2, f64::NAN).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let bell = dicke_two_level(2, 0.0).unwrap();
        assert!((fidelity(&bell, &bell).unwrap() - 1.0).abs() <= 1e-12);
        assert_eq!(fidelity(&ket(&[0], 2), &ket(&[1], 2)).unwrap(), 0.0);
        let eg = ket(&[EXCITED, GROUND], 2);
        assert!((fidelity(&bell, &eg).unwrap() - 0.5).abs() <= 1e-12);
        assert!(fidelity(&bell, &ket(&[0], 2)).is_err());
    }

    #[test]
    fn level_labels() {
        assert_eq!(LevelLabels::new(0, 1, 2).unwrap(), LevelLabels::RAMAN);
        assert!(LevelLabels::new(0, 0, 2).is_err());
        assert!(LevelLabels::new(0, 1, 3).is_err());
    }

    fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
        if parts == 1 {
            return vec![vec![total]];
        }
        (0..=total)
            .flat_map(|first| {
                compositions(total - first, parts - 1)
                    .into_iter()
                    .map(move |mut rest| {
                        rest.insert(0, first);
                        rest
                    })
            })
            .collect()
    }

    #[test]
    fn symmetric_states_exhaustive_properties() {
        for d in 2..=3 {
            for n in 1..=6 {
                for counts in compositions(n, d) {
                    let v = symmetric_state(&counts, d, n).unwrap();
                    assert!((v.norm() - 1.0).abs() <= 1e-12);
                    assert_eq!(v.nonzero().count() as u64, multinomial(&counts));
                    for a in 0..n {
                        for b in a + 1..n {
                            let permuted = v.swap_atoms(a, b).unwrap();
                            assert!((fidelity(&permuted, &v).unwrap() - 1.0).abs() <= 1e-12);
                        }
                    }
                }
            }
        }
    }
}
