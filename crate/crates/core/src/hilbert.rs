//! Dense state vectors on the `d^N` product space of `N` atoms with `d`
//! levels each.
//!
//! Basis states are ordered lexicographically with atom 0 as the most
//! significant digit, so the flat index of `|l_0, l_1, ..., l_{N-1}>` is
//! `sum_a l_a * d^(N-1-a)`.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{invalid, Error, Result};

/// Largest product-space dimension a [`StateVector`] may have (`3^10`).
pub const MAX_DIMENSION: usize = 59_049;

/// Largest dimension for which operators are materialized as dense matrices.
pub const MAX_DENSE_DIMENSION: usize = 729;

pub(crate) fn dimension(num_atoms: usize, num_levels: usize) -> Result<usize> {
    if num_atoms == 0 {
        return invalid("at least one atom is required");
    }
    if !(2..=3).contains(&num_levels) {
        return invalid(format!("atoms must have 2 or 3 levels, got {num_levels}"));
    }
    num_levels
        .checked_pow(num_atoms as u32)
        .filter(|&dim| dim <= MAX_DIMENSION)
        .ok_or_else(|| {
            Error::ResourceLimit(format!(
                "{num_levels}^{num_atoms} exceeds the dense limit of {MAX_DIMENSION} amplitudes"
            ))
        })
}

#[inline]
fn stride(atom: usize, num_atoms: usize, num_levels: usize) -> usize {
    num_levels.pow((num_atoms - 1 - atom) as u32)
}

#[inline]
pub(crate) fn level_at(index: usize, atom: usize, num_atoms: usize, num_levels: usize) -> usize {
    (index / stride(atom, num_atoms, num_levels)) % num_levels
}

/// Per-level occupation numbers of the basis state at `index`.
pub(crate) fn occupations_of(index: usize, num_atoms: usize, num_levels: usize) -> Vec<usize> {
    let mut counts = vec![0; num_levels];
    let mut rest = index;
    for _ in 0..num_atoms {
        counts[rest % num_levels] += 1;
        rest /= num_levels;
    }
    counts
}

/// One element of the product basis: a level index per atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductBasisState {
    levels: Vec<usize>,
    num_levels: usize,
}

impl ProductBasisState {
    pub fn new(levels: Vec<usize>, num_levels: usize) -> Result<Self> {
        dimension(levels.len(), num_levels)?;
        if let Some((atom, &level)) = levels.iter().enumerate().find(|(_, &l)| l >= num_levels) {
            return invalid(format!(
                "atom {atom} is in level {level}, but only {num_levels} levels exist"
            ));
        }
        Ok(Self { levels, num_levels })
    }

    /// Inverse of [`ProductBasisState::index`].
    pub fn from_index(index: usize, num_atoms: usize, num_levels: usize) -> Result<Self> {
        let dim = dimension(num_atoms, num_levels)?;
        if index >= dim {
            return invalid(format!(
                "basis index {index} out of range for dimension {dim}"
            ));
        }
        let levels = (0..num_atoms)
            .map(|atom| level_at(index, atom, num_atoms, num_levels))
            .collect();
        Ok(Self { levels, num_levels })
    }

    /// Flat lexicographic index, atom 0 most significant.
    pub fn index(&self) -> usize {
        self.levels
            .iter()
            .fold(0, |acc, &level| acc * self.num_levels + level)
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn num_atoms(&self) -> usize {
        self.levels.len()
    }

    pub fn num_levels(&self) -> usize {
        self.num_levels
    }

    /// Number of atoms in each level.
    pub fn occupations(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_levels];
        for &level in &self.levels {
            counts[level] += 1;
        }
        counts
    }
}

/// Complex amplitudes over the full product basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_atoms: usize,
    num_levels: usize,
    amplitudes: Array1<C64>,
}

impl StateVector {
    pub fn zeros(num_atoms: usize, num_levels: usize) -> Result<Self> {
        let dim = dimension(num_atoms, num_levels)?;
        Ok(Self {
            num_atoms,
            num_levels,
            amplitudes: Array1::zeros(dim),
        })
    }

    pub fn basis(state: &ProductBasisState) -> Result<Self> {
        let mut v = Self::zeros(state.num_atoms(), state.num_levels())?;
        v.amplitudes[state.index()] = C64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn from_amplitudes(
        num_atoms: usize,
        num_levels: usize,
        amplitudes: impl Into<Array1<C64>>,
    ) -> Result<Self> {
        let dim = dimension(num_atoms, num_levels)?;
        let amplitudes = amplitudes.into();
        if amplitudes.len() != dim {
            return invalid(format!(
                "expected {dim} amplitudes for {num_atoms} atoms with {num_levels} levels, got {}",
                amplitudes.len()
            ));
        }
        if amplitudes.iter().any(|a| !a.is_finite()) {
            return invalid("amplitudes must be finite");
        }
        Ok(Self {
            num_atoms,
            num_levels,
            amplitudes,
        })
    }

    pub fn num_atoms(&self) -> usize {
        self.num_atoms
    }

    pub fn num_levels(&self) -> usize {
        self.num_levels
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    /// Iterator over `(index, amplitude)` for every nonzero amplitude.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, C64)> + '_ {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != C64::new(0.0, 0.0))
            .map(|(i, a)| (i, *a))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::Degenerate("cannot normalize the zero vector".into()));
        }
        Ok(self.scaled(C64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            num_atoms: self.num_atoms,
            num_levels: self.num_levels,
            amplitudes: self.amplitudes.mapv(|a| a * factor),
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.num_atoms != other.num_atoms || self.num_levels != other.num_levels {
            return invalid(format!(
                "dimension mismatch: {} atoms x {} levels vs {} atoms x {} levels",
                self.num_atoms, self.num_levels, other.num_atoms, other.num_levels
            ));
        }
        Ok(())
    }

    /// `self + other`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            amplitudes: &self.amplitudes + &other.amplitudes,
            ..self.clone()
        })
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.check_same_space(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_space(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Applies the `d x d` matrix `op` to one atom, identity on the rest.
    pub fn apply_single_atom(&self, atom: usize, op: &Array2<C64>) -> Result<Self> {
        let (n, d) = (self.num_atoms, self.num_levels);
        if atom >= n {
            return invalid(format!("atom index {atom} out of range for {n} atoms"));
        }
        if op.dim() != (d, d) {
            return invalid(format!(
                "single-atom operator must be {d}x{d}, got {:?}",
                op.dim()
            ));
        }
        let s = stride(atom, n, d);
        let mut out = Array1::zeros(self.dim());
        for (index, amp) in self.nonzero() {
            let col = (index / s) % d;
            let base = index - col * s;
            for row in 0..d {
                out[base + row * s] += op[(row, col)] * amp;
            }
        }
        Ok(Self {
            amplitudes: out,
            ..self.clone()
        })
    }

    /// Relabels atoms `a` and `b`.
    pub fn swap_atoms(&self, a: usize, b: usize) -> Result<Self> {
        let (n, d) = (self.num_atoms, self.num_levels);
        if a >= n || b >= n {
            return invalid(format!(
                "atom indices ({a}, {b}) out of range for {n} atoms"
            ));
        }
        let (sa, sb) = (stride(a, n, d), stride(b, n, d));
        let mut out = Array1::zeros(self.dim());
        for (index, amp) in self.nonzero() {
            let (la, lb) = ((index / sa) % d, (index / sb) % d);
            let swapped = index + lb * sa + la * sb - la * sa - lb * sb;
            out[swapped] = amp;
        }
        Ok(Self {
            amplitudes: out,
            ..self.clone()
        })
    }
}

/// The operator `sum_a c_a |to>_a <from|`: a single-atom transition summed
/// over the chain with a per-atom coefficient.
///
/// Collective operators use unit coefficients; the field couplings carry
/// the field amplitude, dipole element and a position-dependent phase.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionSum {
    num_levels: usize,
    to: usize,
    from: usize,
    coefficients: Vec<C64>,
}

impl TransitionSum {
    pub fn new(num_levels: usize, to: usize, from: usize, coefficients: Vec<C64>) -> Result<Self> {
        dimension(coefficients.len(), num_levels)?;
        if to >= num_levels || from >= num_levels {
            return invalid(format!(
                "transition |{to}><{from}| uses a level outside 0..{num_levels}"
            ));
        }
        Ok(Self {
            num_levels,
            to,
            from,
            coefficients,
        })
    }

    /// `sum_a |to>_a <from|` with every coefficient equal to one.
    pub fn uniform(num_atoms: usize, num_levels: usize, to: usize, from: usize) -> Result<Self> {
        Self::new(num_levels, to, from, vec![C64::new(1.0, 0.0); num_atoms])
    }

    pub fn num_atoms(&self) -> usize {
        self.coefficients.len()
    }

    pub fn num_levels(&self) -> usize {
        self.num_levels
    }

    pub fn to(&self) -> usize {
        self.to
    }

    pub fn from(&self) -> usize {
        self.from
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.coefficients
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        let (n, d) = (self.num_atoms(), self.num_levels);
        if v.num_atoms() != n || v.num_levels() != d {
            return invalid(format!(
                "operator on {n} atoms x {d} levels applied to a state on {} atoms x {} levels",
                v.num_atoms(),
                v.num_levels()
            ));
        }
        let mut out = Array1::zeros(v.dim());
        for (index, amp) in v.nonzero() {
            for (atom, &c) in self.coefficients.iter().enumerate() {
                let s = stride(atom, n, d);
                if (index / s) % d == self.from {
                    out[index - self.from * s + self.to * s] += c * amp;
                }
            }
        }
        Ok(StateVector {
            num_atoms: n,
            num_levels: d,
            amplitudes: out,
        })
    }

    /// Dense matrix in the product basis, limited to [`MAX_DENSE_DIMENSION`].
    pub fn to_matrix(&self) -> Result<Array2<C64>> {
        let (n, d) = (self.num_atoms(), self.num_levels);
        let dim = dimension(n, d)?;
        if dim > MAX_DENSE_DIMENSION {
            return Err(Error::ResourceLimit(format!(
                "dense matrix of dimension {dim} exceeds {MAX_DENSE_DIMENSION}"
            )));
        }
        let mut m = Array2::zeros((dim, dim));
        for col in 0..dim {
            for (atom, &c) in self.coefficients.iter().enumerate() {
                let s = stride(atom, n, d);
                if (col / s) % d == self.from {
                    m[(col - self.from * s + self.to * s, col)] += c;
                }
            }
        }
        Ok(m)
    }
}
