//! Stimulated Raman scattering from entangled chains of three-level atoms.
//!
//! The crate builds dense `d^N` state vectors for small chains, prepares
//! W, Dicke and general permutation-symmetric states, and evaluates the
//! second-order Raman amplitude by direct summation over intermediate
//! states. The brute-force rates are compared against the closed-form
//! enhancement `n_i (n_f + 1) (n_l + 1)^2 / N` obtained from the SU(3)
//! collective-operator ladder rules.
//!
//! ```
//! use raman_core::analysis::{enhancement_bruteforce, enhancement_formula};
//! use raman_core::collective::CollectiveState;
//! use raman_core::raman::RamanConfig;
//!
//! let w = CollectiveState::new(2, 0, 1);
//! let brute = enhancement_bruteforce(w, &RamanConfig::default()).unwrap();
//! assert!((brute - enhancement_formula(2, 0, 1).unwrap()).abs() < 1e-12);
//! assert!((brute - 4.0 / 3.0).abs() < 1e-12);
//! ```
//!
//! Level conventions: three-level atoms use `0 = i` (initial, `|g->`),
//! `1 = l` (intermediate, `|e0>`), `2 = f` (final, `|g+>`); two-level atoms
//! use `0 = g`, `1 = e`.

pub mod analysis;
pub mod collective;
pub mod error;
pub mod hilbert;
pub mod raman;
pub mod states;

pub use error::{Error, Result};

// The guide under `book/` is compiled here so its snippets run as doc tests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/product-space.md")]
    pub mod product_space {}
    #[doc = include_str!("../../../book/src/symmetric-states.md")]
    pub mod symmetric_states {}
    #[doc = include_str!("../../../book/src/collective-operators.md")]
    pub mod collective_operators {}
    #[doc = include_str!("../../../book/src/raman-amplitude.md")]
    pub mod raman_amplitude {}
    #[doc = include_str!("../../../book/src/enhancement.md")]
    pub mod enhancement {}
    #[doc = include_str!("../../../book/src/dicke-correlations.md")]
    pub mod dicke_correlations {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    pub mod command_line {}
}
