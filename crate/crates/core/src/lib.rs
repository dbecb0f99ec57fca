//! Pseudo-deterministic construction of canonical irreducible polynomials
//! over finite fields.
//!
//! The constructions are randomized internally (equal-degree factorization)
//! but every choice they make is the lexicographically smallest candidate,
//! so the emitted polynomial for a given field and degree never depends on
//! the random seed.

pub mod construct;
pub mod error;
pub mod extfield;
pub mod factorize;
pub mod field;
pub mod modmath;
pub mod oracle;
pub mod polyring;
pub mod record;
pub mod strategy;

pub use error::{Error, Result};
pub use extfield::{ExtField, Tower};
pub use field::{Field, PrimeField};
pub use modmath::{Fp64, FpBig, FpElem, Natural, PrimeModulus};
pub use polyring::Poly;

/// The generator threaded through every randomized routine.
pub type SeededRng = rand_chacha::ChaCha8Rng;
