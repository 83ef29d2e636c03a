//! Even unimodular lattices over the golden ring `ℤ[θ]`, `θ = (−1+√5)/2`, and
//! the ring of symmetric Hilbert modular forms for `ℚ(√5)` in which their
//! theta series live.
//!
//! Quadratic-form convention: every minimum reported by this crate is a value
//! of `Q(x) = B(x,x)/2`, so `E8` has minimum 1 and the Leech lattice minimum 2.

pub mod constructions;
pub mod error;
pub mod hmf;
pub mod lattice;
pub mod qseries;
pub mod ring;

pub use error::{Error, Result};
pub use hmf::{ExtremalResult, GeneratorSet, HmfRing, Pm};
pub use lattice::{RGram, ZGram};
pub use qseries::{IndexPair, PowerSeries, QExp};
pub use ring::{KElem, RElem};
