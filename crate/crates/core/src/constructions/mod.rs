//! Explicit golden lattices built from the icosians, and an import path for
//! larger candidates supplied as data.

mod icosian;
mod import;
mod quat;

pub use icosian::{
    e8_golden_inputs, f4, f4_perp_f4, f4_with, galois_twist, icosian_basis, icosian_units, GoldenInputs, IcosianBasis,
};
pub use import::{import_golden_candidate, run_candidate, CandidateReport, GoldenCandidate};
pub use quat::{polar, Quat};
