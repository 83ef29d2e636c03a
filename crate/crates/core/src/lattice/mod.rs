//! `R`-lattices given by Gram matrices, their trace lattices over `ℤ`, and
//! the computations built on short-vector enumeration.

mod enumerate;
mod golden;
mod modular;
mod gram;
mod hermite;
mod theta;
pub mod linalg;

pub use enumerate::{enumerate_fold, enumerate_short, minimum, theta_counts, ShortVectors};
pub use gram::{dual_basis_matrix, is_even_unimodular, orthogonal_sum, trace_gram, RGram, ZGram};
pub use hermite::{hermite_basis, PivotStrategy};
pub use linalg::{IMatrix, QMatrix};
pub use theta::{
    golden_check, hilbert_theta, minima_bounds_hold, restricted_theta_matches, theta_valuation, trace_identity_check,
    GoldenReport,
};
pub use golden::{galois_check, golden_input_violations, golden_operator, goldenex, GoldenStructure};
pub use modular::{family_level, modular_family, modularity_check, Certificate, Verdict};
