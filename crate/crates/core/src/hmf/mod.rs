//! Symmetric Hilbert modular forms for `ℚ(√5)`.

mod eisenstein;
mod elliptic;
mod extremal;
mod generators;
mod table;

pub use eisenstein::{eisenstein, eisenstein_constant};
pub use elliptic::{elliptic_delta, elliptic_e4};
pub use extremal::{check_nu_bound, extremal_form, nu_bound, ExtremalResult, Pm};
pub use generators::{generators, monomial_basis, monomials, GeneratorSet, HmfRing, Monomial};
pub use table::{
    diff_row, expected_nu, parse_table_tsv, table_reproduce, table_reproduce_against, CellMismatch, TableEntry, TableReport,
    TableRow, EXPECTED_TABLE, TABLE_WEIGHTS, TSV_HEADER,
};
