//! Shared fixtures for the benchmarks.

use golden_core::lattice::{linalg, ZGram};
use golden_core::KElem;

/// Cartan matrix of `E8`.
pub fn e8_cartan() -> ZGram {
    let mut g = linalg::identity(8);
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)] {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    ZGram::new(g).expect("symmetric")
}

/// `L_{η⁻¹}` of `F4 ⊥ F4 ⊥ F4`, a rank-24 even unimodular lattice with 720 roots.
pub fn e8_cubed() -> ZGram {
    let f = golden_core::constructions::f4();
    let g = golden_core::lattice::orthogonal_sum(&golden_core::lattice::orthogonal_sum(&f, &f), &f);
    g.trace_gram(&KElem::eta_inv()).expect("integral")
}
