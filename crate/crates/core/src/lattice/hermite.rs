//! Hermite reduction of generating sets of `R`-modules.

use crate::error::Result;
use crate::ring::{canonical_associate, euclid_divmod, RElem};

/// Which nonzero entry of a column becomes the pivot.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Smallest `|N|` in the column, earliest row on ties.
    #[default]
    MinNorm,
    /// The earliest nonzero row.
    FirstNonzero,
}

fn axpy(row: &mut [RElem], q: RElem, pivot: &[RElem]) {
    for (x, p) in row.iter_mut().zip(pivot) {
        *x -= q * *p;
    }
}

/// An `R`-basis, in echelon form, of the module spanned by `rows ⊂ R^m`.
///
/// Pivots are normalized to canonical associates and entries above a pivot
/// are reduced modulo it.
pub fn hermite_basis(rows: &[Vec<RElem>], strategy: PivotStrategy) -> Result<Vec<Vec<RElem>>> {
    let m = rows.first().map_or(0, Vec::len);
    let mut active: Vec<Vec<RElem>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis: Vec<Vec<RElem>> = Vec::new();
    for col in 0..m {
        loop {
            let nz: Vec<usize> = (0..active.len()).filter(|&i| !active[i][col].is_zero()).collect();
            let Some(&first) = nz.first() else {
                break;
            };
            let p = match strategy {
                PivotStrategy::FirstNonzero => first,
                PivotStrategy::MinNorm => *nz
                    .iter()
                    .min_by_key(|&&i| (active[i][col].norm().unsigned_abs(), i))
                    .expect("nonempty"),
            };
            let mut row = active.remove(p);
            let mut done = true;
            for other in active.iter_mut() {
                if other[col].is_zero() {
                    continue;
                }
                let (q, r) = euclid_divmod(other[col], row[col])?;
                axpy(other, q, &row);
                if !r.is_zero() {
                    done = false;
                }
            }
            active.retain(|r| r.iter().any(|x| !x.is_zero()));
            if !done {
                // the remainders are all smaller than this pivot, so the loop terminates
                active.push(row);
                continue;
            }
            let (_, unit) = canonical_associate(row[col]);
            let inv = unit.unit_inverse().expect("unit");
            for x in row.iter_mut() {
                *x *= inv;
            }
            for b in basis.iter_mut() {
                let (q, _) = euclid_divmod(b[col], row[col])?;
                axpy(b, q, &row);
            }
            basis.push(row);
            break;
        }
    }
    Ok(basis)
}
