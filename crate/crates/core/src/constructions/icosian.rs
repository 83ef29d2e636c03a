//! The icosian ring: the maximal order of the definite quaternion algebra over
//! `ℚ(√5)` ramified only at the two infinite places, spanned by its 120 units.

use std::collections::HashSet;
use std::sync::OnceLock;

use super::quat::{polar, Quat};
use crate::error::{Error, Result};
use crate::lattice::{golden_check, hermite_basis, linalg, orthogonal_sum, IMatrix, PivotStrategy, RGram, ZGram};
use crate::ring::{KElem, RElem};

const EVEN_PERMS: [[usize; 4]; 12] = [
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
    [1, 0, 3, 2],
    [1, 2, 0, 3],
    [1, 3, 2, 0],
    [2, 0, 1, 3],
    [2, 1, 3, 0],
    [2, 3, 0, 1],
    [3, 0, 2, 1],
    [3, 1, 0, 2],
    [3, 2, 1, 0],
];

fn sign_patterns(k: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..1u32 << k).map(move |m| (0..k).map(|b| if m >> b & 1 == 1 { -1 } else { 1 }).collect())
}

/// Doubled coordinates of the 120 icosian units, in a fixed order.
fn unit_coordinates() -> Vec<[RElem; 4]> {
    let mut out = Vec::with_capacity(120);
    for pos in 0..4 {
        for s in [1, -1] {
            let mut c = [RElem::ZERO; 4];
            c[pos] = RElem::new(2 * s, 0);
            out.push(c);
        }
    }
    for s in sign_patterns(4) {
        out.push([0, 1, 2, 3].map(|k| RElem::new(s[k], 0)));
    }
    // ½(0, ±1, ±θ, ±φ) under even permutations, with θ = φ⁻¹
    let base = [RElem::ZERO, RElem::ONE, RElem::THETA, RElem::PHI];
    for perm in EVEN_PERMS {
        for s in sign_patterns(3) {
            let signed = [base[0], base[1].scale(s[0]), base[2].scale(s[1]), base[3].scale(s[2])];
            let mut c = [RElem::ZERO; 4];
            for (k, &p) in perm.iter().enumerate() {
                c[p] = signed[k];
            }
            out.push(c);
        }
    }
    out
}

/// The 120 icosian units, verified to have reduced norm 1 and to form a group.
pub fn icosian_units() -> Result<Vec<Quat>> {
    let units: Vec<Quat> = unit_coordinates().into_iter().map(Quat::from_doubled).collect();
    let keys: HashSet<[RElem; 4]> = unit_coordinates().into_iter().collect();
    if keys.len() != 120 {
        return Err(Error::Internal(format!("{} distinct icosian units, expected 120", keys.len())));
    }
    let one = KElem::one();
    for u in &units {
        if u.nrd() != one {
            return Err(Error::Internal(format!("icosian {u} has reduced norm {}", u.nrd())));
        }
        if !keys.contains(&u.conj().doubled().expect("integral")) {
            return Err(Error::Internal(format!("conjugate of {u} is missing")));
        }
    }
    for a in &units {
        for b in &units {
            let p = a * b;
            if !p.doubled().is_some_and(|d| keys.contains(&d)) {
                return Err(Error::Internal(format!("product {a} · {b} leaves the unit group")));
            }
        }
    }
    Ok(units)
}

/// An `R`-basis of the icosian ring in echelon form, plus its unit group.
#[derive(Clone, Debug)]
pub struct IcosianBasis {
    pub basis: Vec<Quat>,
    pub units: Vec<Quat>,
    doubled: Vec<[RElem; 4]>,
}

impl IcosianBasis {
    pub fn new(strategy: PivotStrategy) -> Result<Self> {
        let units = icosian_units()?;
        let rows: Vec<Vec<RElem>> = units.iter().map(|u| u.doubled().expect("integral").to_vec()).collect();
        let h = hermite_basis(&rows, strategy)?;
        if h.len() != 4 {
            return Err(Error::Internal(format!("icosians span a module of rank {}", h.len())));
        }
        let doubled: Vec<[RElem; 4]> = h.iter().map(|r| [r[0], r[1], r[2], r[3]]).collect();
        let basis = doubled.iter().map(|&d| Quat::from_doubled(d)).collect();
        let out = IcosianBasis { basis, units, doubled };
        for u in &out.units {
            if out.coordinates(u).is_none() {
                return Err(Error::Internal(format!("unit {u} is outside the span of the basis")));
            }
        }
        Ok(out)
    }

    /// `R`-coordinates of `q` in the basis, `None` when `q` is not an icosian.
    pub fn coordinates(&self, q: &Quat) -> Option<Vec<RElem>> {
        let mut rest = q.doubled()?;
        let mut lam = Vec::with_capacity(4);
        // row k vanishes before column k
        for k in 0..4 {
            let l = rest[k].div_exact(&self.doubled[k][k])?;
            for (c, r) in rest.iter_mut().enumerate() {
                *r -= l * self.doubled[k][c];
            }
            lam.push(l);
        }
        rest.iter().all(RElem::is_zero).then_some(lam)
    }

    /// Trace-lattice coordinates `(a_1..a_4, b_1..b_4)` of `q = Σ (a_k + b_kθ)·basis_k`.
    pub fn trace_coordinates(&self, q: &Quat) -> Option<Vec<i64>> {
        let lam = self.coordinates(q)?;
        Some(lam.iter().map(|l| l.a).chain(lam.iter().map(|l| l.b)).collect())
    }

    /// The icosian with trace-lattice coordinates `x`.
    pub fn element(&self, x: &[i64]) -> Quat {
        let mut d = [RElem::ZERO; 4];
        for k in 0..4 {
            let l = RElem::new(x[k], x[4 + k]);
            for (c, v) in d.iter_mut().enumerate() {
                *v += l * self.doubled[k][c];
            }
        }
        Quat::from_doubled(d)
    }

    /// Integer matrix of an additive map of the icosian ring, in trace-lattice coordinates.
    pub fn matrix_of(&self, f: impl Fn(&Quat) -> Quat) -> Result<IMatrix> {
        let mut m = linalg::zeros(8, 8);
        for c in 0..8 {
            let e: Vec<i64> = (0..8).map(|r| i64::from(r == c)).collect();
            let image = f(&self.element(&e));
            let col = self
                .trace_coordinates(&image)
                .ok_or_else(|| Error::Internal(format!("image {image} is not an icosian")))?;
            for r in 0..8 {
                m[r][c] = col[r];
            }
        }
        Ok(m)
    }

    /// Gram matrix of `B(x, y) = trd(xȳ)` on the basis.
    pub fn gram(&self) -> Result<RGram> {
        let mut entries = vec![vec![RElem::ZERO; 4]; 4];
        for k in 0..4 {
            for l in 0..4 {
                entries[k][l] = polar(&self.basis[k], &self.basis[l])
                    .to_relem()
                    .ok_or_else(|| Error::Internal("reduced trace form is not integral".into()))?;
            }
        }
        RGram::new(entries)
    }
}

fn cached_basis() -> &'static IcosianBasis {
    static BASIS: OnceLock<IcosianBasis> = OnceLock::new();
    BASIS.get_or_init(|| IcosianBasis::new(PivotStrategy::MinNorm).expect("icosian basis"))
}

/// The icosian basis with the default pivot strategy, built once.
pub fn icosian_basis() -> &'static IcosianBasis {
    cached_basis()
}

/// `F4`: the icosian ring with `Q = nrd`, built with the given pivot strategy.
pub fn f4_with(strategy: PivotStrategy) -> Result<RGram> {
    let g = IcosianBasis::new(strategy)?.gram()?;
    verify_golden(&g)?;
    Ok(g)
}

fn verify_golden(g: &RGram) -> Result<()> {
    if !g.is_even_unimodular() {
        return Err(Error::Internal("F4 Gram is not even unimodular".into()));
    }
    let r = golden_check(g, 3)?;
    if !r.golden {
        return Err(Error::Internal(format!("F4 fails the golden check: {:?}", r.reason)));
    }
    Ok(())
}

/// The unique golden lattice of rank 4.
pub fn f4() -> RGram {
    static F4: OnceLock<RGram> = OnceLock::new();
    F4.get_or_init(|| {
        let g = cached_basis().gram().expect("F4 Gram");
        verify_golden(&g).expect("F4 verification");
        g
    })
    .clone()
}

/// `F4 ⊥ F4`, golden of weight 4.
pub fn f4_perp_f4() -> RGram {
    let g = f4();
    orthogonal_sum(&g, &g)
}

/// Inputs for recovering `F4` from the bare `E8` Gram matrix.
#[derive(Clone, Debug)]
pub struct GoldenInputs {
    pub gram: ZGram,
    /// `z + z⁴`.
    pub t: IMatrix,
    /// `x ↦ φ·s(x̄ᴳ)` with `s` swapping the `j` and `k` coordinates.
    pub sigma: IMatrix,
    /// Left multiplication by `unit`.
    pub z: IMatrix,
    pub unit: Quat,
}

/// `y ↔ z` after Galois conjugation keeps the icosians, which plain conjugation does not.
pub fn galois_twist(q: &Quat) -> Quat {
    let g = q.galois();
    Quat::new(g.w, g.x, g.z, g.y).scale(&KElem::from(RElem::PHI))
}

/// `E8 = trace_gram(F4, η⁻¹)` with an order-5 isometry and the Galois witness.
pub fn e8_golden_inputs() -> Result<GoldenInputs> {
    let ib = cached_basis();
    // trd(u) = −φ makes T multiplication by −φ, so θ acts as −1 − T = θ
    let target = KElem::from(RElem::new(-1, -1));
    let unit = ib
        .units
        .iter()
        .find(|u| u.trd() == target && u.order(10) == Some(5))
        .cloned()
        .ok_or_else(|| Error::Internal("no icosian of order 5 with trace −φ".into()))?;
    let gram = ib.gram()?.trace_gram(&KElem::eta_inv())?;
    let z = ib.matrix_of(|x| &unit * x)?;
    let t = crate::lattice::golden_operator(&z);
    let sigma = ib.matrix_of(galois_twist)?;
    Ok(GoldenInputs { gram, t, sigma, z, unit })
}
