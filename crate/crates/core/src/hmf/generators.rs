use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::eisenstein::eisenstein;
use crate::error::{Error, Result};
use crate::qseries::QExp;

/// The generators `A2, B6, C10` of the ring of symmetric Hilbert modular forms.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub a2: QExp,
    pub b6: QExp,
    pub c10: QExp,
    pub prec: i64,
}

/// Build `A2, B6, C10` from Eisenstein series.
///
/// `B6` is normalized so that its restriction to `q1 = 1` is `Δ`; `C10` kills
/// the restriction and is scaled so that `ν(A2·C10 − B6²) > (2, 4)`.
pub fn generators(prec: i64) -> Result<GeneratorSet> {
    if prec < 3 {
        return Err(Error::InsufficientPrecision {
            prec,
            reason: "generators need precision ≥ 3".into(),
        });
    }
    let a2 = eisenstein(2, prec)?;
    let a2sq = a2.mul(&a2);

    let d6 = a2sq.mul(&a2).sub(&eisenstein(6, prec)?);
    let c6 = d6.restrict_q1().coeff(1);
    if c6.is_zero() {
        return Err(Error::SingularNormalization("B6"));
    }
    let b6 = d6.scale(&(BigRational::from_integer(1.into()) / c6));

    let e10cusp = eisenstein(10, prec)?.sub(&a2sq.mul(&a2sq).mul(&a2));
    let a2sq_b6 = a2sq.mul(&b6);
    let r = a2sq_b6.restrict_q1().coeff(1);
    if r.is_zero() {
        return Err(Error::SingularNormalization("C10"));
    }
    let d = e10cusp.restrict_q1().coeff(1) / r;
    let c10raw = e10cusp.sub(&a2sq_b6.scale(&d));
    if !c10raw.restrict_q1().is_zero() {
        return Err(Error::SingularNormalization("C10"));
    }
    let lead = c10raw.coeff_at(2, 4);
    if lead.is_zero() {
        return Err(Error::SingularNormalization("C10"));
    }
    let b = b6.coeff_at(1, 2);
    let c10 = c10raw.scale(&(&b * &b / lead));
    Ok(GeneratorSet { a2, b6, c10, prec })
}

impl GeneratorSet {
    /// `X12 = (A2·C10 − B6²)/4`.
    pub fn x12(&self) -> QExp {
        self.a2
            .mul(&self.c10)
            .sub(&self.b6.mul(&self.b6))
            .scale(&BigRational::new(1.into(), 4.into()))
    }
}

/// `A2^a B6^b C10^c`, of weight `2a + 6b + 10c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    pub fn weight(&self) -> u32 {
        2 * self.a + 6 * self.b + 10 * self.c
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("A2", self.a), ("B6", self.b), ("C10", self.c)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("·"))
        }
    }
}

/// All monomials of weight `w`; the pure `A2` power comes first.
pub fn monomials(w: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for c in 0..=w / 10 {
        for b in 0..=(w - 10 * c) / 6 {
            let rest = w - 10 * c - 6 * b;
            if rest.is_multiple_of(2) {
                out.push(Monomial { a: rest / 2, b, c });
            }
        }
    }
    out
}

/// Generators plus a cache of their powers, shared by all weights.
pub struct HmfRing {
    gens: GeneratorSet,
    powers: Mutex<[Vec<Arc<QExp>>; 3]>,
}

impl HmfRing {
    pub fn new(prec: i64) -> Result<Self> {
        Ok(HmfRing::from_generators(generators(prec)?))
    }

    pub fn from_generators(gens: GeneratorSet) -> Self {
        let one = Arc::new(QExp::one(gens.prec));
        HmfRing { gens, powers: Mutex::new([vec![one.clone()], vec![one.clone()], vec![one]]) }
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn prec(&self) -> i64 {
        self.gens.prec
    }

    fn power(&self, which: usize, e: u32) -> Arc<QExp> {
        let base = match which {
            0 => &self.gens.a2,
            1 => &self.gens.b6,
            _ => &self.gens.c10,
        };
        let mut cache = self.powers.lock().expect("power cache poisoned");
        let list = &mut cache[which];
        while list.len() <= e as usize {
            let next = list.last().expect("nonempty").mul(base);
            list.push(Arc::new(next));
        }
        list[e as usize].clone()
    }

    pub fn monomial(&self, m: Monomial) -> QExp {
        self.power(0, m.a).mul(&self.power(1, m.b)).mul(&self.power(2, m.c))
    }

    /// Expansions of all monomials of weight `w`.
    pub fn monomial_basis(&self, w: u32) -> Result<Vec<(Monomial, QExp)>> {
        if w < 2 || w % 2 == 1 {
            return Err(Error::InvalidArgument(format!("weight {w} must be even and ≥ 2")));
        }
        Ok(monomials(w).into_iter().map(|m| (m, self.monomial(m))).collect())
    }
}

/// Convenience wrapper building a fresh ring at precision `prec`.
pub fn monomial_basis(w: u32, prec: i64) -> Result<Vec<(Monomial, QExp)>> {
    HmfRing::new(prec)?.monomial_basis(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::IndexPair;
    use crate::hmf::elliptic::{elliptic_delta, elliptic_e4};
    use crate::ring::{rat, rat_frac};

    fn ip(i: i64, j: i64) -> IndexPair {
        IndexPair::new(i, j)
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2), vec![Monomial { a: 1, b: 0, c: 0 }]);
        assert_eq!(monomials(4), vec![Monomial { a: 2, b: 0, c: 0 }]);
        assert_eq!(monomials(30).len(), 13);
        assert!(monomials(30).iter().all(|m| m.weight() == 30));
        assert_eq!(monomials(30)[0], Monomial { a: 15, b: 0, c: 0 });
    }

    #[test]
    fn generator_restrictions() {
        let g = generators(5).unwrap();
        assert_eq!(g.a2.restrict_q1(), elliptic_e4(5));
        assert_eq!(g.b6.restrict_q1(), elliptic_delta(5));
        assert!(g.c10.restrict_q1().is_zero());
        assert_eq!(g.b6.coeff_at(1, 2), rat_frac(1, 2));
        assert_eq!(g.c10.coeff_at(2, 4), rat_frac(1, 4));
    }

    #[test]
    fn generator_valuations() {
        let g = generators(4).unwrap();
        assert_eq!(g.a2.nu_minus_one(), Some(ip(1, 2)));
        assert_eq!(g.b6.nu(), Some(ip(1, 2)));
        assert_eq!(g.c10.nu(), Some(ip(2, 4)));
        assert_eq!(g.x12().nu(), Some(ip(2, 5)));
        assert_eq!(g.a2.constant(), rat(1));
    }

    #[test]
    fn generators_symmetric_and_unit_invariant() {
        let g = generators(6).unwrap();
        for f in [&g.a2, &g.b6, &g.c10] {
            assert!(f.check_symmetric());
            assert!(f.check_unit_invariant());
        }
    }

    #[test]
    fn low_precision_rejected() {
        assert!(matches!(generators(2), Err(Error::InsufficientPrecision { .. })));
    }
}
