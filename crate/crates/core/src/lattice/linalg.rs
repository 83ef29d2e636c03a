//! Exact integer and rational matrix routines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row major.
pub type IMatrix = Vec<Vec<i64>>;
/// Dense rational matrix, row major.
pub type QMatrix = Vec<Vec<BigRational>>;

pub fn identity(n: usize) -> IMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn zeros(r: usize, c: usize) -> IMatrix {
    vec![vec![0; c]; r]
}

pub fn transpose(a: &IMatrix) -> IMatrix {
    let c = a.first().map_or(0, Vec::len);
    (0..c).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer matrix entry overflows i64")
}

pub fn mat_mul(a: &IMatrix, b: &IMatrix) -> IMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| narrow((0..inner).map(|k| row[k] as i128 * b[k][j] as i128).sum()))
                .collect()
        })
        .collect()
}

pub fn mat_add(a: &IMatrix, b: &IMatrix) -> IMatrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn mat_neg(a: &IMatrix) -> IMatrix {
    a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

pub fn mat_vec(a: &IMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| narrow(row.iter().zip(v).map(|(x, y)| *x as i128 * *y as i128).sum()))
        .collect()
}

/// `xᵀ g y`.
pub fn bilinear(g: &IMatrix, x: &[i64], y: &[i64]) -> i128 {
    let mut acc = 0i128;
    for (i, row) in g.iter().enumerate() {
        if x[i] == 0 {
            continue;
        }
        let r: i128 = row.iter().zip(y).map(|(a, b)| *a as i128 * *b as i128).sum();
        acc += x[i] as i128 * r;
    }
    acc
}

/// `uᵀ g u`.
pub fn congruence(g: &IMatrix, u: &IMatrix) -> IMatrix {
    mat_mul(&transpose(u), &mat_mul(g, u))
}

pub fn is_square(a: &IMatrix) -> bool {
    a.iter().all(|r| r.len() == a.len())
}

pub fn is_symmetric(a: &IMatrix) -> bool {
    is_square(a) && (0..a.len()).all(|i| (0..i).all(|j| a[i][j] == a[j][i]))
}

/// Fraction-free Gaussian elimination.
pub fn det_bareiss(a: &IMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

pub fn to_rational(a: &IMatrix) -> QMatrix {
    a.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

/// Gauss–Jordan inverse over `ℚ`.
pub fn rational_inverse(a: &QMatrix) -> Result<QMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).ok_or(Error::Singular)?;
        m.swap(c, p);
        let inv = BigRational::one() / &m[c][c];
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn is_integral_matrix(a: &QMatrix) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_integer()))
}

pub fn to_integer_matrix(a: &QMatrix) -> Option<IMatrix> {
    a.iter()
        .map(|r| {
            r.iter()
                .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
                .collect()
        })
        .collect()
}

/// Inverse of a unimodular integer matrix.
pub fn integral_inverse(a: &IMatrix) -> Result<IMatrix> {
    let inv = rational_inverse(&to_rational(a))?;
    to_integer_matrix(&inv).ok_or_else(|| Error::NonIntegral("matrix inverse".into()))
}

/// Solve `a x = b` over `ℚ` for square invertible `a`.
pub fn rational_solve(a: &QMatrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    let inv = rational_inverse(a)?;
    Ok(inv
        .iter()
        .map(|row| row.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y))
        .collect())
}

/// Positive definiteness by exact symmetric elimination: every pivot must be positive.
pub fn is_positive_definite(g: &IMatrix) -> bool {
    if !is_symmetric(g) {
        return false;
    }
    let n = g.len();
    let mut m = to_rational(g);
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
    }
    true
}

/// `round(a / b)` with ties away from zero, for `b > 0`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

/// `b_k ← b_k − q b_l` with `q` the rounded Gram–Schmidt coefficient.
fn size_reduce(k: usize, l: usize, gram: &mut [Vec<i128>], h: &mut IMatrix, lam: &mut [Vec<BigInt>], d: &[BigInt]) {
    let two_l: BigInt = &lam[k][l] * 2;
    if two_l.abs() <= d[l + 1] {
        return;
    }
    let q = round_div(&lam[k][l], &d[l + 1]);
    let qi = q.to_i128().expect("LLL quotient overflow");
    let qs = i64::try_from(qi).expect("LLL quotient overflow");
    for row in h.iter_mut() {
        row[k] -= qs * row[l];
    }
    let (gkk, gkl, gll) = (gram[k][k], gram[k][l], gram[l][l]);
    for j in 0..gram.len() {
        let v = gram[l][j];
        gram[k][j] -= qi * v;
    }
    gram[k][k] = gkk - 2 * qi * gkl + qi * qi * gll;
    for j in 0..gram.len() {
        gram[j][k] = gram[k][j];
    }
    lam[k][l] -= &q * &d[l + 1];
    for i in 0..l {
        let v = &q * &lam[l][i];
        lam[k][i] -= v;
    }
}

/// Integral LLL (δ = 3/4) on a positive definite Gram matrix.
///
/// Returns `(g', u)` with `g' = uᵀ g u` and `u` unimodular; the columns of `u`
/// are the reduced basis in the original coordinates.
pub fn lll_gram(g: &IMatrix) -> (IMatrix, IMatrix) {
    let n = g.len();
    let mut gram: Vec<Vec<i128>> = g.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut h = identity(n);
    if n <= 1 {
        return (g.clone(), h);
    }
    // d[i+1] is the i-th leading Gram determinant, d[0] = 1
    let mut d: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut lam: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::one();
    d[1] = BigInt::from(gram[0][0]);
    let mut k = 1usize;
    let mut kmax = 0usize;

    let mut guard = 0u64;
    while k < n {
        guard += 1;
        assert!(guard < 10_000_000, "LLL failed to terminate");
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = BigInt::from(gram[k][j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input is degenerate");
                    d[k + 1] = u;
                }
            }
        }
        size_reduce(k, k - 1, &mut gram, &mut h, &mut lam, &d);
        let lhs = BigInt::from(4) * &d[k + 1] * &d[k - 1];
        let rhs = BigInt::from(3) * &d[k] * &d[k] - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            // swap b_k and b_{k−1}
            for row in h.iter_mut() {
                row.swap(k, k - 1);
            }
            gram.swap(k, k - 1);
            for row in gram.iter_mut() {
                row.swap(k, k - 1);
            }
            for j in 0..k - 1 {
                let tmp = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = tmp;
            }
            let l = lam[k][k - 1].clone();
            let b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k + 1];
            }
            d[k] = b;
            if k > 1 {
                k -= 1;
            }
        } else {
            for l in (0..k - 1).rev() {
                size_reduce(k, l, &mut gram, &mut h, &mut lam, &d);
            }
            k += 1;
        }
    }
    let reduced: IMatrix = gram.iter().map(|r| r.iter().map(|&x| narrow(x)).collect()).collect();
    (reduced, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn e8() -> IMatrix {
        // Cartan matrix of E8
        let mut g = identity(8);
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)] {
            g[a][b] = -1;
            g[b][a] = -1;
        }
        g
    }

    #[test]
    fn determinants() {
        assert_eq!(det_bareiss(&e8()), BigInt::one());
        assert_eq!(det_bareiss(&vec![vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det_bareiss(&vec![vec![2, 4], vec![1, 2]]), BigInt::zero());
        assert_eq!(det_bareiss(&vec![vec![0, 2, 1], vec![3, 1, 0], vec![1, 1, 1]]), BigInt::from(-4));
    }

    #[test]
    fn inverse_of_e8_is_integral() {
        let inv = integral_inverse(&e8()).unwrap();
        assert_eq!(mat_mul(&e8(), &inv), identity(8));
        assert!(integral_inverse(&vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(matches!(rational_inverse(&to_rational(&vec![vec![1, 1], vec![1, 1]])), Err(Error::Singular)));
    }

    #[test]
    fn positive_definite() {
        assert!(is_positive_definite(&e8()));
        assert!(!is_positive_definite(&vec![vec![2, 3], vec![3, 2]]));
        assert!(!is_positive_definite(&vec![vec![0, 0], vec![0, 2]]));
    }

    #[test]
    fn lll_recovers_small_basis() {
        // a badly skewed basis of E8
        let mut upper = identity(8);
        let mut lower = identity(8);
        for i in 0..7 {
            upper[i][i + 1] = 3 + i as i64;
            lower[i + 1][i] = -2;
        }
        let u = mat_mul(&upper, &lower);
        assert!(det_bareiss(&u).is_one());
        let skew = congruence(&e8(), &u);
        let (red, h) = lll_gram(&skew);
        assert_eq!(red, congruence(&skew, &h));
        let hd = det_bareiss(&h);
        assert!(hd == BigInt::one() || hd == -BigInt::one());
        assert!(red.iter().enumerate().all(|(i, r)| r[i] <= 4), "{red:?}");
    }

    #[test]
    fn round_div_rounds_to_nearest() {
        let r = |a: i64, b: i64| round_div(&BigInt::from(a), &BigInt::from(b));
        assert_eq!(r(7, 2), BigInt::from(4));
        assert_eq!(r(-7, 2), BigInt::from(-3));
        assert_eq!(r(5, 3), BigInt::from(2));
        assert_eq!(r(-5, 3), BigInt::from(-2));
    }
}
