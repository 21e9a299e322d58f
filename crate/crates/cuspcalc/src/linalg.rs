//! Exact linear algebra over the integers and the rationals.
//!
//! Matrices here are small (a few dozen rows at most), so dense row-major
//! `Vec<Vec<_>>` storage and textbook elimination are sufficient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Converts an integer matrix into a rational one.
pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect()
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
///
/// The empty matrix has determinant 1.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `m x = b` when `m` is square and invertible; `None` otherwise.
pub fn solve(m: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut aug: Vec<Vec<BigRational>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap_or_else(BigRational::zero)).collect())
}

/// A basis of the right kernel of `m` (columns of `m` index the unknowns).
pub fn kernel(m: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction and a positive first nonzero entry.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    let first_neg = ints.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    if first_neg {
        g = -g;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Sylvester's criterion: true iff the symmetric matrix is negative definite.
pub fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    (1..=n).all(|k| {
        let minor: Vec<Vec<i64>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        let d = det(&minor);
        if k % 2 == 1 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}

/// Quadratic form `xᵀ m y` with rational vectors.
pub fn bilinear(m: &[Vec<i64>], x: &[BigRational], y: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, row) in m.iter().enumerate() {
        if x[i].is_zero() {
            continue;
        }
        for (j, &e) in row.iter().enumerate() {
            if e != 0 && !y[j].is_zero() {
                acc += &x[i] * &y[j] * BigRational::from_integer(BigInt::from(e));
            }
        }
    }
    acc
}

/// Serde adapter writing a rational as the string `"p/q"` (or `"p"`).
pub mod rational_string {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("not a rational: {s:?}")))
    }
}
