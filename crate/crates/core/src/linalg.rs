//! Dense exact linear algebra over [`Scalar`]s.
//!
//! Matrices are row-major `Vec<Vec<Scalar>>`; the domain is passed
//! explicitly so empty shapes are well defined.

use std::collections::HashMap;

use crate::coeffring::{Domain, Scalar};
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(domain: &Domain, n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { domain.one() } else { domain.zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix, rows: usize, cols: usize) -> Matrix {
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn mat_mul(domain: &Domain, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        if row.len() != inner {
            return Err(Error::BadShape(format!(
                "cannot multiply {}-column by {}-row matrix",
                row.len(),
                inner
            )));
        }
        let mut r = Vec::with_capacity(cols);
        for j in 0..cols {
            let mut acc = domain.zero();
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() && !b[k][j].is_zero() {
                    acc = acc.checked_add(&x.checked_mul(&b[k][j])?)?;
                }
            }
            r.push(acc);
        }
        out.push(r);
    }
    Ok(out)
}

pub fn mat_vec(domain: &Domain, a: &Matrix, v: &[Scalar]) -> Result<Vec<Scalar>> {
    a.iter()
        .map(|row| {
            if row.len() != v.len() {
                return Err(Error::DimensionMismatch {
                    expected: row.len(),
                    got: v.len(),
                });
            }
            let mut acc = domain.zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.checked_add(&x.checked_mul(y)?)?;
                }
            }
            Ok(acc)
        })
        .collect()
}

fn require_field(domain: &Domain) -> Result<()> {
    if domain.is_field() {
        Ok(())
    } else {
        Err(Error::NotAField(domain.to_string()))
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(domain: &Domain, m: &mut Matrix) -> Result<Vec<usize>> {
    require_field(domain)?;
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].unit_inverse()?;
        for x in m[r].iter_mut() {
            *x = x.checked_mul(&inv)?;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    if !m[r][j].is_zero() {
                        let t = f.checked_mul(&m[r][j])?;
                        m[i][j] = m[i][j].checked_sub(&t)?;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn rank(domain: &Domain, m: &Matrix) -> Result<usize> {
    let mut m = m.clone();
    Ok(rref(domain, &mut m)?.len())
}

/// Basis of `{ v : m v = 0 }` for an `rows x cols` matrix, one vector per
/// free column, normalized to 1 there.
pub fn kernel(domain: &Domain, m: &Matrix, cols: usize) -> Result<Vec<Vec<Scalar>>> {
    let mut a = m.clone();
    let pivots = rref(domain, &mut a)?;
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![domain.zero(); cols];
        v[free] = domain.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[r][free];
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Determinant. Gaussian elimination over fields, memoized cofactor
/// expansion otherwise (no division needed).
pub fn det(domain: &Domain, m: &Matrix) -> Result<Scalar> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::BadShape("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(domain.one());
    }
    if domain.is_field() {
        let mut a = m.clone();
        let mut acc = domain.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(domain.zero());
            };
            if p != c {
                a.swap(p, c);
                acc = -acc;
            }
            acc = acc.checked_mul(&a[c][c])?;
            let inv = a[c][c].unit_inverse()?;
            for i in c + 1..n {
                if !a[i][c].is_zero() {
                    let f = a[i][c].checked_mul(&inv)?;
                    for j in c..n {
                        if !a[c][j].is_zero() {
                            let t = f.checked_mul(&a[c][j])?;
                            a[i][j] = a[i][j].checked_sub(&t)?;
                        }
                    }
                }
            }
        }
        return Ok(acc);
    }
    if n > 20 {
        return Err(Error::BadShape("cofactor expansion limited to 20x20".into()));
    }
    let mut memo = HashMap::new();
    cofactor(domain, m, 0, (1u32 << n) - 1, &mut memo)
}

// Expand along row `row` using the columns in `mask`.
fn cofactor(
    domain: &Domain,
    m: &Matrix,
    row: usize,
    mask: u32,
    memo: &mut HashMap<u32, Scalar>,
) -> Result<Scalar> {
    if mask == 0 {
        return Ok(domain.one());
    }
    if let Some(v) = memo.get(&mask) {
        return Ok(v.clone());
    }
    let mut acc = domain.zero();
    let mut sign_neg = false;
    for c in 0..m.len() {
        if mask & (1 << c) == 0 {
            continue;
        }
        if !m[row][c].is_zero() {
            let minor = cofactor(domain, m, row + 1, mask & !(1 << c), memo)?;
            if !minor.is_zero() {
                let t = m[row][c].checked_mul(&minor)?;
                acc = if sign_neg { acc.checked_sub(&t)? } else { acc.checked_add(&t)? };
            }
        }
        sign_neg = !sign_neg;
    }
    memo.insert(mask, acc.clone());
    Ok(acc)
}

pub fn inverse(domain: &Domain, m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::BadShape("inverse of a non-square matrix".into()));
    }
    let mut aug: Matrix = m
        .iter()
        .zip(identity(domain, n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let pivots = rref(domain, &mut aug)?;
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Parse a matrix given as rows of scalar strings.
pub fn from_strs(domain: &Domain, rows: &[&[&str]]) -> Result<Matrix> {
    rows.iter()
        .map(|r| r.iter().map(|s| domain.parse_scalar(s)).collect())
        .collect()
}
