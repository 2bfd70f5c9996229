use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use smallvec::SmallVec;

/// Exponent vector `(e_1, ..., e_d)` of a monomial.
///
/// Ordering is lexicographic with `x_1 > x_2 > ...`, largest first, so
/// sorted collections list `x^3` before `x^2 y` before `y^3`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentTuple(SmallVec<[u8; 4]>);

impl ExponentTuple {
    pub fn new(entries: &[u8]) -> Self {
        ExponentTuple(SmallVec::from_slice(entries))
    }

    pub fn zero(d: usize) -> Self {
        ExponentTuple(SmallVec::from_elem(0, d))
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut e = Self::zero(d);
        e.0[i] = 1;
        e
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentTuple(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other` divides `self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(ExponentTuple(out))
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `prod_i C(e_i + f_i, e_i)`, the structure constant of the divided
    /// product.
    pub fn binomial_weight(&self, other: &Self) -> BigInt {
        let mut acc = BigInt::one();
        for (a, b) in self.0.iter().zip(&other.0) {
            acc *= binomial(*a as u64 + *b as u64, *a as u64);
        }
        acc
    }

    /// The word `1^{e_1} 2^{e_2} ...` listing each variable index with
    /// multiplicity.
    pub fn letters(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree());
        for (i, &e) in self.0.iter().enumerate() {
            w.extend(std::iter::repeat_n(i, e as usize));
        }
        w
    }

    pub fn from_letters(d: usize, word: &[usize]) -> Self {
        let mut e = Self::zero(d);
        for &i in word {
            e.0[i] += 1;
        }
        e
    }
}

impl Ord for ExponentTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for ExponentTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..])
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// All exponent tuples of length `d` and degree `n`, largest first.
pub fn monomials(d: usize, n: usize) -> Vec<ExponentTuple> {
    fn rec(d: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<ExponentTuple>) {
        if cur.len() + 1 == d {
            cur.push(left as u8);
            out.push(ExponentTuple::new(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u8);
            rec(d, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if n == 0 {
            out.push(ExponentTuple::zero(0));
        }
        return out;
    }
    rec(d, n, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Number of monomials of degree `n` in `d` variables.
pub fn monomial_count(d: usize, n: usize) -> usize {
    if d == 0 {
        return usize::from(n == 0);
    }
    usize::try_from(binomial((n + d - 1) as u64, n as u64)).unwrap()
}

/// Default variable names: `x, y, z, w` for `d <= 4`, else `x1, ..., xd`.
pub fn variable_names(d: usize) -> Vec<String> {
    if d <= 4 {
        ["x", "y", "z", "w"][..d].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=d).map(|i| format!("x{i}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_and_counts() {
        let m = monomials(4, 4);
        assert_eq!(m.len(), 35);
        assert_eq!(m[0], ExponentTuple::new(&[4, 0, 0, 0]));
        assert_eq!(m[1], ExponentTuple::new(&[3, 1, 0, 0]));
        assert_eq!(m[34], ExponentTuple::new(&[0, 0, 0, 4]));
        let mut sorted = m.clone();
        sorted.sort();
        assert_eq!(sorted, m);
        assert_eq!(monomials(3, 3).len(), 10);
        assert_eq!(monomial_count(4, 3), 20);
        assert_eq!(monomial_count(3, 0), 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        let a = ExponentTuple::new(&[1, 2]);
        let b = ExponentTuple::new(&[1, 1]);
        assert_eq!(a.binomial_weight(&b), BigInt::from(6));
    }

    #[test]
    fn letters_round_trip() {
        let e = ExponentTuple::new(&[2, 0, 1]);
        assert_eq!(e.letters(), vec![0, 0, 2]);
        assert_eq!(ExponentTuple::from_letters(3, &[2, 0, 0]), e);
    }
}
