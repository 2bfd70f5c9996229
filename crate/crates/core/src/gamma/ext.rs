use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{Domain, Scalar};
use crate::error::{Error, Result};
use crate::polyspace::variable_names;

/// The based space an exterior power is taken of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtSpace {
    /// `U` with basis `x_1, ..., x_n`.
    Primal,
    /// `U*` with basis `x_1*, ..., x_n*`.
    Dual,
    /// `E (x) G` with basis `(i, j)` at index `i * dim G + j`.
    Paired { e: usize, g: usize },
}

/// An element of `/\^k` of a based space, on the basis of increasing index
/// tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElem {
    space: ExtSpace,
    n: usize,
    grade: usize,
    domain: Domain,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

/// Sort `idx` in place; `None` on a repeated index, else whether the
/// permutation was odd.
pub fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

fn accumulate(terms: &mut BTreeMap<Vec<usize>, Scalar>, k: Vec<usize>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl ExtElem {
    pub fn dimension_of(space: ExtSpace, n: usize) -> usize {
        match space {
            ExtSpace::Paired { e, g } => e * g,
            _ => n,
        }
    }

    pub fn zero(space: ExtSpace, n: usize, grade: usize, domain: &Domain) -> Self {
        let n = Self::dimension_of(space, n);
        ExtElem {
            space,
            n,
            grade,
            domain: domain.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `1` in `/\^0`.
    pub fn unit(space: ExtSpace, n: usize, domain: &Domain) -> Self {
        let mut out = Self::zero(space, n, 0, domain);
        out.terms.insert(Vec::new(), domain.one());
        out
    }

    /// `c * e_{i_1} /\ ... /\ e_{i_k}` for indices in any order.
    pub fn basis(space: ExtSpace, n: usize, indices: &[usize], c: Scalar) -> Result<Self> {
        let mut out = Self::zero(space, n, indices.len(), &c.domain());
        if let Some(&bad) = indices.iter().find(|&&i| i >= out.n) {
            return Err(Error::BadShape(format!("basis index {bad} out of range")));
        }
        let mut idx = indices.to_vec();
        if let Some(odd) = sort_with_sign(&mut idx) {
            accumulate(&mut out.terms, idx, if odd { -c } else { c });
        }
        Ok(out)
    }

    /// A vector `sum_i coords[i] e_i` in `/\^1`.
    pub fn vector(space: ExtSpace, domain: &Domain, coords: &[Scalar]) -> Self {
        let mut out = Self::zero(space, coords.len(), 1, domain);
        for (i, c) in coords.iter().enumerate() {
            accumulate(&mut out.terms, vec![i], c.clone());
        }
        out
    }

    /// `x_1 /\ ... /\ x_n`.
    pub fn top(space: ExtSpace, n: usize, domain: &Domain) -> Self {
        let idx: Vec<usize> = (0..Self::dimension_of(space, n)).collect();
        Self::basis(space, n, &idx, domain.one()).expect("in range")
    }

    pub fn space(&self) -> ExtSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, indices: &[usize]) -> Scalar {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(|| self.domain.zero())
    }

    /// The coordinate on `e_1 /\ ... /\ e_n` of a top-grade element.
    pub fn top_coordinate(&self) -> Result<Scalar> {
        if self.grade != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                got: self.grade,
            });
        }
        Ok(self.coeff(&(0..self.n).collect::<Vec<_>>()))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.space != other.space || self.n != other.n {
            return Err(Error::WrongSpace(format!(
                "{:?}[{}] vs {:?}[{}]",
                self.space, self.n, other.space, other.n
            )));
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch {
                left: self.domain.to_string(),
                right: other.domain.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.grade != other.grade {
            return Err(Error::DegreeMismatch {
                expected: self.grade,
                got: other.grade,
            });
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            accumulate(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = self.clone();
        out.terms = BTreeMap::new();
        for (k, c) in &self.terms {
            accumulate(&mut out.terms, k.clone(), c * s);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = ExtElem {
            space: self.space,
            n: self.n,
            grade: self.grade + other.grade,
            domain: self.domain.clone(),
            terms: BTreeMap::new(),
        };
        if out.grade > out.n {
            return Ok(out);
        }
        for (a, c1) in &self.terms {
            for (b, c2) in &other.terms {
                let mut idx: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some(odd) = sort_with_sign(&mut idx) {
                    let c = c1 * c2;
                    accumulate(&mut out.terms, idx, if odd { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Wedge of vectors given by coordinates.
    pub fn wedge_vectors(space: ExtSpace, n: usize, domain: &Domain, rows: &[Vec<Scalar>]) -> Result<Self> {
        let mut acc = Self::unit(space, n, domain);
        for r in rows {
            acc = acc.wedge(&Self::vector(space, domain, r))?;
        }
        Ok(acc)
    }

    /// `/\^k f` for the linear map sending `e_i` to `image(i)`.
    pub fn map_linear(
        &self,
        target: ExtSpace,
        target_n: usize,
        mut image: impl FnMut(usize) -> Result<Vec<Scalar>>,
    ) -> Result<Self> {
        let mut out = Self::zero(target, target_n, self.grade, &self.domain);
        let mut cache: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        for (idx, c) in &self.terms {
            let mut rows = Vec::with_capacity(idx.len());
            for &i in idx {
                if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(i) {
                    e.insert(image(i)?);
                }
                rows.push(cache[&i].clone());
            }
            let w = Self::wedge_vectors(target, target_n, &self.domain, &rows)?;
            out = out.checked_add(&w.scale(c))?;
        }
        Ok(out)
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let label = |i: usize| -> String {
            match self.space {
                ExtSpace::Primal => variable_names(self.n)[i].clone(),
                ExtSpace::Dual => format!("{}*", variable_names(self.n)[i]),
                ExtSpace::Paired { g, .. } => format!("({},{})", i / g, i % g),
            }
        };
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let basis: Vec<String> = idx.iter().map(|&i| label(i)).collect();
            write!(f, "({c})*{}", if basis.is_empty() { "1".into() } else { basis.join("^") })?;
        }
        Ok(())
    }
}
