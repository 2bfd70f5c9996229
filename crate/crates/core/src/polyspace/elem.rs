use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::monomial::{monomials, ExponentTuple};
use crate::coeffring::{Domain, Scalar};
use crate::error::{Error, Result};

pub type Terms = BTreeMap<ExponentTuple, Scalar>;

pub(crate) fn accumulate(terms: &mut Terms, e: ExponentTuple, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(e) {
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

/// Which side of the pairing a divided-power element lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    /// `D U`.
    Primal,
    /// `D U*`.
    Dual,
}

/// Homogeneous element of `Sym_i U` on the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymElem {
    d: usize,
    degree: usize,
    domain: Domain,
    terms: Terms,
}

/// Homogeneous element of `D_i U` or `D_i U*` on the divided monomial basis.
/// The tuple `e` stands for `x_1^(e_1) ... x_d^(e_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DividedElem {
    d: usize,
    degree: usize,
    space: Space,
    domain: Domain,
    terms: Terms,
}

fn check_terms(d: usize, degree: usize, terms: &Terms, domain: &Domain) -> Result<()> {
    for (e, c) in terms {
        if e.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: e.dim(),
            });
        }
        if e.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                got: e.degree(),
            });
        }
        if c.domain() != *domain {
            return Err(Error::DomainMismatch {
                left: domain.to_string(),
                right: c.domain().to_string(),
            });
        }
    }
    Ok(())
}

macro_rules! common_impl {
    ($t:ident) => {
        impl $t {
            pub fn d(&self) -> usize {
                self.d
            }

            pub fn degree(&self) -> usize {
                self.degree
            }

            pub fn domain(&self) -> &Domain {
                &self.domain
            }

            pub fn terms(&self) -> &Terms {
                &self.terms
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn coeff(&self, e: &ExponentTuple) -> Scalar {
                self.terms
                    .get(e)
                    .cloned()
                    .unwrap_or_else(|| self.domain.zero())
            }

            pub fn coeff_of(&self, e: &[u8]) -> Scalar {
                self.coeff(&ExponentTuple::new(e))
            }

            /// Coordinates on the full monomial basis in lex order.
            pub fn dense(&self) -> Vec<Scalar> {
                monomials(self.d, self.degree)
                    .iter()
                    .map(|e| self.coeff(e))
                    .collect()
            }

            fn compatible(&self, other: &Self) -> Result<()> {
                if self.d != other.d {
                    return Err(Error::DimensionMismatch {
                        expected: self.d,
                        got: other.d,
                    });
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
                self.same_space(other)?;
                if self.degree != other.degree {
                    return Err(Error::DegreeMismatch {
                        expected: self.degree,
                        got: other.degree,
                    });
                }
                let mut out = self.clone();
                for (e, c) in &other.terms {
                    accumulate(&mut out.terms, e.clone(), c.clone());
                }
                Ok(out)
            }

            pub fn checked_sub(&self, other: &Self) -> Result<Self> {
                self.checked_add(&other.neg())
            }

            pub fn neg(&self) -> Self {
                let mut out = self.clone();
                for c in out.terms.values_mut() {
                    *c = -&*c;
                }
                out
            }

            pub fn scale(&self, s: &Scalar) -> Self {
                let mut out = self.clone();
                out.terms = self
                    .terms
                    .iter()
                    .map(|(e, c)| (e.clone(), c * s))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                out
            }

            /// Apply `f` to every coefficient, landing in `domain`.
            pub fn map_coeffs(
                &self,
                domain: &Domain,
                mut f: impl FnMut(&Scalar) -> Result<Scalar>,
            ) -> Result<Self> {
                let mut out = self.clone();
                out.domain = domain.clone();
                out.terms = Terms::new();
                for (e, c) in &self.terms {
                    accumulate(&mut out.terms, e.clone(), f(c)?);
                }
                Ok(out)
            }
        }
    };
}

common_impl!(SymElem);
common_impl!(DividedElem);

impl SymElem {
    pub fn zero(d: usize, degree: usize, domain: &Domain) -> Self {
        SymElem {
            d,
            degree,
            domain: domain.clone(),
            terms: Terms::new(),
        }
    }

    pub fn from_terms(d: usize, degree: usize, domain: &Domain, raw: Terms) -> Result<Self> {
        check_terms(d, degree, &raw, domain)?;
        let terms = raw.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(SymElem {
            d,
            degree,
            domain: domain.clone(),
            terms,
        })
    }

    pub fn monomial(e: ExponentTuple, c: Scalar) -> Self {
        let mut out = SymElem::zero(e.dim(), e.degree(), &c.domain());
        accumulate(&mut out.terms, e, c);
        out
    }

    pub fn one(d: usize, domain: &Domain) -> Self {
        Self::monomial(ExponentTuple::zero(d), domain.one())
    }

    pub fn variable(d: usize, i: usize, domain: &Domain) -> Self {
        Self::monomial(ExponentTuple::unit(d, i), domain.one())
    }

    /// The linear form `sum_i coeffs[i] x_i`.
    pub fn linear(domain: &Domain, coeffs: &[Scalar]) -> Self {
        let d = coeffs.len();
        let mut out = SymElem::zero(d, 1, domain);
        for (i, c) in coeffs.iter().enumerate() {
            accumulate(&mut out.terms, ExponentTuple::unit(d, i), c.clone());
        }
        out
    }

    /// Coefficients of a linear form.
    pub fn linear_coeffs(&self) -> Result<Vec<Scalar>> {
        if self.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: self.degree,
            });
        }
        Ok((0..self.d)
            .map(|i| self.coeff(&ExponentTuple::unit(self.d, i)))
            .collect())
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        self.compatible(other)
    }

    pub fn sym_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = SymElem::zero(self.d, self.degree + other.degree, &self.domain);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                accumulate(&mut out.terms, e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = SymElem::one(self.d, &self.domain);
        for _ in 0..n {
            acc = acc.sym_mul(self)?;
        }
        Ok(acc)
    }

    /// Contraction `self . phi` on `D U*`. A full contraction gives a
    /// degree-0 element, see [`DividedElem::as_scalar`].
    pub fn contract(&self, phi: &DividedElem) -> Result<DividedElem> {
        if phi.space != Space::Dual {
            return Err(Error::WrongSpace("contraction acts on D U*".into()));
        }
        if self.d != phi.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: phi.d,
            });
        }
        if self.domain != phi.domain {
            return Err(Error::DomainMismatch {
                left: self.domain.to_string(),
                right: phi.domain.to_string(),
            });
        }
        if self.degree > phi.degree {
            return Err(Error::DegreeMismatch {
                expected: phi.degree,
                got: self.degree,
            });
        }
        let mut out = DividedElem::zero(self.d, phi.degree - self.degree, Space::Dual, &self.domain);
        for (m, c) in &self.terms {
            for (e, f) in &phi.terms {
                if let Some(q) = e.checked_sub(m) {
                    accumulate(&mut out.terms, q, c * f);
                }
            }
        }
        Ok(out)
    }

    /// Full contraction `phi(self)` when the degrees agree.
    pub fn pair(&self, phi: &DividedElem) -> Result<Scalar> {
        if self.degree != phi.degree {
            return Err(Error::DegreeMismatch {
                expected: phi.degree,
                got: self.degree,
            });
        }
        Ok(self.contract(phi)?.as_scalar())
    }
}

impl DividedElem {
    pub fn zero(d: usize, degree: usize, space: Space, domain: &Domain) -> Self {
        DividedElem {
            d,
            degree,
            space,
            domain: domain.clone(),
            terms: Terms::new(),
        }
    }

    pub fn from_terms(
        d: usize,
        degree: usize,
        space: Space,
        domain: &Domain,
        raw: Terms,
    ) -> Result<Self> {
        check_terms(d, degree, &raw, domain)?;
        let terms = raw.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(DividedElem {
            d,
            degree,
            space,
            domain: domain.clone(),
            terms,
        })
    }

    /// Build from dense coordinates in lex order.
    pub fn from_dense(
        d: usize,
        degree: usize,
        space: Space,
        domain: &Domain,
        coords: &[Scalar],
    ) -> Result<Self> {
        let basis = monomials(d, degree);
        if basis.len() != coords.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: coords.len(),
            });
        }
        Self::from_terms(d, degree, space, domain, basis.into_iter().zip(coords.iter().cloned()).collect())
    }

    pub fn monomial(e: ExponentTuple, space: Space, c: Scalar) -> Self {
        let mut out = DividedElem::zero(e.dim(), e.degree(), space, &c.domain());
        accumulate(&mut out.terms, e, c);
        out
    }

    pub fn one(d: usize, space: Space, domain: &Domain) -> Self {
        Self::monomial(ExponentTuple::zero(d), space, domain.one())
    }

    pub fn variable(d: usize, i: usize, space: Space, domain: &Domain) -> Self {
        Self::monomial(ExponentTuple::unit(d, i), space, domain.one())
    }

    pub fn linear(space: Space, domain: &Domain, coeffs: &[Scalar]) -> Self {
        let d = coeffs.len();
        let mut out = DividedElem::zero(d, 1, space, domain);
        for (i, c) in coeffs.iter().enumerate() {
            accumulate(&mut out.terms, ExponentTuple::unit(d, i), c.clone());
        }
        out
    }

    pub fn linear_coeffs(&self) -> Result<Vec<Scalar>> {
        if self.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: self.degree,
            });
        }
        Ok((0..self.d)
            .map(|i| self.coeff(&ExponentTuple::unit(self.d, i)))
            .collect())
    }

    pub fn space(&self) -> Space {
        self.space
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        self.compatible(other)?;
        if self.space != other.space {
            return Err(Error::WrongSpace(format!(
                "{:?} vs {:?}",
                self.space, other.space
            )));
        }
        Ok(())
    }

    /// Degree-0 elements are scalars.
    pub fn as_scalar(&self) -> Scalar {
        debug_assert_eq!(self.degree, 0);
        self.coeff(&ExponentTuple::zero(self.d))
    }

    /// Product in the divided power algebra:
    /// `x^(e) x^(f) = prod C(e_i + f_i, e_i) x^(e+f)`.
    pub fn divided_mul(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = DividedElem::zero(self.d, self.degree + other.degree, self.space, &self.domain);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let w = e1.binomial_weight(e2);
                accumulate(&mut out.terms, e1.add(e2), (c1 * c2).mul_int(&w));
            }
        }
        Ok(out)
    }

    /// `l^(n)` for a linear form `l = sum a_i x_i`:
    /// `sum_{|k| = n} prod a_i^{k_i} x^(k)`.
    pub fn divided_power(&self, n: usize) -> Result<Self> {
        let a = self.linear_coeffs()?;
        let mut out = DividedElem::zero(self.d, n, self.space, &self.domain);
        let powers: Vec<Vec<Scalar>> = a
            .iter()
            .map(|c| {
                let mut p = vec![self.domain.one()];
                for k in 0..n {
                    let next = &p[k] * c;
                    p.push(next);
                }
                p
            })
            .collect();
        for k in monomials(self.d, n) {
            let mut c = self.domain.one();
            for (i, &ki) in k.entries().iter().enumerate() {
                c = c * &powers[i][ki as usize];
                if c.is_zero() {
                    break;
                }
            }
            accumulate(&mut out.terms, k, c);
        }
        Ok(out)
    }

    /// Comultiplication `D_i U -> T_i U`: each divided monomial maps to the
    /// sum of all distinct words with its letter multiset.
    pub fn comultiply(&self) -> Result<Vec<(Scalar, Vec<usize>)>> {
        if self.space != Space::Primal {
            return Err(Error::WrongSpace("comultiplication is defined on D U".into()));
        }
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            for w in distinct_words(e) {
                out.push((c.clone(), w));
            }
        }
        Ok(out)
    }

    /// Reinterpret the same coordinates on the other side of the pairing.
    pub fn with_space(&self, space: Space) -> Self {
        let mut out = self.clone();
        out.space = space;
        out
    }
}

/// All distinct words with letter multiset `e`, in lexicographic order.
pub fn distinct_words(e: &ExponentTuple) -> Vec<Vec<usize>> {
    fn rec(left: &mut [u8], cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                rec(left, cur, n, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let mut left: Vec<u8> = e.entries().to_vec();
    let mut out = Vec::new();
    rec(&mut left, &mut Vec::new(), e.degree(), &mut out);
    out
}
