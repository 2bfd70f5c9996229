//! Sparse polynomials with integer coefficients in a fixed, ordered set of
//! parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Ordered, distinct parameter names of a parameter ring.
#[derive(Clone, Debug)]
pub struct ParamVars(Arc<[String]>);

impl ParamVars {
    pub(crate) fn new_unchecked(names: Vec<String>) -> Self {
        ParamVars(names.into())
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for ParamVars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for ParamVars {}

impl Hash for ParamVars {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

/// Exponent vector of a parameter monomial; its length is the number of
/// parameters in the ring.
pub type ParamExps = Box<[u8]>;

/// A polynomial in `Z[vars]`. Only nonzero coefficients are stored, so two
/// equal polynomials always have identical term maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    vars: ParamVars,
    terms: BTreeMap<ParamExps, BigInt>,
}

impl ParamPoly {
    pub fn zero(vars: ParamVars) -> Self {
        ParamPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: ParamVars, c: BigInt) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            let exps = vec![0u8; p.vars.len()].into_boxed_slice();
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn variable(vars: ParamVars, index: usize) -> Self {
        let mut exps = vec![0u8; vars.len()];
        exps[index] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(exps.into_boxed_slice(), BigInt::one());
        p
    }

    pub fn vars(&self) -> &ParamVars {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &BigInt)> {
        self.terms.iter().map(|(e, c)| (&e[..], c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant coefficient if the polynomial has degree `<= 0`.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    fn accumulate(terms: &mut BTreeMap<ParamExps, BigInt>, exps: ParamExps, c: BigInt) {
        use std::collections::btree_map::Entry;
        match terms.entry(exps) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::accumulate(&mut terms, e.clone(), c.clone());
        }
        ParamPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::accumulate(&mut terms, e.clone(), -c);
        }
        ParamPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: ParamExps = e1
                    .iter()
                    .zip(e2.iter())
                    .map(|(a, b)| a.checked_add(*b).expect("parameter exponent overflow"))
                    .collect();
                Self::accumulate(&mut terms, e, c1 * c2);
            }
        }
        ParamPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        ParamPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x * c))
                .collect(),
        }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // lex order with the first parameter largest
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            let mut wrote = false;
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
                wrote = true;
            }
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars.names()[k])?;
                if x > 1 {
                    write!(f, "^{x}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}
