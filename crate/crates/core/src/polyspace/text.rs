//! Text and JSON formats for [`SymElem`] and [`DividedElem`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::elem::{accumulate, DividedElem, Space, SymElem, Terms};
use super::monomial::{variable_names, ExponentTuple};
use crate::coeffring::{Domain, Scalar};
use crate::error::{Error, Result};
use crate::expr::{self, EvalTarget};

fn needs_parens(c: &Scalar) -> bool {
    c.as_poly().is_some_and(|p| p.num_terms() > 1)
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    d: usize,
    terms: &Terms,
    mut monomial: impl FnMut(&mut fmt::Formatter<'_>, &str, u8) -> fmt::Result,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    let names = variable_names(d);
    for (k, (e, c)) in terms.iter().enumerate() {
        let text = c.to_string();
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) if !needs_parens(c) => (true, rest.to_string()),
            _ => (false, text),
        };
        if k > 0 {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        } else if neg {
            write!(f, "-")?;
        }
        let is_const = e.degree() == 0;
        let mut wrote = false;
        if body != "1" || is_const {
            if needs_parens(c) && !is_const {
                write!(f, "({body})")?;
            } else {
                write!(f, "{body}")?;
            }
            wrote = true;
        }
        for (i, &x) in e.entries().iter().enumerate() {
            if x == 0 {
                continue;
            }
            if wrote {
                write!(f, "*")?;
            }
            monomial(f, &names[i], x)?;
            wrote = true;
        }
    }
    Ok(())
}

impl fmt::Display for SymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.d(), self.terms(), |f, v, x| {
            if x == 1 {
                write!(f, "{v}")
            } else {
                write!(f, "{v}^{x}")
            }
        })
    }
}

impl fmt::Display for DividedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.d(), self.terms(), |f, v, x| {
            if x == 1 {
                write!(f, "{v}")
            } else {
                write!(f, "{v}^({x})")
            }
        })
    }
}

/// Inhomogeneous intermediate values during parsing.
struct Target<'a> {
    d: usize,
    domain: &'a Domain,
    divided: bool,
}

impl Target<'_> {
    fn constant(&self, c: Scalar) -> Terms {
        let mut t = Terms::new();
        accumulate(&mut t, ExponentTuple::zero(self.d), c);
        t
    }

    fn resolve(&self, name: &str) -> Result<Terms> {
        let d = self.d;
        let names = variable_names(d);
        if let Some(i) = names.iter().position(|n| n == name) {
            let mut t = Terms::new();
            accumulate(&mut t, ExponentTuple::unit(d, i), self.domain.one());
            return Ok(t);
        }
        Ok(self.constant(self.domain.param_named(name)?))
    }

    fn single_degree(&self, a: &Terms) -> Option<usize> {
        let mut it = a.keys().map(|e| e.degree());
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }
}

impl EvalTarget for Target<'_> {
    type Value = Terms;

    fn number(&mut self, n: &BigInt) -> Result<Terms> {
        Ok(self.constant(self.domain.from_bigint(n)))
    }

    fn ident(&mut self, name: &str) -> Result<Terms> {
        let one = self.constant(self.domain.one());
        let this = &*self;
        let divided = self.divided;
        expr::resolve_ident(name, one, &mut |n| this.resolve(n), |a, b| {
            Ok(product(&a, &b, divided))
        })
    }

    fn add(&mut self, mut a: Terms, b: Terms) -> Result<Terms> {
        for (e, c) in b {
            accumulate(&mut a, e, c);
        }
        Ok(a)
    }

    fn sub(&mut self, mut a: Terms, b: Terms) -> Result<Terms> {
        for (e, c) in b {
            accumulate(&mut a, e, -c);
        }
        Ok(a)
    }

    fn mul(&mut self, a: Terms, b: Terms) -> Result<Terms> {
        Ok(product(&a, &b, self.divided))
    }

    fn neg(&mut self, a: Terms) -> Result<Terms> {
        Ok(a.into_iter().map(|(e, c)| (e, -c)).collect())
    }

    fn div(&mut self, a: Terms, b: Terms) -> Result<Terms> {
        if self.single_degree(&b) != Some(0) {
            return Err(Error::Parse("division by a non-constant".into()));
        }
        let inv = b.values().next().unwrap().unit_inverse()?;
        Ok(a.into_iter()
            .map(|(e, c)| (e, c * &inv))
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }

    fn pow(&mut self, a: Terms, n: u32) -> Result<Terms> {
        let mut acc = self.constant(self.domain.one());
        for _ in 0..n {
            acc = product(&acc, &a, self.divided);
        }
        Ok(acc)
    }

    fn divided_pow(&mut self, a: Terms, n: u32) -> Result<Terms> {
        if !self.divided {
            return Err(Error::Parse("divided power in a symmetric-power element".into()));
        }
        if a.is_empty() {
            return Ok(if n == 0 { self.constant(self.domain.one()) } else { a });
        }
        if self.single_degree(&a) != Some(1) {
            return Err(Error::Parse("divided powers are defined for linear forms".into()));
        }
        let l = DividedElem::from_terms(self.d, 1, Space::Dual, self.domain, a)?;
        Ok(l.divided_power(n as usize)?.terms().clone())
    }
}

fn product(a: &Terms, b: &Terms, divided: bool) -> Terms {
    let mut out = Terms::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let mut c = c1 * c2;
            if divided {
                c = c.mul_int(&e1.binomial_weight(e2));
            }
            accumulate(&mut out, e1.add(e2), c);
        }
    }
    out
}

fn parse_terms(
    s: &str,
    d: usize,
    domain: &Domain,
    divided: bool,
    degree: Option<usize>,
) -> Result<(usize, Terms)> {
    if d == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let e = expr::parse(s)?;
    let terms = e.eval(&mut Target { d, domain, divided })?;
    let mut degs = terms.keys().map(|e| e.degree());
    let deg = match (degs.next(), degree) {
        (None, Some(k)) => k,
        (None, None) => return Err(Error::Parse("cannot infer the degree of 0".into())),
        (Some(k), _) => k,
    };
    if terms.keys().any(|e| e.degree() != deg) {
        return Err(Error::NotHomogeneous);
    }
    if let Some(k) = degree {
        if k != deg {
            return Err(Error::DegreeMismatch {
                expected: k,
                got: deg,
            });
        }
    }
    Ok((deg, terms))
}

impl SymElem {
    /// Parse `x^2*z - 3*y*w`; juxtaposition and `^n` are ordinary products.
    pub fn parse(s: &str, d: usize, domain: &Domain) -> Result<Self> {
        let (deg, terms) = parse_terms(s, d, domain, false, None)?;
        SymElem::from_terms(d, deg, domain, terms)
    }

    pub fn parse_with_degree(s: &str, d: usize, degree: usize, domain: &Domain) -> Result<Self> {
        let (deg, terms) = parse_terms(s, d, domain, false, Some(degree))?;
        SymElem::from_terms(d, deg, domain, terms)
    }
}

impl DividedElem {
    /// Parse `3*x^(3) + y*z*w - 2*x*y^(2)`. Products are divided products,
    /// so `x*x` is `2*x^(2)` and `x*y*z` is the squarefree monomial.
    pub fn parse(s: &str, d: usize, space: Space, domain: &Domain) -> Result<Self> {
        let (deg, terms) = parse_terms(s, d, domain, true, None)?;
        DividedElem::from_terms(d, deg, space, domain, terms)
    }

    pub fn parse_with_degree(
        s: &str,
        d: usize,
        degree: usize,
        space: Space,
        domain: &Domain,
    ) -> Result<Self> {
        let (deg, terms) = parse_terms(s, d, domain, true, Some(degree))?;
        DividedElem::from_terms(d, deg, space, domain, terms)
    }

    pub fn to_json(&self) -> DividedJson {
        DividedJson {
            d: self.d(),
            degree: self.degree(),
            space: self.space(),
            domain: self.domain().to_string(),
            terms: self
                .terms()
                .iter()
                .map(|(e, c)| TermJson {
                    e: e.entries().to_vec(),
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json(j: &DividedJson) -> Result<Self> {
        let domain: Domain = j.domain.parse()?;
        let mut terms: BTreeMap<ExponentTuple, Scalar> = BTreeMap::new();
        for t in &j.terms {
            let e = ExponentTuple::new(&t.e);
            let c = domain.parse_scalar(&t.c)?;
            if terms.insert(e.clone(), c).is_some() {
                return Err(Error::Parse(format!("duplicate term {e:?}")));
            }
        }
        DividedElem::from_terms(j.d, j.degree, j.space, &domain, terms)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: DividedJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

/// Structured form `{"d", "degree", "space", "domain", "terms": [{"e", "c"}]}`
/// with terms in lex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DividedJson {
    pub d: usize,
    pub degree: usize,
    pub space: Space,
    pub domain: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u8>,
    pub c: String,
}
