//! Exact coefficient domains: `Z`, `Q`, prime fields and integer parameter
//! rings `Z[a, b, ...]`.

mod poly;
mod scalar;

pub use poly::{ParamExps, ParamPoly, ParamVars};
pub use scalar::Scalar;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The coefficient domain of a [`Scalar`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Integers,
    Rationals,
    PrimeField(u64),
    ParamRing(ParamVars),
}

/// Deterministic primality test, sufficient for the moduli used here.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl Domain {
    /// Moduli are capped at 2^32 so products of residues fit in a `u64`.
    pub fn prime_field(p: u64) -> Result<Domain> {
        if p >= 1 << 32 {
            return Err(Error::InvalidDomain(format!("modulus {p} too large")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Domain::PrimeField(p))
    }

    pub fn param_ring<S: AsRef<str>>(names: &[S]) -> Result<Domain> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim();
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidDomain(format!("bad indeterminate {n:?}")));
            }
            if out.iter().any(|m| m == n) {
                return Err(Error::InvalidDomain(format!("duplicate indeterminate {n}")));
            }
            out.push(n.to_string());
        }
        if out.len() > 64 {
            return Err(Error::InvalidDomain("too many indeterminates".into()));
        }
        Ok(Domain::ParamRing(ParamVars::new_unchecked(out)))
    }

    /// `Z[a,b,...]` with one indeterminate per character.
    pub fn param_ring_letters(letters: &str) -> Result<Domain> {
        let names: Vec<String> = letters.chars().map(|c| c.to_string()).collect();
        Self::param_ring(&names)
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Domain::Rationals | Domain::PrimeField(_))
    }

    /// 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self {
            Domain::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Number of elements of a finite domain.
    pub fn order(&self) -> Option<u64> {
        match self {
            Domain::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_bigint(&BigInt::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_bigint(&BigInt::one())
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of an integer under the canonical map `Z -> domain`.
    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Domain::Integers => Scalar::int(n.clone()),
            Domain::Rationals => Scalar::rat(BigRational::from_integer(n.clone())),
            Domain::PrimeField(p) => {
                let r = n % BigInt::from(*p);
                let r = if r < BigInt::zero() { r + BigInt::from(*p) } else { r };
                Scalar::residue(u64::try_from(r).expect("residue fits"), *p)
            }
            Domain::ParamRing(vars) => Scalar::poly(ParamPoly::constant(vars.clone(), n.clone())),
        }
    }

    /// The `index`-th indeterminate of a parameter ring.
    pub fn param(&self, index: usize) -> Result<Scalar> {
        match self {
            Domain::ParamRing(v) if index < v.len() => {
                Ok(Scalar::poly(ParamPoly::variable(v.clone(), index)))
            }
            _ => Err(Error::InvalidDomain(format!("{self} has no parameter {index}"))),
        }
    }

    pub fn param_named(&self, name: &str) -> Result<Scalar> {
        match self {
            Domain::ParamRing(v) => match v.index_of(name) {
                Some(i) => self.param(i),
                None => Err(Error::Parse(format!("unknown parameter {name} in {self}"))),
            },
            _ => Err(Error::Parse(format!("identifier {name} not allowed over {self}"))),
        }
    }

    /// All elements of a prime field in residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Domain::PrimeField(p) => Some((0..*p).map(|v| Scalar::residue(v, *p)).collect()),
            _ => None,
        }
    }

    /// Parse a textual scalar such as `-3`, `2/3` or `a*c - b^2`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let expr = crate::expr::parse(s)?;
        expr.eval_scalar(self, &mut |name| self.param_named(name))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integers => write!(f, "Z"),
            Domain::Rationals => write!(f, "Q"),
            Domain::PrimeField(p) => write!(f, "GF({p})"),
            Domain::ParamRing(v) => write!(f, "Z[{}]", v.names().join(",")),
        }
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Domain> {
        let s = s.trim();
        match s {
            "Z" => return Ok(Domain::Integers),
            "Q" => return Ok(Domain::Rationals),
            _ => {}
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = inner
                .trim()
                .parse()
                .map_err(|_| Error::InvalidDomain(s.to_string()))?;
            return Domain::prime_field(p);
        }
        if let Some(inner) = s.strip_prefix("Z[").and_then(|r| r.strip_suffix(']')) {
            let names: Vec<&str> = inner.split(',').collect();
            return Domain::param_ring(&names);
        }
        Err(Error::InvalidDomain(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_strings_round_trip() {
        for s in ["Z", "Q", "GF(2)", "GF(7)", "Z[a,b,c]"] {
            let d: Domain = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert_eq!("GF(4)".parse::<Domain>(), Err(Error::NotPrime(4)));
        assert!("Z[a,a]".parse::<Domain>().is_err());
        assert!("Z[a,]".parse::<Domain>().is_err());
        assert!("R".parse::<Domain>().is_err());
    }

    #[test]
    fn embedding_of_integers() {
        let f = Domain::PrimeField(5);
        assert_eq!(f.from_i64(-1).to_string(), "4");
        assert_eq!(f.from_i64(12).to_string(), "2");
        assert_eq!(Domain::Rationals.from_i64(-3).to_string(), "-3");
    }

    #[test]
    fn parameter_ring_equality_is_by_names() {
        let a = Domain::param_ring(&["a", "b"]).unwrap();
        let b = Domain::param_ring(&["a", "b"]).unwrap();
        let c = Domain::param_ring(&["b", "a"]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
