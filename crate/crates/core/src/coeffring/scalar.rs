use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Domain, ParamPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Int(BigInt),
    Rat(BigRational),
    Mod { v: u64, p: u64 },
    Poly(ParamPoly),
}

/// An element of a [`Domain`], always in canonical form.
///
/// Arithmetic operators panic on domain mismatch; the `checked_*` methods
/// return an error instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub(crate) fn int(n: BigInt) -> Scalar {
        Scalar(Repr::Int(n))
    }

    pub(crate) fn rat(q: BigRational) -> Scalar {
        Scalar(Repr::Rat(q))
    }

    pub(crate) fn residue(v: u64, p: u64) -> Scalar {
        debug_assert!(v < p);
        Scalar(Repr::Mod { v, p })
    }

    pub(crate) fn poly(p: ParamPoly) -> Scalar {
        Scalar(Repr::Poly(p))
    }

    pub fn domain(&self) -> Domain {
        match &self.0 {
            Repr::Int(_) => Domain::Integers,
            Repr::Rat(_) => Domain::Rationals,
            Repr::Mod { p, .. } => Domain::PrimeField(*p),
            Repr::Poly(q) => Domain::ParamRing(q.vars().clone()),
        }
    }

    fn same_domain(&self, other: &Scalar) -> bool {
        match (&self.0, &other.0) {
            (Repr::Int(_), Repr::Int(_)) | (Repr::Rat(_), Repr::Rat(_)) => true,
            (Repr::Mod { p, .. }, Repr::Mod { p: q, .. }) => p == q,
            (Repr::Poly(a), Repr::Poly(b)) => a.vars() == b.vars(),
            _ => false,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::DomainMismatch {
            left: self.domain().to_string(),
            right: other.domain().to_string(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Int(n) => n.is_zero(),
            Repr::Rat(q) => q.is_zero(),
            Repr::Mod { v, .. } => *v == 0,
            Repr::Poly(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Int(n) => n.is_one(),
            Repr::Rat(q) => q.is_one(),
            Repr::Mod { v, .. } => *v == 1,
            Repr::Poly(q) => q.as_constant().is_some_and(|c| c.is_one()),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        Ok(Scalar(match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a + b),
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => {
                Repr::Mod { v: (a + b) % p, p: *p }
            }
            (Repr::Poly(a), Repr::Poly(b)) if a.vars() == b.vars() => Repr::Poly(a.add(b)),
            _ => return Err(self.mismatch(other)),
        }))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        Ok(Scalar(match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a - b),
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a - b),
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => {
                Repr::Mod { v: (a + p - b) % p, p: *p }
            }
            (Repr::Poly(a), Repr::Poly(b)) if a.vars() == b.vars() => Repr::Poly(a.sub(b)),
            _ => return Err(self.mismatch(other)),
        }))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        Ok(Scalar(match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a * b),
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => {
                Repr::Mod { v: a * b % p, p: *p }
            }
            (Repr::Poly(a), Repr::Poly(b)) if a.vars() == b.vars() => Repr::Poly(a.mul(b)),
            _ => return Err(self.mismatch(other)),
        }))
    }

    pub fn neg(&self) -> Scalar {
        Scalar(match &self.0 {
            Repr::Int(a) => Repr::Int(-a),
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Mod { v, p } => Repr::Mod { v: (p - v) % p, p: *p },
            Repr::Poly(a) => Repr::Poly(a.neg()),
        })
    }

    /// Multiply by the image of an integer.
    pub fn mul_int(&self, n: &BigInt) -> Scalar {
        match &self.0 {
            Repr::Poly(a) => Scalar(Repr::Poly(a.scale(n))),
            _ => self * &self.domain().from_bigint(n),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.domain().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit. In `Z` and `Z[params]` only `1` and `-1` are units.
    pub fn unit_inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.0 {
            Repr::Rat(q) => Ok(Scalar(Repr::Rat(q.recip()))),
            Repr::Mod { v, p } => {
                let e = BigInt::from(*v).extended_gcd(&BigInt::from(*p));
                debug_assert!(e.gcd.is_one());
                Ok(Scalar::residue(
                    u64::try_from(e.x.mod_floor(&BigInt::from(*p))).unwrap(),
                    *p,
                ))
            }
            Repr::Int(n) if n.abs().is_one() => Ok(self.clone()),
            Repr::Poly(q) if q.as_constant().is_some_and(|c| c.abs().is_one()) => Ok(self.clone()),
            _ => Err(Error::NotAUnit(self.to_string())),
        }
    }

    /// Exact quotient `self / other` when `other` is a unit.
    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if !self.same_domain(other) {
            return Err(self.mismatch(other));
        }
        self.checked_mul(&other.unit_inverse()?)
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match &self.0 {
            Repr::Int(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Mod { v, .. } => Some(*v),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&ParamPoly> {
        match &self.0 {
            Repr::Poly(q) => Some(q),
            _ => None,
        }
    }

    /// Evaluate a parameter-ring element at `values` (one per indeterminate)
    /// in another domain. Elements of other domains are mapped along
    /// `Z -> target` when they are integers.
    pub fn specialize(&self, target: &Domain, values: &[Scalar]) -> Result<Scalar> {
        match &self.0 {
            Repr::Poly(q) => {
                if values.len() != q.vars().len() {
                    return Err(Error::DimensionMismatch {
                        expected: q.vars().len(),
                        got: values.len(),
                    });
                }
                let mut acc = target.zero();
                for (exps, c) in q.terms() {
                    let mut t = target.from_bigint(c);
                    for (v, &e) in values.iter().zip(exps.iter()) {
                        if e > 0 {
                            t = t.checked_mul(&v.pow(e as u32))?;
                        }
                    }
                    acc = acc.checked_add(&t)?;
                }
                Ok(acc)
            }
            Repr::Int(n) => Ok(target.from_bigint(n)),
            _ if self.domain() == *target => Ok(self.clone()),
            _ => Err(Error::DomainMismatch {
                left: self.domain().to_string(),
                right: target.to_string(),
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Int(n) => write!(f, "{n}"),
            Repr::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Mod { v, .. } => write!(f, "{v}"),
            Repr::Poly(q) => write!(f, "{q}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(s) => s,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Domain {
        Domain::param_ring(&["a", "b"]).unwrap()
    }

    #[test]
    fn characteristic_two() {
        let f = Domain::PrimeField(2);
        assert!((f.one() + f.one()).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let a = r.param(0).unwrap();
        let b = r.param(1).unwrap();
        let prod = (&a + &b) * (&a - &b);
        assert_eq!(prod.to_string(), "a^2 - b^2");
        assert_eq!(prod, r.parse_scalar("a^2 - b^2").unwrap());
    }

    #[test]
    fn fraction_sum() {
        let q = Domain::Rationals;
        let x = q.parse_scalar("2/3").unwrap() + q.parse_scalar("1/6").unwrap();
        assert_eq!(x.to_string(), "5/6");
    }

    #[test]
    fn inverses() {
        let f5 = Domain::PrimeField(5);
        assert_eq!(f5.from_i64(2).unit_inverse().unwrap(), f5.from_i64(3));
        let f2 = Domain::PrimeField(2);
        assert_eq!(f2.one().unit_inverse().unwrap(), f2.one());
        let q = Domain::Rationals;
        assert_eq!(
            q.parse_scalar("-3/4").unwrap().unit_inverse().unwrap(),
            q.parse_scalar("-4/3").unwrap()
        );
        assert_eq!(f5.zero().unit_inverse(), Err(Error::DivisionByZero));
        assert!(matches!(
            Domain::Integers.from_i64(2).unit_inverse(),
            Err(Error::NotAUnit(_))
        ));
        assert!(matches!(
            ring().param(0).unwrap().unit_inverse(),
            Err(Error::NotAUnit(_))
        ));
        assert_eq!(
            Domain::Integers.from_i64(-1).unit_inverse().unwrap(),
            Domain::Integers.from_i64(-1)
        );
    }

    #[test]
    fn mismatched_domains_error() {
        let x = Domain::PrimeField(2).one();
        let y = Domain::PrimeField(3).one();
        assert!(matches!(x.checked_add(&y), Err(Error::DomainMismatch { .. })));
        assert!(Domain::Integers.one().checked_mul(&Domain::Rationals.one()).is_err());
    }

    #[test]
    fn text_round_trip() {
        let r = Domain::param_ring(&["a", "b", "c"]).unwrap();
        for s in ["a*c - b^2", "-2*a*b + 3", "0", "-1", "a^3*b - c"] {
            let x = r.parse_scalar(s).unwrap();
            assert_eq!(x.to_string(), s);
            assert_eq!(r.parse_scalar(&x.to_string()).unwrap(), x);
        }
        let q = Domain::Rationals;
        for s in ["-3", "2/3", "-7/5"] {
            assert_eq!(q.parse_scalar(s).unwrap().to_string(), s);
        }
        // implicit multiplication and unicode minus
        assert_eq!(
            r.parse_scalar("ac \u{2212} b^2").unwrap(),
            r.parse_scalar("a*c - b^2").unwrap()
        );
    }

    #[test]
    fn specialization() {
        let r = ring();
        let x = r.parse_scalar("a^2 - 3*b").unwrap();
        let f = Domain::PrimeField(7);
        let v = x.specialize(&f, &[f.from_i64(2), f.from_i64(1)]).unwrap();
        assert_eq!(v, f.from_i64(1));
    }

    #[test]
    fn powers() {
        let f = Domain::PrimeField(7);
        assert_eq!(f.from_i64(3).pow(6), f.one());
        assert_eq!(f.from_i64(3).pow(0), f.one());
        let r = ring();
        assert_eq!(
            r.parse_scalar("a+b").unwrap().pow(2),
            r.parse_scalar("a^2 + 2ab + b^2").unwrap()
        );
    }
}
