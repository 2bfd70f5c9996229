//! A small infix expression parser shared by the scalar and element text
//! formats.
//!
//! Grammar: sums of products, `*` optional between factors, `/` for
//! division, `^n` for ordinary powers and `^(n)` for divided powers.

use num_bigint::BigInt;

use crate::coeffring::{Domain, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(text.parse().unwrap()));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' | '\u{00b7}' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    DividedPow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref u) if *u == t => Ok(()),
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Expr::Neg(Box::new(self.product()?))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        match self.next() {
            Some(Tok::Num(n)) => {
                u32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))
            }
            other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            if let Some(Tok::LParen) = self.peek() {
                self.pos += 1;
                let n = self.exponent()?;
                self.expect(Tok::RParen)?;
                return Ok(Expr::DividedPow(Box::new(base), n));
            }
            let n = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Expr::Num(n)),
            Some(Tok::Ident(s)) => Ok(Expr::Ident(s)),
            Some(Tok::LParen) => {
                let e = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

/// The operations an evaluation target must provide.
pub trait EvalTarget {
    type Value;
    fn number(&mut self, n: &BigInt) -> Result<Self::Value>;
    fn ident(&mut self, name: &str) -> Result<Self::Value>;
    fn add(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn mul(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&mut self, a: Self::Value) -> Result<Self::Value>;
    fn div(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn pow(&mut self, a: Self::Value, n: u32) -> Result<Self::Value>;
    fn divided_pow(&mut self, a: Self::Value, n: u32) -> Result<Self::Value>;
}

impl Expr {
    pub fn eval<T: EvalTarget>(&self, t: &mut T) -> Result<T::Value> {
        Ok(match self {
            Expr::Num(n) => t.number(n)?,
            Expr::Ident(s) => t.ident(s)?,
            Expr::Neg(a) => {
                let a = a.eval(t)?;
                t.neg(a)?
            }
            Expr::Add(a, b) => {
                let (a, b) = (a.eval(t)?, b.eval(t)?);
                t.add(a, b)?
            }
            Expr::Sub(a, b) => {
                let (a, b) = (a.eval(t)?, b.eval(t)?);
                t.sub(a, b)?
            }
            Expr::Mul(a, b) => {
                let (a, b) = (a.eval(t)?, b.eval(t)?);
                t.mul(a, b)?
            }
            Expr::Div(a, b) => {
                let (a, b) = (a.eval(t)?, b.eval(t)?);
                t.div(a, b)?
            }
            Expr::Pow(a, n) => {
                let a = a.eval(t)?;
                t.pow(a, *n)?
            }
            Expr::DividedPow(a, n) => {
                let a = a.eval(t)?;
                t.divided_pow(a, *n)?
            }
        })
    }

    /// Evaluate to a scalar; identifiers go through `resolve`, falling back
    /// to reading a run of letters such as `ac` as a product of one-letter
    /// names.
    pub fn eval_scalar(
        &self,
        domain: &Domain,
        resolve: &mut dyn FnMut(&str) -> Result<Scalar>,
    ) -> Result<Scalar> {
        struct Target<'a> {
            domain: &'a Domain,
            resolve: &'a mut dyn FnMut(&str) -> Result<Scalar>,
        }
        impl EvalTarget for Target<'_> {
            type Value = Scalar;
            fn number(&mut self, n: &BigInt) -> Result<Scalar> {
                Ok(self.domain.from_bigint(n))
            }
            fn ident(&mut self, name: &str) -> Result<Scalar> {
                resolve_ident(name, self.domain.one(), &mut *self.resolve, |a, b| {
                    a.checked_mul(&b)
                })
            }
            fn add(&mut self, a: Scalar, b: Scalar) -> Result<Scalar> {
                a.checked_add(&b)
            }
            fn sub(&mut self, a: Scalar, b: Scalar) -> Result<Scalar> {
                a.checked_sub(&b)
            }
            fn mul(&mut self, a: Scalar, b: Scalar) -> Result<Scalar> {
                a.checked_mul(&b)
            }
            fn neg(&mut self, a: Scalar) -> Result<Scalar> {
                Ok(-a)
            }
            fn div(&mut self, a: Scalar, b: Scalar) -> Result<Scalar> {
                a.checked_div(&b)
            }
            fn pow(&mut self, a: Scalar, n: u32) -> Result<Scalar> {
                Ok(a.pow(n))
            }
            fn divided_pow(&mut self, _: Scalar, _: u32) -> Result<Scalar> {
                Err(Error::Parse("divided power of a scalar".into()))
            }
        }
        self.eval(&mut Target { domain, resolve })
    }
}

/// Resolve `name` directly, or as a product of its single characters when
/// the whole name is unknown.
pub(crate) fn resolve_ident<V>(
    name: &str,
    one: V,
    resolve: &mut dyn FnMut(&str) -> Result<V>,
    mut mul: impl FnMut(V, V) -> Result<V>,
) -> Result<V> {
    match resolve(name) {
        Ok(v) => Ok(v),
        Err(e) if name.chars().count() > 1 && name.chars().all(|c| c.is_ascii_alphabetic()) => {
            let mut acc = one;
            for c in name.chars() {
                let v = resolve(&c.to_string()).map_err(|_| e.clone())?;
                acc = mul(acc, v)?;
            }
            Ok(acc)
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_implicit_product() {
        let e = parse("3x^(3) + y z w - 2*x y^(2)").unwrap();
        let Expr::Sub(lhs, rhs) = e else { panic!() };
        assert!(matches!(*lhs, Expr::Add(_, _)));
        assert!(matches!(*rhs, Expr::Mul(_, _)));
        assert_eq!(
            parse("x^(2)").unwrap(),
            Expr::DividedPow(Box::new(Expr::Ident("x".into())), 2)
        );
        assert_eq!(
            parse("x^2").unwrap(),
            Expr::Pow(Box::new(Expr::Ident("x".into())), 2)
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("").is_err());
        assert!(parse("x +").is_err());
        assert!(parse("(x").is_err());
        assert!(parse("x $ y").is_err());
        assert!(parse("x^y").is_err());
    }
}
