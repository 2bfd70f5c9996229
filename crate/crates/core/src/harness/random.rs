//! Seeded samplers. Every stream is a `ChaCha8Rng`, so fixed seeds give the
//! same instances on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffring::{Domain, Scalar};
use crate::error::{Error, Result};
use crate::linalg;
use crate::polyspace::{monomial_count, BasisChange, DividedElem, Space, SymElem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` of `seed`; used to make parallel sampling
/// independent of scheduling.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform over a prime field; `-3..=3` over `Z` and `Q`.
pub fn scalar<R: Rng>(rng: &mut R, dom: &Domain) -> Result<Scalar> {
    match dom {
        Domain::PrimeField(p) => Ok(dom.from_i64(rng.gen_range(0..*p) as i64)),
        Domain::Integers | Domain::Rationals => Ok(dom.from_i64(rng.gen_range(-3..=3))),
        Domain::ParamRing(_) => Err(Error::InvalidDomain(format!("cannot sample {dom}"))),
    }
}

pub fn coeffs<R: Rng>(rng: &mut R, p: u64, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..p) as u32).collect()
}

pub fn dual<R: Rng>(rng: &mut R, dom: &Domain, d: usize, degree: usize) -> Result<DividedElem> {
    let v = (0..monomial_count(d, degree))
        .map(|_| scalar(rng, dom))
        .collect::<Result<Vec<_>>>()?;
    DividedElem::from_dense(d, degree, Space::Dual, dom, &v)
}

pub fn nonzero_cubic<R: Rng>(rng: &mut R, dom: &Domain, d: usize) -> Result<DividedElem> {
    loop {
        let phi = dual(rng, dom, d, 3)?;
        if !phi.is_zero() {
            return Ok(phi);
        }
    }
}

pub fn linear<R: Rng>(rng: &mut R, dom: &Domain, d: usize) -> Result<SymElem> {
    let v = (0..d).map(|_| scalar(rng, dom)).collect::<Result<Vec<_>>>()?;
    Ok(SymElem::linear(dom, &v))
}

/// Rejection-sampled invertible matrix.
pub fn basis_change<R: Rng>(rng: &mut R, dom: &Domain, d: usize) -> Result<BasisChange> {
    loop {
        let m = (0..d)
            .map(|_| (0..d).map(|_| scalar(rng, dom)).collect())
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        if !linalg::det(dom, &m)?.is_zero() {
            return BasisChange::new(dom, m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u32> = coeffs(&mut stream(7, 1), 5, 8);
        let b: Vec<u32> = coeffs(&mut stream(7, 1), 5, 8);
        let c: Vec<u32> = coeffs(&mut stream(7, 2), 5, 8);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_changes_are_invertible() {
        let dom = Domain::PrimeField(2);
        let mut r = rng(1);
        for _ in 0..20 {
            let g = basis_change(&mut r, &dom, 4).unwrap();
            assert!(!linalg::det(&dom, g.matrix()).unwrap().is_zero());
        }
    }
}
