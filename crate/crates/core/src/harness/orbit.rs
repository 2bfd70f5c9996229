//! `GL_d(F_p)`-orbits of cubics by brute-force enumeration of the group,
//! through the generic basis-change action (independent of the census kernel).

use std::collections::BTreeSet;

use crate::coeffring::Domain;
use crate::error::{Error, Result};
use crate::par::{self, Mode};
use crate::polyspace::{monomials, BasisChange, DividedElem};

use super::DEFAULT_BUDGET;

/// `prod_{i<d} (p^d - p^i)`.
pub fn gl_order(p: u64, d: usize) -> u128 {
    let q = (p as u128).pow(d as u32);
    (0..d as u32).map(|i| q - (p as u128).pow(i)).product()
}

/// Base-`p` index of a cubic over `GF(p)`, coefficient of the `k`-th
/// monomial of `monomials(d, 3)` as digit `k`.
pub fn encode(phi: &DividedElem) -> Result<u64> {
    let p = prime_of(phi.domain())?;
    let mut idx = 0u64;
    for c in phi.dense().iter().rev() {
        idx = idx * p + c.as_residue().expect("prime field residue");
    }
    Ok(idx)
}

pub fn decode(index: u64, p: u64, d: usize) -> Result<DividedElem> {
    let dom = Domain::prime_field(p)?;
    let mut k = index;
    let coords: Vec<_> = monomials(d, 3)
        .iter()
        .map(|_| {
            let c = dom.from_i64((k % p) as i64);
            k /= p;
            c
        })
        .collect();
    DividedElem::from_dense(d, 3, crate::polyspace::Space::Dual, &dom, &coords)
}

fn prime_of(dom: &Domain) -> Result<u64> {
    match dom {
        Domain::PrimeField(p) => Ok(*p),
        _ => Err(Error::InvalidDomain(format!("orbits need a prime field, got {dom}"))),
    }
}

/// Every invertible `d x d` matrix over `GF(p)`, in lex order of entries.
pub fn general_linear(p: u64, d: usize, force: bool) -> Result<Vec<BasisChange>> {
    let dom = Domain::prime_field(p)?;
    let needed = (p as u128).pow((d * d) as u32);
    if needed > DEFAULT_BUDGET && !force {
        return Err(Error::OverBudget {
            needed,
            budget: DEFAULT_BUDGET,
        });
    }
    let mut out = Vec::with_capacity(gl_order(p, d) as usize);
    let mut entries = vec![0u64; d * d];
    for mut k in 0..needed as u64 {
        for e in entries.iter_mut().rev() {
            *e = k % p;
            k /= p;
        }
        if !invertible(&entries, d, p) {
            continue;
        }
        let m = (0..d)
            .map(|i| (0..d).map(|j| dom.from_i64(entries[i * d + j] as i64)).collect())
            .collect();
        out.push(BasisChange::new(&dom, m)?);
    }
    Ok(out)
}

fn invertible(entries: &[u64], d: usize, p: u64) -> bool {
    let mut m: Vec<Vec<u64>> = entries.chunks(d).map(|r| r.to_vec()).collect();
    for c in 0..d {
        let Some(piv) = (c..d).find(|&r| m[r][c] != 0) else {
            return false;
        };
        m.swap(c, piv);
        let inv = (1..p).find(|x| x * m[c][c] % p == 1).unwrap();
        for r in c + 1..d {
            let f = m[r][c] * inv % p;
            for j in c..d {
                m[r][j] = (m[r][j] + (p - f) * m[c][j]) % p;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub size: usize,
    /// Members by [`encode`] index.
    pub members: BTreeSet<u64>,
}

pub fn orbit(phi: &DividedElem, force: bool, mode: Mode) -> Result<Orbit> {
    let p = prime_of(phi.domain())?;
    let group = general_linear(p, phi.d(), force)?;
    let images = par::map_indexed(mode, group.len(), |i| {
        group[i].apply_divided(phi).and_then(|v| encode(&v))
    });
    let members = images.into_iter().collect::<Result<BTreeSet<u64>>>()?;
    Ok(Orbit {
        size: members.len(),
        members,
    })
}
