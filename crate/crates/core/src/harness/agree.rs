//! Sampled comparison of "has a Lefschetz element over `GF(q)`" with
//! `Gamma != 0` on full-embedding-dimension systems.

use serde_json::{json, Value};

use crate::error::Result;
use crate::par::{self, Mode};
use crate::polyspace::DividedElem;

use super::kernel::Kernel;
use super::orbit::decode;
use super::random;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub q: u64,
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    pub agreements: usize,
    /// Replayable with `census::replay`.
    pub disagreements: Vec<DividedElem>,
}

/// `samples` full-embedding-dimension systems; sample `i` uses stream `i`
/// of `seed`, so the result does not depend on `mode`.
pub fn agreement(q: u64, d: usize, samples: usize, seed: u64, mode: Mode) -> Result<AgreementReport> {
    crate::coeffring::Domain::prime_field(q)?;
    let kernel = Kernel::new(q, d);
    let outcomes = par::map_indexed(mode, samples, |i| {
        let mut rng = random::stream(seed, i as u64);
        loop {
            let phi = random::coeffs(&mut rng, q, kernel.len());
            let cell = kernel.classify(&phi);
            if cell.embdim == d {
                return (cell.gamma_zero != cell.witness.is_some(), kernel.encode(&phi));
            }
        }
    });
    let mut agreements = 0;
    let mut disagreements = Vec::new();
    for (ok, idx) in outcomes {
        if ok {
            agreements += 1;
        } else {
            disagreements.push(decode(idx, q, d)?);
        }
    }
    Ok(AgreementReport {
        q,
        d,
        samples,
        seed,
        agreements,
        disagreements,
    })
}

impl AgreementReport {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "d": self.d,
            "samples": self.samples,
            "seed": self.seed,
            "agreements": self.agreements,
            "disagreements": self.disagreements.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
        })
    }
}
