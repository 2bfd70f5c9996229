//! Exhaustive classification of every nonzero cubic over a small prime field.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::apolarity::{InverseSystem, DEFAULT_HEIGHT};
use crate::coeffring::Domain;
use crate::error::{Error, Result};
use crate::gamma;
use crate::par::{self, Mode};
use crate::polyspace::{monomial_count, DividedElem, Space, SymElem};

use super::kernel::{Cell, Kernel};
use super::orbit::{self, decode};
use super::DEFAULT_BUDGET;

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub p: u64,
    pub d: usize,
    pub force: bool,
    pub mode: Mode,
}

impl CensusOptions {
    pub fn new(p: u64, d: usize) -> Self {
        CensusOptions {
            p,
            d,
            force: false,
            mode: par::current(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Bin {
    pub embdim: usize,
    pub gamma_zero: bool,
    pub wlp: bool,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub p: u64,
    pub d: usize,
    pub total: u64,
    pub bins: Vec<Bin>,
    /// Orbit of the characteristic-two exception, computed by enumerating
    /// `GL_d(F_2)`; `None` away from characteristic two or for `d < 3`.
    pub exception_orbit_size: Option<usize>,
    /// Full-embedding-dimension systems where `Gamma == 0` does not match
    /// the absence of a rational Lefschetz element.
    pub discrepancies: Vec<DividedElem>,
    /// Indices of the full-embedding-dimension systems with `Gamma == 0`.
    pub gamma_zero_full: Vec<u64>,
}

#[derive(Default)]
struct Partial {
    bins: BTreeMap<(usize, bool, bool), u64>,
    discrepancies: Vec<u64>,
    zero_full: Vec<u64>,
}

/// The inverse system whose orbit is the exceptional `Gamma == 0` class.
pub fn exception(d: usize) -> Result<DividedElem> {
    let dom = Domain::PrimeField(2);
    match d {
        3 => DividedElem::parse("x*y*z", 3, Space::Dual, &dom),
        4 => DividedElem::parse("x^(3) + y*z*w", 4, Space::Dual, &dom),
        _ => Err(Error::UnsupportedDimension(d)),
    }
}

pub fn classifications(p: u64, d: usize) -> u128 {
    (p as u128).pow(monomial_count(d, 3) as u32) - 1
}

pub fn enumerate(opts: &CensusOptions) -> Result<CensusReport> {
    let (p, d) = (opts.p, opts.d);
    Domain::prime_field(p)?;
    if !(1..=4).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let needed = classifications(p, d);
    if needed > DEFAULT_BUDGET && !opts.force {
        return Err(Error::OverBudget {
            needed,
            budget: DEFAULT_BUDGET,
        });
    }
    if needed >= u64::MAX as u128 {
        return Err(Error::OverBudget {
            needed,
            budget: u64::MAX as u128,
        });
    }
    let kernel = Kernel::new(p, d);
    let end = needed as u64 + 1;
    let chunks = end.div_ceil(CHUNK) as usize;
    let parts = par::map_indexed(opts.mode, chunks, |c| {
        let lo = (c as u64 * CHUNK).max(1);
        let hi = ((c as u64 + 1) * CHUNK).min(end);
        let mut part = Partial::default();
        let mut phi = vec![0u32; kernel.len()];
        for idx in lo..hi {
            kernel.decode(idx, &mut phi);
            let cell = kernel.classify(&phi);
            *part.bins.entry((cell.embdim, cell.gamma_zero, cell.witness.is_some())).or_default() += 1;
            if cell.embdim == d {
                if cell.gamma_zero {
                    part.zero_full.push(idx);
                }
                if cell.gamma_zero == cell.witness.is_some() {
                    part.discrepancies.push(idx);
                }
            }
        }
        part
    });

    let mut bins = BTreeMap::new();
    let mut disc = Vec::new();
    let mut zero_full = Vec::new();
    for part in parts {
        for (k, v) in part.bins {
            *bins.entry(k).or_insert(0u64) += v;
        }
        disc.extend(part.discrepancies);
        zero_full.extend(part.zero_full);
    }
    let exception_orbit_size = if p == 2 && (3..=4).contains(&d) {
        Some(orbit::orbit(&exception(d)?, false, opts.mode)?.size)
    } else {
        None
    };
    Ok(CensusReport {
        p,
        d,
        total: needed as u64,
        bins: bins
            .into_iter()
            .map(|((embdim, gamma_zero, wlp), count)| Bin {
                embdim,
                gamma_zero,
                wlp,
                count,
            })
            .collect(),
        exception_orbit_size,
        discrepancies: disc
            .into_iter()
            .map(|i| decode(i, p, d))
            .collect::<Result<_>>()?,
        gamma_zero_full: zero_full,
    })
}

impl CensusReport {
    pub fn bin(&self, embdim: usize, gamma_zero: bool, wlp: bool) -> u64 {
        self.bins
            .iter()
            .find(|b| (b.embdim, b.gamma_zero, b.wlp) == (embdim, gamma_zero, wlp))
            .map_or(0, |b| b.count)
    }

    /// Full-embedding-dimension systems with `Gamma != 0` and no Lefschetz
    /// element defined over the prime field.
    pub fn without_rational_witness(&self) -> u64 {
        self.bin(self.d, false, false)
    }

    /// One-line answer to whether `Gamma != 0` guarantees a rational
    /// Lefschetz element at this `(p, d)`.
    pub fn finding(&self) -> String {
        let n = self.without_rational_witness();
        if n == 0 {
            format!(
                "over GF({}) with d = {}, every full system with Gamma != 0 has a Lefschetz element defined over GF({})",
                self.p, self.d, self.p
            )
        } else {
            format!(
                "over GF({}) with d = {}, {n} full systems have Gamma != 0 but no Lefschetz element defined over GF({}); \
                 for these the weak Lefschetz property holds only after extending the field",
                self.p, self.d, self.p
            )
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "d": self.d,
            "total": self.total,
            "bins": self.bins,
            "exceptionOrbitSize": self.exception_orbit_size,
            "gammaZeroFull": self.gamma_zero_full.len(),
            "withoutRationalWitness": self.without_rational_witness(),
            "finding": self.finding(),
            "discrepancies": self.discrepancies.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for b in &self.bins {
            w.serialize(b).map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}

/// A discrepancy recomputed with the generic modules only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub embdim: usize,
    pub gamma_zero: bool,
    pub witness: Option<SymElem>,
}

impl Replay {
    pub fn is_discrepancy(&self, d: usize) -> bool {
        self.embdim == d && self.gamma_zero == self.witness.is_some()
    }
}

pub fn replay(phi: &DividedElem) -> Result<Replay> {
    let s = InverseSystem::new(phi.clone())?;
    Ok(Replay {
        embdim: s.embedding_dimension()?,
        gamma_zero: gamma::gamma_is_zero(phi)?.zero,
        witness: s.wlp_witness(DEFAULT_HEIGHT)?,
    })
}

/// Kernel cell of a generic element, for cross-checks.
pub fn kernel_cell(kernel: &Kernel, phi: &DividedElem) -> Cell {
    let v: Vec<u32> = phi
        .dense()
        .iter()
        .map(|c| c.as_residue().expect("prime field residue") as u32)
        .collect();
    kernel.classify(&v)
}
