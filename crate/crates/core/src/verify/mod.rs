//! Exact verification of closed-form Gamma evaluations and polynomial
//! identities over integer parameter rings.
//!
//! Each [`IdentityCase`] is evaluated in a [`Ctx`], which fixes the target
//! domain and the values of the parameters. Symbolically the target is the
//! parameter ring itself; for cross-checks the parameters are specialized to
//! random points of a small prime field before any computation happens, so
//! the two runs share no arithmetic.

mod registry;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::coeffring::{Domain, Scalar};
use crate::error::{Error, Result};
use crate::expr;
use crate::linalg::{self, Matrix};
use crate::par;
use crate::polyspace::{monomials, DividedElem, Space, Terms};

pub use registry::registry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    GammaFormula,
    Syzygy,
    Plucker,
    Factorization,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::GammaFormula => "GAMMA_FORMULA",
            Family::Syzygy => "SYZYGY",
            Family::Plucker => "PLUCKER",
            Family::Factorization => "FACTORIZATION",
        }
    }
}

/// Which suite a family belongs to on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Gamma,
    Syzygy,
    Plucker,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "all" => Ok(Suite::All),
            "gamma" => Ok(Suite::Gamma),
            "syzygy" => Ok(Suite::Syzygy),
            "plucker" => Ok(Suite::Plucker),
            _ => Err(Error::Parse(format!("unknown suite {s}"))),
        }
    }
}

impl Suite {
    pub fn contains(self, f: Family) -> bool {
        match self {
            Suite::All => true,
            Suite::Gamma => f == Family::GammaFormula,
            Suite::Syzygy => matches!(f, Family::Syzygy | Family::Factorization),
            Suite::Plucker => f == Family::Plucker,
        }
    }
}

pub type Builder = fn(&mut Ctx) -> Result<Vec<(Scalar, Scalar)>>;

/// One identity `lhs = rhs` (or a list of them) in a parameter ring.
pub struct IdentityCase {
    pub id: &'static str,
    pub family: Family,
    pub description: &'static str,
    /// Parameter names: a run of letters, or a comma-separated list.
    pub params: &'static str,
    /// Parameters set to zero before evaluation.
    pub zero: &'static [&'static str],
    pub build: Builder,
}

impl IdentityCase {
    pub fn param_names(&self) -> Vec<String> {
        split_names(self.params)
    }

    pub fn ring(&self) -> Result<Domain> {
        Domain::param_ring(&self.param_names())
    }

    /// Evaluate symbolically.
    pub fn evaluate(&self) -> Result<Vec<(Scalar, Scalar)>> {
        let ring = self.ring()?;
        let values: Vec<Scalar> = (0..self.param_names().len())
            .map(|i| ring.param(i))
            .collect::<Result<_>>()?;
        let mut ctx = Ctx::new(self, ring.clone(), values)?;
        (self.build)(&mut ctx)
    }

    /// Evaluate with every parameter specialized to `values` in `target`.
    pub fn evaluate_at(&self, target: &Domain, values: Vec<Scalar>) -> Result<Vec<(Scalar, Scalar)>> {
        let mut ctx = Ctx::new(self, target.clone(), values)?;
        (self.build)(&mut ctx)
    }

    pub fn run(&self) -> CaseOutcome {
        match self.evaluate() {
            Ok(pairs) => {
                let residuals: Vec<String> = pairs
                    .iter()
                    .map(|(l, r)| l.checked_sub(r).map(|s| s.to_string()))
                    .filter(|s| !matches!(s, Ok(t) if t == "0"))
                    .map(|s| s.unwrap_or_else(|e| e.to_string()))
                    .collect();
                CaseOutcome {
                    id: self.id,
                    family: self.family,
                    passed: residuals.is_empty(),
                    checks: pairs.len(),
                    residuals,
                    error: None,
                }
            }
            Err(e) => CaseOutcome {
                id: self.id,
                family: self.family,
                passed: false,
                checks: 0,
                residuals: Vec::new(),
                error: Some(e.to_string()),
            },
        }
    }

    /// Re-run at `points` random points of `GF(p)`; returns the number of
    /// points where some identity fails.
    pub fn cross_check(&self, p: u64, points: usize, seed: u64) -> Result<usize> {
        let target = Domain::prime_field(p)?;
        let n = self.param_names().len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = 0;
        for _ in 0..points {
            let values: Vec<Scalar> = (0..n).map(|_| target.from_i64(rng.gen_range(0..p as i64))).collect();
            let pairs = self.evaluate_at(&target, values)?;
            if pairs.iter().any(|(l, r)| l != r) {
                bad += 1;
            }
        }
        Ok(bad)
    }
}

fn split_names(s: &str) -> Vec<String> {
    if s.contains(',') {
        s.split(',').map(|t| t.trim().to_string()).collect()
    } else {
        s.chars().map(|c| c.to_string()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseOutcome {
    pub id: &'static str,
    pub family: Family,
    pub passed: bool,
    pub checks: usize,
    /// `lhs - rhs` for every failing check.
    pub residuals: Vec<String>,
    pub error: Option<String>,
}

impl CaseOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "family": self.family.tag(),
            "status": if self.passed { "pass" } else { "fail" },
            "checks": self.checks,
            "residuals": self.residuals,
            "error": self.error,
        })
    }
}

pub fn find(id: &str) -> Result<&'static IdentityCase> {
    registry()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCase(id.to_string()))
}

/// Run the selected cases in parallel; results are in registry order.
pub fn run_suite(suite: Suite, id: Option<&str>) -> Result<Vec<CaseOutcome>> {
    let cases: Vec<&IdentityCase> = match id {
        Some(id) => vec![find(id)?],
        None => registry().iter().filter(|c| suite.contains(c.family)).collect(),
    };
    Ok(par::map_indexed(par::current(), cases.len(), |i| cases[i].run()))
}

pub fn report(outcomes: &[CaseOutcome]) -> Value {
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    json!({
        "total": outcomes.len(),
        "passed": outcomes.len() - failed,
        "failed": failed,
        "cases": outcomes.iter().map(CaseOutcome::to_json).collect::<Vec<_>>(),
    })
}

/// Evaluation context for one case: target domain, parameter values and
/// named auxiliary quantities such as `F0` or `detM`.
pub struct Ctx {
    target: Domain,
    ring: Domain,
    names: Vec<String>,
    values: Vec<Scalar>,
    defs: HashMap<String, Scalar>,
}

impl Ctx {
    fn new(case: &IdentityCase, target: Domain, mut values: Vec<Scalar>) -> Result<Ctx> {
        let names = case.param_names();
        if values.len() != names.len() {
            return Err(Error::DimensionMismatch {
                expected: names.len(),
                got: values.len(),
            });
        }
        for z in case.zero {
            let i = names
                .iter()
                .position(|n| n == z)
                .ok_or_else(|| Error::Parse(format!("constraint on unknown parameter {z}")))?;
            values[i] = target.zero();
        }
        Ok(Ctx {
            target,
            ring: case.ring()?,
            names,
            values,
            defs: HashMap::new(),
        })
    }

    pub fn domain(&self) -> &Domain {
        &self.target
    }

    pub fn scalar(&self, s: &str) -> Result<Scalar> {
        let e = expr::parse(s)?;
        e.eval_scalar(&self.target, &mut |name| {
            if let Some(v) = self.defs.get(name) {
                return Ok(v.clone());
            }
            match self.names.iter().position(|n| n == name) {
                Some(i) => Ok(self.values[i].clone()),
                None => Err(Error::Parse(format!("unknown name {name}"))),
            }
        })
    }

    pub fn define(&mut self, name: &str, s: &str) -> Result<()> {
        let v = self.scalar(s)?;
        self.defs.insert(name.to_string(), v);
        Ok(())
    }

    pub fn define_value(&mut self, name: &str, v: Scalar) {
        self.defs.insert(name.to_string(), v);
    }

    pub fn matrix(&self, rows: &[&[&str]]) -> Result<Matrix> {
        rows.iter()
            .map(|r| r.iter().map(|s| self.scalar(s)).collect())
            .collect()
    }

    pub fn det(&self, m: &Matrix) -> Result<Scalar> {
        linalg::det(&self.target, m)
    }

    /// A template over the parameter ring, specialized to this context.
    pub fn phi(&self, template: &str, d: usize) -> Result<DividedElem> {
        let generic = DividedElem::parse_with_degree(template, d, 3, Space::Dual, &self.ring)?;
        self.specialize(&generic)
    }

    fn specialize(&self, v: &DividedElem) -> Result<DividedElem> {
        let mut terms = Terms::new();
        for (e, c) in v.terms() {
            let s = c.specialize(&self.target, &self.values)?;
            if !s.is_zero() {
                terms.insert(e.clone(), s);
            }
        }
        DividedElem::from_terms(v.d(), v.degree(), v.space(), &self.target, terms)
    }

    /// The element of `D_3` with the `k`-th monomial carrying the `k`-th
    /// parameter.
    pub fn generic_phi(&self, d: usize) -> Result<DividedElem> {
        let basis = monomials(d, 3);
        if basis.len() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: self.values.len(),
            });
        }
        let terms = basis
            .into_iter()
            .zip(self.values.iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect();
        DividedElem::from_terms(d, 3, Space::Dual, &self.target, terms)
    }

    pub fn primal(&self, s: &str, d: usize) -> Result<DividedElem> {
        DividedElem::parse(s, d, Space::Primal, &self.target)
    }
}

/// `M` with the listed rows and columns (1-based) deleted.
pub fn minor(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| !rows.contains(&(i + 1)))
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| !cols.contains(&(j + 1)))
                .map(|(_, c)| c.clone())
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PluckerConvention {
    /// `sum_i det Y(a, b_i) det Y(b - b_i)` with no signs.
    SignFree,
    /// The classical relation with sign `(-1)^i`.
    Alternating,
}

/// The quadratic relation among maximal minors of an `r x c` matrix `y`
/// for column lists `a` (length `r - 1`) and `b` (length `r + 1`), 1-based.
/// Columns are taken in the order listed.
pub fn plucker_sum(
    domain: &Domain,
    y: &Matrix,
    a: &[usize],
    b: &[usize],
    convention: PluckerConvention,
) -> Result<Scalar> {
    let r = y.len();
    let c = y.first().map_or(0, |row| row.len());
    if r == 0 || r > c || y.iter().any(|row| row.len() != c) {
        return Err(Error::BadShape(format!("need an r x c matrix with r <= c, got {r} x {c}")));
    }
    if a.len() + 1 != r || b.len() != r + 1 {
        return Err(Error::BadShape(format!(
            "need {} and {} columns, got {} and {}",
            r - 1,
            r + 1,
            a.len(),
            b.len()
        )));
    }
    if let Some(&bad) = a.iter().chain(b).find(|&&j| j == 0 || j > c) {
        return Err(Error::BadShape(format!("column {bad} out of range 1..={c}")));
    }
    let columns = |cols: &[usize]| -> Matrix {
        (0..r).map(|i| cols.iter().map(|&j| y[i][j - 1].clone()).collect()).collect()
    };
    let mut acc = domain.zero();
    for i in 0..b.len() {
        let mut left = a.to_vec();
        left.push(b[i]);
        let right: Vec<usize> = b.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &j)| j).collect();
        let term = linalg::det(domain, &columns(&left))? * linalg::det(domain, &columns(&right))?;
        acc = match convention {
            PluckerConvention::Alternating if i % 2 == 1 => acc - term,
            _ => acc + term,
        };
    }
    Ok(acc)
}
