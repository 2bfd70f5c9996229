//! Exterior algebra and the map `Gamma_phi : D_d U (x) /\^d U -> /\^d U*`.
//!
//! `Gamma(X (x) w)` is the composite of the bowtie pairing
//! `D_d U (x) /\^d U -> /\^d (U (x) U)`, multiplication `U (x) U -> Sym_2 U`
//! and `u -> u . phi : Sym_2 U -> U*`, each applied on `/\^d`.

mod ext;

pub use ext::{sort_with_sign, ExtElem, ExtSpace};

use crate::coeffring::{Domain, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::polyspace::{monomials, DividedElem, ExponentTuple, Space, SymElem};

fn check_phi(phi: &DividedElem) -> Result<()> {
    if phi.space() != Space::Dual {
        return Err(Error::WrongSpace("phi must lie in D U*".into()));
    }
    if phi.degree() != 3 {
        return Err(Error::DegreeMismatch {
            expected: 3,
            got: phi.degree(),
        });
    }
    Ok(())
}

/// `p_phi(u) = u . phi` for `u` in `Sym_2 U`.
pub fn p_phi(phi: &DividedElem, u2: &SymElem) -> Result<DividedElem> {
    check_phi(phi)?;
    if u2.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            got: u2.degree(),
        });
    }
    u2.contract(phi)
}

/// `X bowtie Y` in `/\^m (E (x) G)` for `X` in `D_m E` and `Y` in `/\^m G`.
pub fn bowtie(x: &DividedElem, y: &ExtElem) -> Result<ExtElem> {
    if x.degree() != y.grade() {
        return Err(Error::DegreeMismatch {
            expected: y.grade(),
            got: x.degree(),
        });
    }
    if x.domain() != y.domain() {
        return Err(Error::DomainMismatch {
            left: x.domain().to_string(),
            right: y.domain().to_string(),
        });
    }
    let (e, g) = (x.d(), y.dim());
    let space = ExtSpace::Paired { e, g };
    let mut out = ExtElem::zero(space, 0, x.degree(), x.domain());
    for (c, word) in x.comultiply()? {
        for (idx, c2) in y.terms() {
            let pairs: Vec<usize> = word.iter().zip(idx).map(|(&i, &j)| i * g + j).collect();
            let t = ExtElem::basis(space, 0, &pairs, &c * c2)?;
            out = out.checked_add(&t)?;
        }
    }
    Ok(out)
}

/// `Gamma_phi(X (x) omega)` as an element of `/\^d U*`, computed through the
/// composite definition.
pub fn gamma_eval(phi: &DividedElem, x: &DividedElem, omega: &ExtElem) -> Result<ExtElem> {
    check_phi(phi)?;
    let d = phi.d();
    if x.space() != Space::Primal || x.degree() != d || x.d() != d {
        return Err(Error::BadShape(format!(
            "X must lie in D_{d} U, got degree {} in {:?}",
            x.degree(),
            x.space()
        )));
    }
    if omega.space() != ExtSpace::Primal || omega.dim() != d || omega.grade() != d {
        return Err(Error::BadShape("omega must lie in /\\^d U".into()));
    }
    let tied = bowtie(x, omega)?;
    let dom = phi.domain().clone();
    tied.map_linear(ExtSpace::Dual, d, |p| {
        let (i, j) = (p / d, p % d);
        let u = SymElem::variable(d, i, &dom).sym_mul(&SymElem::variable(d, j, &dom))?;
        p_phi(phi, &u)?.linear_coeffs()
    })
}

/// The vectors `x_a x_b . phi` as coordinate rows, indexed `[a][b]`.
pub struct ContractionTable {
    d: usize,
    domain: Domain,
    rows: Vec<Vec<Vec<Scalar>>>,
}

impl ContractionTable {
    pub fn new(phi: &DividedElem) -> Result<Self> {
        check_phi(phi)?;
        let d = phi.d();
        let mut rows = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in 0..d {
                rows[a][b] = (0..d)
                    .map(|c| {
                        let e = ExponentTuple::unit(d, a)
                            .add(&ExponentTuple::unit(d, b))
                            .add(&ExponentTuple::unit(d, c));
                        phi.coeff(&e)
                    })
                    .collect();
            }
        }
        Ok(ContractionTable {
            d,
            domain: phi.domain().clone(),
            rows,
        })
    }

    pub fn row(&self, a: usize, b: usize) -> &[Scalar] {
        &self.rows[a][b]
    }

    /// Coordinate of `Gamma(X (x) x_1 /\ ... /\ x_d)` on `x_1* /\ ... /\ x_d*`:
    /// the sum over the words `w` of `Delta X` of `det[x_{w_k} x_k . phi]`.
    pub fn gamma(&self, x: &DividedElem) -> Result<Scalar> {
        let mut acc = self.domain.zero();
        for (c, word) in x.comultiply()? {
            let m: Matrix = word
                .iter()
                .enumerate()
                .map(|(k, &w)| self.rows[w][k].clone())
                .collect();
            let det = linalg::det(&self.domain, &m)?;
            if !det.is_zero() {
                acc = acc + c * det;
            }
        }
        Ok(acc)
    }

    pub fn gamma_monomial(&self, e: &ExponentTuple) -> Result<Scalar> {
        self.gamma(&DividedElem::monomial(e.clone(), Space::Primal, self.domain.one()))
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

/// Coordinate of `Gamma(X (x) x_1 /\ ... /\ x_d)`.
pub fn gamma_coordinate(phi: &DividedElem, x: &DividedElem) -> Result<Scalar> {
    if x.space() != Space::Primal || x.degree() != phi.d() || x.d() != phi.d() {
        return Err(Error::BadShape("X must lie in D_d U".into()));
    }
    ContractionTable::new(phi)?.gamma(x)
}

/// `Gamma(l^(d) (x) x_1 /\ ... /\ x_d)`.
pub fn gamma_on_power(phi: &DividedElem, l: &SymElem) -> Result<Scalar> {
    let coeffs = l.linear_coeffs()?;
    let lp = DividedElem::linear(Space::Primal, phi.domain(), &coeffs).divided_power(phi.d())?;
    gamma_coordinate(phi, &lp)
}

/// The matrix with rows `l x_i . phi`.
pub fn power_matrix(phi: &DividedElem, l: &SymElem) -> Result<Matrix> {
    check_phi(phi)?;
    let d = phi.d();
    let lphi = l.contract(phi)?;
    (0..d)
        .map(|i| {
            SymElem::variable(d, i, phi.domain())
                .contract(&lphi)?
                .linear_coeffs()
        })
        .collect()
}

/// `Gamma` on every divided monomial of degree `d`, in lex order.
pub fn gamma_vector(phi: &DividedElem) -> Result<Vec<(ExponentTuple, Scalar)>> {
    let table = ContractionTable::new(phi)?;
    let basis = monomials(phi.d(), phi.d());
    let values = crate::par::map_indexed(crate::par::current(), basis.len(), |i| {
        table.gamma_monomial(&basis[i])
    });
    basis
        .into_iter()
        .zip(values)
        .map(|(e, v)| Ok((e, v?)))
        .collect()
}

/// Result of deciding `Gamma = 0` on the full monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaVanishing {
    pub zero: bool,
    /// First monomial in lex order with nonzero value, and that value.
    pub witness: Option<(ExponentTuple, Scalar)>,
}

pub fn gamma_is_zero(phi: &DividedElem) -> Result<GammaVanishing> {
    let table = ContractionTable::new(phi)?;
    for e in monomials(phi.d(), phi.d()) {
        let v = table.gamma_monomial(&e)?;
        if !v.is_zero() {
            return Ok(GammaVanishing {
                zero: false,
                witness: Some((e, v)),
            });
        }
    }
    Ok(GammaVanishing {
        zero: true,
        witness: None,
    })
}
