use super::elem::{accumulate, DividedElem, Space, SymElem};
use crate::coeffring::{Domain, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// An invertible `d x d` matrix acting on `U` (column `i` is the image of
/// `x_i`) and contragrediently on `U*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    domain: Domain,
    matrix: Matrix,
    inverse: Matrix,
}

impl BasisChange {
    pub fn new(domain: &Domain, matrix: Matrix) -> Result<Self> {
        if !domain.is_field() {
            return Err(Error::NotAField(domain.to_string()));
        }
        let inverse = linalg::inverse(domain, &matrix)?;
        Ok(BasisChange {
            domain: domain.clone(),
            matrix,
            inverse,
        })
    }

    pub fn identity(domain: &Domain, d: usize) -> Self {
        let id = linalg::identity(domain, d);
        BasisChange {
            domain: domain.clone(),
            matrix: id.clone(),
            inverse: id,
        }
    }

    /// The change under which old dual coordinates are
    /// `x_i* = sum_j t[i][j] X_j*` in terms of new ones.
    pub fn from_dual_substitution(domain: &Domain, t: Matrix) -> Result<Self> {
        let m = linalg::inverse(domain, &t)?;
        Ok(BasisChange {
            domain: domain.clone(),
            matrix: m,
            inverse: t,
        })
    }

    /// `x_i -> x_{perm[i]}`.
    pub fn permutation(domain: &Domain, perm: &[usize]) -> Result<Self> {
        let d = perm.len();
        let mut m = vec![vec![domain.zero(); d]; d];
        for (i, &j) in perm.iter().enumerate() {
            if j >= d {
                return Err(Error::BadShape(format!("permutation entry {j} out of range")));
            }
            m[j][i] = domain.one();
        }
        Self::new(domain, m)
    }

    pub fn d(&self) -> usize {
        self.matrix.len()
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    /// `then . self`, i.e. first `self`, then `then`.
    pub fn then(&self, then: &BasisChange) -> Result<Self> {
        Ok(BasisChange {
            domain: self.domain.clone(),
            matrix: linalg::mat_mul(&self.domain, &then.matrix, &self.matrix)?,
            inverse: linalg::mat_mul(&self.domain, &self.inverse, &then.inverse)?,
        })
    }

    pub fn inverted(&self) -> Self {
        BasisChange {
            domain: self.domain.clone(),
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// Coefficients of the image of `x_i` (primal) or `x_i*` (dual).
    pub fn image(&self, i: usize, space: Space) -> Vec<Scalar> {
        match space {
            Space::Primal => self.matrix.iter().map(|r| r[i].clone()).collect(),
            Space::Dual => self.inverse[i].clone(),
        }
    }

    fn check<T>(&self, d: usize, domain: &Domain, _: &T) -> Result<()> {
        if d != self.d() {
            return Err(Error::DimensionMismatch {
                expected: self.d(),
                got: d,
            });
        }
        if domain != &self.domain {
            return Err(Error::DomainMismatch {
                left: self.domain.to_string(),
                right: domain.to_string(),
            });
        }
        Ok(())
    }

    pub fn apply_sym(&self, v: &SymElem) -> Result<SymElem> {
        self.check(v.d(), v.domain(), v)?;
        let d = v.d();
        let images: Vec<SymElem> = (0..d)
            .map(|i| SymElem::linear(&self.domain, &self.image(i, Space::Primal)))
            .collect();
        let mut out = SymElem::zero(d, v.degree(), &self.domain);
        for (e, c) in v.terms() {
            let mut t = SymElem::monomial(super::ExponentTuple::zero(d), c.clone());
            for (i, &k) in e.entries().iter().enumerate() {
                t = t.sym_mul(&images[i].pow(k as u32)?)?;
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    pub fn apply_divided(&self, v: &DividedElem) -> Result<DividedElem> {
        self.check(v.d(), v.domain(), v)?;
        let images: Vec<Vec<Scalar>> = (0..v.d()).map(|i| self.image(i, v.space())).collect();
        substitute(v, &images)
    }
}

/// Replace each `x_i` of a divided element by the linear form with
/// coefficients `images[i]`, extending multiplicatively on divided powers.
pub fn substitute(v: &DividedElem, images: &[Vec<Scalar>]) -> Result<DividedElem> {
    let d = v.d();
    let dom = v.domain();
    if images.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: images.len(),
        });
    }
    let forms: Vec<DividedElem> = images
        .iter()
        .map(|im| DividedElem::linear(v.space(), dom, im))
        .collect();
    // cache of divided powers of each image
    let mut powers: Vec<Vec<DividedElem>> = forms
        .iter()
        .map(|f| vec![DividedElem::one(d, v.space(), dom), f.clone()])
        .collect();
    let mut terms = super::elem::Terms::new();
    for (e, c) in v.terms() {
        let mut t = DividedElem::monomial(super::ExponentTuple::zero(d), v.space(), c.clone());
        for (i, &k) in e.entries().iter().enumerate() {
            let k = k as usize;
            while powers[i].len() <= k {
                let n = powers[i].len();
                let p = forms[i].divided_power(n)?;
                powers[i].push(p);
            }
            t = t.divided_mul(&powers[i][k])?;
        }
        for (f, x) in t.terms() {
            accumulate(&mut terms, f.clone(), x.clone());
        }
    }
    DividedElem::from_terms(d, v.degree(), v.space(), dom, terms)
}

/// Either kind of element a [`BasisChange`] acts on.
pub trait BasisAction: Sized {
    fn apply_basis_change(&self, m: &BasisChange) -> Result<Self>;
}

impl BasisAction for SymElem {
    fn apply_basis_change(&self, m: &BasisChange) -> Result<Self> {
        m.apply_sym(self)
    }
}

impl BasisAction for DividedElem {
    fn apply_basis_change(&self, m: &BasisChange) -> Result<Self> {
        m.apply_divided(self)
    }
}
