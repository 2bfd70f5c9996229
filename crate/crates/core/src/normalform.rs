//! Normal forms of cubic inverse systems under change of basis.
//!
//! Every nonzero `phi` can be rescaled and rebased to one of
//! `x1^(3) + x1 phi20 + phi30`, `x1^(2) x2 + x1 phi20 + phi30`, or (in
//! characteristic two only) a sum of squarefree triples, where `phi20` and
//! `phi30` do not involve `x1*`.

use serde_json::{json, Value};

use crate::apolarity::{catalecticant, InverseSystem};
use crate::coeffring::{Domain, Scalar};
use crate::error::{Error, Result};
use crate::gamma;
use crate::linalg::{self, Matrix};
use crate::polyspace::{monomials, BasisChange, DividedElem, ExponentTuple, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Cubic,
    SquareTimesLinear,
    Char2Squarefree,
}

impl Form {
    pub fn tag(self) -> &'static str {
        match self {
            Form::Cubic => "CUBIC",
            Form::SquareTimesLinear => "SQUARE_TIMES_LINEAR",
            Form::Char2Squarefree => "CHAR2_SQUAREFREE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormReport {
    pub form: Form,
    pub alpha: Scalar,
    pub change: BasisChange,
    /// Rank of `l -> l phi20`, for the cubic form.
    pub r: Option<usize>,
    pub phi20: DividedElem,
    pub phi30: DividedElem,
}

impl NormalFormReport {
    /// `alpha * change(phi)`, which has the declared shape.
    pub fn transformed(&self, phi: &DividedElem) -> Result<DividedElem> {
        Ok(self.change.apply_divided(phi)?.scale(&self.alpha))
    }

    /// The leading part `x1^(3)`, `x1^(2) x2` or `0`.
    pub fn lead(&self) -> DividedElem {
        let d = self.phi20.d();
        let dom = self.phi20.domain();
        let mut e = vec![0u8; d];
        match self.form {
            Form::Cubic => e[0] = 3,
            Form::SquareTimesLinear => {
                e[0] = 2;
                e[1] = 1;
            }
            Form::Char2Squarefree => return DividedElem::zero(d, 3, Space::Dual, dom),
        }
        DividedElem::monomial(ExponentTuple::new(&e), Space::Dual, dom.one())
    }

    /// `lead + x1 * phi20 + phi30`.
    pub fn reassemble(&self) -> Result<DividedElem> {
        let d = self.phi20.d();
        let x1 = DividedElem::variable(d, 0, Space::Dual, self.phi20.domain());
        self.lead()
            .checked_add(&x1.divided_mul(&self.phi20)?)?
            .checked_add(&self.phi30)
    }

    /// Check every invariant of the report against the input.
    pub fn check(&self, phi: &DividedElem) -> Result<bool> {
        let t = self.transformed(phi)?;
        if t != self.reassemble()? {
            return Ok(false);
        }
        let free_of_x1 = |p: &DividedElem| p.terms().keys().all(|e| e.get(0) == 0);
        if !free_of_x1(&self.phi20) || !free_of_x1(&self.phi30) {
            return Ok(false);
        }
        match self.form {
            Form::Cubic => {
                let Some(r) = self.r else { return Ok(false) };
                // phi20 lives on x2..x_{r+1}
                Ok(self
                    .phi20
                    .terms()
                    .keys()
                    .all(|e| e.entries()[r + 1..].iter().all(|&k| k == 0)))
            }
            Form::SquareTimesLinear => Ok(self.r.is_none()),
            Form::Char2Squarefree => Ok(self.phi20.domain().characteristic() == 2
                && t.terms().keys().all(|e| e.entries().iter().all(|&k| k <= 1))),
        }
    }

    pub fn to_json(&self) -> Value {
        let matrix: Vec<Vec<String>> = self
            .change
            .matrix()
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect();
        json!({
            "form": self.form.tag(),
            "alpha": self.alpha.to_string(),
            "matrix": matrix,
            "r": self.r,
            "phi20": self.phi20.to_string(),
            "phi30": self.phi30.to_string(),
        })
    }
}

fn require_field(dom: &Domain) -> Result<()> {
    if dom.is_field() {
        Ok(())
    } else {
        Err(Error::NotAField(dom.to_string()))
    }
}

/// Split `psi = (x1-part of order >= 2) + x1 * phi20 + phi30`.
fn split(psi: &DividedElem) -> Result<(DividedElem, DividedElem)> {
    let d = psi.d();
    let dom = psi.domain();
    let mut p20 = DividedElem::zero(d, 2, Space::Dual, dom);
    let mut p30 = DividedElem::zero(d, 3, Space::Dual, dom);
    let x1 = ExponentTuple::unit(d, 0);
    for (e, c) in psi.terms() {
        match e.get(0) {
            0 => p30 = p30.checked_add(&DividedElem::monomial(e.clone(), Space::Dual, c.clone()))?,
            1 => {
                let f = e.checked_sub(&x1).unwrap();
                p20 = p20.checked_add(&DividedElem::monomial(f, Space::Dual, c.clone()))?;
            }
            _ => {}
        }
    }
    Ok((p20, p30))
}

/// Transposition of `0` and `i`.
fn swap_to_front(dom: &Domain, d: usize, i: usize) -> Result<BasisChange> {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.swap(0, i);
    BasisChange::permutation(dom, &perm)
}

/// Bring `phi` into one of the three forms. Ties are broken by the lowest
/// variable index, then by the lex-first monomial.
pub fn standard_form(phi: &DividedElem) -> Result<NormalFormReport> {
    let dom = phi.domain().clone();
    require_field(&dom)?;
    if phi.space() != Space::Dual || phi.degree() != 3 {
        return Err(Error::BadShape("standard form needs phi in D_3 U*".into()));
    }
    if phi.is_zero() {
        return Err(Error::ZeroInput);
    }
    let d = phi.d();
    reduce(phi, BasisChange::identity(&dom, d), &dom, d)
}

fn reduce(phi0: &DividedElem, so_far: BasisChange, dom: &Domain, d: usize) -> Result<NormalFormReport> {
    let phi = so_far.apply_divided(phi0)?;

    // a pure cube
    if let Some(i) = (0..d).find(|&i| {
        let mut e = vec![0u8; d];
        e[i] = 3;
        !phi.coeff_of(&e).is_zero()
    }) {
        let swap = swap_to_front(dom, d, i)?;
        let psi = swap.apply_divided(&phi)?;
        let mut e = vec![0u8; d];
        e[0] = 3;
        let alpha = psi.coeff_of(&e).unit_inverse()?;
        let scaled = psi.scale(&alpha);
        // phi10: coefficient of x1^(2) x_j
        let mut t = linalg::identity(dom, d);
        for j in 1..d {
            let mut e = vec![0u8; d];
            e[0] = 2;
            e[j] = 1;
            // old x1* = X* - phi10
            t[0][j] = -scaled.coeff_of(&e);
        }
        let elim = BasisChange::from_dual_substitution(dom, t)?;
        let after = elim.apply_divided(&scaled)?;
        let (p20, _) = split(&after)?;
        let (r, sub) = rank_reduce(&restrict(&p20)?)?;
        let block = extend(dom, &sub);
        let change = so_far.then(&swap)?.then(&elim)?.then(&block)?;
        let fin = change.apply_divided(phi0)?.scale(&alpha);
        let (phi20, phi30) = split(&fin)?;
        return Ok(NormalFormReport {
            form: Form::Cubic,
            alpha,
            change,
            r: Some(r),
            phi20,
            phi30,
        });
    }

    // a square times a linear form, lex-first
    let sq = monomials(d, 3)
        .into_iter()
        .find(|e| e.entries().contains(&2) && !phi.coeff(e).is_zero());
    if let Some(e) = sq {
        let i = e.entries().iter().position(|&k| k == 2).unwrap();
        let swap = swap_to_front(dom, d, i)?;
        let psi = swap.apply_divided(&phi)?;
        let phi10: Vec<Scalar> = (0..d)
            .map(|j| {
                if j == 0 {
                    return dom.zero();
                }
                let mut e = vec![0u8; d];
                e[0] = 2;
                e[j] = 1;
                psi.coeff_of(&e)
            })
            .collect();
        let k = (1..d).find(|&j| !phi10[j].is_zero()).unwrap();
        let mut perm: Vec<usize> = (0..d).collect();
        perm.swap(1, k);
        let swap2 = BasisChange::permutation(dom, &perm)?;
        let phi10: Vec<Scalar> = {
            let mut v = phi10.clone();
            v.swap(1, k);
            v
        };
        // new x2* = phi10: rows of s give new coordinates in terms of old
        let mut s = linalg::identity(dom, d);
        s[1] = phi10;
        let t = linalg::inverse(dom, &s)?;
        let rebase = BasisChange::from_dual_substitution(dom, t)?;
        let change = so_far.then(&swap)?.then(&swap2)?.then(&rebase)?;
        let alpha = dom.one();
        let fin = change.apply_divided(phi0)?;
        let (phi20, phi30) = split(&fin)?;
        return Ok(NormalFormReport {
            form: Form::SquareTimesLinear,
            alpha,
            change,
            r: None,
            phi20,
            phi30,
        });
    }

    // only squarefree monomials remain
    if dom.characteristic() == 2 {
        let (phi20, phi30) = split(&phi)?;
        return Ok(NormalFormReport {
            form: Form::Char2Squarefree,
            alpha: dom.one(),
            change: so_far,
            r: None,
            phi20,
            phi30,
        });
    }
    let e = monomials(d, 3)
        .into_iter()
        .find(|e| !phi.coeff(e).is_zero())
        .expect("phi is nonzero");
    let idx: Vec<usize> = (0..d).filter(|&j| e.get(j) == 1).collect();
    // move the triple to positions 0, 1, 2 keeping the others in order
    let mut order: Vec<usize> = idx.clone();
    order.extend((0..d).filter(|j| !idx.contains(j)));
    let mut perm = vec![0; d];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    let arrange = BasisChange::permutation(dom, &perm)?;
    // old x2* = y2* + x1*
    let mut t = linalg::identity(dom, d);
    t[1][0] = dom.one();
    let mix = BasisChange::from_dual_substitution(dom, t)?;
    reduce(phi0, so_far.then(&arrange)?.then(&mix)?, dom, d)
}

/// View an element free of `x1*` as living on `x2*, ..., xd*`.
fn restrict(p: &DividedElem) -> Result<DividedElem> {
    let d = p.d();
    let terms = p
        .terms()
        .iter()
        .map(|(e, c)| (ExponentTuple::new(&e.entries()[1..]), c.clone()))
        .collect();
    DividedElem::from_terms(d - 1, p.degree(), p.space(), p.domain(), terms)
}

/// `1 (+) m` acting on `x1` and `x2, ..., xd`.
fn extend(dom: &Domain, m: &BasisChange) -> BasisChange {
    let d0 = m.d();
    let grow = |a: &Matrix| -> Matrix {
        let mut out = linalg::identity(dom, d0 + 1);
        for i in 0..d0 {
            for j in 0..d0 {
                out[i + 1][j + 1] = a[i][j].clone();
            }
        }
        out
    };
    let full = grow(m.matrix());
    BasisChange::new(dom, full).expect("block matrix is invertible")
}

/// Rank `r` of `l -> l phi20` and a change after which `phi20` only involves
/// the first `r` dual variables.
pub fn rank_reduce(phi20: &DividedElem) -> Result<(usize, BasisChange)> {
    let dom = phi20.domain().clone();
    require_field(&dom)?;
    if phi20.degree() != 2 || phi20.space() != Space::Dual {
        return Err(Error::BadShape("rank reduction needs an element of D_2 U*".into()));
    }
    let d0 = phi20.d();
    if phi20.is_zero() {
        return Ok((0, BasisChange::identity(&dom, d0)));
    }
    let h = catalecticant(phi20, 1);
    let mut red = h.clone();
    let pivots = linalg::rref(&dom, &mut red)?;
    let kernel = linalg::kernel(&dom, &h, d0)?;
    // columns: pivot unit vectors, then the kernel
    let mut cols: Vec<Vec<Scalar>> = pivots
        .iter()
        .map(|&p| (0..d0).map(|i| if i == p { dom.one() } else { dom.zero() }).collect())
        .collect();
    cols.extend(kernel);
    let l = linalg::transpose(&cols, d0, d0);
    let change = BasisChange::new(&dom, l)?.inverted();
    Ok((pivots.len(), change))
}

/// For `a Z^(2) + b Z W + c W^(2)` with `ac = b^2`, a change making it a
/// multiple of `z^(2)`.
pub fn complete_square(phi20: &DividedElem) -> Result<BasisChange> {
    let dom = phi20.domain().clone();
    require_field(&dom)?;
    if phi20.d() != 2 || phi20.degree() != 2 || phi20.space() != Space::Dual {
        return Err(Error::BadShape("need an element of D_2 of a plane".into()));
    }
    let a = phi20.coeff_of(&[2, 0]);
    let b = phi20.coeff_of(&[1, 1]);
    let c = phi20.coeff_of(&[0, 2]);
    if &a * &c != &b * &b {
        return Err(Error::NotDegenerate);
    }
    if a.is_zero() && c.is_zero() {
        return Ok(BasisChange::identity(&dom, 2));
    }
    if a.is_zero() {
        return BasisChange::permutation(&dom, &[1, 0]);
    }
    // z* = Z* + (b/a) W*
    let t = vec![
        vec![dom.one(), -(b.checked_div(&a)?)],
        vec![dom.zero(), dom.one()],
    ];
    BasisChange::from_dual_substitution(&dom, t)
}

/// The exception: characteristic two, full embedding dimension and
/// `Gamma = 0`. For `d = 4` this is the orbit of `x^(3) + y z w`, for
/// `d = 3` that of `x y z`.
pub fn detect_exception(s: &InverseSystem) -> Result<bool> {
    let d = s.d();
    if d != 3 && d != 4 {
        return Err(Error::UnsupportedDimension(d));
    }
    if s.domain().characteristic() != 2 {
        return Ok(false);
    }
    if s.embedding_dimension()? != d {
        return Ok(false);
    }
    Ok(gamma::gamma_is_zero(s.phi())?.zero)
}
