//! Macaulay inverse systems of socle degree three: annihilators, Hilbert
//! functions, multiplication ranks and the weak Lefschetz property.

use serde_json::{json, Value};

use crate::coeffring::{Domain, Scalar};
use crate::error::{Error, Result};
use crate::gamma;
use crate::linalg::{self, Matrix};
use crate::polyspace::{monomials, DividedElem, ExponentTuple, Space, SymElem};

/// A nonzero `phi` in `D_3 U*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSystem {
    phi: DividedElem,
}

/// `m, n -> psi(m n)` for monomials of degrees `i` and `deg psi - i`.
pub fn catalecticant(psi: &DividedElem, i: usize) -> Matrix {
    let d = psi.d();
    let rows = monomials(d, i);
    let cols = monomials(d, psi.degree() - i);
    rows.iter()
        .map(|m| cols.iter().map(|n| psi.coeff(&m.add(n))).collect())
        .collect()
}

impl InverseSystem {
    pub fn new(phi: DividedElem) -> Result<Self> {
        if phi.space() != Space::Dual {
            return Err(Error::WrongSpace("inverse systems live in D U*".into()));
        }
        if phi.degree() != 3 {
            return Err(Error::DegreeMismatch {
                expected: 3,
                got: phi.degree(),
            });
        }
        if phi.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(InverseSystem { phi })
    }

    pub fn phi(&self) -> &DividedElem {
        &self.phi
    }

    pub fn d(&self) -> usize {
        self.phi.d()
    }

    pub fn domain(&self) -> &Domain {
        self.phi.domain()
    }

    fn field(&self) -> Result<&Domain> {
        let dom = self.domain();
        if dom.is_field() {
            Ok(dom)
        } else {
            Err(Error::NotAField(dom.to_string()))
        }
    }

    /// Basis of `I_i`, the kernel of `u -> u . phi` on `Sym_i U`.
    pub fn annihilator_component(&self, i: usize) -> Result<Vec<SymElem>> {
        let dom = self.field()?;
        if i > 3 {
            return Err(Error::DegreeMismatch { expected: 3, got: i });
        }
        let basis = monomials(self.d(), i);
        // columns indexed by Sym_i, rows by the dual basis of D_{3-i}
        let m = linalg::transpose(&catalecticant(&self.phi, i), basis.len(), monomials(self.d(), 3 - i).len());
        let kernel = linalg::kernel(dom, &m, basis.len())?;
        kernel
            .into_iter()
            .map(|v| {
                let terms = basis.iter().cloned().zip(v).collect();
                SymElem::from_terms(self.d(), i, dom, terms)
            })
            .collect()
    }

    /// `(h_0, h_1, h_2, h_3)` with `h_i = rank(Sym_i U -> D_{3-i} U*)`.
    pub fn hilbert_function(&self) -> Result<[usize; 4]> {
        let dom = self.field()?;
        let mut h = [0; 4];
        for (i, hi) in h.iter_mut().enumerate() {
            *hi = linalg::rank(dom, &catalecticant(&self.phi, i))?;
        }
        Ok(h)
    }

    pub fn embedding_dimension(&self) -> Result<usize> {
        let dom = self.field()?;
        linalg::rank(dom, &catalecticant(&self.phi, 1))
    }

    /// Matrix of `(m, n) -> phi(l m n)` for `m` in `Sym_i`, `n` in `Sym_{2-i}`;
    /// its rank is that of `mu_l : A_i -> A_{i+1}`.
    pub fn multiplication_matrix(&self, l: &SymElem, i: usize) -> Result<Matrix> {
        if i > 2 {
            return Err(Error::DegreeMismatch { expected: 2, got: i });
        }
        if l.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: l.degree(),
            });
        }
        let lphi = l.contract(&self.phi)?;
        Ok(catalecticant(&lphi, i))
    }

    pub fn multiplication_rank(&self, l: &SymElem, i: usize) -> Result<usize> {
        let dom = self.field()?;
        linalg::rank(dom, &self.multiplication_matrix(l, i)?)
    }

    pub fn is_weak_lefschetz(&self, l: &SymElem) -> Result<bool> {
        let h = self.hilbert_function()?;
        self.is_weak_lefschetz_with(l, &h)
    }

    fn is_weak_lefschetz_with(&self, l: &SymElem, h: &[usize; 4]) -> Result<bool> {
        for i in 0..3 {
            if self.multiplication_rank(l, i)? != h[i].min(h[i + 1]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First Lefschetz element in the search order: projective points over a
    /// prime field, small heights (at most `max_height`) over `Q`.
    pub fn wlp_witness(&self, max_height: u32) -> Result<Option<SymElem>> {
        let dom = self.field()?.clone();
        let h = self.hilbert_function()?;
        let full = h[1] == self.d();
        let d = self.d();
        let accept = |coeffs: &[Scalar]| -> Result<bool> {
            let l = SymElem::linear(&dom, coeffs);
            if full {
                // with full embedding dimension the middle map is decided by Gamma
                if gamma::gamma_on_power(&self.phi, &l)?.is_zero() {
                    return Ok(false);
                }
            }
            self.is_weak_lefschetz_with(&l, &h)
        };
        let candidates: Box<dyn Iterator<Item = Vec<Scalar>>> = match dom {
            Domain::PrimeField(p) => Box::new(projective_points(d, p).map({
                let dom = dom.clone();
                move |v| v.into_iter().map(|x| dom.from_i64(x as i64)).collect()
            })),
            _ => Box::new(height_search(d, max_height).map({
                let dom = dom.clone();
                move |v| v.into_iter().map(|x| dom.from_i64(x)).collect()
            })),
        };
        for c in candidates {
            if accept(&c)? {
                return Ok(Some(SymElem::linear(&dom, &c)));
            }
        }
        Ok(None)
    }

    pub fn classify(&self) -> Result<ClassificationRecord> {
        let h = self.hilbert_function()?;
        let g = gamma::gamma_is_zero(&self.phi)?;
        let witness = self.wlp_witness(DEFAULT_HEIGHT)?;
        let exception = match self.d() {
            3 | 4 => crate::normalform::detect_exception(self)?,
            _ => false,
        };
        Ok(ClassificationRecord {
            embedding_dim: h[1],
            hilbert: h.to_vec(),
            gamma_zero: g.zero,
            gamma_witness: g.witness.map(|(e, _)| e),
            wlp_witness: witness,
            is_exception: exception,
        })
    }
}

/// Default coordinate bound for the witness search over `Q`.
pub const DEFAULT_HEIGHT: u32 = 3;

/// Projective points of `GF(p)^d` normalized so the first nonzero entry is 1;
/// ordered by the position of that entry, then lexicographically.
pub fn projective_points(d: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..d).flat_map(move |lead| {
        let tail = d - lead - 1;
        let count = p.pow(tail as u32);
        (0..count).map(move |mut k| {
            let mut v = vec![0u64; d];
            v[lead] = 1;
            for j in (lead + 1..d).rev() {
                v[j] = k % p;
                k /= p;
            }
            v
        })
    })
}

/// Integer vectors up to sign by increasing height; each coordinate runs
/// through `0, 1, -1, 2, -2, ...`.
pub fn height_search(d: usize, max_height: u32) -> impl Iterator<Item = Vec<i64>> {
    (1..=max_height as i64).flat_map(move |h| {
        let values: Vec<i64> = std::iter::once(0)
            .chain((1..=h).flat_map(|k| [k, -k]))
            .collect();
        let n = values.len();
        let total = n.pow(d as u32);
        (0..total).filter_map(move |mut k| {
            let mut v = vec![0i64; d];
            for j in (0..d).rev() {
                v[j] = values[k % n];
                k /= n;
            }
            let height = v.iter().map(|x| x.abs()).max().unwrap_or(0);
            let lead = v.iter().find(|&&x| x != 0).copied().unwrap_or(0);
            (height == h && lead > 0).then_some(v)
        })
    })
}

/// Summary of one inverse system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub embedding_dim: usize,
    pub hilbert: Vec<usize>,
    pub gamma_zero: bool,
    pub gamma_witness: Option<ExponentTuple>,
    pub wlp_witness: Option<SymElem>,
    pub is_exception: bool,
}

impl ClassificationRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "embeddingDim": self.embedding_dim,
            "hilbert": self.hilbert,
            "gammaZero": self.gamma_zero,
            "gammaWitness": self.gamma_witness.as_ref().map(|e| e.entries().to_vec()),
            "wlpWitness": self.wlp_witness.as_ref().map(|l| l.to_string()),
            "isException": self.is_exception,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(s: &str, d: usize, dom: &Domain) -> InverseSystem {
        InverseSystem::new(DividedElem::parse(s, d, Space::Dual, dom).unwrap()).unwrap()
    }

    fn sym(s: &str, d: usize, dom: &Domain) -> SymElem {
        SymElem::parse(s, d, dom).unwrap()
    }

    #[test]
    fn exception_annihilator_and_hilbert_function() {
        let f2 = Domain::PrimeField(2);
        let s = system("x^(3) + y*z*w", 4, &f2);
        let i2 = s.annihilator_component(2).unwrap();
        assert_eq!(i2.len(), 6);
        // each generator of the printed ideal lies in the span
        let span: Matrix = i2.iter().map(|u| u.dense()).collect();
        for g in ["x*y", "x*z", "x*w", "y^2", "z^2", "w^2"] {
            let mut with = span.clone();
            with.push(sym(g, 4, &f2).dense());
            assert_eq!(linalg::rank(&f2, &with).unwrap(), 6, "{g}");
            assert!(sym(g, 4, &f2).contract(s.phi()).unwrap().is_zero());
        }
        assert_eq!(s.hilbert_function().unwrap(), [1, 4, 4, 1]);
        assert_eq!(s.embedding_dimension().unwrap(), 4);
        assert!(s.annihilator_component(1).unwrap().is_empty());
    }

    #[test]
    fn one_variable_system() {
        let q = Domain::Rationals;
        let s = system("x^(3)", 4, &q);
        let i1 = s.annihilator_component(1).unwrap();
        assert_eq!(i1, vec![sym("y", 4, &q), sym("z", 4, &q), sym("w", 4, &q)]);
        assert_eq!(s.hilbert_function().unwrap(), [1, 1, 1, 1]);
        assert_eq!(s.embedding_dimension().unwrap(), 1);
        let one = system("x^(3)", 1, &q);
        assert_eq!(one.wlp_witness(3).unwrap(), Some(sym("x", 1, &q)));
    }

    #[test]
    fn char_two_squarefree_form_has_small_embedding_dimension() {
        let f2 = Domain::PrimeField(2);
        let s = system("y*z*w + x*z*w", 4, &f2);
        assert!(s.embedding_dimension().unwrap() <= 3);
        assert!(sym("x+y", 4, &f2).contract(s.phi()).unwrap().is_zero());
    }

    #[test]
    fn exception_has_no_lefschetz_element() {
        let f2 = Domain::PrimeField(2);
        let s = system("x^(3) + y*z*w", 4, &f2);
        let points: Vec<_> = projective_points(4, 2).collect();
        assert_eq!(points.len(), 15);
        for v in points {
            let l = SymElem::linear(&f2, &v.iter().map(|&x| f2.from_i64(x as i64)).collect::<Vec<_>>());
            assert!(s.multiplication_rank(&l, 1).unwrap() <= 3);
            assert!(!s.is_weak_lefschetz(&l).unwrap());
        }
        assert_eq!(s.wlp_witness(3).unwrap(), None);
        let f5 = Domain::PrimeField(5);
        assert!(system("x^(3) + y*z*w", 4, &f5).wlp_witness(3).unwrap().is_some());
    }

    #[test]
    fn sum_of_cubes_over_q() {
        let q = Domain::Rationals;
        let s = system("x^(3) + y^(3) + z^(3) + w^(3)", 4, &q);
        let l = sym("x+y+z+w", 4, &q);
        assert_eq!(s.multiplication_rank(&l, 1).unwrap(), 4);
        assert!(s.is_weak_lefschetz(&l).unwrap());
        let zero = SymElem::zero(4, 1, &q);
        assert_eq!(s.multiplication_rank(&zero, 1).unwrap(), 0);
        assert!(!s.is_weak_lefschetz(&zero).unwrap());
    }

    #[test]
    fn generic_ternary_cubic() {
        let f5 = Domain::PrimeField(5);
        let s = system("x^(3) + 2*y^(3) + z^(3) + x*y*z + 3*x^(2)*z", 3, &f5);
        assert_eq!(s.hilbert_function().unwrap(), [1, 3, 3, 1]);
    }

    #[test]
    fn search_orders() {
        let pts: Vec<_> = projective_points(3, 3).collect();
        assert_eq!(pts.len(), 13);
        assert_eq!(pts[0], vec![1, 0, 0]);
        assert_eq!(pts[1], vec![1, 0, 1]);
        assert_eq!(pts[9], vec![0, 1, 0]);
        assert_eq!(pts[12], vec![0, 0, 1]);
        let hs: Vec<_> = height_search(2, 1).collect();
        assert_eq!(hs, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn rejects_invalid_systems() {
        let q = Domain::Rationals;
        assert_eq!(
            InverseSystem::new(DividedElem::zero(4, 3, Space::Dual, &q)),
            Err(Error::ZeroInput)
        );
        let r = Domain::param_ring_letters("a").unwrap();
        let s = system("a*x^(3)", 4, &r);
        assert!(matches!(s.hilbert_function(), Err(Error::NotAField(_))));
    }
}
