#![allow(dead_code)]

//! Algebraic property suites. Each runs a fixed number of proptest cases
//! from a fixed ChaCha seed and returns the first failure, if any.

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use lefschetz_core::apolarity::{catalecticant, InverseSystem};
use lefschetz_core::coeffring::{Domain, Scalar};
use lefschetz_core::gamma;
use lefschetz_core::linalg;
use lefschetz_core::normalform::{rank_reduce, standard_form};
use lefschetz_core::polyspace::{
    binomial, monomials, BasisChange, DividedElem, ExponentTuple, Space, SymElem,
};

pub const CASES: u32 = 1000;

pub fn runner(seed: u64, cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

const DOMAINS: [Option<u64>; 5] = [None, Some(2), Some(3), Some(5), Some(7)];

fn domain(k: usize, fields_only: bool) -> Domain {
    match DOMAINS[k % DOMAINS.len()] {
        None if fields_only => Domain::Rationals,
        None => Domain::Integers,
        Some(p) => Domain::PrimeField(p),
    }
}

/// Hands out scalars from a raw pool: `-3..=3` over `Z`/`Q`, residues mod `p`.
struct Pool<'a> {
    dom: Domain,
    raw: &'a [u64],
    at: usize,
}

impl<'a> Pool<'a> {
    fn new(dom: Domain, raw: &'a [u64]) -> Self {
        Pool { dom, raw, at: 0 }
    }

    fn next_u64(&mut self) -> u64 {
        let v = self.raw[self.at % self.raw.len()].rotate_left((self.at / self.raw.len()) as u32 * 7);
        self.at += 1;
        v
    }

    fn scalar(&mut self) -> Scalar {
        let v = self.next_u64();
        match self.dom {
            Domain::PrimeField(p) => self.dom.from_i64((v % p) as i64),
            _ => self.dom.from_i64((v % 7) as i64 - 3),
        }
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    fn coeffs(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.scalar()).collect()
    }

    fn dual(&mut self, d: usize, degree: usize) -> DividedElem {
        let c = self.coeffs(monomials(d, degree).len());
        DividedElem::from_dense(d, degree, Space::Dual, &self.dom, &c).unwrap()
    }

    fn sym(&mut self, d: usize, degree: usize) -> SymElem {
        let terms = monomials(d, degree).into_iter().map(|e| (e, self.scalar())).collect();
        SymElem::from_terms(d, degree, &self.dom, terms).unwrap()
    }

    fn linear(&mut self, d: usize) -> SymElem {
        SymElem::linear(&self.dom.clone(), &self.coeffs(d))
    }

    fn primal_linear(&mut self, d: usize) -> DividedElem {
        DividedElem::linear(Space::Primal, &self.dom.clone(), &self.coeffs(d))
    }

    fn monomial(&mut self, d: usize, degree: usize) -> ExponentTuple {
        let basis = monomials(d, degree);
        basis[self.below(basis.len())].clone()
    }

    /// `L U` with `L` unit lower triangular and `U` upper triangular with a
    /// nonzero diagonal, so invertible whatever the pool holds.
    fn basis_change(&mut self, d: usize) -> BasisChange {
        let (zero, one) = (self.dom.zero(), self.dom.one());
        let mut l = vec![vec![zero.clone(); d]; d];
        let mut u = vec![vec![zero.clone(); d]; d];
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    l[i][j] = one.clone();
                    let s = self.scalar();
                    u[i][j] = if s.is_zero() { one.clone() } else { s };
                } else if j < i {
                    l[i][j] = self.scalar();
                } else {
                    u[i][j] = self.scalar();
                }
            }
        }
        BasisChange::new(&self.dom, linalg::mat_mul(&self.dom, &l, &u).unwrap()).unwrap()
    }

    /// Cubics biased towards degenerate ones: generic, fewer variables, a
    /// sum of cubes, or (in characteristic two) the exception.
    fn cubic(&mut self, d: usize) -> DividedElem {
        match self.below(4) {
            0 => self.dual(d, 3),
            1 => {
                let c = monomials(d, 3)
                    .iter()
                    .map(|e| if e.get(d - 1) > 0 { self.dom.zero() } else { self.scalar() })
                    .collect::<Vec<_>>();
                DividedElem::from_dense(d, 3, Space::Dual, &self.dom, &c).unwrap()
            }
            2 if self.dom.characteristic() == 2 && d == 4 => {
                DividedElem::parse("x^(3) + y*z*w", 4, Space::Dual, &self.dom).unwrap()
            }
            _ => {
                let mut acc = DividedElem::zero(d, 3, Space::Dual, &self.dom);
                for _ in 0..1 + self.below(d) {
                    let l = DividedElem::linear(Space::Dual, &self.dom.clone(), &self.coeffs(d));
                    acc = acc.checked_add(&l.divided_power(3).unwrap()).unwrap();
                }
                acc
            }
        }
    }

    fn nonzero_cubic(&mut self, d: usize) -> DividedElem {
        loop {
            let c = self.cubic(d);
            if !c.is_zero() {
                return c;
            }
        }
    }
}

fn instance() -> impl Strategy<Value = (usize, usize, Vec<u64>)> {
    (0usize..DOMAINS.len(), 2usize..=4, vec(any::<u64>(), 48))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn run<F>(seed: u64, cases: u32, fields_only: bool, body: F) -> Result<(), String>
where
    F: Fn(&mut Pool, usize) -> Result<(), TestCaseError>,
{
    runner(seed, cases)
        .run(&instance(), |(k, d, raw)| {
            let mut pool = Pool::new(domain(k, fields_only), &raw);
            body(&mut pool, d)
        })
        .map_err(|e| e.to_string())
}

/// `(u v) . phi = u . (v . phi)`.
pub fn contraction_associativity(seed: u64, cases: u32) -> Result<(), String> {
    run(seed, cases, false, |pool, d| {
        let n = 2 + pool.below(3);
        let i = pool.below(n + 1);
        let j = pool.below(n - i + 1);
        let (u, v, phi) = (pool.sym(d, i), pool.sym(d, j), pool.dual(d, n));
        let left = u.sym_mul(&v).unwrap().contract(&phi).unwrap();
        let right = u.contract(&v.contract(&phi).unwrap()).unwrap();
        check(left == right, || format!("u = {u}, v = {v}, phi = {phi}"))
    })
}

/// `<x^a, x^(b)> = delta_ab`.
pub fn dual_basis_pairing(seed: u64, cases: u32) -> Result<(), String> {
    run(seed, cases, false, |pool, d| {
        let n = pool.below(5);
        let (a, b) = (pool.monomial(d, n), pool.monomial(d, n));
        let one = pool.dom.one();
        let v = SymElem::monomial(a.clone(), one.clone())
            .pair(&DividedElem::monomial(b.clone(), Space::Dual, one.clone()))
            .unwrap();
        let expected = if a == b { one } else { pool.dom.zero() };
        check(v == expected, || format!("{a:?} against {b:?} gave {v}"))
    })
}

/// `l^(m) l^(n) = C(m+n, n) l^(m+n)`.
pub fn divided_power_law(seed: u64, cases: u32) -> Result<(), String> {
    run(seed, cases, false, |pool, d| {
        let (m, n) = (pool.below(5), pool.below(5));
        let l = DividedElem::linear(Space::Dual, &pool.dom.clone(), &pool.coeffs(d));
        let left = l.divided_power(m).unwrap().divided_mul(&l.divided_power(n).unwrap()).unwrap();
        let c = pool.dom.from_bigint(&binomial((m + n) as u64, n as u64));
        let right = l.divided_power(m + n).unwrap().scale(&c);
        check(left == right, || format!("l = {l}, m = {m}, n = {n}"))
    })
}

/// `Gamma((l1 + a l2)^(k) X) = sum_j a^j Gamma(l1^(k-j) l2^(j) X)`.
pub fn polarization(seed: u64, cases: u32) -> Result<(), String> {
    run(seed, cases, false, |pool, d| {
        let d = d.max(3);
        let phi = pool.dual(d, 3);
        let (l1, l2) = (pool.primal_linear(d), pool.primal_linear(d));
        let a = pool.scalar();
        let delta = pool.below(d + 1);
        let x = DividedElem::monomial(pool.monomial(d, delta), Space::Primal, pool.dom.one());
        let k = d - delta;
        let sum = l1.checked_add(&l2.scale(&a)).unwrap();
        let left = gamma::gamma_coordinate(&phi, &sum.divided_power(k).unwrap().divided_mul(&x).unwrap()).unwrap();
        let mut right = pool.dom.zero();
        for j in 0..=k {
            let t = l1
                .divided_power(k - j)
                .unwrap()
                .divided_mul(&l2.divided_power(j).unwrap())
                .unwrap()
                .divided_mul(&x)
                .unwrap();
            right = right + a.pow(j as u32) * gamma::gamma_coordinate(&phi, &t).unwrap();
        }
        check(left == right, || format!("phi = {phi}, l1 = {l1}, l2 = {l2}, a = {a}, X = {x}"))
    })
}

/// `rank(mu_l : A_i -> A_{i+1}) = rank(mu_l : A_{2-i} -> A_{3-i})`.
pub fn rank_duality(seed: u64, cases: u32) -> Result<(), String> {
    run(seed, cases, true, |pool, d| {
        let s = InverseSystem::new(pool.nonzero_cubic(d)).unwrap();
        let l = pool.linear(d);
        let i = pool.below(3);
        let a = s.multiplication_rank(&l, i).unwrap();
        let b = s.multiplication_rank(&l, 2 - i).unwrap();
        check(a == b, || format!("phi = {}, l = {l}, i = {i}: {a} vs {b}", s.phi()))
    })
}

/// `h_i = h_{3-i}` and `h_0 = 1`.
pub fn hilbert_palindromic(seed: u64, cases: u32) -> Result<(), String> {
    run(seed, cases, true, |pool, d| {
        let s = InverseSystem::new(pool.nonzero_cubic(d)).unwrap();
        let h = s.hilbert_function().unwrap();
        check(h[0] == 1 && h[3] == 1 && h[1] == h[2], || format!("phi = {}, h = {h:?}", s.phi()))
    })
}

/// `Gamma(l^(d)) = det[l x_i phi]`, the rows built by plain contraction.
pub fn gamma_on_power_is_determinant(seed: u64, cases: u32) -> Result<(), String> {
    run(seed, cases, false, |pool, d| {
        let phi = pool.cubic(d);
        let l = pool.linear(d);
        let rows: Vec<Vec<Scalar>> = (0..d)
            .map(|i| {
                let xi = SymElem::variable(d, i, &pool.dom);
                l.sym_mul(&xi).unwrap().contract(&phi).unwrap().linear_coeffs().unwrap()
            })
            .collect();
        let det = linalg::det(&pool.dom, &rows).unwrap();
        let g = gamma::gamma_on_power(&phi, &l).unwrap();
        check(det == g, || format!("phi = {phi}, l = {l}: det {det}, gamma {g}"))
    })
}

/// `Gamma == 0` and the rank of `phi20` are invariant under `GL_d`.
pub fn gl_invariance(seed: u64, cases: u32) -> Result<(), String> {
    run(seed, cases, true, |pool, d| {
        let phi = pool.cubic(d);
        let g = pool.basis_change(d);
        let moved = g.apply_divided(&phi).unwrap();
        let z0 = gamma::gamma_is_zero(&phi).unwrap().zero;
        let z1 = gamma::gamma_is_zero(&moved).unwrap().zero;
        check(z0 == z1, || format!("phi = {phi} vs {moved}"))?;

        let k = pool.below(d) + 1;
        let mut q = DividedElem::zero(k, 2, Space::Dual, &pool.dom);
        for _ in 0..pool.below(k + 1) {
            let l = DividedElem::linear(Space::Dual, &pool.dom.clone(), &pool.coeffs(k));
            let m = DividedElem::linear(Space::Dual, &pool.dom.clone(), &pool.coeffs(k));
            q = q.checked_add(&l.divided_mul(&m).unwrap()).unwrap();
        }
        let h = pool.basis_change(k);
        let (r0, c0) = rank_reduce(&q).unwrap();
        let (r1, _) = rank_reduce(&h.apply_divided(&q).unwrap()).unwrap();
        let reduced = c0.apply_divided(&q).unwrap();
        let confined = reduced.terms().keys().all(|e| e.entries()[r0..].iter().all(|&x| x == 0));
        let rank = linalg::rank(&pool.dom, &catalecticant(&q, 1)).unwrap();
        check(r0 == r1 && r0 == rank && confined, || format!("phi20 = {q}: {r0}, {r1}, {rank}"))
    })
}

/// The normal-form report reproduces its declared shape.
pub fn normal_form_soundness(seed: u64, cases: u32) -> Result<(), String> {
    run(seed, cases, true, |pool, d| {
        let phi = pool.nonzero_cubic(d);
        let r = standard_form(&phi).unwrap();
        check(r.check(&phi).unwrap(), || format!("phi = {phi}: {}", r.to_json()))
    })
}

pub type Suite = (&'static str, fn(u64, u32) -> Result<(), String>);

pub const SUITES: [Suite; 9] = [
    ("contraction associativity", contraction_associativity),
    ("dual-basis pairing", dual_basis_pairing),
    ("divided-power law", divided_power_law),
    ("polarization", polarization),
    ("Gorenstein rank duality", rank_duality),
    ("Hilbert palindromicity", hilbert_palindromic),
    ("gamma on powers is a determinant", gamma_on_power_is_determinant),
    ("GL-invariance", gl_invariance),
    ("normal-form soundness", normal_form_soundness),
];
