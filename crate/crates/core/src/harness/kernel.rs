//! Small-prime classification kernels for the census hot path.
//!
//! A cubic is a dense coefficient vector over `GF(p)` in the order of
//! `monomials(d, 3)`. Everything here mirrors the generic code in
//! `apolarity` and `gamma`: embedding dimension is the rank of
//! `x_i -> x_i phi`, `Gamma` is evaluated coordinate by coordinate on
//! `monomials(d, d)`, and the witness is the first projective point in lex
//! order whose multiplication maps all have maximal rank. `GF(2)` gets a
//! bit-packed variant of every step.

use std::collections::HashMap;

use crate::apolarity::projective_points;
use crate::polyspace::{distinct_words, monomials, ExponentTuple};

pub const MAX_D: usize = 4;
const MAX_QUAD: usize = 10;

/// Outcome of classifying one cubic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub embdim: usize,
    pub gamma_zero: bool,
    /// Index into [`Kernel::points`] of the first Lefschetz element.
    pub witness: Option<u32>,
}

pub struct Kernel {
    p: u32,
    d: usize,
    n3: usize,
    /// `idx[a][b][c]` is the position of `x_a x_b x_c` among the cubics.
    idx: [[[u8; MAX_D]; MAX_D]; MAX_D],
    /// Quadratic monomials as index pairs `a <= b`, in `monomials(d, 2)` order.
    quads: Vec<(usize, usize)>,
    /// Distinct words of every `Gamma` coordinate, in `monomials(d, d)` order.
    words: Vec<Vec<[u8; MAX_D]>>,
    points: Vec<[u32; MAX_D]>,
    inv: Vec<u32>,
    /// `GF(2)` only: bit `m` set iff the `d` rows packed in `m` are independent.
    det2: Vec<u64>,
}

impl Kernel {
    /// `p` must be a prime below 2^15 (so residue products fit in a `u32`)
    /// and `1 <= d <= 4`.
    pub fn new(p: u64, d: usize) -> Kernel {
        assert!((1..=MAX_D).contains(&d), "kernel supports 1 <= d <= 4");
        assert!((2..1 << 15).contains(&p), "kernel supports primes below 2^15");
        let p32 = p as u32;
        let cubics = monomials(d, 3);
        let pos: HashMap<ExponentTuple, usize> =
            cubics.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut idx = [[[0u8; MAX_D]; MAX_D]; MAX_D];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let e = ExponentTuple::from_letters(d, &[a, b, c]);
                    idx[a][b][c] = pos[&e] as u8;
                }
            }
        }
        let quads = monomials(d, 2)
            .iter()
            .map(|e| {
                let l = e.letters();
                (l[0], l[1])
            })
            .collect();
        let words = monomials(d, d)
            .iter()
            .map(|e| {
                distinct_words(e)
                    .into_iter()
                    .map(|w| {
                        let mut a = [0u8; MAX_D];
                        for (k, &x) in w.iter().enumerate() {
                            a[k] = x as u8;
                        }
                        a
                    })
                    .collect()
            })
            .collect();
        let points = projective_points(d, p)
            .map(|v| {
                let mut a = [0u32; MAX_D];
                for (k, x) in v.into_iter().enumerate() {
                    a[k] = x as u32;
                }
                a
            })
            .collect();
        let mut inv = vec![0u32; p as usize];
        for x in 1..p32 {
            inv[x as usize] = pow_mod(x, p32 - 2, p32);
        }
        let det2 = if p == 2 {
            let n = 1usize << (d * d);
            let mut bits = vec![0u64; n.div_ceil(64)];
            for m in 0..n {
                let rows: Vec<u8> = (0..d).map(|k| ((m >> (k * d)) as u8) & ((1 << d) - 1)).collect();
                if rank2(&rows) == d {
                    bits[m / 64] |= 1 << (m % 64);
                }
            }
            bits
        } else {
            Vec::new()
        };
        Kernel {
            p: p32,
            d,
            n3: cubics.len(),
            idx,
            quads,
            words,
            points,
            inv,
            det2,
        }
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of cubic coefficients.
    pub fn len(&self) -> usize {
        self.n3
    }

    pub fn is_empty(&self) -> bool {
        self.n3 == 0
    }

    /// Candidate linear forms in witness order.
    pub fn points(&self) -> &[[u32; MAX_D]] {
        &self.points
    }

    /// Base-`p` digits of `index`, least significant first.
    pub fn decode(&self, mut index: u64, out: &mut [u32]) {
        for c in out.iter_mut().take(self.n3) {
            *c = (index % self.p as u64) as u32;
            index /= self.p as u64;
        }
    }

    pub fn encode(&self, coeffs: &[u32]) -> u64 {
        coeffs[..self.n3]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn classify(&self, phi: &[u32]) -> Cell {
        if self.p == 2 {
            let mut bits = 0u32;
            for (k, &c) in phi[..self.n3].iter().enumerate() {
                bits |= (c & 1) << k;
            }
            self.classify_bits(bits)
        } else {
            self.classify_mod(phi)
        }
    }

    pub fn embedding_dimension(&self, phi: &[u32]) -> usize {
        let mut m = [[0u32; MAX_QUAD]; MAX_D];
        for (i, row) in m.iter_mut().enumerate().take(self.d) {
            for (q, &(a, b)) in self.quads.iter().enumerate() {
                row[q] = phi[self.idx[i][a][b] as usize];
            }
        }
        self.rank_mod(&mut m, self.d, self.quads.len())
    }

    /// `rows[a][k] = (x_a x_k phi)` as a vector of `D_1`.
    fn contraction_rows(&self, phi: &[u32]) -> [[[u32; MAX_D]; MAX_D]; MAX_D] {
        let mut r = [[[0u32; MAX_D]; MAX_D]; MAX_D];
        for a in 0..self.d {
            for k in 0..self.d {
                for j in 0..self.d {
                    r[a][k][j] = phi[self.idx[a][k][j] as usize];
                }
            }
        }
        r
    }

    pub fn gamma_zero(&self, phi: &[u32]) -> bool {
        let r = self.contraction_rows(phi);
        self.words.iter().all(|ws| {
            let mut acc = 0u32;
            for w in ws {
                let mut m = [[0u32; MAX_QUAD]; MAX_D];
                for k in 0..self.d {
                    m[k][..self.d].copy_from_slice(&r[w[k] as usize][k][..self.d]);
                }
                acc = (acc + self.det_mod(&mut m)) % self.p;
            }
            acc == 0
        })
    }

    fn classify_mod(&self, phi: &[u32]) -> Cell {
        let embdim = self.embedding_dimension(phi);
        let gamma_zero = self.gamma_zero(phi);
        let r = self.contraction_rows(phi);
        let d = self.d;
        let witness = self.points.iter().position(|l| {
            // rank of mu_l : A_1 -> A_2; the outer maps have full rank whenever
            // this one is nonzero
            let mut m = [[0u32; MAX_QUAD]; MAX_D];
            for a in 0..d {
                for j in 0..d {
                    let mut s = 0u32;
                    for i in 0..d {
                        s += l[i] * r[i][a][j] % self.p;
                    }
                    m[a][j] = s % self.p;
                }
            }
            embdim > 0 && self.rank_mod(&mut m, d, d) == embdim
        });
        Cell {
            embdim,
            gamma_zero,
            witness: witness.map(|w| w as u32),
        }
    }

    fn classify_bits(&self, phi: u32) -> Cell {
        let d = self.d;
        let bit = |k: u8| ((phi >> k) & 1) as u8;
        let mut emb = [0u16; MAX_D];
        for (i, e) in emb.iter_mut().enumerate().take(d) {
            for (q, &(a, b)) in self.quads.iter().enumerate() {
                *e |= (bit(self.idx[i][a][b]) as u16) << q;
            }
        }
        let embdim = rank2(&emb[..d]);
        let mut r = [[0u8; MAX_D]; MAX_D];
        for a in 0..d {
            for k in 0..d {
                for j in 0..d {
                    r[a][k] |= bit(self.idx[a][k][j]) << j;
                }
            }
        }
        let gamma_zero = self.words.iter().all(|ws| {
            let mut acc = 0u64;
            for w in ws {
                let mut packed = 0usize;
                for k in 0..d {
                    packed |= (r[w[k] as usize][k] as usize) << (k * d);
                }
                acc ^= self.det2[packed / 64] >> (packed % 64);
            }
            acc & 1 == 0
        });
        let witness = self.points.iter().position(|l| {
            let mut m = [0u8; MAX_D];
            for (a, row) in m.iter_mut().enumerate().take(d) {
                for i in 0..d {
                    if l[i] == 1 {
                        *row ^= r[i][a];
                    }
                }
            }
            embdim > 0 && rank2(&m[..d]) == embdim
        });
        Cell {
            embdim,
            gamma_zero,
            witness: witness.map(|w| w as u32),
        }
    }

    fn rank_mod(&self, m: &mut [[u32; MAX_QUAD]; MAX_D], rows: usize, cols: usize) -> usize {
        let p = self.p;
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = self.inv[m[rank][c] as usize];
            for r in rank + 1..rows {
                let f = m[r][c] * inv % p;
                if f != 0 {
                    for j in c..cols {
                        m[r][j] = (m[r][j] + (p - f) * m[rank][j]) % p;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    fn det_mod(&self, m: &mut [[u32; MAX_QUAD]; MAX_D]) -> u32 {
        let (p, n) = (self.p, self.d);
        let mut det = 1u32;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else {
                return 0;
            };
            if piv != c {
                m.swap(c, piv);
                det = (p - det) % p;
            }
            det = det * m[c][c] % p;
            let inv = self.inv[m[c][c] as usize];
            for r in c + 1..n {
                let f = m[r][c] * inv % p;
                if f != 0 {
                    for j in c..n {
                        m[r][j] = (m[r][j] + (p - f) * m[c][j]) % p;
                    }
                }
            }
        }
        det
    }
}

fn pow_mod(b: u32, mut e: u32, p: u32) -> u32 {
    let (mut r, mut b, p) = (1u64, b as u64 % p as u64, p as u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r as u32
}

/// Rank over `GF(2)` of bit-packed rows.
pub fn rank2<T>(rows: &[T]) -> usize
where
    T: Copy + Into<u32>,
{
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for &row in rows {
        let mut v: u32 = row.into();
        for &b in &basis[..rank] {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis[rank] = v;
            rank += 1;
            // keep the basis sorted by leading bit, descending
            basis[..rank].sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_rank() {
        assert_eq!(rank2(&[0b11u8, 0b01, 0b10]), 2);
        assert_eq!(rank2(&[0b1000u8, 0b0100, 0b0010, 0b0001]), 4);
        assert_eq!(rank2(&[0u8, 0]), 0);
        assert_eq!(rank2(&[0b110u16, 0b011, 0b101]), 2);
    }

    #[test]
    fn encoding_round_trips() {
        let k = Kernel::new(3, 3);
        let mut v = vec![0u32; k.len()];
        for idx in [0u64, 1, 2, 3, 12345, 59048] {
            k.decode(idx, &mut v);
            assert_eq!(k.encode(&v), idx);
        }
    }

    #[test]
    fn modular_inverse_table() {
        let k = Kernel::new(7, 2);
        for x in 1..7u32 {
            assert_eq!(x * k.inv[x as usize] % 7, 1);
        }
    }

    #[test]
    fn exception_cells() {
        // x^(3) + y z w: index of x^(3) is 0, y z w is the squarefree monomial
        for p in [2u64, 5] {
            let k = Kernel::new(p, 4);
            let mut phi = vec![0u32; k.len()];
            phi[k.idx[0][0][0] as usize] = 1;
            phi[k.idx[1][2][3] as usize] = 1;
            let cell = k.classify(&phi);
            assert_eq!(cell.embdim, 4);
            assert_eq!(cell.gamma_zero, p == 2);
            assert_eq!(cell.witness.is_none(), p == 2);
        }
    }
}
