use num_bigint::BigUint;
use rayon::prelude::*;

use super::{guard, MatrixRep, POINT_GUARD};
use crate::cyclic_rep::{DimVector, NilpRep};
use crate::error::{Error, Result};

/// Finite field with `q ∈ {2, 3, 4, 5}` elements, by tables.
#[derive(Clone, Debug)]
pub struct Field {
    q: usize,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
    neg: Vec<u8>,
}

impl Field {
    pub fn new(q: usize) -> Result<Self> {
        let (add, mul): (Vec<Vec<u8>>, Vec<Vec<u8>>) = match q {
            2 | 3 | 5 => {
                let add = (0..q).map(|a| (0..q).map(|b| ((a + b) % q) as u8).collect()).collect();
                let mul = (0..q).map(|a| (0..q).map(|b| ((a * b) % q) as u8).collect()).collect();
                (add, mul)
            }
            4 => {
                // F_4 = F_2[x]/(x² + x + 1), element b1 b0 ↦ b1 x + b0
                let add = (0..4).map(|a| (0..4).map(|b| (a ^ b) as u8).collect()).collect();
                let gf4 = |a: usize, b: usize| -> u8 {
                    let mut prod = 0usize;
                    for i in 0..2 {
                        if b >> i & 1 == 1 {
                            prod ^= a << i;
                        }
                    }
                    if prod & 0b100 != 0 {
                        prod ^= 0b111;
                    }
                    prod as u8
                };
                let mul = (0..4).map(|a| (0..4).map(|b| gf4(a, b)).collect()).collect();
                (add, mul)
            }
            _ => return Err(Error::InvalidParameter(format!("q = {q} not in {{2,3,4,5}}"))),
        };
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a][b] == 0).expect("additive inverse") as u8)
            .collect();
        Ok(Field { q, add, mul, neg })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }
}

/// A subspace in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Echelon {
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn contains(&self, f: &Field, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// `[m choose k]_q`.
pub fn gaussian_binomial(m: usize, k: usize, q: u64) -> BigUint {
    if k > m {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(q);
    let one = BigUint::from(1u32);
    let mut num = one.clone();
    let mut den = one.clone();
    for i in 0..k {
        num *= q.pow((m - i) as u32) - &one;
        den *= q.pow((i + 1) as u32) - &one;
    }
    num / den
}

fn enumerate_echelon(f: &Field, m: usize, k: usize) -> Vec<Echelon> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    fn choose(f: &Field, m: usize, k: usize, from: usize, pivots: &mut Vec<usize>, out: &mut Vec<Echelon>) {
        if pivots.len() == k {
            fill(f, m, pivots, out);
            return;
        }
        for p in from..m {
            pivots.push(p);
            choose(f, m, k, p + 1, pivots, out);
            pivots.pop();
        }
    }
    fn fill(f: &Field, m: usize, pivots: &[usize], out: &mut Vec<Echelon>) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..m).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut digits = vec![0u8; free.len()];
        loop {
            let mut rows = vec![vec![0u8; m]; pivots.len()];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                rows[r][c] = d;
            }
            out.push(Echelon {
                rows,
                pivots: pivots.to_vec(),
            });
            let mut i = 0;
            while i < digits.len() && digits[i] as usize == f.q() - 1 {
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
        }
    }
    choose(f, m, k, 0, &mut pivots, &mut out);
    out
}

/// Number of `k`-dimensional subspaces of `F_q^m`, by enumeration.
pub fn subspaces(m: usize, k: usize, q: usize) -> Result<usize> {
    let f = Field::new(q)?;
    if k > m {
        return Ok(0);
    }
    Ok(enumerate_echelon(&f, m, k).len())
}

fn apply(f: &Field, a: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u8, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
        })
        .collect()
}

/// `|Gr_e(rep)(F_q)|`: tuples of subspaces `V_i ⊆ F_q^{m_i}` of dimension
/// `e_i` with `A_i V_i ⊆ V_{i+1}` for every arrow.
pub fn count_points_fq(rep: &NilpRep, e: &DimVector, q: usize) -> Result<BigUint> {
    let f = Field::new(q)?;
    let n = rep.n();
    if e.n() != n {
        return Err(Error::VertexCountMismatch { expected: n, got: e.n() });
    }
    let mr = MatrixRep::from_rep(rep);
    if (0..n).any(|i| e.0[i] > mr.dims[i]) {
        return Ok(BigUint::from(0u32));
    }
    let candidates = (0..n).fold(BigUint::from(1u32), |acc, i| {
        acc * gaussian_binomial(mr.dims[i], e.0[i], q as u64)
    });
    let limit = guard(POINT_GUARD);
    if candidates > BigUint::from(limit) {
        return Err(Error::OracleSizeLimit(format!(
            "{candidates} candidate subspace tuples exceed {limit}"
        )));
    }
    let spaces: Vec<Vec<Echelon>> = (0..n).map(|i| enumerate_echelon(&f, mr.dims[i], e.0[i])).collect();
    // images[i][s]: images under A_i of the basis of subspace s over i
    let images: Vec<Vec<Vec<Vec<u8>>>> = (0..n)
        .map(|i| {
            spaces[i]
                .iter()
                .map(|s| s.rows.iter().map(|v| apply(&f, &mr.maps[i], v)).collect())
                .collect()
        })
        .collect();

    fn extend(
        f: &Field,
        i: usize,
        first: usize,
        prev: usize,
        spaces: &[Vec<Echelon>],
        images: &[Vec<Vec<Vec<u8>>>],
    ) -> u64 {
        let n = spaces.len();
        if i == n {
            // close the cycle: A_{n-1} V_{n-1} ⊆ V_0
            let ok = images[n - 1][prev].iter().all(|w| spaces[0][first].contains(f, w));
            return ok as u64;
        }
        spaces[i]
            .iter()
            .enumerate()
            .filter(|(_, s)| images[i - 1][prev].iter().all(|w| s.contains(f, w)))
            .map(|(idx, _)| extend(f, i + 1, first, idx, spaces, images))
            .sum()
    }

    let total: u64 = (0..spaces[0].len())
        .into_par_iter()
        .map(|s0| extend(&f, 1, s0, s0, &spaces, &images))
        .sum();
    Ok(BigUint::from(total))
}
