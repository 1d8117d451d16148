//! Brute-force checks that share no formulas with the combinatorial code:
//! Hom spaces by exact linear algebra and Grassmannian points over small fields.

mod fq;
mod linalg;
mod verify;

use serde::{Deserialize, Serialize};

use crate::coeff_quiver::arrange;
use crate::cyclic_rep::{NilpRep, Vertex};
use crate::error::{Error, Result};

pub use fq::{count_points_fq, gaussian_binomial, subspaces, Field};
pub use linalg::{nullity, rank};
pub use verify::{random_homogeneous_rep, random_nilp_rep, verify_suite, CheckResult, VerifyLevel, VerifyReport};

/// Environment variable raising the oracle size limits.
pub const GUARD_OVERRIDE_VAR: &str = "CYCLEQUIV_GUARD_OVERRIDE";

const DIM_GUARD: u128 = 512;
const POINT_GUARD: u128 = 10_000_000;

pub(crate) fn guard(default: u128) -> u128 {
    std::env::var(GUARD_OVERRIDE_VAR)
        .ok()
        .and_then(|s| s.trim().parse::<u128>().ok())
        .map_or(default, |v| v.max(default))
}

/// Explicit arrow matrices of a representation in the basis of its arranged
/// coefficient quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRep {
    pub dims: Vec<usize>,
    /// `maps[i]` is the `dims[i+1] × dims[i]` matrix of the arrow `i -> i+1`.
    pub maps: Vec<Vec<Vec<u8>>>,
}

impl MatrixRep {
    pub fn from_rep(rep: &NilpRep) -> Self {
        let cq = arrange(rep);
        let n = rep.n();
        let dims: Vec<usize> = Vertex::all(n).map(|v| cq.point_count(v)).collect();
        let maps = Vertex::all(n)
            .map(|v| {
                let target = dims[v.succ().residue()];
                let mut m = vec![vec![0u8; dims[v.residue()]]; target];
                for row in 0..dims[v.residue()] {
                    if let Some(r2) = cq.succ_row(v, row) {
                        m[r2][row] = 1;
                    }
                }
                m
            })
            .collect();
        MatrixRep { dims, maps }
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Image of basis vector `col` over vertex `i`, if non-zero.
    pub fn image_of(&self, i: usize, col: usize) -> Option<usize> {
        self.maps[i].iter().position(|row| row[col] != 0)
    }

    /// Composition of `steps` consecutive arrows starting at vertex `i` vanishes.
    pub fn path_vanishes(&self, i: usize, steps: usize) -> bool {
        let n = self.n();
        (0..self.dims[i]).all(|start| {
            let mut cur = Some(start);
            for s in 0..steps {
                cur = cur.and_then(|c| self.image_of((i + s) % n, c));
            }
            cur.is_none()
        })
    }
}

/// `dim Hom(a, b)` as the nullity of `ψ_{i+1} A_i - B_i ψ_i = 0`.
pub fn hom_dim_matrix(a: &NilpRep, b: &NilpRep) -> Result<usize> {
    if a.n() != b.n() {
        return Err(Error::VertexCountMismatch {
            expected: a.n(),
            got: b.n(),
        });
    }
    let ma = MatrixRep::from_rep(a);
    let mb = MatrixRep::from_rep(b);
    let total = (ma.total_dim() + mb.total_dim()) as u128;
    let limit = guard(DIM_GUARD);
    if total > limit {
        return Err(Error::OracleSizeLimit(format!(
            "total dimension {total} exceeds {limit}"
        )));
    }
    let n = a.n();
    // unknown (i, r, c) is entry (r, c) of ψ_i : k^{dim a_i} -> k^{dim b_i}
    let mut offset = vec![0; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + mb.dims[i] * ma.dims[i];
    }
    let var = |i: usize, r: usize, c: usize| offset[i] + r * ma.dims[i] + c;

    let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        // entry (r, c) of ψ_j A_i - B_i ψ_i, with r over b_j and c over a_i
        for r in 0..mb.dims[j] {
            for c in 0..ma.dims[i] {
                let mut eq: Vec<(usize, i64)> = Vec::new();
                if let Some(t) = ma.image_of(i, c) {
                    eq.push((var(j, r, t), 1));
                }
                for s in 0..mb.dims[i] {
                    if mb.maps[i][r][s] != 0 {
                        eq.push((var(i, s, c), -1));
                    }
                }
                eq.sort_unstable();
                let mut merged: Vec<(usize, i64)> = Vec::with_capacity(eq.len());
                for (v, x) in eq {
                    match merged.last_mut() {
                        Some((w, y)) if *w == v => *y += x,
                        _ => merged.push((v, x)),
                    }
                }
                merged.retain(|&(_, x)| x != 0);
                if !merged.is_empty() {
                    rows.push(merged);
                }
            }
        }
    }
    Ok(nullity(offset[n], rows))
}
