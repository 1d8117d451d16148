use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{CoefficientQuiver, FixedPoint, TorusGrading};
use crate::cyclic_rep::Vertex;
use crate::error::{Error, Result};

/// How cell dimensions are computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellDimMethod {
    /// Parameter elimination on the generators of the attracting set.
    #[default]
    Elim,
    /// Positive weight part of `Hom(L, M/L)`.
    Tangent,
}

/// Parameter `μ^{(i)}_{ℓ,k}`: vertex residue, row `ℓ`, column `k` (0-based rows).
type Param = (usize, usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Free,
    Determined,
}

fn check_fixed_point(cq: &CoefficientQuiver, l: &FixedPoint) -> Result<()> {
    if !l.is_valid_for(cq) {
        return Err(Error::InvalidParameter(format!(
            "fixed point with {} suffixes does not fit {} segments",
            l.suffix.len(),
            cq.segments().len()
        )));
    }
    Ok(())
}

/// Distance from the point in row `row` over `v` to the end of its segment.
fn tail(cq: &CoefficientQuiver, v: Vertex, row: usize) -> usize {
    let p = cq.point(v, row);
    cq.segments()[p.segment].len() - 1 - p.pos
}

/// Dimension of the attracting cell of `l` by eliminating the parameters of
/// its generators `w_k = v_k + Σ μ_{ℓ,k} v_ℓ` along the arrow equations.
///
/// Every equation determines a parameter `μ^{(i+1)}_{·,k'}` whose column `k'`
/// has a marked preimage. The elimination order puts determined parameters
/// first, then sorts by the distance of the column to the segment end; every
/// equation must only involve parameters strictly later in this order.
pub fn cell_dim_elim(cq: &CoefficientQuiver, _grading: &TorusGrading, l: &FixedPoint) -> Result<usize> {
    check_fixed_point(cq, l)?;
    let n = cq.n();
    let marked: Vec<Vec<bool>> = Vertex::all(n)
        .map(|v| (0..cq.point_count(v)).map(|r| l.is_marked_at(cq, v, r)).collect())
        .collect();

    let mut params: HashMap<Param, Role> = HashMap::new();
    for v in Vertex::all(n) {
        let col = &marked[v.residue()];
        for k in (0..col.len()).filter(|&k| col[k]) {
            for row in (k + 1..col.len()).filter(|&r| !col[r]) {
                params.insert((v.residue(), row, k), Role::Free);
            }
        }
    }
    let total = params.len();

    let key = |params: &HashMap<Param, Role>, p: Param| -> Result<(bool, usize)> {
        let role = params.get(&p).ok_or_else(|| {
            Error::EliminationOrder(format!("equation refers to missing parameter {p:?}"))
        })?;
        let v = Vertex::from_residue(n, p.0);
        Ok((*role == Role::Free, tail(cq, v, p.2)))
    };

    let mut equations: Vec<(Param, Vec<Param>)> = Vec::new();
    for v in Vertex::all(n) {
        let i = v.residue();
        let w = v.succ();
        let col = &marked[i];
        let next = &marked[w.residue()];
        // K_{i+1} \ K_i': marked targets without a marked preimage
        let image_of_marked: BTreeSet<usize> = (0..col.len())
            .filter(|&r| col[r])
            .filter_map(|r| cq.succ_row(v, r))
            .collect();
        let fresh: BTreeSet<usize> = (0..next.len())
            .filter(|&r| next[r] && !image_of_marked.contains(&r))
            .collect();

        for k in (0..col.len()).filter(|&k| col[k]) {
            let Some(k2) = cq.succ_row(v, k) else {
                continue;
            };
            // rows ℓ > k whose successor is a fresh marked point
            let feeding: Vec<(usize, usize)> = (k + 1..col.len())
                .filter_map(|r| cq.succ_row(v, r).map(|r2| (r, r2)))
                .filter(|(_, r2)| fresh.contains(r2))
                .collect();

            let mut preimaged: BTreeSet<usize> = BTreeSet::new();
            for j in k + 1..col.len() {
                let Some(j2) = cq.succ_row(v, j) else {
                    continue;
                };
                preimaged.insert(j2);
                if next[j2] {
                    continue;
                }
                let mut rhs = vec![(i, j, k)];
                for &(r, r2) in feeding.iter().filter(|(r, _)| *r < j) {
                    rhs.push((i, r, k));
                    rhs.push((w.residue(), j2, r2));
                }
                equations.push(((w.residue(), j2, k2), rhs));
            }
            for h in (k2 + 1..next.len()).filter(|&h| !next[h] && !preimaged.contains(&h)) {
                let mut rhs = Vec::new();
                for &(r, r2) in feeding.iter().filter(|(_, r2)| *r2 < h) {
                    rhs.push((i, r, k));
                    rhs.push((w.residue(), h, r2));
                }
                equations.push(((w.residue(), h, k2), rhs));
            }
        }
    }

    for (lhs, _) in &equations {
        match params.get_mut(lhs) {
            None => {
                return Err(Error::EliminationOrder(format!(
                    "equation determines missing parameter {lhs:?}"
                )))
            }
            Some(role @ Role::Free) => *role = Role::Determined,
            Some(Role::Determined) => {
                return Err(Error::EliminationOrder(format!(
                    "parameter {lhs:?} determined twice"
                )))
            }
        }
    }
    for (lhs, rhs) in &equations {
        let lk = key(&params, *lhs)?;
        for p in rhs {
            if key(&params, *p)? <= lk {
                return Err(Error::EliminationOrder(format!(
                    "{p:?} does not come after {lhs:?}"
                )));
            }
        }
    }
    Ok(total - equations.len())
}

/// Dimension of the attracting cell of `l` as the number of basis morphisms
/// of `Hom(L, M/L)` with positive weight.
pub fn cell_dim_tangent(cq: &CoefficientQuiver, grading: &TorusGrading, l: &FixedPoint) -> usize {
    let n = cq.n() as i64;
    let segs = cq.segments();
    let mut count = 0;
    for (sx, &cx) in l.suffix.iter().enumerate() {
        if cx == 0 {
            continue;
        }
        let x_first = segs[sx].len() - cx;
        let x_start = segs[sx].vertex_at(x_first);
        let x_weight = grading.segment_weights(sx)[x_first];
        for (sy, &cy) in l.suffix.iter().enumerate() {
            let q = segs[sy].len() - cy;
            if q == 0 {
                continue;
            }
            let y_end = segs[sy].vertex_at(q - 1);
            let y_weights = grading.segment_weights(sy);
            let first = (y_end.diff(x_start) as i64 + 1).rem_euclid(n);
            let first = if first == 0 { n } else { first } as usize;
            for z in (first..=cx.min(q)).step_by(cq.n()) {
                if y_weights[q - z] > x_weight {
                    count += 1;
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_quiver::{arrange, enumerate_fixed_points, grading};
    use crate::cyclic_rep::{DimVector, IndecNilp, NilpRep};
    use crate::flag::build_degenerate_flag_rep;

    fn two_points() -> CoefficientQuiver {
        let v = Vertex::new(1, 1).unwrap();
        arrange(&NilpRep::from_summands(1, [IndecNilp::new(v, 1); 2]))
    }

    #[test]
    fn two_points_elim() {
        let cq = two_points();
        let g = grading(&cq);
        assert_eq!(cell_dim_elim(&cq, &g, &FixedPoint::new(vec![0, 1])).unwrap(), 0);
        assert_eq!(cell_dim_elim(&cq, &g, &FixedPoint::new(vec![1, 0])).unwrap(), 1);
    }

    #[test]
    fn two_points_tangent() {
        let cq = two_points();
        let g = grading(&cq);
        assert_eq!(cell_dim_tangent(&cq, &g, &FixedPoint::new(vec![0, 1])), 0);
        assert_eq!(cell_dim_tangent(&cq, &g, &FixedPoint::new(vec![1, 0])), 1);
    }

    #[test]
    fn full_subrep_has_point_cell() {
        let cq = arrange(&build_degenerate_flag_rep(2, 1).rep);
        let g = grading(&cq);
        let full = FixedPoint::new(cq.segments().iter().map(|s| s.len()).collect());
        assert_eq!(cell_dim_elim(&cq, &g, &full).unwrap(), 0);
        assert_eq!(cell_dim_tangent(&cq, &g, &full), 0);
    }

    #[test]
    fn wrong_length_is_rejected() {
        let cq = two_points();
        let g = grading(&cq);
        assert!(cell_dim_elim(&cq, &g, &FixedPoint::new(vec![1])).is_err());
    }

    #[test]
    fn methods_agree_on_small_flags() {
        for (n, omega) in [(1, 1), (1, 2), (2, 1), (3, 1)] {
            let cq = arrange(&build_degenerate_flag_rep(n, omega).rep);
            let g = grading(&cq);
            let e = DimVector::constant(n, omega * n);
            for fp in enumerate_fixed_points(&cq, &e) {
                assert_eq!(
                    cell_dim_elim(&cq, &g, &fp).unwrap(),
                    cell_dim_tangent(&cq, &g, &fp),
                    "({n},{omega}) {fp:?}"
                );
            }
        }
    }
}
