//! Arranged coefficient quivers of nilpotent representations and their torus grading.
//!
//! Every indecomposable summand `U(j; ℓ)` contributes one segment: a chain of
//! `ℓ` points, one per letter of its word, joined by the arrows of the cyclic
//! quiver. Over each vertex the points are stacked in rows so that
//!
//! * the `d_i` segments ending over `i` occupy the bottom `d_i` rows, longest on top,
//! * the remaining points sit above them, ordered by their distance to the end
//!   of their segment (farther means higher), ties broken by segment length.
//!
//! With this order two segments never cross, and the grading built in
//! [`grading`] is strictly increasing down every column.
//!
//! Rows are 0-based in this module; row `r` is the basis vector `v_{r+1}`.

mod cells;
mod draw;
mod fixed_points;
mod poincare;

use crate::cyclic_rep::{DimVector, IndecNilp, NilpRep, Vertex};

pub use cells::{cell_dim_elim, cell_dim_tangent, CellDimMethod};
pub use draw::{to_dot, to_svg};
pub use fixed_points::{enumerate_fixed_points, FixedPoint, FixedPoints};
pub use poincare::{
    cell_dims, euler_characteristic, poincare_polynomial, poincare_polynomial_with,
    PoincarePolynomial,
};

/// One segment of the coefficient quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub summand: IndecNilp,
    /// `rows[p]` is the row of the point at position `p` (0 = start, `len-1` = end).
    pub rows: Vec<usize>,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn end(&self) -> Vertex {
        self.summand.end
    }

    pub fn start(&self) -> Vertex {
        self.summand.start()
    }

    /// Vertex carrying the point at position `pos`.
    pub fn vertex_at(&self, pos: usize) -> Vertex {
        self.start().offset(pos as i64)
    }
}

/// Location of a point inside the segment list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointRef {
    pub segment: usize,
    pub pos: usize,
}

#[derive(Clone, Debug)]
pub struct CoefficientQuiver {
    n: usize,
    rep: NilpRep,
    segments: Vec<Segment>,
    /// `columns[v][row]` locates the point in row `row` over vertex `v`.
    columns: Vec<Vec<PointRef>>,
    end_counts: Vec<usize>,
}

impl CoefficientQuiver {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rep(&self) -> &NilpRep {
        &self.rep
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// `m_i`: number of points over vertex `v`.
    pub fn point_count(&self, v: Vertex) -> usize {
        self.columns[v.residue()].len()
    }

    pub fn point_counts(&self) -> DimVector {
        DimVector(self.columns.iter().map(Vec::len).collect())
    }

    /// `d_i`: number of segments ending over vertex `v`.
    pub fn end_count(&self, v: Vertex) -> usize {
        self.end_counts[v.residue()]
    }

    /// `d_{i,ℓ}`: number of segments of length `len` ending over `v`.
    pub fn end_count_of_len(&self, v: Vertex, len: usize) -> usize {
        self.rep.multiplicity(&IndecNilp::new(v, len))
    }

    pub fn point(&self, v: Vertex, row: usize) -> PointRef {
        self.columns[v.residue()][row]
    }

    pub fn column(&self, v: Vertex) -> &[PointRef] {
        &self.columns[v.residue()]
    }

    /// Row of the image of `(v, row)` under the arrow `v -> v+1`, if non-zero.
    pub fn succ_row(&self, v: Vertex, row: usize) -> Option<usize> {
        let p = self.point(v, row);
        let seg = &self.segments[p.segment];
        seg.rows.get(p.pos + 1).copied()
    }

    /// Number of arrows of the coefficient quiver.
    pub fn arrow_count(&self) -> usize {
        self.segments.iter().map(|s| s.len().saturating_sub(1)).sum()
    }
}

/// Builds the arranged coefficient quiver of `m`.
///
/// Segments are listed vertex by vertex (by end vertex), and over each end
/// vertex in row order, i.e. long to short.
pub fn arrange(m: &NilpRep) -> CoefficientQuiver {
    let n = m.n();
    let mut order: Vec<IndecNilp> = m.expanded().collect();
    // end vertex ascending, then long to short; equal summands keep insertion order
    order.sort_by(|a, b| a.end.cmp(&b.end).then(b.len.cmp(&a.len)));

    // (distance to end, length, segment index, position) for each point, per vertex
    let mut per_vertex: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); n];
    for (s, u) in order.iter().enumerate() {
        for pos in 0..u.len {
            let v = u.start().offset(pos as i64);
            per_vertex[v.residue()].push((u.len - 1 - pos, u.len, s, pos));
        }
    }

    let mut segments: Vec<Segment> = order
        .iter()
        .map(|u| Segment {
            summand: *u,
            rows: vec![0; u.len],
        })
        .collect();
    let mut columns = Vec::with_capacity(n);
    for mut pts in per_vertex {
        pts.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)).then(a.2.cmp(&b.2)));
        let mut col = Vec::with_capacity(pts.len());
        for (row, &(_, _, s, pos)) in pts.iter().enumerate() {
            segments[s].rows[pos] = row;
            col.push(PointRef { segment: s, pos });
        }
        columns.push(col);
    }

    let mut end_counts = vec![0; n];
    for u in &order {
        end_counts[u.end.residue()] += 1;
    }

    CoefficientQuiver {
        n,
        rep: m.clone(),
        segments,
        columns,
        end_counts,
    }
}

/// Integer weight of every point, indexed like [`Segment::rows`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusGrading {
    weights: Vec<Vec<i64>>,
}

impl TorusGrading {
    pub fn weight(&self, p: PointRef) -> i64 {
        self.weights[p.segment][p.pos]
    }

    pub fn weight_at(&self, cq: &CoefficientQuiver, v: Vertex, row: usize) -> i64 {
        self.weight(cq.point(v, row))
    }

    pub fn segment_weights(&self, segment: usize) -> &[i64] {
        &self.weights[segment]
    }
}

/// Torus grading of the arranged coefficient quiver.
///
/// Arrows out of vertex `i` have degree `d_i`. The first point over
/// `j0 = i0 - N + 1` gets weight 1, where `N` is the maximal length and `i0`
/// the vertex with the most length-`N` segments ending over it (smallest
/// vertex on ties). End points are then placed relative to the weight `k` of
/// the lowest non-trivial end point over `i0`, and every other point is
/// obtained by walking back along its segment.
pub fn grading(cq: &CoefficientQuiver) -> TorusGrading {
    let n = cq.n();
    let mut weights: Vec<Vec<i64>> = cq.segments.iter().map(|s| vec![0; s.len()]).collect();
    let big_n = cq.rep.nilpotency();
    if big_n == 0 {
        return TorusGrading { weights };
    }
    let deg = |v: Vertex| cq.end_count(v) as i64;

    let i0 = Vertex::all(n)
        .max_by(|a, b| {
            cq.end_count_of_len(*a, big_n)
                .cmp(&cq.end_count_of_len(*b, big_n))
                .then(b.residue().cmp(&a.residue()))
        })
        .expect("n > 0");
    let j0 = i0.offset(1 - big_n as i64);
    let w: i64 = 1 + (0..big_n.saturating_sub(1))
        .map(|l| deg(j0.offset(l as i64)))
        .sum::<i64>();

    let trivial_i0 = cq.end_count_of_len(i0, 1);
    let d_i0 = cq.end_count(i0);
    let r_i0 = cq.point_count(i0) - trivial_i0;
    // v_{r_i0} is the end point in slot d_i0 - d_{i0,1} over i0, weighted w + slot - 1
    let k: i64 = if r_i0 == 0 {
        0
    } else {
        w + (d_i0 - trivial_i0) as i64 - 1
    };

    for (s, seg) in cq.segments.iter().enumerate() {
        let v = seg.end();
        let q = cq.point_count(v) - cq.end_count(v);
        let slot = seg.rows[seg.len() - 1] - q + 1;
        let end_weight = k + slot as i64 + cq.end_count_of_len(v, 1) as i64 - cq.end_count(v) as i64;
        let ws = &mut weights[s];
        let last = seg.len() - 1;
        ws[last] = end_weight;
        for pos in (0..last).rev() {
            ws[pos] = ws[pos + 1] - deg(seg.vertex_at(pos));
        }
    }
    TorusGrading { weights }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::build_degenerate_flag_rep;

    fn v(n: usize, l: usize) -> Vertex {
        Vertex::new(n, l).unwrap()
    }

    #[test]
    fn two_isolated_points() {
        let m = NilpRep::from_summands(1, [IndecNilp::new(v(1, 1), 1); 2]);
        let cq = arrange(&m);
        assert_eq!(cq.point_counts(), DimVector(vec![2]));
        assert_eq!(cq.segments().len(), 2);
        assert_eq!(cq.segments()[0].rows, vec![0]);
        assert_eq!(cq.segments()[1].rows, vec![1]);
        assert_eq!(cq.arrow_count(), 0);
        let g = grading(&cq);
        assert!(g.weight_at(&cq, v(1, 1), 0) < g.weight_at(&cq, v(1, 1), 1));
    }

    #[test]
    fn degenerate_flag_n2() {
        let flag = build_degenerate_flag_rep(2, 1);
        let cq = arrange(&flag.rep);
        assert_eq!(cq.point_counts(), DimVector(vec![4, 4]));
        for x in Vertex::all(2) {
            assert_eq!(cq.end_count(x), 2);
        }
        for seg in cq.segments() {
            let end_row = *seg.rows.last().unwrap();
            assert!(end_row == 2 || end_row == 3, "ends occupy rows 3 and 4");
        }
    }

    #[test]
    fn flag_segments_shape() {
        for (n, omega) in [(1, 1), (2, 2), (3, 1), (4, 3)] {
            let cq = arrange(&build_degenerate_flag_rep(n, omega).rep);
            assert_eq!(cq.segments().len(), 2 * n);
            assert!(cq.segments().iter().all(|s| s.len() == omega * n));
            for x in Vertex::all(n) {
                assert_eq!(cq.end_count(x), 2);
            }
        }
    }

    #[test]
    fn flag_grading_increments_are_two() {
        for (n, omega) in [(1, 1), (2, 1), (3, 2)] {
            let cq = arrange(&build_degenerate_flag_rep(n, omega).rep);
            let g = grading(&cq);
            for s in 0..cq.segments().len() {
                for pair in g.segment_weights(s).windows(2) {
                    assert_eq!(pair[1] - pair[0], 2);
                }
            }
        }
    }

    #[test]
    fn first_point_over_j0_has_weight_one() {
        let m = NilpRep::from_summands(
            3,
            [
                IndecNilp::new(v(3, 2), 5),
                IndecNilp::new(v(3, 1), 2),
                IndecNilp::new(v(3, 3), 1),
            ],
        );
        let cq = arrange(&m);
        let g = grading(&cq);
        // i0 = 2, j0 = 2 - 5 + 1 = -2 = 1 (mod 3)
        assert_eq!(g.weight_at(&cq, v(3, 1), 0), 1);
    }
}
