use serde::{Deserialize, Serialize};

use super::CoefficientQuiver;
use crate::cyclic_rep::{DimVector, IndecNilp, NilpRep, Vertex};

/// A torus fixed point: for every segment, the length of its marked suffix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedPoint {
    pub suffix: Vec<usize>,
}

impl FixedPoint {
    pub fn new(suffix: Vec<usize>) -> Self {
        FixedPoint { suffix }
    }

    pub fn is_valid_for(&self, cq: &CoefficientQuiver) -> bool {
        self.suffix.len() == cq.segments().len()
            && self
                .suffix
                .iter()
                .zip(cq.segments())
                .all(|(&c, s)| c <= s.len())
    }

    /// Whether the point at `pos` of `segment` is marked.
    pub fn is_marked(&self, cq: &CoefficientQuiver, segment: usize, pos: usize) -> bool {
        pos + self.suffix[segment] >= cq.segments()[segment].len()
    }

    pub fn is_marked_at(&self, cq: &CoefficientQuiver, v: Vertex, row: usize) -> bool {
        let p = cq.point(v, row);
        self.is_marked(cq, p.segment, p.pos)
    }

    /// Marked rows over `v`, ascending.
    pub fn marked_rows(&self, cq: &CoefficientQuiver, v: Vertex) -> Vec<usize> {
        (0..cq.point_count(v))
            .filter(|&r| self.is_marked_at(cq, v, r))
            .collect()
    }

    /// The marked subrepresentation `⊕ U(end(s); suffix[s])`.
    pub fn subrep(&self, cq: &CoefficientQuiver) -> NilpRep {
        let mut rep = NilpRep::new(cq.n());
        for (s, &c) in cq.segments().iter().zip(&self.suffix) {
            rep.insert(IndecNilp::new(s.end(), c), 1);
        }
        rep
    }

    /// The quotient `M / L`, spanned by the unmarked prefixes.
    pub fn quotient(&self, cq: &CoefficientQuiver) -> NilpRep {
        let mut rep = NilpRep::new(cq.n());
        for (s, &c) in cq.segments().iter().zip(&self.suffix) {
            let len = s.len() - c;
            rep.insert(IndecNilp::from_start(s.start(), len), 1);
        }
        rep
    }

    pub fn dim_vector(&self, cq: &CoefficientQuiver) -> DimVector {
        let mut dv = DimVector::zeros(cq.n());
        for (s, &c) in cq.segments().iter().zip(&self.suffix) {
            dv.add_assign(&IndecNilp::new(s.end(), c).dim_vector());
        }
        dv
    }

    /// Structural check: the marked point set is closed under every arrow.
    pub fn is_successor_closed(&self, cq: &CoefficientQuiver) -> bool {
        Vertex::all(cq.n()).all(|v| {
            (0..cq.point_count(v)).all(|r| {
                !self.is_marked_at(cq, v, r)
                    || cq
                        .succ_row(v, r)
                        .is_none_or(|r2| self.is_marked_at(cq, v.succ(), r2))
            })
        })
    }
}

/// Lexicographic stream of all fixed points with dimension vector `target`.
pub struct FixedPoints<'a> {
    cq: &'a CoefficientQuiver,
    target: Vec<usize>,
    /// `suffix_dims[s][c]`: dimension vector of the suffix of length `c` of segment `s`.
    suffix_dims: Vec<Vec<Vec<usize>>>,
    /// `capacity[s]`: sum of the full dimension vectors of segments `s..`.
    capacity: Vec<Vec<usize>>,
    used: Vec<usize>,
    suffix: Vec<usize>,
    level: usize,
    next_candidate: usize,
    state: StreamState,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum StreamState {
    Fresh,
    Running,
    Done,
}

/// Enumerates every successor closed subquiver with dimension vector `e`,
/// exactly once, in lexicographic order of the suffix tuple.
pub fn enumerate_fixed_points<'a>(cq: &'a CoefficientQuiver, e: &DimVector) -> FixedPoints<'a> {
    let n = cq.n();
    let segs = cq.segments();
    let suffix_dims: Vec<Vec<Vec<usize>>> = segs
        .iter()
        .map(|s| {
            (0..=s.len())
                .map(|c| IndecNilp::new(s.end(), c).dim_vector().0)
                .collect()
        })
        .collect();
    let mut capacity = vec![vec![0; n]; segs.len() + 1];
    for s in (0..segs.len()).rev() {
        let full = &suffix_dims[s][segs[s].len()];
        capacity[s] = capacity[s + 1].iter().zip(full).map(|(a, b)| a + b).collect();
    }
    let feasible_target = e.n() == n;
    FixedPoints {
        cq,
        target: e.0.clone(),
        suffix_dims,
        capacity,
        used: vec![0; n],
        suffix: vec![0; segs.len()],
        level: 0,
        next_candidate: 0,
        state: if feasible_target {
            StreamState::Fresh
        } else {
            StreamState::Done
        },
    }
}

impl FixedPoints<'_> {
    fn apply(&mut self, s: usize, c: usize, sign: bool) {
        for (u, d) in self.used.iter_mut().zip(&self.suffix_dims[s][c]) {
            if sign {
                *u += d;
            } else {
                *u -= d;
            }
        }
    }

    /// `Some(true)` if choosing `c` for segment `s` keeps the target reachable,
    /// `Some(false)` if not, `None` if `c` and every larger choice overshoot.
    fn check(&self, s: usize, c: usize) -> Option<bool> {
        let dims = &self.suffix_dims[s][c];
        let mut reachable = true;
        for i in 0..self.used.len() {
            let now = self.used[i] + dims[i];
            if now > self.target[i] {
                return None;
            }
            if self.target[i] - now > self.capacity[s + 1][i] {
                reachable = false;
            }
        }
        Some(reachable)
    }
}

impl Iterator for FixedPoints<'_> {
    type Item = FixedPoint;

    fn next(&mut self) -> Option<FixedPoint> {
        let count = self.suffix.len();
        match self.state {
            StreamState::Done => return None,
            StreamState::Fresh => {
                self.state = StreamState::Running;
                if count == 0 {
                    self.state = StreamState::Done;
                    return self
                        .target
                        .iter()
                        .all(|&x| x == 0)
                        .then(|| FixedPoint::new(Vec::new()));
                }
                self.level = 0;
                self.next_candidate = 0;
            }
            StreamState::Running => {
                // resume after the last emitted leaf
                self.level = count - 1;
                let c = self.suffix[self.level];
                self.apply(self.level, c, false);
                self.next_candidate = c + 1;
            }
        }

        loop {
            let s = self.level;
            let len = self.cq.segments()[s].len();
            let mut chosen = None;
            let mut c = self.next_candidate;
            while c <= len {
                match self.check(s, c) {
                    None => break,
                    Some(true) => {
                        chosen = Some(c);
                        break;
                    }
                    Some(false) => c += 1,
                }
            }
            match chosen {
                Some(c) => {
                    self.apply(s, c, true);
                    self.suffix[s] = c;
                    if s + 1 == count {
                        debug_assert_eq!(self.used, self.target);
                        return Some(FixedPoint::new(self.suffix.clone()));
                    }
                    self.level += 1;
                    self.next_candidate = 0;
                }
                None => {
                    if s == 0 {
                        self.state = StreamState::Done;
                        return None;
                    }
                    self.level -= 1;
                    let prev = self.suffix[self.level];
                    self.apply(self.level, prev, false);
                    self.next_candidate = prev + 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_quiver::arrange;
    use crate::flag::build_degenerate_flag_rep;

    /// Brute force over the full product of suffix ranges.
    fn brute_force(cq: &CoefficientQuiver, e: &DimVector) -> Vec<FixedPoint> {
        let lens: Vec<usize> = cq.segments().iter().map(|s| s.len()).collect();
        let mut out = Vec::new();
        let mut cur = vec![0; lens.len()];
        loop {
            let fp = FixedPoint::new(cur.clone());
            if &fp.dim_vector(cq) == e {
                out.push(fp);
            }
            let mut i = lens.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < lens[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    #[test]
    fn p1_has_two_fixed_points() {
        let cq = arrange(&build_degenerate_flag_rep(1, 1).rep);
        let fps: Vec<_> = enumerate_fixed_points(&cq, &DimVector(vec![1])).collect();
        assert_eq!(fps, vec![FixedPoint::new(vec![0, 1]), FixedPoint::new(vec![1, 0])]);
    }

    #[test]
    fn zero_target_has_one_fixed_point() {
        let cq = arrange(&build_degenerate_flag_rep(3, 1).rep);
        let fps: Vec<_> = enumerate_fixed_points(&cq, &DimVector::zeros(3)).collect();
        assert_eq!(fps, vec![FixedPoint::new(vec![0; 6])]);
    }

    #[test]
    fn infeasible_target_is_empty() {
        let cq = arrange(&build_degenerate_flag_rep(2, 1).rep);
        assert_eq!(enumerate_fixed_points(&cq, &DimVector(vec![5, 0])).count(), 0);
        assert_eq!(enumerate_fixed_points(&cq, &DimVector(vec![1])).count(), 0);
    }

    #[test]
    fn empty_rep() {
        let cq = arrange(&NilpRep::new(2));
        assert_eq!(enumerate_fixed_points(&cq, &DimVector::zeros(2)).count(), 1);
        assert_eq!(enumerate_fixed_points(&cq, &DimVector(vec![1, 0])).count(), 0);
    }

    #[test]
    fn matches_brute_force_on_small_instances() {
        let reps = [
            build_degenerate_flag_rep(2, 1).rep,
            build_degenerate_flag_rep(3, 1).rep,
            NilpRep::from_summands(
                3,
                [
                    IndecNilp::new(Vertex::new(3, 1).unwrap(), 4),
                    IndecNilp::new(Vertex::new(3, 2).unwrap(), 2),
                    IndecNilp::new(Vertex::new(3, 2).unwrap(), 1),
                    IndecNilp::new(Vertex::new(3, 3).unwrap(), 3),
                ],
            ),
        ];
        for rep in reps {
            let cq = arrange(&rep);
            let dim = rep.dim_vector();
            let mut targets = vec![DimVector::zeros(rep.n())];
            let mut e = DimVector::zeros(rep.n());
            loop {
                let mut i = 0;
                while i < e.n() && e.0[i] == dim.0[i] {
                    e.0[i] = 0;
                    i += 1;
                }
                if i == e.n() {
                    break;
                }
                e.0[i] += 1;
                targets.push(e.clone());
            }
            for e in targets {
                let fast: Vec<_> = enumerate_fixed_points(&cq, &e).collect();
                let slow = brute_force(&cq, &e);
                assert_eq!(fast, slow, "target {e}");
                assert!(fast.iter().all(|fp| fp.is_successor_closed(&cq)));
            }
        }
    }
}
