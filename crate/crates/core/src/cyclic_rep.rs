//! Nilpotent representations of the equioriented cyclic quiver on `n` vertices.
//!
//! Indecomposables are stored in end-vertex labelling: `U(j; ℓ)` is the string
//! of length `ℓ` whose last basis vector lives over vertex `j`. The start
//! labelling `U_i(ℓ) = U(i + ℓ - 1; ℓ)` is available through
//! [`IndecNilp::from_start`] and [`IndecNilp::start`].
//!
//! Hom dimensions are computed from word combinatorics: for indecomposables of
//! lengths `ℓ` and `k`, `[U_i(ℓ), U_j(k)]` counts the occurrences of the end
//! vertex `j + k - 1` among the first `min(ℓ, k)` letters of the word of
//! `U_i(ℓ)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex of the cyclic quiver, stored as a residue `0..n` and displayed as `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    n: usize,
    res: usize,
}

impl Vertex {
    /// Vertex with the 1-based label `label`.
    pub fn new(n: usize, label: usize) -> Result<Self> {
        if n == 0 || label == 0 || label > n {
            return Err(Error::VertexOutOfRange {
                label: label as i64,
                n,
            });
        }
        Ok(Vertex { n, res: label - 1 })
    }

    pub fn from_residue(n: usize, res: usize) -> Self {
        assert!(n > 0, "cyclic quiver needs at least one vertex");
        Vertex { n, res: res % n }
    }

    /// Reduces an arbitrary integer label mod `n` (so `0` is vertex `n`).
    pub fn wrap(n: usize, label: i64) -> Self {
        assert!(n > 0, "cyclic quiver needs at least one vertex");
        let res = (label - 1).rem_euclid(n as i64) as usize;
        Vertex { n, res }
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn residue(self) -> usize {
        self.res
    }

    pub fn label(self) -> usize {
        self.res + 1
    }

    pub fn offset(self, by: i64) -> Self {
        let res = (self.res as i64 + by).rem_euclid(self.n as i64) as usize;
        Vertex { n: self.n, res }
    }

    pub fn succ(self) -> Self {
        self.offset(1)
    }

    pub fn pred(self) -> Self {
        self.offset(-1)
    }

    /// `(self - other) mod n`, in `0..n`.
    pub fn diff(self, other: Vertex) -> usize {
        debug_assert_eq!(self.n, other.n);
        (self.res + self.n - other.res) % self.n
    }

    pub fn all(n: usize) -> impl Iterator<Item = Vertex> {
        (0..n).map(move |res| Vertex { n, res })
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The word `i, i+1, …, i+ℓ-1` of a string representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub start: Vertex,
    pub len: usize,
}

impl Word {
    pub fn new(start: Vertex, len: usize) -> Self {
        Word { start, len }
    }

    pub fn letters(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.len).map(move |t| self.start.offset(t as i64))
    }

    pub fn last(&self) -> Option<Vertex> {
        (self.len > 0).then(|| self.start.offset(self.len as i64 - 1))
    }

    /// Number of occurrences of `v` in the word.
    pub fn repetitions(&self, v: Vertex) -> usize {
        let n = self.start.n();
        let full = self.len / n;
        let rest = self.len % n;
        full + usize::from(v.diff(self.start) < rest)
    }

    /// First `m` letters (the whole word if `m >= len`).
    pub fn truncate(&self, m: usize) -> Word {
        Word {
            start: self.start,
            len: self.len.min(m),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.letters() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Indecomposable nilpotent representation `U(end; len)`.
///
/// `len == 0` is the zero representation; it only appears inside length
/// tuples of fixed points, never inside a [`NilpRep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndecNilp {
    pub end: Vertex,
    pub len: usize,
}

impl IndecNilp {
    pub fn new(end: Vertex, len: usize) -> Self {
        IndecNilp { end, len }
    }

    /// Start-labelled constructor `U_start(len)`.
    pub fn from_start(start: Vertex, len: usize) -> Self {
        IndecNilp {
            end: start.offset(len as i64 - 1),
            len,
        }
    }

    pub fn n(&self) -> usize {
        self.end.n()
    }

    /// Start vertex `end - len + 1`. For the zero representation this is
    /// `end + 1`, matching the convention that an empty segment starts over
    /// the vertex after its end.
    pub fn start(&self) -> Vertex {
        self.end.offset(1 - self.len as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.len == 0
    }

    pub fn word(&self) -> Result<Word> {
        if self.len == 0 {
            return Err(Error::ZeroRepresentation);
        }
        Ok(Word::new(self.start(), self.len))
    }

    pub fn dim_vector(&self) -> DimVector {
        let mut dv = DimVector::zeros(self.n());
        if self.len > 0 {
            let w = Word::new(self.start(), self.len);
            for v in Vertex::all(self.n()) {
                dv.0[v.residue()] = w.repetitions(v);
            }
        }
        dv
    }
}

impl fmt::Display for IndecNilp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U({};{})", self.end, self.len)
    }
}

pub fn word_of(u: &IndecNilp) -> Result<Word> {
    u.word()
}

pub fn repetitions(w: &Word, v: Vertex) -> usize {
    w.repetitions(v)
}

/// Dimension vector indexed by vertex residue.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn constant(n: usize, value: usize) -> Self {
        DimVector(vec![value; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn add_assign(&mut self, other: &DimVector) {
        assert_eq!(self.n(), other.n(), "dimension vectors over different quivers");
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.n() == other.n() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Index<Vertex> for DimVector {
    type Output = usize;

    fn index(&self, v: Vertex) -> &usize {
        &self.0[v.residue()]
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// A nilpotent representation as a multiset of indecomposables with positive length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilpRep {
    n: usize,
    summands: BTreeMap<IndecNilp, usize>,
}

impl NilpRep {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "cyclic quiver needs at least one vertex");
        NilpRep {
            n,
            summands: BTreeMap::new(),
        }
    }

    pub fn from_summands<I: IntoIterator<Item = IndecNilp>>(n: usize, items: I) -> Self {
        let mut rep = NilpRep::new(n);
        for u in items {
            rep.insert(u, 1);
        }
        rep
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `mult` copies of `u`. Zero-length summands are ignored.
    pub fn insert(&mut self, u: IndecNilp, mult: usize) {
        assert_eq!(u.n(), self.n, "summand lives on a different quiver");
        if u.len == 0 || mult == 0 {
            return;
        }
        *self.summands.entry(u).or_insert(0) += mult;
    }

    /// Removes one copy of `u`; returns false if it was absent.
    pub fn remove_one(&mut self, u: &IndecNilp) -> bool {
        match self.summands.get_mut(u) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.summands.remove(u);
                true
            }
            None => false,
        }
    }

    pub fn direct_sum(&self, other: &NilpRep) -> NilpRep {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (u, m) in other.iter() {
            out.insert(u, m);
        }
        out
    }

    /// `(summand, multiplicity)` in canonical `(end, len)` order.
    pub fn iter(&self) -> impl Iterator<Item = (IndecNilp, usize)> + '_ {
        self.summands.iter().map(|(u, m)| (*u, *m))
    }

    /// Every copy of every summand, in canonical order.
    pub fn expanded(&self) -> impl Iterator<Item = IndecNilp> + '_ {
        self.iter()
            .flat_map(|(u, m)| std::iter::repeat_n(u, m))
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn num_summands(&self) -> usize {
        self.summands.values().sum()
    }

    /// Nilpotency parameter: the maximal summand length (0 when empty).
    pub fn nilpotency(&self) -> usize {
        self.summands.keys().map(|u| u.len).max().unwrap_or(0)
    }

    pub fn multiplicity(&self, u: &IndecNilp) -> usize {
        self.summands.get(u).copied().unwrap_or(0)
    }

    pub fn dim_vector(&self) -> DimVector {
        let mut dv = DimVector::zeros(self.n);
        for (u, m) in self.iter() {
            let d = u.dim_vector();
            for (a, b) in dv.0.iter_mut().zip(&d.0) {
                *a += m * b;
            }
        }
        dv
    }

    pub fn to_file(&self) -> NilpRepFile {
        NilpRepFile {
            n: self.n,
            summands: self
                .iter()
                .map(|(u, m)| SummandEntry {
                    end: u.end.label(),
                    len: u.len,
                    mult: m,
                })
                .collect(),
        }
    }

    pub fn from_file(file: &NilpRepFile) -> Result<Self> {
        if file.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        let mut rep = NilpRep::new(file.n);
        for s in &file.summands {
            let end = Vertex::new(file.n, s.end)?;
            if s.len == 0 {
                return Err(Error::InvalidParameter(format!(
                    "summand ending at {} has zero length",
                    s.end
                )));
            }
            if s.mult == 0 {
                return Err(Error::InvalidParameter(format!(
                    "summand U({};{}) has zero multiplicity",
                    s.end, s.len
                )));
            }
            rep.insert(IndecNilp::new(end, s.len), s.mult);
        }
        Ok(rep)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: NilpRepFile = serde_json::from_str(s)?;
        NilpRep::from_file(&file)
    }
}

impl fmt::Display for NilpRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (u, m) in self.iter() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{u}")?;
            } else {
                write!(f, "{u}^{m}")?;
            }
        }
        Ok(())
    }
}

/// On-disk form of a [`NilpRep`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpRepFile {
    pub n: usize,
    pub summands: Vec<SummandEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandEntry {
    pub end: usize,
    pub len: usize,
    pub mult: usize,
}

/// `dim Hom(a, b)` for indecomposables; zero if either is the zero representation.
pub fn hom_dim_indec(a: &IndecNilp, b: &IndecNilp) -> usize {
    if a.len == 0 || b.len == 0 {
        return 0;
    }
    let m = a.len.min(b.len);
    let wa = Word::new(a.start(), a.len);
    let wb = Word::new(b.start(), b.len);
    let truncated = wa.truncate(m).repetitions(b.end);
    debug_assert_eq!(
        truncated,
        wb.repetitions(a.start()).min(wa.repetitions(b.end)),
        "word formulas disagree for [{a}, {b}]"
    );
    truncated
}

pub fn hom_dim(a: &NilpRep, b: &NilpRep) -> usize {
    let mut total = 0;
    for (x, mx) in a.iter() {
        for (y, my) in b.iter() {
            total += mx * my * hom_dim_indec(&x, &y);
        }
    }
    total
}

/// `[m, U_start(bound)]`, read off the dimension vector at `start + bound - 1`.
pub fn top_hom_dim(m: &NilpRep, start: Vertex, bound: usize) -> Result<usize> {
    if bound == 0 {
        return Err(Error::InvalidParameter("nilpotency bound must be positive".into()));
    }
    if let Some(len) = m.iter().map(|(u, _)| u.len).find(|&l| l > bound) {
        return Err(Error::ExceedsNilpotencyBound { len, bound });
    }
    let value = m.dim_vector()[start.offset(bound as i64 - 1)];
    debug_assert_eq!(
        value,
        hom_dim(m, &NilpRep::from_summands(m.n(), [IndecNilp::from_start(start, bound)]))
    );
    Ok(value)
}

pub fn dim_vector(m: &NilpRep) -> DimVector {
    m.dim_vector()
}

/// Dimension of the isomorphism stratum of `u` inside a quiver Grassmannian of `m`:
/// `[u, m] - [u, u]`. Realizability of `u` as a subrepresentation is not checked.
pub fn stratum_dim(u: &NilpRep, m: &NilpRep) -> i64 {
    hom_dim(u, m) as i64 - hom_dim(u, u) as i64
}

/// `ω k (m - k)` with `k = Σ x_i`, `m = Σ (x_i + y_i)`.
pub fn grassmannian_dim(x_mult: &[usize], y_mult: &[usize], omega: usize) -> usize {
    let k: usize = x_mult.iter().sum();
    let m: usize = k + y_mult.iter().sum::<usize>();
    omega * k * (m - k)
}

/// Offset `t` at which `second` can be glued onto `first`, if admissible.
///
/// `t` is the position of `second`'s start inside the word of `first`
/// extended by one letter (`1 <= t <= len(first)`); the overlap has length
/// `len(first) - t`, which must be shorter than `second`, and the glued word
/// has `t + len(second) <= bound` letters.
fn glue_offset(first: &IndecNilp, second: &IndecNilp, bound: usize) -> Option<usize> {
    let n = first.n();
    let t0 = match second.start().diff(first.start()) {
        0 => n,
        t => t,
    };
    (t0..=first.len)
        .step_by(n)
        .find(|&t| first.len - t < second.len && t + second.len <= bound)
}

/// One gluing move: replaces two short summands `U_i(ℓ)`, `U_j(k)` by the
/// glued string `U_i(t + k)` and the overlap `U_j(ℓ - t)`.
///
/// Pairs are scanned in canonical `(end, len)` order; the first admissible
/// pair wins.
pub fn glue_step(u: &NilpRep, bound: usize) -> Result<NilpRep> {
    let n = u.n();
    if bound == 0 || !bound.is_multiple_of(n) {
        return Err(Error::BoundNotMultiple { bound, n });
    }
    if let Some(len) = u.iter().map(|(s, _)| s.len).find(|&l| l > bound) {
        return Err(Error::ExceedsNilpotencyBound { len, bound });
    }
    if !u.dim_vector().is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let short: Vec<IndecNilp> = u.expanded().filter(|s| s.len < bound).collect();
    if short.is_empty() {
        return Err(Error::AlreadyMaximal);
    }
    for (a, first) in short.iter().enumerate() {
        for (b, second) in short.iter().enumerate() {
            if a == b {
                continue;
            }
            let Some(t) = glue_offset(first, second, bound) else {
                continue;
            };
            let mut out = u.clone();
            out.remove_one(first);
            out.remove_one(second);
            out.insert(IndecNilp::from_start(first.start(), t + second.len), 1);
            out.insert(IndecNilp::from_start(second.start(), first.len - t), 1);
            return Ok(out);
        }
    }
    Err(Error::NoAdmissiblePair)
}

/// Applies [`glue_step`] until no short summand is left. Returns the final
/// representation and the number of steps taken.
pub fn glue_to_fixpoint(u: &NilpRep, bound: usize) -> Result<(NilpRep, usize)> {
    let mut current = u.clone();
    let mut steps = 0;
    loop {
        match glue_step(&current, bound) {
            Ok(next) => {
                current = next;
                steps += 1;
            }
            Err(Error::AlreadyMaximal) => return Ok((current, steps)),
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, label: usize) -> Vertex {
        Vertex::new(n, label).unwrap()
    }

    fn us(n: usize, start: usize, len: usize) -> IndecNilp {
        IndecNilp::from_start(v(n, start), len)
    }

    #[test]
    fn vertex_arithmetic_wraps() {
        let a = v(4, 1);
        assert_eq!(a.pred().label(), 4);
        assert_eq!(a.offset(-5).label(), 4);
        assert_eq!(v(4, 4).succ().label(), 1);
        assert_eq!(v(4, 1).diff(v(4, 3)), 2);
        assert_eq!(Vertex::wrap(4, 0).label(), 4);
        assert_eq!(Vertex::wrap(4, -3).label(), 1);
        assert!(Vertex::new(4, 5).is_err());
        assert!(Vertex::new(4, 0).is_err());
    }

    #[test]
    fn labellings_are_inverse() {
        for n in 1..5 {
            for e in Vertex::all(n) {
                for len in 1..12 {
                    let u = IndecNilp::new(e, len);
                    assert_eq!(IndecNilp::from_start(u.start(), len), u);
                }
            }
        }
    }

    #[test]
    fn words() {
        let w = us(4, 3, 5).word().unwrap();
        assert_eq!(w.to_string(), "3,4,1,2,3");
        let w = IndecNilp::new(v(2, 1), 1).word().unwrap();
        assert_eq!(w.to_string(), "1");
        let w = IndecNilp::new(v(4, 1), 6).word().unwrap();
        assert_eq!(w.start.label(), 4);
        assert_eq!(w.to_string(), "4,1,2,3,4,1");
        assert!(matches!(
            IndecNilp::new(v(3, 2), 0).word(),
            Err(Error::ZeroRepresentation)
        ));
    }

    #[test]
    fn repetition_counts() {
        let w = us(4, 3, 5).word().unwrap();
        assert_eq!(w.repetitions(v(4, 3)), 2);
        assert_eq!(us(4, 3, 2).word().unwrap().repetitions(v(4, 1)), 0);
        assert_eq!(Word::new(v(1, 1), 7).repetitions(v(1, 1)), 7);
        for n in 1..6 {
            for len in 1..20 {
                for s in Vertex::all(n) {
                    let w = Word::new(s, len);
                    let total: usize = Vertex::all(n).map(|x| w.repetitions(x)).sum();
                    assert_eq!(total, len);
                    for x in Vertex::all(n) {
                        assert_eq!(w.repetitions(x), w.letters().filter(|&y| y == x).count());
                    }
                }
            }
        }
    }

    #[test]
    fn hom_dims_of_counterexample_summands() {
        assert_eq!(hom_dim_indec(&us(4, 3, 5), &us(4, 3, 5)), 2);
        assert_eq!(hom_dim_indec(&us(4, 3, 5), &us(4, 4, 5)), 1);
        assert_eq!(hom_dim_indec(&us(4, 4, 5), &us(4, 4, 5)), 2);
        for n in 1..5 {
            for i in 1..=n {
                assert_eq!(hom_dim_indec(&us(n, i, 1), &us(n, i, 1)), 1);
            }
        }
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(hom_dim_indec(&us(4, i, 4), &us(4, j, 4)), 1);
            }
        }
    }

    #[test]
    fn hom_dim_of_paper_pair() {
        let u = NilpRep::from_summands(4, [us(4, 2, 4), us(4, 2, 4), us(4, 3, 2)]);
        let x = NilpRep::from_summands(4, [us(4, 3, 5), us(4, 4, 5)]);
        assert_eq!(hom_dim(&u, &u), 5);
        assert_eq!(hom_dim(&x, &x), 6);
        assert_eq!(hom_dim(&NilpRep::new(4), &x), 0);
        assert_eq!(hom_dim(&x, &NilpRep::new(4)), 0);
    }

    #[test]
    fn zero_length_hom_is_zero() {
        let z = IndecNilp::new(v(3, 1), 0);
        assert_eq!(hom_dim_indec(&z, &us(3, 1, 4)), 0);
        assert_eq!(hom_dim_indec(&us(3, 1, 4), &z), 0);
    }

    #[test]
    fn top_hom() {
        let m = NilpRep::from_summands(2, [us(2, 1, 2), us(2, 2, 1)]);
        assert_eq!(m.dim_vector(), DimVector(vec![1, 2]));
        assert_eq!(top_hom_dim(&m, v(2, 1), 2).unwrap(), 2);
        assert_eq!(top_hom_dim(&NilpRep::new(3), v(3, 2), 3).unwrap(), 0);
        let m = NilpRep::from_summands(4, [us(4, 1, 4)]);
        for j in 1..=4 {
            assert_eq!(top_hom_dim(&m, v(4, j), 4).unwrap(), 1);
        }
        let long = NilpRep::from_summands(3, [us(3, 1, 5)]);
        assert!(matches!(
            top_hom_dim(&long, v(3, 1), 4),
            Err(Error::ExceedsNilpotencyBound { len: 5, bound: 4 })
        ));
    }

    #[test]
    fn dimension_vectors() {
        let u = NilpRep::from_summands(4, [IndecNilp::new(v(4, 3), 10)]);
        assert_eq!(u.dim_vector(), DimVector(vec![2, 3, 3, 2]));
        assert_eq!(NilpRep::new(3).dim_vector(), DimVector(vec![0, 0, 0]));
        let loop_rep = NilpRep::from_summands(1, [IndecNilp::new(v(1, 1), 7)]);
        assert_eq!(loop_rep.dim_vector(), DimVector(vec![7]));
    }

    #[test]
    fn strata() {
        let x = NilpRep::from_summands(4, [us(4, 3, 5), us(4, 4, 5)]);
        let y = NilpRep::from_summands(4, [us(4, 1, 5), us(4, 1, 5)]);
        assert_eq!(hom_dim(&x, &y), 4);
        assert_eq!(stratum_dim(&x, &x.direct_sum(&y)), 4);
        assert_eq!(stratum_dim(&x, &x), 0);
        assert_eq!(stratum_dim(&NilpRep::new(4), &x), 0);
    }

    #[test]
    fn grassmannian_dims() {
        for n in 1..6 {
            for omega in 1..4 {
                assert_eq!(grassmannian_dim(&vec![1; n], &vec![1; n], omega), omega * n * n);
            }
        }
        assert_eq!(grassmannian_dim(&[0, 0], &[3, 1], 2), 0);
        assert_eq!(grassmannian_dim(&[1; 4], &[1; 4], 3), 48);
    }

    #[test]
    fn glue_errors() {
        let full = NilpRep::from_summands(2, [us(2, 1, 2), us(2, 2, 2)]);
        assert!(matches!(glue_step(&full, 2), Err(Error::AlreadyMaximal)));
        let inhomog = NilpRep::from_summands(2, [us(2, 1, 1)]);
        assert!(matches!(glue_step(&inhomog, 2), Err(Error::NotHomogeneous)));
        assert!(matches!(
            glue_step(&full, 3),
            Err(Error::BoundNotMultiple { .. })
        ));
    }

    #[test]
    fn glue_step_on_split_string() {
        // U_1(4) split into U_1(2) + U_3(2) next to a full U_2(4)
        let u = NilpRep::from_summands(4, [us(4, 1, 2), us(4, 3, 2), us(4, 2, 4)]);
        assert!(u.dim_vector().is_homogeneous());
        let glued = glue_step(&u, 4).unwrap();
        assert_eq!(glued.dim_vector(), u.dim_vector());
        assert!(hom_dim(&glued, &glued) < hom_dim(&u, &u));
        let (fix, steps) = glue_to_fixpoint(&u, 4).unwrap();
        assert!(steps >= 1);
        assert!(fix.iter().all(|(s, _)| s.len == 4));
        assert_eq!(hom_dim(&fix, &fix), fix.num_summands().pow(2));
    }

    #[test]
    fn json_round_trip_and_canonical_order() {
        let json = r#"{"n":3,"summands":[{"end":2,"len":4,"mult":1},{"end":1,"len":2,"mult":2},{"end":2,"len":4,"mult":1}]}"#;
        let rep = NilpRep::from_json(json).unwrap();
        assert_eq!(
            rep.to_json(),
            r#"{"n":3,"summands":[{"end":1,"len":2,"mult":2},{"end":2,"len":4,"mult":2}]}"#
        );
        assert_eq!(NilpRep::from_json(&rep.to_json()).unwrap(), rep);
        assert!(NilpRep::from_json(r#"{"n":3,"summands":[{"end":4,"len":1,"mult":1}]}"#).is_err());
        assert!(NilpRep::from_json(r#"{"n":3,"summands":[{"end":1,"len":0,"mult":1}]}"#).is_err());
    }
}
