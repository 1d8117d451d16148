//! Affine Dellac configurations and their bijection with the cells of the
//! degenerate affine flag approximations.
//!
//! A configuration has `2n` rows and `n` columns drawn on a cylinder. Row `j`
//! has its separator on the boundary right of column `σ_j = (n - j) mod n`
//! (boundary `0` is boundary `n`). Rows `j` and `j + n` describe the two
//! segments ending over vertex `e_j = σ_j` (with `0 ↦ n`); the entry column is
//! the start vertex of the segment.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeff_quiver::FixedPoint;
use crate::cyclic_rep::{DimVector, IndecNilp, Vertex};
use crate::error::{Error, Result};

/// Corank tuple `c ∈ {1,2}^n`, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct CorankTuple {
    c: Vec<u8>,
}

impl CorankTuple {
    pub fn new(c: Vec<u8>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidParameter("empty corank tuple".into()));
        }
        if let Some(bad) = c.iter().find(|&&x| x != 1 && x != 2) {
            return Err(Error::InvalidParameter(format!("corank entry {bad} not in {{1,2}}")));
        }
        Ok(CorankTuple { c })
    }

    /// `(2, …, 2)`: the fully degenerate flag.
    pub fn full(n: usize) -> Self {
        CorankTuple { c: vec![2; n] }
    }

    /// `(1, …, 1)`: the non-degenerate flag.
    pub fn nondegenerate(n: usize) -> Self {
        CorankTuple { c: vec![1; n] }
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn at(&self, v: Vertex) -> u8 {
        self.c[v.residue()]
    }

    pub fn is_full(&self) -> bool {
        self.c.iter().all(|&x| x == 2)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.c
    }
}

impl TryFrom<Vec<u8>> for CorankTuple {
    type Error = Error;

    fn try_from(c: Vec<u8>) -> Result<Self> {
        CorankTuple::new(c)
    }
}

impl From<CorankTuple> for Vec<u8> {
    fn from(c: CorankTuple) -> Self {
        c.c
    }
}

impl FromStr for CorankTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::InvalidParameter(format!("bad corank entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CorankTuple::new(c)
    }
}

impl fmt::Display for CorankTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(u8::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DellacRow {
    pub col: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineDellacConfig {
    pub n: usize,
    pub omega: usize,
    pub rows: Vec<DellacRow>,
}

/// First violated condition of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    EntryRange { row: usize, k: usize },
    ZeroPlacement { row: usize, col: usize, expected: usize },
    ColumnCount { col: usize, count: usize },
    Sum { sum: usize, target: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EntryRange { row, k } => write!(f, "row {row}: entry {k} out of range"),
            Violation::ZeroPlacement { row, col, expected } => {
                write!(f, "row {row}: zero entry in column {col}, expected column {expected}")
            }
            Violation::ColumnCount { col, count } => {
                write!(f, "column {col} holds {count} entries instead of 2")
            }
            Violation::Sum { sum, target } => write!(f, "sum {sum} differs from {target}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub p: Vec<usize>,
    pub r: Vec<usize>,
    pub sum: usize,
    pub target: usize,
    pub violation: Option<Violation>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

fn separator(n: usize, row: usize) -> usize {
    (n - row % n) % n
}

/// End vertex label of rows `j` and `j + n`.
pub fn end_label(n: usize, row: usize) -> usize {
    match separator(n, row) {
        0 => n,
        s => s,
    }
}

/// Forced column of a zero entry in `row`.
pub fn zero_column(n: usize, row: usize) -> usize {
    end_label(n, row) % n + 1
}

fn position(n: usize, row: usize, r: DellacRow) -> usize {
    if r.k == 0 {
        0
    } else {
        (separator(n, row) + n - r.col % n) % n + 1
    }
}

fn length(n: usize, row: usize, r: DellacRow) -> usize {
    position(n, row, r) + n * r.k.saturating_sub(1)
}

impl AffineDellacConfig {
    pub fn new(n: usize, omega: usize, rows: Vec<DellacRow>) -> Result<Self> {
        let c = AffineDellacConfig { n, omega, rows };
        c.check_shape()?;
        Ok(c)
    }

    fn check_shape(&self) -> Result<()> {
        if self.n == 0 || self.omega == 0 {
            return Err(Error::MalformedConfig("n and omega must be positive".into()));
        }
        if self.rows.len() != 2 * self.n {
            return Err(Error::MalformedConfig(format!(
                "{} rows, expected {}",
                self.rows.len(),
                2 * self.n
            )));
        }
        if let Some((j, r)) = self
            .rows
            .iter()
            .enumerate()
            .find(|(_, r)| r.col == 0 || r.col > self.n)
        {
            return Err(Error::MalformedConfig(format!(
                "row {}: column {} out of range 1..={}",
                j + 1,
                r.col,
                self.n
            )));
        }
        Ok(())
    }

    pub fn row(&self, j: usize) -> DellacRow {
        self.rows[j - 1]
    }

    /// `p_j`: steps from the separator to the entry going left, 0 for a zero entry.
    pub fn p_of_row(&self, j: usize) -> usize {
        position(self.n, j, self.row(j))
    }

    /// `r_j = max(k_j - 1, 0)`.
    pub fn r_of_row(&self, j: usize) -> usize {
        self.row(j).k.saturating_sub(1)
    }

    pub fn sum(&self) -> usize {
        (1..=2 * self.n).map(|j| length(self.n, j, self.row(j))).sum()
    }

    pub fn validate(&self) -> Result<Validation> {
        self.check_shape()?;
        let n = self.n;
        let p: Vec<usize> = (1..=2 * n).map(|j| self.p_of_row(j)).collect();
        let r: Vec<usize> = (1..=2 * n).map(|j| self.r_of_row(j)).collect();
        let sum = self.sum();
        let target = self.omega * n * n;

        let violation = (|| {
            for (j, row) in self.rows.iter().enumerate() {
                if row.k > self.omega {
                    return Some(Violation::EntryRange { row: j + 1, k: row.k });
                }
            }
            for (j, row) in self.rows.iter().enumerate() {
                let expected = zero_column(n, j + 1);
                if row.k == 0 && row.col != expected {
                    return Some(Violation::ZeroPlacement {
                        row: j + 1,
                        col: row.col,
                        expected,
                    });
                }
            }
            for col in 1..=n {
                let count = self.rows.iter().filter(|r| r.col == col).count();
                if count != 2 {
                    return Some(Violation::ColumnCount { col, count });
                }
            }
            (sum != target).then_some(Violation::Sum { sum, target })
        })();
        Ok(Validation {
            p,
            r,
            sum,
            target,
            violation,
        })
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok_and(|v| v.is_valid())
    }

    fn ensure_valid(&self) -> Result<()> {
        let v = self.validate()?;
        match v.violation {
            None => Ok(()),
            Some(why) => Err(Error::InvalidConfig(why.to_string())),
        }
    }

    /// Segment lengths `ℓ_j = p_j + n r_j`, by row.
    pub fn to_length_tuple(&self) -> Result<Vec<usize>> {
        self.ensure_valid()?;
        Ok((1..=2 * self.n).map(|j| length(self.n, j, self.row(j))).collect())
    }

    pub fn from_length_tuple(n: usize, omega: usize, lengths: &[usize]) -> Result<Self> {
        if n == 0 || omega == 0 {
            return Err(Error::InvalidParameter("n and omega must be positive".into()));
        }
        if lengths.len() != 2 * n {
            return Err(Error::NotACell(format!("{} lengths, expected {}", lengths.len(), 2 * n)));
        }
        let bound = omega * n;
        if let Some(l) = lengths.iter().find(|&&l| l > bound) {
            return Err(Error::NotACell(format!("length {l} exceeds {bound}")));
        }
        let mut dim = DimVector::zeros(n);
        let mut rows = Vec::with_capacity(2 * n);
        for (idx, &l) in lengths.iter().enumerate() {
            let j = idx + 1;
            let end = Vertex::new(n, end_label(n, j))?;
            dim.add_assign(&IndecNilp::new(end, l).dim_vector());
            rows.push(if l == 0 {
                DellacRow {
                    col: zero_column(n, j),
                    k: 0,
                }
            } else {
                DellacRow {
                    col: IndecNilp::new(end, l).start().label(),
                    k: l.div_ceil(n),
                }
            });
        }
        if dim != DimVector::constant(n, bound) {
            return Err(Error::NotACell(format!("dimension vector {dim} is not ({bound},…)")));
        }
        let config = AffineDellacConfig { n, omega, rows };
        debug_assert!(config.is_valid());
        Ok(config)
    }

    /// The fixed point of the degenerate flag quiver (segments ordered by end
    /// vertex) labelled by this configuration.
    pub fn to_fixed_point(&self) -> Result<FixedPoint> {
        let lengths = self.to_length_tuple()?;
        let n = self.n;
        let mut suffix = vec![0; 2 * n];
        for j in 1..=n {
            let e = end_label(n, j) - 1;
            suffix[2 * e] = lengths[j - 1];
            suffix[2 * e + 1] = lengths[j + n - 1];
        }
        Ok(FixedPoint::new(suffix))
    }

    pub fn from_fixed_point(n: usize, omega: usize, fp: &FixedPoint) -> Result<Self> {
        if fp.suffix.len() != 2 * n {
            return Err(Error::NotACell(format!(
                "{} suffixes, expected {}",
                fp.suffix.len(),
                2 * n
            )));
        }
        let mut lengths = vec![0; 2 * n];
        for j in 1..=n {
            let e = end_label(n, j) - 1;
            lengths[j - 1] = fp.suffix[2 * e];
            lengths[j + n - 1] = fp.suffix[2 * e + 1];
        }
        Self::from_length_tuple(n, omega, &lengths)
    }

    /// Fixed point of `M_ω^c`; a vertex with `c_i = 1` carries a single
    /// segment of length `2ωn` whose suffix joins both rows of `i`.
    pub fn to_partial_fixed_point(&self, c: &CorankTuple) -> Result<FixedPoint> {
        if !self.is_c_degenerate(c)? {
            return Err(Error::InvalidConfig(format!("not {c}-degenerate")));
        }
        let lengths = self.to_length_tuple()?;
        let n = self.n;
        let mut by_end = vec![(0, 0); n];
        for j in 1..=n {
            by_end[end_label(n, j) - 1] = (lengths[j - 1], lengths[j + n - 1]);
        }
        let mut suffix = Vec::with_capacity(2 * n);
        for v in Vertex::all(n) {
            let (a, b) = by_end[v.residue()];
            if c.at(v) == 2 {
                suffix.extend([a, b]);
            } else {
                suffix.push(a + b);
            }
        }
        Ok(FixedPoint::new(suffix))
    }

    pub fn from_partial_fixed_point(n: usize, omega: usize, c: &CorankTuple, fp: &FixedPoint) -> Result<Self> {
        if c.n() != n {
            return Err(Error::VertexCountMismatch { expected: n, got: c.n() });
        }
        let bound = omega * n;
        let mut by_end = vec![(0, 0); n];
        let mut it = fp.suffix.iter().copied();
        let mut missing = || it.next().ok_or_else(|| Error::NotACell("too few suffixes".into()));
        for v in Vertex::all(n) {
            by_end[v.residue()] = if c.at(v) == 2 {
                (missing()?, missing()?)
            } else {
                let l = missing()?;
                (l.saturating_sub(bound), l.min(bound))
            };
        }
        if it.next().is_some() {
            return Err(Error::NotACell("too many suffixes".into()));
        }
        let mut lengths = vec![0; 2 * n];
        for j in 1..=n {
            let (a, b) = by_end[end_label(n, j) - 1];
            lengths[j - 1] = a;
            lengths[j + n - 1] = b;
        }
        Self::from_length_tuple(n, omega, &lengths)
    }

    /// `k_j > 0` implies `k_{j+n} = ω` and `p_{j+n} = n` for every `j ≤ n`
    /// whose end vertex has corank 1.
    pub fn is_c_degenerate(&self, c: &CorankTuple) -> Result<bool> {
        self.check_shape()?;
        if c.n() != self.n {
            return Err(Error::VertexCountMismatch {
                expected: self.n,
                got: c.n(),
            });
        }
        let n = self.n;
        Ok((1..=n).all(|j| {
            let e = Vertex::new(n, end_label(n, j)).expect("label in range");
            c.at(e) == 2
                || self.row(j).k == 0
                || (self.row(j + n).k == self.omega && self.p_of_row(j + n) == n)
        }))
    }

    /// Columns summed after filling the `p_j` boxes from the entry to the
    /// separator with `k_j` and every other box of the row with `r_j`.
    pub fn row_fill_dim_vector(&self) -> DimVector {
        let n = self.n;
        let mut dv = DimVector::zeros(n);
        for j in 1..=2 * n {
            let row = self.row(j);
            let p = self.p_of_row(j);
            let r = self.r_of_row(j);
            for x in dv.0.iter_mut() {
                *x += r;
            }
            for step in 0..p {
                dv.0[(row.col - 1 + step) % n] += row.k - r;
            }
        }
        dv
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: AffineDellacConfig = serde_json::from_str(s)?;
        c.check_shape()?;
        Ok(c)
    }

    /// Box diagram, `#` marking the separator of each row.
    pub fn render(&self) -> String {
        let n = self.n;
        let mut out = String::new();
        for j in 1..=2 * n {
            let sep = separator(n, j);
            let row = self.row(j);
            out.push(if sep == 0 { '#' } else { '|' });
            for col in 1..=n {
                if col == row.col {
                    out.push_str(&format!("{:^3}", row.k));
                } else {
                    out.push_str("   ");
                }
                out.push(if col == sep || (sep == 0 && col == n) { '#' } else { '|' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for AffineDellacConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// All valid configurations, lexicographic in `(k, col)` row by row.
pub struct DellacConfigs {
    n: usize,
    omega: usize,
    /// `options[j]`: admissible `(row, length)` choices for row `j`, in order.
    options: Vec<Vec<(DellacRow, usize)>>,
    choice: Vec<usize>,
    col_count: Vec<usize>,
    sum: usize,
    level: usize,
    started: bool,
    done: bool,
}

pub fn enumerate(n: usize, omega: usize) -> DellacConfigs {
    let options: Vec<Vec<(DellacRow, usize)>> = (1..=2 * n)
        .map(|j| {
            let mut opts = vec![(DellacRow { col: zero_column(n, j), k: 0 }, 0)];
            for k in 1..=omega {
                for col in 1..=n {
                    let r = DellacRow { col, k };
                    opts.push((r, length(n, j, r)));
                }
            }
            opts
        })
        .collect();
    DellacConfigs {
        n,
        omega,
        options,
        choice: vec![0; 2 * n],
        col_count: vec![0; n + 1],
        sum: 0,
        level: 0,
        started: false,
        done: n == 0 || omega == 0,
    }
}

impl DellacConfigs {
    fn fits(&self, level: usize, idx: usize) -> bool {
        let (row, len) = self.options[level][idx];
        let target = self.omega * self.n * self.n;
        let rows_left = 2 * self.n - level - 1;
        self.col_count[row.col] < 2
            && self.sum + len <= target
            && self.sum + len + rows_left * self.omega * self.n >= target
    }

    fn push(&mut self, level: usize, idx: usize, sign: bool) {
        let (row, len) = self.options[level][idx];
        if sign {
            self.col_count[row.col] += 1;
            self.sum += len;
        } else {
            self.col_count[row.col] -= 1;
            self.sum -= len;
        }
    }
}

impl Iterator for DellacConfigs {
    type Item = AffineDellacConfig;

    fn next(&mut self) -> Option<AffineDellacConfig> {
        if self.done {
            return None;
        }
        let depth = 2 * self.n;
        let mut start = 0;
        if self.started {
            self.level = depth - 1;
            self.push(self.level, self.choice[self.level], false);
            start = self.choice[self.level] + 1;
        }
        self.started = true;
        loop {
            let level = self.level;
            let found = (start..self.options[level].len()).find(|&i| self.fits(level, i));
            match found {
                Some(i) => {
                    self.choice[level] = i;
                    self.push(level, i, true);
                    if level + 1 == depth {
                        let rows = (0..depth).map(|j| self.options[j][self.choice[j]].0).collect();
                        return Some(AffineDellacConfig {
                            n: self.n,
                            omega: self.omega,
                            rows,
                        });
                    }
                    self.level += 1;
                    start = 0;
                }
                None => {
                    if level == 0 {
                        self.done = true;
                        return None;
                    }
                    self.level -= 1;
                    let prev = self.choice[self.level];
                    self.push(self.level, prev, false);
                    start = prev + 1;
                }
            }
        }
    }
}

pub fn enumerate_c_degenerate(n: usize, omega: usize, c: &CorankTuple) -> impl Iterator<Item = AffineDellacConfig> + '_ {
    enumerate(n, omega).filter(move |config| config.is_c_degenerate(c).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_example() -> AffineDellacConfig {
        let rows = [(3, 2), (2, 2), (4, 3), (1, 1), (2, 2), (3, 0), (4, 3), (1, 2)]
            .map(|(col, k)| DellacRow { col, k })
            .to_vec();
        AffineDellacConfig::new(4, 3, rows).unwrap()
    }

    #[test]
    fn paper_positions() {
        let c = paper_example();
        let p: Vec<_> = (1..=8).map(|j| c.p_of_row(j)).collect();
        assert_eq!(p, vec![1, 1, 2, 4, 2, 0, 2, 4]);
        let r: Vec<_> = (1..=8).map(|j| c.r_of_row(j)).collect();
        assert_eq!(r, vec![1, 1, 2, 0, 1, 0, 2, 1]);
        assert_eq!(c.p_of_row(4), 4);
    }

    #[test]
    fn paper_validates() {
        let c = paper_example();
        let v = c.validate().unwrap();
        assert!(v.is_valid(), "{:?}", v.violation);
        assert_eq!(v.sum, 48);
        assert_eq!(c.to_length_tuple().unwrap(), vec![5, 5, 10, 4, 6, 0, 10, 8]);
        assert_eq!(c.row_fill_dim_vector(), DimVector::constant(4, 12));
    }

    #[test]
    fn raised_entry_breaks_sum() {
        let mut c = paper_example();
        c.rows[0].k += 1;
        let v = c.validate().unwrap();
        assert!(matches!(v.violation, Some(Violation::Sum { .. })));
    }

    #[test]
    fn three_in_a_column() {
        let mut c = paper_example();
        c.rows[1].col = 3;
        let v = c.validate().unwrap();
        assert!(matches!(v.violation, Some(Violation::ColumnCount { col: 2, count: 1 })));
    }

    #[test]
    fn malformed_column() {
        let mut c = paper_example();
        c.rows[0].col = 5;
        assert!(matches!(c.validate(), Err(Error::MalformedConfig(_))));
        assert!(AffineDellacConfig::new(4, 3, vec![]).is_err());
    }

    #[test]
    fn zero_row_placement() {
        let mut c = paper_example();
        c.rows[5].col = 1;
        assert!(matches!(
            c.validate().unwrap().violation,
            Some(Violation::ZeroPlacement { row: 6, .. })
        ));
    }

    #[test]
    fn full_rows_have_full_entries() {
        let n = 3;
        let omega = 2;
        let mut lengths = vec![omega * n; n];
        lengths.extend(vec![0; n]);
        let c = AffineDellacConfig::from_length_tuple(n, omega, &lengths).unwrap();
        for j in 1..=n {
            assert_eq!(c.row(j).k, omega);
            assert_eq!(c.p_of_row(j), n);
            assert_eq!(c.row(j + n).k, 0);
        }
        assert_eq!(c.to_length_tuple().unwrap(), lengths);
    }

    #[test]
    fn length_round_trip() {
        let c = paper_example();
        let l = c.to_length_tuple().unwrap();
        assert_eq!(AffineDellacConfig::from_length_tuple(4, 3, &l).unwrap(), c);
        assert!(matches!(
            AffineDellacConfig::from_length_tuple(4, 3, &[12, 0, 0, 0, 0, 0, 0, 0]),
            Err(Error::NotACell(_))
        ));
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate(1, 1).count(), 2);
        assert!(enumerate(2, 1).all(|c| c.is_valid()));
        let all: Vec<_> = enumerate(2, 2).collect();
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| {
            let key = |c: &AffineDellacConfig| c.rows.iter().map(|r| (r.k, r.col)).collect::<Vec<_>>();
            key(a).cmp(&key(b))
        });
        assert_eq!(all, sorted);
    }

    #[test]
    fn c_degenerate_filters() {
        let full = CorankTuple::full(2);
        assert_eq!(enumerate_c_degenerate(2, 1, &full).count(), enumerate(2, 1).count());
        let none = CorankTuple::nondegenerate(2);
        assert!(enumerate_c_degenerate(2, 1, &none).count() < enumerate(2, 1).count());
    }

    #[test]
    fn render_marks_separator() {
        let text = paper_example().render();
        let first = text.lines().next().unwrap();
        assert_eq!(first, "|   |   | 2 #   |");
        let fourth = text.lines().nth(3).unwrap();
        assert_eq!(fourth, "# 1 |   |   |   #");
    }

    #[test]
    fn json_round_trip() {
        let c = paper_example();
        let s = c.to_json();
        assert!(s.starts_with(r#"{"n":4,"omega":3,"rows":[{"col":3,"k":2}"#));
        assert_eq!(AffineDellacConfig::from_json(&s).unwrap(), c);
    }

    #[test]
    fn corank_parse() {
        let c: CorankTuple = "1,2,2".parse().unwrap();
        assert_eq!(c.as_slice(), &[1, 2, 2]);
        assert!("1,3".parse::<CorankTuple>().is_err());
        assert_eq!(c.to_string(), "1,2,2");
    }
}
