use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Integer scalars for fraction-free elimination. Operations return `None`
/// on overflow.
trait Scalar: Clone + Sized {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// `a * x - b * y`
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Scalar for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        self.unsigned_abs().gcd(&other.unsigned_abs()) as i128
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Scalar for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
}

type Row<T> = Vec<(usize, T)>;

/// Divides out the content and makes the leading entry positive.
fn normalize<T: Scalar>(row: &mut Row<T>) -> Option<()> {
    let Some(first) = row.first().map(|(_, x)| x.clone()) else {
        return Some(());
    };
    let mut g = first.gcd(&first);
    for (_, x) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    let flip = first.is_negative();
    for (_, x) in row.iter_mut() {
        if !g.is_one() {
            *x = x.div_exact(&g);
        }
        if flip {
            *x = x.neg()?;
        }
    }
    Some(())
}

/// `y * row - x * pivot`, cancelling the common leading column.
fn reduce<T: Scalar>(row: &Row<T>, pivot: &Row<T>) -> Option<Row<T>> {
    let x = &row[0].1;
    let y = &pivot[0].1;
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, T::cross(y, &row[i - 1].1, x, &zero)?)
        } else if cj < ci {
            j += 1;
            (cj, T::cross(y, &zero, x, &pivot[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (ci, T::cross(y, &row[i - 1].1, x, &pivot[j - 1].1)?)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    normalize(&mut out)?;
    Some(out)
}

fn rank_with<T: Scalar>(rows: &[Vec<(usize, i64)>]) -> Option<usize> {
    let mut pivots: HashMap<usize, Row<T>> = HashMap::new();
    for input in rows {
        let mut row: Row<T> = input
            .iter()
            .filter(|(_, x)| *x != 0)
            .map(|&(c, x)| (c, T::from_i64(x)))
            .collect();
        row.sort_by_key(|e| e.0);
        normalize(&mut row)?;
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => row = reduce(&row, p)?,
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Rank of a sparse integer matrix given as `(column, value)` rows, by exact
/// fraction-free elimination. Falls back to big integers on overflow.
pub fn rank(rows: &[Vec<(usize, i64)>]) -> usize {
    rank_with::<i128>(rows).unwrap_or_else(|| rank_with::<BigInt>(rows).expect("big integers do not overflow"))
}

/// Dimension of the solution space of the homogeneous system in `vars` unknowns.
pub fn nullity(vars: usize, rows: Vec<Vec<(usize, i64)>>) -> usize {
    vars - rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &[&[i64]]) -> Vec<Vec<(usize, i64)>> {
        m.iter()
            .map(|r| r.iter().copied().enumerate().filter(|(_, x)| *x != 0).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&dense(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&dense(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(&dense(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&dense(&[&[2, 4, 6], &[1, 1, 1], &[3, 5, 7]])), 2);
        assert_eq!(nullity(3, dense(&[&[1, -1, 0], &[0, 1, -1]])), 1);
    }

    #[test]
    fn big_integer_fallback_agrees() {
        // Hilbert-like integer matrix with growing entries
        let m: Vec<Vec<(usize, i64)>> = (0..12)
            .map(|i| (0..12).map(|j| (j, ((i + 1) as i64).pow(j as u32 % 9) + j as i64)).collect())
            .collect();
        assert_eq!(rank_with::<BigInt>(&m), Some(rank(&m)));
    }
}
