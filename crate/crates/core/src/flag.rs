//! Finite approximations of the (partially) degenerate affine flag variety as
//! quiver Grassmannians, their irreducible components and grand Motzkin paths.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::coeff_quiver::{arrange, CoefficientQuiver};
use crate::cyclic_rep::{grassmannian_dim, DimVector, IndecNilp, NilpRep, Vertex};
use crate::dellac::CorankTuple;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "corank", rename_all = "snake_case")]
pub enum FlagKind {
    FullDegenerate,
    Partial(CorankTuple),
    Custom,
}

/// A representation together with the dimension vector of its Grassmannian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagApprox {
    pub n: usize,
    /// `None` for custom input.
    pub omega: Option<usize>,
    pub rep: NilpRep,
    pub e: DimVector,
    pub kind: FlagKind,
}

impl FlagApprox {
    pub fn coefficient_quiver(&self) -> CoefficientQuiver {
        arrange(&self.rep)
    }
}

fn check_sizes(n: usize, omega: usize) -> Result<()> {
    if n == 0 || omega == 0 {
        return Err(Error::InvalidParameter(format!(
            "n and omega must be positive (got n = {n}, omega = {omega})"
        )));
    }
    Ok(())
}

/// `⊕_i U(i; ωn) ⊗ C²` with `e = (ωn, …, ωn)`.
///
/// # Panics
/// If `n` or `omega` is zero.
pub fn build_degenerate_flag_rep(n: usize, omega: usize) -> FlagApprox {
    check_sizes(n, omega).expect("positive sizes");
    let len = omega * n;
    let rep = NilpRep::from_summands(n, Vertex::all(n).flat_map(|v| [IndecNilp::new(v, len); 2]));
    FlagApprox {
        n,
        omega: Some(omega),
        rep,
        e: DimVector::constant(n, len),
        kind: FlagKind::FullDegenerate,
    }
}

/// `M_ω^c`: over vertex `i` two summands `U(i; ωn)` if `c_i = 2`, one `U(i; 2ωn)` if `c_i = 1`.
pub fn build_partial_degeneration(n: usize, omega: usize, c: &CorankTuple) -> Result<FlagApprox> {
    check_sizes(n, omega)?;
    if c.n() != n {
        return Err(Error::VertexCountMismatch {
            expected: n,
            got: c.n(),
        });
    }
    let len = omega * n;
    let mut rep = NilpRep::new(n);
    for v in Vertex::all(n) {
        if c.at(v) == 2 {
            rep.insert(IndecNilp::new(v, len), 2);
        } else {
            rep.insert(IndecNilp::new(v, 2 * len), 1);
        }
    }
    Ok(FlagApprox {
        n,
        omega: Some(omega),
        rep,
        e: DimVector::constant(n, len),
        kind: if c.is_full() {
            FlagKind::FullDegenerate
        } else {
            FlagKind::Partial(c.clone())
        },
    })
}

pub fn build_custom(rep: NilpRep, e: DimVector) -> Result<FlagApprox> {
    if e.n() != rep.n() {
        return Err(Error::VertexCountMismatch {
            expected: rep.n(),
            got: e.n(),
        });
    }
    let dim = rep.dim_vector();
    if !e.le(&dim) {
        return Err(Error::DimensionMismatch(format!("e = {e} exceeds dim M = {dim}")));
    }
    Ok(FlagApprox {
        n: rep.n(),
        omega: None,
        rep,
        e,
        kind: FlagKind::Custom,
    })
}

/// `ωn²`.
pub fn flag_dimension(n: usize, omega: usize) -> usize {
    let d = omega * n * n;
    debug_assert_eq!(d, grassmannian_dim(&vec![1; n], &vec![1; n], omega));
    d
}

/// Label `p` of an irreducible component, `0 ≤ p_i ≤ d_i`, `Σ p_i = k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComponentLabel {
    pub p: Vec<usize>,
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.p.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Components of `Gr_e(X ⊕ Y)` for `X = ⊕ U_i(ωn)^{x_i}`, `Y = ⊕ U_i(ωn)^{y_i}`,
/// in lexicographic order of `p`, each of dimension `ω k (m - k)`.
pub fn irreducible_components(x_mult: &[usize], y_mult: &[usize], omega: usize) -> Result<Vec<ComponentLabel>> {
    let n = x_mult.len();
    if y_mult.len() != n {
        return Err(Error::VertexCountMismatch {
            expected: n,
            got: y_mult.len(),
        });
    }
    if n == 0 || omega == 0 {
        return Err(Error::InvalidParameter("n and omega must be positive".into()));
    }
    let bounds: Vec<usize> = (0..n).map(|i| y_mult[i] + x_mult[(i + 1) % n]).collect();
    let k: usize = x_mult.iter().sum();

    // suffix capacity for pruning
    let mut cap = vec![0; n + 1];
    for i in (0..n).rev() {
        cap[i] = cap[i + 1] + bounds[i];
    }
    let mut out = Vec::new();
    let mut p = vec![0; n];
    fn rec(i: usize, left: usize, bounds: &[usize], cap: &[usize], p: &mut [usize], out: &mut Vec<ComponentLabel>) {
        if i == p.len() {
            if left == 0 {
                out.push(ComponentLabel { p: p.to_vec() });
            }
            return;
        }
        for v in 0..=bounds[i].min(left) {
            if left - v > cap[i + 1] {
                continue;
            }
            p[i] = v;
            rec(i + 1, left - v, bounds, cap, p, out);
        }
        p[i] = 0;
    }
    rec(0, k, &bounds, &cap, &mut p, &mut out);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MotzkinStep {
    Down,
    Flat,
    Up,
}

impl MotzkinStep {
    pub fn delta(self) -> i64 {
        match self {
            MotzkinStep::Down => -1,
            MotzkinStep::Flat => 0,
            MotzkinStep::Up => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            MotzkinStep::Down => 'D',
            MotzkinStep::Flat => 'F',
            MotzkinStep::Up => 'U',
        }
    }
}

/// Steps `b_i = p_i - 1` of the grand Motzkin path of a flag component label.
pub fn grand_motzkin(label: &ComponentLabel) -> Result<Vec<MotzkinStep>> {
    let n = label.p.len();
    if label.p.iter().sum::<usize>() != n {
        return Err(Error::InvalidParameter(format!("{label} does not sum to n = {n}")));
    }
    label
        .p
        .iter()
        .map(|&x| match x {
            0 => Ok(MotzkinStep::Down),
            1 => Ok(MotzkinStep::Flat),
            2 => Ok(MotzkinStep::Up),
            _ => Err(Error::InvalidParameter(format!("{label} has an entry above 2"))),
        })
        .collect()
}

/// Inverse of [`grand_motzkin`].
pub fn component_of_path(path: &[MotzkinStep]) -> Result<ComponentLabel> {
    if path.iter().map(|s| s.delta()).sum::<i64>() != 0 {
        return Err(Error::InvalidParameter("path does not return to height 0".into()));
    }
    Ok(ComponentLabel {
        p: path.iter().map(|s| (s.delta() + 1) as usize).collect(),
    })
}

/// Number of grand Motzkin paths of length `n` (central trinomial coefficient).
pub fn count_grand_motzkin(n: usize) -> BigUint {
    // n T(n) = (2n - 1) T(n-1) + 3 (n-1) T(n-2)
    let mut prev = BigUint::from(1u32);
    let mut cur = BigUint::from(1u32);
    if n == 0 {
        return prev;
    }
    for m in 2..=n {
        let next = (BigUint::from(2 * m - 1) * &cur + BigUint::from(3 * (m - 1)) * &prev) / BigUint::from(m);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
