use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    cell_dim_elim, cell_dim_tangent, enumerate_fixed_points, grading, CellDimMethod,
    CoefficientQuiver, FixedPoint, TorusGrading,
};
use crate::cyclic_rep::DimVector;
use crate::error::{Error, Result};

const CHUNK: usize = 4096;

/// `Σ_L q^{dim C(L)}`, coefficient `d` counting the cells of dimension `d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincarePolynomial {
    pub coeffs: Vec<u64>,
}

impl PoincarePolynomial {
    pub fn from_dims(dims: impl IntoIterator<Item = usize>) -> Self {
        let mut p = PoincarePolynomial::default();
        for d in dims {
            p.add_cell(d);
        }
        p
    }

    pub fn add_cell(&mut self, dim: usize) {
        if self.coeffs.len() <= dim {
            self.coeffs.resize(dim + 1, 0);
        }
        self.coeffs[dim] += 1;
    }

    fn merge(mut self, other: Self) -> Self {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0);
        }
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs) {
            *a += b;
        }
        self
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn eval(&self, q: &BigUint) -> BigUint {
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::from(0u32), |acc, &c| acc * q + BigUint::from(c))
    }

    pub fn eval_u64(&self, q: u64) -> BigUint {
        self.eval(&BigUint::from(q))
    }

    /// Number of cells, i.e. the value at `q = 1`.
    pub fn cell_count(&self) -> BigUint {
        self.coeffs.iter().map(|&c| BigUint::from(c)).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct")
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| {
                let coeff = if c == 1 && d > 0 { String::new() } else { c.to_string() };
                match d {
                    0 => coeff,
                    1 => format!("{coeff}q"),
                    _ => format!("{coeff}q^{d}"),
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn check_target(cq: &CoefficientQuiver, e: &DimVector) -> Result<()> {
    if e.n() != cq.n() {
        return Err(Error::VertexCountMismatch {
            expected: cq.n(),
            got: e.n(),
        });
    }
    Ok(())
}

fn dim_of(
    cq: &CoefficientQuiver,
    g: &TorusGrading,
    fp: &FixedPoint,
    method: CellDimMethod,
) -> Result<usize> {
    match method {
        CellDimMethod::Elim => cell_dim_elim(cq, g, fp),
        CellDimMethod::Tangent => Ok(cell_dim_tangent(cq, g, fp)),
    }
}

/// Every fixed point with its cell dimension, in enumeration order.
pub fn cell_dims(
    cq: &CoefficientQuiver,
    e: &DimVector,
    method: CellDimMethod,
) -> Result<Vec<(FixedPoint, usize)>> {
    check_target(cq, e)?;
    let g = grading(cq);
    enumerate_fixed_points(cq, e)
        .map(|fp| dim_of(cq, &g, &fp, method).map(|d| (fp, d)))
        .collect()
}

pub fn poincare_polynomial(cq: &CoefficientQuiver, e: &DimVector) -> Result<PoincarePolynomial> {
    poincare_polynomial_with(cq, e, CellDimMethod::Elim, None)
}

/// Poincaré polynomial with a chosen method, spread over `threads` workers
/// (all available cores for `None`). The result does not depend on the
/// thread count.
pub fn poincare_polynomial_with(
    cq: &CoefficientQuiver,
    e: &DimVector,
    method: CellDimMethod,
    threads: Option<usize>,
) -> Result<PoincarePolynomial> {
    check_target(cq, e)?;
    let g = grading(cq);
    if threads == Some(1) {
        let mut p = PoincarePolynomial::default();
        for fp in enumerate_fixed_points(cq, e) {
            p.add_cell(dim_of(cq, &g, &fp, method)?);
        }
        return Ok(p);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|err| Error::InvalidParameter(err.to_string()))?;
    pool.install(|| {
        let mut total = PoincarePolynomial::default();
        let mut stream = enumerate_fixed_points(cq, e);
        loop {
            let chunk: Vec<FixedPoint> = stream.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                return Ok(total);
            }
            let part = chunk
                .par_iter()
                .map(|fp| dim_of(cq, &g, fp, method).map(|d| PoincarePolynomial::from_dims([d])))
                .try_reduce(PoincarePolynomial::default, |a, b| Ok(a.merge(b)))?;
            total = total.merge(part);
        }
    })
}

/// Euler characteristic: the number of torus fixed points.
pub fn euler_characteristic(cq: &CoefficientQuiver, e: &DimVector) -> Result<BigUint> {
    check_target(cq, e)?;
    Ok(BigUint::from(enumerate_fixed_points(cq, e).count()))
}
