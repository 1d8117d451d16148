//! Quiver Grassmannians for the equioriented cyclic quiver.
//!
//! * [`cyclic_rep`]: nilpotent representations, words and Hom dimensions.
//! * [`coeff_quiver`]: arranged coefficient quivers, torus fixed points, cells
//!   and Poincaré polynomials.
//! * [`flag`]: approximations of the (partially) degenerate affine flag variety.
//! * [`dellac`]: affine Dellac configurations.
//! * [`oracle`]: brute-force cross-checks.

pub mod cli;
pub mod coeff_quiver;
pub mod cyclic_rep;
pub mod dellac;
pub mod error;
pub mod flag;
pub mod oracle;

pub use error::{Error, Result};
