//! Coefficient rings, Laurent polynomials in `t^(1/2)`, rational functions
//! and determinants of polynomial matrices.

mod coeff;
pub(crate) mod dense;
mod laurent;
mod matrix;
mod rational;

pub use coeff::{Coeff, CoeffRing, DEFAULT_TOLERANCE};
pub use laurent::{HalfInt, HalfLaurent};
pub use matrix::{Matrix, PolyMatrix};
pub use rational::{Degrees, RationalFunction};
