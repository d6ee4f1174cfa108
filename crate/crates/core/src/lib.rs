//! Normalized twisted Alexander invariants of knots.
//!
//! The pipeline runs from a finite presentation of a knot group and a
//! representation of it into `GL_n` of a coefficient ring, through Fox
//! calculus and polynomial determinants, to an invariant with no unit
//! ambiguity. On top of that sit the Conway polynomial, a fibering
//! obstruction and genus lower bounds.
//!
//! ```
//! use twisted_alexander::{algebra::CoeffRing, catalog, twisted};
//!
//! let p = catalog::trefoil();
//! let rho = twisted::Representation::trivial(&p, CoeffRing::Rationals);
//! let inv = twisted::normalized_invariant(&p, &rho).unwrap();
//! assert_eq!(inv.value().to_string(), "(t - 1 + t^-1)/(t^(1/2) - t^(-1/2))");
//! ```

pub mod algebra;
pub mod applications;
pub mod catalog;
pub mod error;
pub mod freegroup;
pub mod presentation;
pub mod twisted;

pub use error::{Error, Result};
