//! Bundled knots and representations used by the examples, tests, CLI and
//! browser demo.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{Coeff, CoeffRing, Matrix};
use crate::error::{Error, Result};
use crate::freegroup::Word;
use crate::presentation::{wirtinger_from_pd, PdCode, Presentation};
use crate::twisted::Representation;

pub const TREFOIL_PD: &str = include_str!("../data/trefoil.pd");
pub const FIGURE_EIGHT_PD: &str = include_str!("../data/figure8.pd");
pub const KNOT_11N73: &str = include_str!("../data/11n73.pres");
pub const KNOT_11N73_F2_REP: &str = include_str!("../data/11n73_f2.rep");
pub const TREFOIL_TORUS: &str = include_str!("../data/trefoil_torus.pres");
pub const FIBERED_TREFOIL: &str = include_str!("../data/fibered_trefoil.pres");
pub const UNKNOT: &str = include_str!("../data/unknot.pres");
pub const TREFOIL_SL2_F7_REP: &str = include_str!("../data/trefoil_sl2_f7.rep");
pub const FIGURE_EIGHT_SL2_F7_REP: &str = include_str!("../data/figure8_sl2_f7.rep");

fn bundled(text: &str) -> Presentation {
    Presentation::parse(text).expect("bundled presentation parses")
}

fn from_pd(text: &str) -> Presentation {
    wirtinger_from_pd(&PdCode::parse(text).expect("bundled PD code parses")).expect("bundled PD code is a knot")
}

pub fn unknot() -> Presentation {
    bundled(UNKNOT)
}

/// Wirtinger presentation of the trefoil.
pub fn trefoil() -> Presentation {
    from_pd(TREFOIL_PD)
}

/// Wirtinger presentation of the figure-eight knot.
pub fn figure_eight() -> Presentation {
    from_pd(FIGURE_EIGHT_PD)
}

/// The trefoil group as a mapping torus, with the fiber generators first.
pub fn fibered_trefoil() -> Presentation {
    bundled(FIBERED_TREFOIL)
}

pub fn knot_11n73() -> Presentation {
    bundled(KNOT_11N73)
}

/// A representation of the 11n73 group onto `SL(2, F_2)`.
pub fn knot_11n73_rep() -> Representation {
    Representation::parse(KNOT_11N73_F2_REP).expect("bundled representation parses")
}

/// A parabolic representation of [`trefoil`] into `SL(2, F_7)`.
pub fn trefoil_rep() -> Representation {
    Representation::parse(TREFOIL_SL2_F7_REP).expect("bundled representation parses")
}

/// A parabolic representation of [`figure_eight`] into `SL(2, F_7)`.
pub fn figure_eight_rep() -> Representation {
    Representation::parse(FIGURE_EIGHT_SL2_F7_REP).expect("bundled representation parses")
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `<x, y | x^p y^-q>` for coprime `p, q >= 2`, with meridian `x^u y^v`
/// where `u q + v p = 1` and `0 < u < p`.
pub fn torus_knot(p: i64, q: i64) -> Result<Presentation> {
    if p < 2 || q < 2 || gcd(p, q) != 1 {
        return Err(Error::NotKnotGroup(format!("torus knot needs coprime p, q >= 2, got ({p}, {q})")));
    }
    let u = (1..p).find(|u| (u * q) % p == 1).expect("q is invertible mod p");
    let v = (1 - u * q) / p;
    let relator = Word::from_pairs(&[(0, p), (1, -q)]);
    let meridian = Word::from_pairs(&[(0, u), (1, v)]);
    Presentation::new(vec!["x".into(), "y".into()], vec![relator], meridian)
}

/// Pairs `(a, b)` with `0 < a < p`, `0 < b < q` and `a = b mod 2`, for
/// which [`torus_su2`] defines a representation.
pub fn torus_admissible(p: i64, q: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in 1..p {
        for b in 1..q {
            if (a - b) % 2 == 0 {
                out.push((a, b));
            }
        }
    }
    out
}

/// The `SU(2)` representation of [`torus_knot`]`(p, q)` with
/// `x -> diag(e^(i a pi/p), e^(-i a pi/p))` and `y` a rotation by
/// `b pi/q` about an axis tilted by `s pi`.
pub fn torus_su2(p: i64, q: i64, a: i64, b: i64, s: f64) -> Result<Representation> {
    if !torus_admissible(p, q).contains(&(a, b)) {
        return Err(Error::NotKnotGroup(format!("(a, b) = ({a}, {b}) is not admissible for ({p}, {q})")));
    }
    let ring = CoeffRing::approx_complex();
    let c = |z: Complex64| Coeff::Cx(z);
    let ex = Complex64::from_polar(1.0, a as f64 * PI / p as f64);
    let x = Matrix::new(ring, 2, 2, vec![c(ex), c(Complex64::new(0.0, 0.0)), c(Complex64::new(0.0, 0.0)), c(ex.conj())]);
    let (beta, sigma) = (b as f64 * PI / q as f64, s * PI);
    let diag = Complex64::new(beta.cos(), beta.sin() * sigma.cos());
    let off = beta.sin() * sigma.sin();
    let y = Matrix::new(ring, 2, 2, vec![c(diag), c(Complex64::new(off, 0.0)), c(Complex64::new(-off, 0.0)), c(diag.conj())]);
    Representation::new(ring, 2, BTreeMap::from([("x".to_string(), x), ("y".to_string(), y)]))
}

/// Closed form of the normalized invariant for [`torus_su2`], as a
/// function of `z = t^(1/2)`:
///
/// `(t^(pq/2) - (-1)^a t^(-pq/2))^2 / ((t^p - 2 cos(b pi/q) + t^-p) (t^q - 2 cos(a pi/p) + t^-q))`
pub fn torus_su2_closed_form(p: i64, q: i64, a: i64, b: i64, z: Complex64) -> Complex64 {
    let t = z * z;
    let sign = if a % 2 == 0 { 1.0 } else { -1.0 };
    let top = z.powi((p * q) as i32) - sign * z.powi(-(p * q) as i32);
    let left = t.powi(p as i32) - 2.0 * (b as f64 * PI / q as f64).cos() + t.powi(-p as i32);
    let right = t.powi(q as i32) - 2.0 * (a as f64 * PI / p as f64).cos() + t.powi(-q as i32);
    top * top / (left * right)
}
