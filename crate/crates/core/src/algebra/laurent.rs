use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::coeff::{format_complex, Coeff, CoeffRing};
use crate::error::{Error, Result};

/// A half-integer, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Integer value, if whole.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn ceil(self) -> i64 {
        -(-self.0).div_euclid(2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// A Laurent polynomial in `t^(1/2)` over a [`CoeffRing`].
///
/// Exponents are stored doubled: key `e` is the monomial `t^(e/2)`. No zero
/// coefficient is ever stored.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfLaurent {
    ring: CoeffRing,
    terms: BTreeMap<i64, Coeff>,
}

impl HalfLaurent {
    pub fn zero(ring: CoeffRing) -> Self {
        HalfLaurent { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: CoeffRing) -> Self {
        HalfLaurent::constant(ring, ring.one())
    }

    pub fn constant(ring: CoeffRing, c: Coeff) -> Self {
        HalfLaurent::monomial(ring, c, 0)
    }

    /// `c * t^(doubled/2)`.
    pub fn monomial(ring: CoeffRing, c: Coeff, doubled: i64) -> Self {
        let mut p = HalfLaurent::zero(ring);
        p.add_term(doubled, c);
        p
    }

    /// `t^(doubled/2)`.
    pub fn t_pow(ring: CoeffRing, doubled: i64) -> Self {
        HalfLaurent::monomial(ring, ring.one(), doubled)
    }

    /// Builds from `(doubled exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, Coeff)>>(ring: CoeffRing, terms: I) -> Self {
        let mut p = HalfLaurent::zero(ring);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Integer-exponent polynomial from `(exponent of t, integer coefficient)` pairs.
    pub fn from_int_terms(ring: CoeffRing, terms: &[(i64, i64)]) -> Self {
        HalfLaurent::from_terms(ring, terms.iter().map(|&(e, c)| (2 * e, ring.from_i64(c))))
    }

    pub fn add_term(&mut self, doubled: i64, c: Coeff) {
        let ring = self.ring;
        let sum = match self.terms.remove(&doubled) {
            Some(old) => ring.add(&old, &c),
            None => c,
        };
        if !ring.is_zero(&sum) {
            self.terms.insert(doubled, sum);
        }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    /// Terms as `(doubled exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Coeff)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, doubled: i64) -> Coeff {
        self.terms.get(&doubled).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| self.ring.is_one(c))
    }

    /// Highest doubled exponent.
    pub fn highest(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest doubled exponent.
    pub fn lowest(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&Coeff> {
        self.terms.values().next()
    }

    /// True when every exponent is an integer power of `t`.
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    fn check_ring(&self, other: &HalfLaurent) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn try_add(&self, other: &HalfLaurent) -> Result<HalfLaurent> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &HalfLaurent) -> Result<HalfLaurent> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &HalfLaurent) -> Result<HalfLaurent> {
        self.check_ring(other)?;
        let ring = self.ring;
        let mut out = HalfLaurent::zero(ring);
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &other.terms {
                out.add_term(ea + eb, ring.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> HalfLaurent {
        let ring = self.ring;
        HalfLaurent::from_terms(ring, self.terms.iter().map(|(&e, v)| (e, ring.mul(v, c))))
    }

    /// Multiplies by `t^(doubled/2)`.
    pub fn shift(&self, doubled: i64) -> HalfLaurent {
        HalfLaurent { ring: self.ring, terms: self.terms.iter().map(|(&e, c)| (e + doubled, c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> HalfLaurent {
        (0..k).fold(HalfLaurent::one(self.ring), |acc, _| &acc * self)
    }

    /// The involution `t -> t^-1` combined with the coefficient involution.
    pub fn conjugate(&self) -> HalfLaurent {
        let ring = self.ring;
        HalfLaurent { ring, terms: self.terms.iter().map(|(&e, c)| (-e, ring.conj(c))).collect() }
    }

    /// Moves every coefficient into `target`.
    pub fn convert(&self, target: CoeffRing) -> Result<HalfLaurent> {
        let mut out = HalfLaurent::zero(target);
        for (&e, c) in &self.terms {
            out.add_term(e, target.convert(&self.ring, c)?);
        }
        Ok(out)
    }

    /// Value at `t = z^2`, i.e. `z` stands for `t^(1/2)`. `None` over prime fields.
    pub fn eval_sqrt(&self, z: Complex64) -> Option<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&e, c) in &self.terms {
            acc += self.ring.to_complex(c)? * z.powi(e as i32);
        }
        Some(acc)
    }

    /// Largest coefficient modulus; 0 for exact rings without a complex image.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().filter_map(|c| self.ring.to_complex(c)).map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Coefficient-wise comparison within the ring's tolerance.
    pub fn approx_eq(&self, other: &HalfLaurent) -> bool {
        match self.try_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    /// Same polynomial with every coefficient within `tol` of zero removed.
    pub fn pruned(&self, tol: f64) -> HalfLaurent {
        HalfLaurent {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| self.ring.to_complex(c).is_none_or(|z| z.norm() > tol))
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        let ring = self.ring;
        HalfLaurent { ring, terms: self.terms.iter().map(|(&e, c)| (e, ring.neg(c))).collect() }
    }
}

impl HalfLaurent {
    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> HalfLaurent {
        -self
    }
}

/// `t^(e/2)` rendered the way polynomials print: empty for `e = 0`.
pub(crate) fn format_t_power(doubled: i64) -> String {
    match doubled {
        0 => String::new(),
        2 => "t".to_string(),
        e if e % 2 == 0 => format!("t^{}", e / 2),
        e => format!("t^({e}/2)"),
    }
}

/// Splits a coefficient into (is negative, magnitude text or `None` for 1).
fn coeff_parts(ring: CoeffRing, c: &Coeff) -> (bool, Option<String>) {
    match ring.signum(c) {
        Some(s) => {
            let negative = s < 0;
            let mag = if negative { ring.neg(c) } else { c.clone() };
            if ring.is_one(&mag) {
                (negative, None)
            } else {
                (negative, Some(mag.to_string()))
            }
        }
        None => match c {
            Coeff::Cx(z) => {
                let text = format_complex(*z);
                let (negative, mag) = match text.strip_prefix('-') {
                    Some(rest) if !rest.contains('i') => (true, rest.to_string()),
                    _ => (false, text),
                };
                if mag == "1" {
                    (negative, None)
                } else if mag.contains('i') {
                    (false, Some(format!("({mag})")))
                } else {
                    (negative, Some(mag))
                }
            }
            _ => (false, (!ring.is_one(c)).then(|| c.to_string())),
        },
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = coeff_parts(self.ring, c);
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let t = format_t_power(e);
            match (mag, t.is_empty()) {
                (None, true) => write!(f, "1")?,
                (None, false) => write!(f, "{t}")?,
                (Some(m), true) => write!(f, "{m}")?,
                (Some(m), false) => write!(f, "{m}*{t}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoeffRing = CoeffRing::Rationals;

    fn p(terms: &[(i64, i64)]) -> HalfLaurent {
        HalfLaurent::from_terms(Q, terms.iter().map(|&(e, c)| (e, Q.from_i64(c))))
    }

    #[test]
    fn half_power_square() {
        let z = p(&[(1, 1), (-1, -1)]);
        assert_eq!(&z * &z, p(&[(2, 1), (0, -2), (-2, 1)]));
    }

    #[test]
    fn conjugate_of_symmetric() {
        let f = p(&[(10, 1), (-10, 1)]);
        assert_eq!(f.conjugate(), f);
        let g = p(&[(3, 2), (0, 1)]);
        assert_eq!(g.conjugate().conjugate(), g);
    }

    #[test]
    fn add_zero_and_cancellation() {
        let f = p(&[(2, 3), (-1, 1)]);
        assert_eq!(&f + &HalfLaurent::zero(Q), f);
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = HalfLaurent::one(Q);
        let b = HalfLaurent::one(CoeffRing::Integers);
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[(10, 1), (2, 1), (-2, 1), (-10, 1)]).to_string(), "t^5 + t + t^-1 + t^-5");
        assert_eq!(p(&[(1, 1), (-1, -1)]).to_string(), "t^(1/2) - t^(-1/2)");
        assert_eq!(p(&[(4, -3), (0, 2)]).to_string(), "-3*t^2 + 2");
        assert_eq!(p(&[(0, -1)]).to_string(), "-1");
        assert_eq!(HalfLaurent::zero(Q).to_string(), "0");
        let f2 = CoeffRing::PrimeField(2);
        assert_eq!(HalfLaurent::from_int_terms(f2, &[(1, 1), (0, 1)]).to_string(), "t + 1");
    }

    #[test]
    fn halfint_arithmetic() {
        let h = HalfInt::from_doubled(-1);
        assert_eq!(h.to_string(), "-1/2");
        assert_eq!(h.floor(), -1);
        assert_eq!(h.ceil(), 0);
        assert_eq!(HalfInt::from_doubled(5).ceil(), 3);
        assert_eq!(HalfInt::from_int(3).to_string(), "3");
    }
}
