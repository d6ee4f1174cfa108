//! Consequences of the normalized invariant: the Conway polynomial, a
//! necessary condition for fibering, and genus lower bounds.

use std::fmt;

use num_integer::Integer;

use crate::algebra::{Coeff, CoeffRing, HalfInt, HalfLaurent};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::twisted::{normalized_invariant, NormalizedInvariant, Representation};

/// A Conway polynomial `sum c_m z^m`, coefficients indexed by `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConwayPolynomial {
    coeffs: Vec<i64>,
}

impl ConwayPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ConwayPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient `c(nabla)`; zero for the zero polynomial.
    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Substitutes `z = t^(1/2) - t^(-1/2)`.
    pub fn to_laurent(&self, ring: CoeffRing) -> HalfLaurent {
        let z = HalfLaurent::from_terms(ring, [(1, ring.one()), (-1, ring.from_i64(-1))]);
        let mut power = HalfLaurent::one(ring);
        let mut out = HalfLaurent::zero(ring);
        for &c in &self.coeffs {
            out = &out + &power.scale(&ring.from_i64(c));
            power = &power * &z;
        }
        out
    }
}

impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, &c) in self.coeffs.iter().enumerate().rev().filter(|(_, c)| **c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (m, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}*")?,
            }
            match m {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{m}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `f = (t^(1/2) - t^(-1/2)) * inv`, required to be a Laurent polynomial.
pub fn conway_numerator(inv: &NormalizedInvariant) -> Result<HalfLaurent> {
    if inv.is_zero() {
        return Err(Error::ZeroInvariant);
    }
    let ring = inv.ring();
    let z = HalfLaurent::from_terms(ring, [(1, ring.one()), (-1, ring.from_i64(-1))]);
    inv.value().mul_poly(&z).as_polynomial().cloned().ok_or(Error::NonPolynomial)
}

/// Rewrites `f` in the basis `z^m = (t^(1/2) - t^(-1/2))^m`, after checking
/// `f(1) = 1` and `hdeg f + ldeg f = 0`.
pub fn conway_from_numerator(f: &HalfLaurent) -> Result<ConwayPolynomial> {
    let ring = CoeffRing::Rationals;
    let f = f.convert(ring)?;
    let (Some(h), Some(l)) = (f.highest(), f.lowest()) else {
        return Err(Error::ZeroInvariant);
    };
    if h + l != 0 {
        return Err(Error::Asymmetric(format!("hdeg + ldeg = {}", HalfInt::from_doubled(h + l))));
    }
    let at_one = f.terms().fold(ring.zero(), |acc, (_, c)| ring.add(&acc, c));
    if !ring.is_one(&at_one) {
        return Err(Error::Asymmetric(format!("value at t = 1 is {at_one}, not 1")));
    }
    let z = HalfLaurent::from_terms(ring, [(1, ring.one()), (-1, ring.from_i64(-1))]);
    let mut rest = f;
    let mut coeffs = vec![0i64; h.max(0) as usize + 1];
    while let Some(m) = rest.highest() {
        if m < 0 {
            return Err(Error::Asymmetric(format!("remainder {rest} has negative top degree")));
        }
        let c = rest.leading_coeff().expect("nonzero").clone();
        let Coeff::Rat(r) = &c else { unreachable!("converted to rationals") };
        if !r.is_integer() {
            return Err(Error::Asymmetric(format!("non-integer coefficient {c} at z^{m}")));
        }
        coeffs[m as usize] = i64::try_from(r.to_integer()).map_err(|_| Error::Asymmetric(format!("coefficient {c} overflows")))?;
        rest = &rest - &z.pow(m as u32).scale(&c);
    }
    Ok(ConwayPolynomial::new(coeffs))
}

/// The Conway polynomial, read off the invariant of the trivial
/// one-dimensional representation over the rationals.
pub fn conway_polynomial(p: &Presentation) -> Result<ConwayPolynomial> {
    let inv = normalized_invariant(p, &Representation::trivial(p, CoeffRing::Rationals))?;
    conway_from_numerator(&conway_numerator(&inv)?)
}

/// Outcome of the fibering test for a candidate genus. A false flag means
/// the knot is not fibered (or the candidate genus is wrong).
#[derive(Debug, Clone, PartialEq)]
pub struct FiberedReport {
    pub genus: i64,
    pub n: usize,
    pub deg: HalfInt,
    pub hdeg: HalfInt,
    /// `n (2g - 1)`.
    pub expected: i64,
    pub deg_ok: bool,
    pub hdeg_ok: bool,
    /// `c(inv) = c(nabla)^n eps^(g - 1/2)`, with `eps` kept formal.
    pub coeff_ok: bool,
    /// The same identity with `eps^(2g - 1)` in place of `eps^(g - 1/2)`.
    /// Differs from `coeff_ok` only when `eps` is not `1`.
    pub coeff_ok_alt: bool,
}

impl FiberedReport {
    pub fn consistent(&self) -> bool {
        self.deg_ok && self.hdeg_ok && self.coeff_ok
    }

    /// `consistent`, or `NO (...)` naming the first failed check.
    pub fn verdict(&self) -> String {
        if !self.deg_ok {
            format!("NO (deg {} != {})", self.deg, self.expected)
        } else if !self.hdeg_ok {
            format!("NO (2 hdeg {} != {})", HalfInt::from_doubled(2 * self.hdeg.doubled()), self.expected)
        } else if !self.coeff_ok {
            "NO (leading coefficient)".to_string()
        } else {
            "consistent".to_string()
        }
    }
}

/// Compares `(c, power)` with `(target, target_power)` as elements of
/// `R(eps^(1/2))`. Both powers are half-integers; the pair is first
/// brought to a common formal power.
fn formal_eq(ring: CoeffRing, eps: &Coeff, c: &Coeff, power: HalfInt, target: &Coeff, target_power: HalfInt) -> bool {
    if ring.is_one(eps) {
        return ring.eq(c, target);
    }
    let diff = target_power - power;
    let Some(k) = diff.to_int() else {
        // eps^(1/2) is not assumed to lie in the ring
        return false;
    };
    match ring.pow(eps, k) {
        Some(e) => ring.eq(c, &ring.mul(target, &e)),
        None => false,
    }
}

/// Checks degree and leading-coefficient identities that hold for every
/// fibered knot of genus `genus`, given the invariant and `c(nabla)`.
pub fn fibered_check_with(inv: &NormalizedInvariant, conway_leading: i64, genus: i64) -> Result<FiberedReport> {
    if genus < 1 {
        return Err(Error::GenusPrecondition);
    }
    let degrees = inv.value().degrees()?;
    let n = inv.dim();
    let expected = n as i64 * (2 * genus - 1);
    let ring = inv.ring();
    let target = ring.pow(&ring.from_i64(conway_leading), n as i64).unwrap_or_else(|| ring.zero());
    let coeff_ok = formal_eq(ring, inv.eps(), &degrees.c, inv.eps_power(), &target, HalfInt::from_doubled(2 * genus - 1));
    let coeff_ok_alt = formal_eq(ring, inv.eps(), &degrees.c, inv.eps_power(), &target, HalfInt::from_int(2 * genus - 1));
    Ok(FiberedReport {
        genus,
        n,
        deg: degrees.deg,
        hdeg: degrees.hdeg,
        expected,
        deg_ok: degrees.deg == HalfInt::from_int(expected),
        hdeg_ok: degrees.hdeg.doubled() == expected,
        coeff_ok,
        coeff_ok_alt,
    })
}

pub fn fibered_check(p: &Presentation, rho: &Representation, genus: i64) -> Result<FiberedReport> {
    let inv = normalized_invariant(p, rho)?;
    let conway = conway_polynomial(p)?;
    fibered_check_with(&inv, conway.leading(), genus)
}

/// Smallest `g >= 0` with `2 hdeg <= n (2g - 1)`; a lower bound on the free genus.
pub fn free_genus_lower_bound(inv: &NormalizedInvariant) -> Result<i64> {
    let d = inv.value().degrees()?;
    let n = inv.dim() as i64;
    // hdeg / n + 1/2 = (2 hdeg + n) / (2n), with 2 hdeg = doubled
    Ok(Integer::div_ceil(&(d.hdeg.doubled() + n), &(2 * n)).max(0))
}

/// Smallest `g >= 0` with `deg <= n (2g - 1)`; a lower bound on the genus.
pub fn genus_lower_bound(inv: &NormalizedInvariant) -> Result<i64> {
    let d = inv.value().degrees()?;
    let n = inv.dim() as i64;
    // (deg / n + 1) / 2 = (2 deg + 2n) / (4n)
    Ok(Integer::div_ceil(&(d.deg.doubled() + 2 * n), &(4 * n)).max(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Presentation {
        Presentation::parse("gens: x y\nmeridian: x y^-1\nx^2 y^-3\n").unwrap()
    }

    #[test]
    fn conway_display() {
        assert_eq!(ConwayPolynomial::new(vec![1, 0, 2, 0, 1]).to_string(), "z^4 + 2*z^2 + 1");
        assert_eq!(ConwayPolynomial::new(vec![1, 0, -1, 0]).to_string(), "-z^2 + 1");
        assert_eq!(ConwayPolynomial::new(vec![]).to_string(), "0");
    }

    #[test]
    fn trefoil_and_unknot_conway() {
        assert_eq!(conway_polynomial(&trefoil()).unwrap().coeffs(), &[1, 0, 1]);
        let unknot = Presentation::parse("gens: x\nmeridian: x\n").unwrap();
        assert_eq!(conway_polynomial(&unknot).unwrap().coeffs(), &[1]);
    }

    #[test]
    fn conway_round_trip() {
        let c = ConwayPolynomial::new(vec![1, 0, 2, 0, 1]);
        let f = c.to_laurent(CoeffRing::Rationals);
        assert_eq!(conway_from_numerator(&f).unwrap(), c);
        let lopsided = HalfLaurent::from_int_terms(CoeffRing::Rationals, &[(1, 1)]);
        assert!(matches!(conway_from_numerator(&lopsided), Err(Error::Asymmetric(_))));
        let doubled = HalfLaurent::from_int_terms(CoeffRing::Rationals, &[(0, 2)]);
        assert!(matches!(conway_from_numerator(&doubled), Err(Error::Asymmetric(_))));
    }

    #[test]
    fn trefoil_is_consistent_with_fibering() {
        let p = trefoil();
        let rho = Representation::trivial(&p, CoeffRing::Rationals);
        let r = fibered_check(&p, &rho, 1).unwrap();
        assert!(r.deg_ok && r.hdeg_ok && r.coeff_ok && r.coeff_ok_alt);
        assert_eq!(r.verdict(), "consistent");
        assert!(matches!(fibered_check(&p, &rho, 0), Err(Error::GenusPrecondition)));
        let inv = normalized_invariant(&p, &rho).unwrap();
        assert_eq!(free_genus_lower_bound(&inv).unwrap(), 1);
        assert_eq!(genus_lower_bound(&inv).unwrap(), 1);
    }

    #[test]
    fn unknot_bounds_are_zero() {
        let p = Presentation::parse("gens: x\nmeridian: x\n").unwrap();
        let inv = normalized_invariant(&p, &Representation::trivial(&p, CoeffRing::Rationals)).unwrap();
        assert_eq!(free_genus_lower_bound(&inv).unwrap(), 0);
        assert_eq!(genus_lower_bound(&inv).unwrap(), 0);
    }

    #[test]
    fn leading_coefficient_uses_half_power_of_epsilon() {
        // abelian rep x -> 8, y -> 4 of <x, y | x^2 y^-3>; eps = det rho(x y^-1) = 2
        let p = trefoil();
        let rho = Representation::parse("dim: 1\nring: Q\nx: [8]\ny: [4]\n").unwrap();
        rho.verify(&p).unwrap();
        let r = fibered_check(&p, &rho, 1).unwrap();
        assert!(r.deg_ok && r.hdeg_ok);
        assert!(r.coeff_ok, "eps^(g - 1/2) identity");
        assert!(!r.coeff_ok_alt, "eps^(2g - 1) identity fails");
    }
}
