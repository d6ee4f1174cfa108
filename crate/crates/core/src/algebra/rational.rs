use std::fmt;

use num_complex::Complex64;

use super::coeff::{Coeff, CoeffRing};
use super::dense::{self, Backend, ScalarOps};
use super::laurent::{HalfInt, HalfLaurent};
use crate::error::{Error, Result};

/// A quotient of Laurent polynomials in `t^(1/2)`.
///
/// Over exact rings the representation is canonical: the denominator is a
/// monic polynomial with nonzero constant term, coprime to the numerator,
/// and the numerator carries any monomial factor. Integer inputs are
/// reduced over the rationals. Over [`CoeffRing::ApproxComplex`] no gcd is
/// taken; only the monomial and leading-coefficient normalization applies.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: HalfLaurent,
    den: HalfLaurent,
}

/// Degree data of a nonzero rational function. Degrees are half-integers.
#[derive(Debug, Clone, PartialEq)]
pub struct Degrees {
    pub deg: HalfInt,
    pub hdeg: HalfInt,
    pub ldeg: HalfInt,
    /// Ratio of leading coefficients.
    pub c: Coeff,
}

impl RationalFunction {
    /// Reduces `num / den` to canonical form.
    pub fn reduce(num: HalfLaurent, den: HalfLaurent) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.ring() != den.ring() {
            return Err(Error::RingMismatch(num.ring().to_string(), den.ring().to_string()));
        }
        let ring = num.ring().fraction_field();
        let num = num.convert(ring)?;
        let den = den.convert(ring)?;
        if num.is_zero() {
            return Ok(RationalFunction::zero(ring));
        }
        let (num, den) = match Backend::for_ring(ring) {
            Some(Backend::Rat(ops)) => cancel(&ops, &num, &den),
            Some(Backend::Fp(ops)) => cancel(&ops, &num, &den),
            Some(Backend::Int(_)) => unreachable!("fraction field of Z is Q"),
            None => (num, den),
        };
        // den monic with lowest exponent 0; the monomial moves to num
        let lead = den.leading_coeff().expect("nonzero").clone();
        let inv = ring.inv(&lead).expect("leading coefficient is a unit in a field");
        let shift = den.lowest().expect("nonzero");
        Ok(RationalFunction { num: num.scale(&inv).shift(-shift), den: den.scale(&inv).shift(-shift) })
    }

    pub fn zero(ring: CoeffRing) -> Self {
        let ring = ring.fraction_field();
        RationalFunction { num: HalfLaurent::zero(ring), den: HalfLaurent::one(ring) }
    }

    pub fn one(ring: CoeffRing) -> Self {
        RationalFunction::from_poly(HalfLaurent::one(ring))
    }

    pub fn from_poly(p: HalfLaurent) -> Self {
        let ring = p.ring();
        RationalFunction::reduce(p, HalfLaurent::one(ring)).expect("unit denominator")
    }

    pub fn num(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn den(&self) -> &HalfLaurent {
        &self.den
    }

    pub fn ring(&self) -> CoeffRing {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator, when the function is a Laurent polynomial.
    pub fn as_polynomial(&self) -> Option<&HalfLaurent> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn try_mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::reduce(self.num.try_mul(&other.num)?, self.den.try_mul(&other.den)?)
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        self.try_mul(other).expect("ring mismatch in rational function product")
    }

    pub fn mul_poly(&self, p: &HalfLaurent) -> RationalFunction {
        self.mul(&RationalFunction::from_poly(p.clone()))
    }

    pub fn scale(&self, c: &Coeff) -> RationalFunction {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplies by `t^(doubled/2)`.
    pub fn shift(&self, doubled: i64) -> RationalFunction {
        RationalFunction { num: self.num.shift(doubled), den: self.den.clone() }
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    /// `t -> t^-1` together with the coefficient involution.
    pub fn conjugate(&self) -> RationalFunction {
        RationalFunction::reduce(self.num.conjugate(), self.den.conjugate()).expect("nonzero denominator")
    }

    pub fn degrees(&self) -> Result<Degrees> {
        if self.is_zero() {
            return Err(Error::ZeroInvariant);
        }
        let (nh, nl) = (self.num.highest().expect("nonzero"), self.num.lowest().expect("nonzero"));
        let (dh, dl) = (self.den.highest().expect("nonzero"), self.den.lowest().expect("nonzero"));
        let ring = self.ring();
        let c = ring.mul(
            self.num.leading_coeff().expect("nonzero"),
            &ring.inv(self.den.leading_coeff().expect("nonzero")).expect("unit"),
        );
        Ok(Degrees {
            deg: HalfInt::from_doubled((nh - nl) - (dh - dl)),
            hdeg: HalfInt::from_doubled(nh - dh),
            ldeg: HalfInt::from_doubled(nl - dl),
            c,
        })
    }

    /// Value at `t = z^2`. `None` over prime fields or at a pole.
    pub fn eval_sqrt(&self, z: Complex64) -> Option<Complex64> {
        let d = self.den.eval_sqrt(z)?;
        if d.norm() == 0.0 {
            return None;
        }
        Some(self.num.eval_sqrt(z)? / d)
    }

    /// Cross-multiplied comparison; exact rings compare exactly.
    pub fn approx_eq(&self, other: &RationalFunction) -> bool {
        if self.ring().is_exact() {
            return self == other;
        }
        match (self.num.try_mul(&other.den), other.num.try_mul(&self.den)) {
            (Ok(a), Ok(b)) => a.approx_eq(&b),
            _ => false,
        }
    }
}

fn cancel<O: ScalarOps>(ops: &O, num: &HalfLaurent, den: &HalfLaurent) -> (HalfLaurent, HalfLaurent) {
    let ring = num.ring();
    let (n_low, d_low) = (num.lowest().expect("nonzero"), den.lowest().expect("nonzero"));
    let to_dense = |p: &HalfLaurent, low: i64| {
        let mut v = vec![ops.zero(); (p.highest().expect("nonzero") - low + 1) as usize];
        for (e, c) in p.terms() {
            v[(e - low) as usize] = ops.lift(c);
        }
        v
    };
    let a = to_dense(num, n_low);
    let b = to_dense(den, d_low);
    let g = dense::gcd(ops, &a, &b);
    let a = dense::div_exact(ops, &a, &g).expect("gcd divides");
    let b = dense::div_exact(ops, &b, &g).expect("gcd divides");
    let from_dense = |v: Vec<O::E>, low: i64| {
        HalfLaurent::from_terms(
            ring,
            v.into_iter().enumerate().filter(|(_, c)| !ops.is_zero(c)).map(|(i, c)| (i as i64 + low, ops.lower(c))),
        )
    };
    (from_dense(a, n_low - d_low), from_dense(b, 0))
}

impl fmt::Display for RationalFunction {
    /// Prints `num/den` with the denominator balanced around `t^0`, so
    /// `t^(1/2)/(t - 1)` reads `1/(t^(1/2) - t^(-1/2))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let center = (self.den.highest().unwrap_or(0) + self.den.lowest().unwrap_or(0)).div_euclid(2);
        let num = self.num.shift(-center);
        let den = self.den.shift(-center);
        let wrap = |p: &HalfLaurent| if p.num_terms() > 1 { format!("({p})") } else { p.to_string() };
        write!(f, "{}/{}", wrap(&num), wrap(&den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoeffRing = CoeffRing::Rationals;

    fn lp(terms: &[(i64, i64)]) -> HalfLaurent {
        HalfLaurent::from_int_terms(Q, terms)
    }

    #[test]
    fn reduce_common_factor() {
        let f = RationalFunction::reduce(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(f, RationalFunction::from_poly(lp(&[(1, 1), (0, 1)])));
        // (t^4 + t^2 + 1) / (t^3 - 1) -> (t^2 - t + 1) / (t - 1)
        let g = RationalFunction::reduce(lp(&[(4, 1), (2, 1), (0, 1)]), lp(&[(3, 1), (0, -1)])).unwrap();
        assert_eq!(g.num(), &lp(&[(2, 1), (1, -1), (0, 1)]));
        assert_eq!(g.den(), &lp(&[(1, 1), (0, -1)]));
    }

    #[test]
    fn zero_numerator_and_denominator() {
        let z = RationalFunction::reduce(HalfLaurent::zero(Q), lp(&[(1, 1)])).unwrap();
        assert!(z.is_zero());
        assert_eq!(z, RationalFunction::zero(Q));
        assert!(matches!(RationalFunction::reduce(lp(&[(0, 1)]), HalfLaurent::zero(Q)), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn integers_reduce_over_rationals() {
        let z = CoeffRing::Integers;
        let f = RationalFunction::reduce(HalfLaurent::from_int_terms(z, &[(0, 2)]), HalfLaurent::from_int_terms(z, &[(0, 4)])).unwrap();
        assert_eq!(f.ring(), Q);
        assert_eq!(f.to_string(), "1/2");
    }

    #[test]
    fn degree_functionals() {
        // (t - 1 + t^-1) / (t^(1/2) - t^(-1/2))
        let f = RationalFunction::reduce(lp(&[(1, 1), (0, -1), (-1, 1)]), HalfLaurent::from_terms(Q, [(1, Q.one()), (-1, Q.from_i64(-1))]))
            .unwrap();
        let d = f.degrees().unwrap();
        assert_eq!((d.deg, d.hdeg, d.ldeg), (HalfInt::from_int(1), HalfInt::from_doubled(1), HalfInt::from_doubled(-1)));
        assert!(Q.is_one(&d.c));
        let one = RationalFunction::one(Q).degrees().unwrap();
        assert_eq!((one.deg, one.hdeg, one.ldeg), (HalfInt::ZERO, HalfInt::ZERO, HalfInt::ZERO));
        assert!(RationalFunction::zero(Q).degrees().is_err());
    }

    #[test]
    fn balanced_rendering() {
        let unknot = RationalFunction::reduce(HalfLaurent::t_pow(Q, 1), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(unknot.to_string(), "1/(t^(1/2) - t^(-1/2))");
        let trefoil = RationalFunction::reduce(lp(&[(4, 1), (2, 1), (0, 1)]), lp(&[(3, 1), (0, -1)]).shift(1)).unwrap();
        assert_eq!(trefoil.to_string(), "(t - 1 + t^-1)/(t^(1/2) - t^(-1/2))");
    }

    #[test]
    fn conjugate_is_involution() {
        let f = RationalFunction::reduce(lp(&[(3, 2), (0, 1)]), lp(&[(2, 1), (0, -3)])).unwrap();
        assert_eq!(f.conjugate().conjugate(), f);
        let unknot = RationalFunction::reduce(HalfLaurent::t_pow(Q, 1), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(unknot.conjugate(), unknot.neg());
    }
}
