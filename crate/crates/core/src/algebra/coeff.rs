use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Zero-test tolerance used by [`CoeffRing::approx_complex`].
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Descriptor of a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoeffRing {
    Integers,
    Rationals,
    /// `Z/p` for a prime `p`; build through [`CoeffRing::prime_field`].
    PrimeField(u64),
    /// Floating-point complex numbers; `|z| <= tolerance` counts as zero.
    ApproxComplex(f64),
}

/// An element of some [`CoeffRing`]. Elements do not carry their ring;
/// arithmetic always goes through the ring descriptor.
#[derive(Debug, Clone, PartialEq)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    Cx(Complex64),
}

impl CoeffRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoeffRing::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn approx_complex() -> Self {
        CoeffRing::ApproxComplex(DEFAULT_TOLERANCE)
    }

    /// Parses `Z`, `Q`, `F<p>` (e.g. `F2`) or `C`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "Z" => Ok(CoeffRing::Integers),
            "Q" => Ok(CoeffRing::Rationals),
            "C" => Ok(CoeffRing::approx_complex()),
            _ => {
                let p = t
                    .strip_prefix('F')
                    .map(|s| s.trim_start_matches('<').trim_end_matches('>'))
                    .and_then(|s| s.parse::<u64>().ok())
                    .ok_or_else(|| Error::parse(0, format!("unknown ring `{t}`")))?;
                CoeffRing::prime_field(p)
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, CoeffRing::ApproxComplex(_))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoeffRing::Integers)
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            CoeffRing::ApproxComplex(tol) => *tol,
            _ => 0.0,
        }
    }

    /// The ring in which quotients are taken: `Q` for `Z`, otherwise itself.
    pub fn fraction_field(&self) -> CoeffRing {
        match self {
            CoeffRing::Integers => CoeffRing::Rationals,
            r => *r,
        }
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            CoeffRing::Integers => Coeff::Int(BigInt::from(v)),
            CoeffRing::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
            CoeffRing::PrimeField(p) => Coeff::Mod(v.rem_euclid(*p as i64) as u64),
            CoeffRing::ApproxComplex(_) => Coeff::Cx(Complex64::new(v as f64, 0.0)),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            CoeffRing::Integers => Coeff::Int(v.clone()),
            CoeffRing::Rationals => Coeff::Rat(BigRational::from_integer(v.clone())),
            CoeffRing::PrimeField(p) => {
                let r = ((v % BigInt::from(*p)) + BigInt::from(*p)) % BigInt::from(*p);
                Coeff::Mod(r.to_u64().expect("residue fits"))
            }
            CoeffRing::ApproxComplex(_) => Coeff::Cx(Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0)),
        }
    }

    /// Maps a rational number into the ring, if it has an image there.
    pub fn from_rational(&self, v: &BigRational) -> Option<Coeff> {
        match self {
            CoeffRing::Integers => v.is_integer().then(|| Coeff::Int(v.to_integer())),
            CoeffRing::Rationals => Some(Coeff::Rat(v.clone())),
            CoeffRing::PrimeField(_) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                self.inv(&den).map(|d| self.mul(&num, &d))
            }
            CoeffRing::ApproxComplex(_) => {
                Some(Coeff::Cx(Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0)))
            }
        }
    }

    /// Moves an element of `from` into this ring, where a canonical map exists.
    pub fn convert(&self, from: &CoeffRing, c: &Coeff) -> Result<Coeff> {
        if from == self {
            return Ok(c.clone());
        }
        let mismatch = || Error::RingMismatch(from.to_string(), self.to_string());
        match (c, self) {
            (Coeff::Int(v), _) => Ok(self.from_bigint(v)),
            (Coeff::Rat(v), _) => self.from_rational(v).ok_or_else(mismatch),
            (Coeff::Cx(z), CoeffRing::ApproxComplex(_)) => Ok(Coeff::Cx(*z)),
            _ => Err(mismatch()),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod((x + y) % self.modulus()),
            (Coeff::Cx(x), Coeff::Cx(y)) => Coeff::Cx(x + y),
            _ => panic!("mixed coefficient kinds {a:?} and {b:?}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Int(x) => Coeff::Int(-x),
            Coeff::Rat(x) => Coeff::Rat(-x),
            Coeff::Mod(x) => Coeff::Mod((self.modulus() - x) % self.modulus()),
            Coeff::Cx(x) => Coeff::Cx(-x),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u128 * *y as u128) % self.modulus() as u128) as u64)
            }
            (Coeff::Cx(x), Coeff::Cx(y)) => Coeff::Cx(x * y),
            _ => panic!("mixed coefficient kinds {a:?} and {b:?}"),
        }
    }

    /// Multiplicative inverse, when `a` is a unit.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Coeff::Int(x) => (x.abs().is_one()).then(|| Coeff::Int(x.clone())),
            Coeff::Rat(x) => Some(Coeff::Rat(x.recip())),
            Coeff::Mod(x) => Some(Coeff::Mod(pow_mod(*x, self.modulus() - 2, self.modulus()))),
            Coeff::Cx(x) => Some(Coeff::Cx(x.inv())),
        }
    }

    /// `a^e`; negative exponents need `a` to be a unit.
    pub fn pow(&self, a: &Coeff, e: i64) -> Option<Coeff> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = self.one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Some(acc)
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Int(x) => x.is_zero(),
            Coeff::Rat(x) => x.is_zero(),
            Coeff::Mod(x) => *x == 0,
            Coeff::Cx(x) => x.norm() <= self.tolerance(),
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    /// Equality, up to the tolerance for approximate rings.
    pub fn eq(&self, a: &Coeff, b: &Coeff) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    /// The ring involution: complex conjugation on `C`, identity elsewhere.
    pub fn conj(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Cx(x) => Coeff::Cx(x.conj()),
            other => other.clone(),
        }
    }

    /// Sign of an integer or rational element.
    pub fn signum(&self, a: &Coeff) -> Option<i32> {
        match a {
            Coeff::Int(x) => Some(x.signum().to_i32().unwrap_or(0)),
            Coeff::Rat(x) => Some(x.signum().to_integer().to_i32().unwrap_or(0)),
            _ => None,
        }
    }

    pub fn to_complex(&self, a: &Coeff) -> Option<Complex64> {
        match a {
            Coeff::Int(x) => x.to_f64().map(|v| Complex64::new(v, 0.0)),
            Coeff::Rat(x) => x.to_f64().map(|v| Complex64::new(v, 0.0)),
            Coeff::Mod(_) => None,
            Coeff::Cx(x) => Some(*x),
        }
    }

    /// Parses a coefficient literal: `-3`, `2/7`, `3 mod 7`, `1.0+0.5i`.
    pub fn parse_coeff(&self, text: &str) -> std::result::Result<Coeff, String> {
        let t = text.trim();
        if let Some((v, p)) = t.split_once("mod") {
            let p: u64 = p.trim().parse().map_err(|_| format!("bad modulus in `{t}`"))?;
            if *self != CoeffRing::PrimeField(p) {
                return Err(format!("`{t}` does not belong to {self}"));
            }
            let v: BigInt = v.trim().parse().map_err(|_| format!("bad residue in `{t}`"))?;
            return Ok(self.from_bigint(&v));
        }
        if let CoeffRing::ApproxComplex(_) = self {
            return parse_complex(t).map(Coeff::Cx).ok_or_else(|| format!("bad complex literal `{t}`"));
        }
        let q = parse_rational(t).ok_or_else(|| format!("bad coefficient `{t}`"))?;
        self.from_rational(&q).ok_or_else(|| format!("`{t}` has no image in {self}"))
    }

    fn modulus(&self) -> u64 {
        match self {
            CoeffRing::PrimeField(p) => *p,
            _ => panic!("modulus requested for {self}"),
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::PrimeField(p) => write!(f, "F{p}"),
            CoeffRing::ApproxComplex(_) => write!(f, "C"),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(x) => write!(f, "{x}"),
            Coeff::Rat(x) => write!(f, "{x}"),
            Coeff::Mod(x) => write!(f, "{x}"),
            Coeff::Cx(z) => write!(f, "{}", format_complex(*z)),
        }
    }
}

/// Prints with 12 decimals, trailing zeros trimmed; a part below `1e-12`
/// relative to `|z|` prints as zero.
pub(crate) fn format_complex(z: Complex64) -> String {
    let cutoff = 1e-12 * z.norm().max(1.0);
    let part = |v: f64| {
        if v.abs() < cutoff {
            return None;
        }
        let s = format!("{v:.12}");
        Some(s.trim_end_matches('0').trim_end_matches('.').to_string())
    };
    match (part(z.re), part(z.im)) {
        (None, None) => "0".to_string(),
        (Some(re), None) => re,
        (None, Some(im)) => format!("{im}i"),
        (Some(re), Some(im)) if im.starts_with('-') => format!("{re}{im}i"),
        (Some(re), Some(im)) => format!("{re}+{im}i"),
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn parse_complex(t: &str) -> Option<Complex64> {
    let t: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not part of an exponent or leading
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(i) => (body[..i].parse::<f64>().ok()?, &body[i..]),
            None => (0.0, body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            s => s.parse::<f64>().ok()?,
        };
        Some(Complex64::new(re, im))
    } else {
        t.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0))
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_parsing() {
        assert_eq!(CoeffRing::parse("F2").unwrap(), CoeffRing::PrimeField(2));
        assert_eq!(CoeffRing::parse("F<7>").unwrap(), CoeffRing::PrimeField(7));
        assert!(matches!(CoeffRing::parse("F4"), Err(Error::NotPrime(4))));
        assert!(CoeffRing::parse("R").is_err());
    }

    #[test]
    fn literals() {
        let q = CoeffRing::Rationals;
        assert_eq!(q.parse_coeff("2/7").unwrap().to_string(), "2/7");
        assert_eq!(q.parse_coeff("-3").unwrap().to_string(), "-3");
        let f7 = CoeffRing::prime_field(7).unwrap();
        assert_eq!(f7.parse_coeff("3 mod 7").unwrap(), Coeff::Mod(3));
        assert_eq!(f7.parse_coeff("-1").unwrap(), Coeff::Mod(6));
        assert_eq!(f7.parse_coeff("1/2").unwrap(), Coeff::Mod(4));
        assert!(f7.parse_coeff("3 mod 5").is_err());
        let c = CoeffRing::approx_complex();
        assert_eq!(c.parse_coeff("1.0+0.5i").unwrap(), Coeff::Cx(Complex64::new(1.0, 0.5)));
        assert_eq!(c.parse_coeff("-i").unwrap(), Coeff::Cx(Complex64::new(0.0, -1.0)));
        assert_eq!(c.parse_coeff("2.5").unwrap(), Coeff::Cx(Complex64::new(2.5, 0.0)));
        assert_eq!(c.parse_coeff("1e-3-2i").unwrap(), Coeff::Cx(Complex64::new(1e-3, -2.0)));
        assert!(CoeffRing::Integers.parse_coeff("1/2").is_err());
    }

    #[test]
    fn field_inverses() {
        let f = CoeffRing::prime_field(11).unwrap();
        for v in 1..11 {
            let a = f.from_i64(v);
            assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
        assert!(CoeffRing::Integers.inv(&CoeffRing::Integers.from_i64(2)).is_none());
        assert_eq!(CoeffRing::Integers.inv(&CoeffRing::Integers.from_i64(-1)), Some(Coeff::Int((-1).into())));
    }

    #[test]
    fn complex_tolerance() {
        let c = CoeffRing::approx_complex();
        assert!(c.is_zero(&Coeff::Cx(Complex64::new(1e-12, -1e-12))));
        assert!(!c.is_zero(&Coeff::Cx(Complex64::new(1e-6, 0.0))));
        assert_eq!(c.conj(&Coeff::Cx(Complex64::new(1.0, 2.0))), Coeff::Cx(Complex64::new(1.0, -2.0)));
    }
}
