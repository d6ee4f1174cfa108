//! Dense univariate polynomials over concrete scalar types.
//!
//! The runtime [`Coeff`] enum is convenient at API boundaries but slow in
//! inner loops, so determinants and gcds lift into one of the typed
//! back ends here, run monomorphized, and lower the result again.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::{Coeff, CoeffRing};

pub(crate) trait ScalarOps {
    type E: Clone + std::fmt::Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// `a / b` when the quotient exists in the ring.
    fn div_exact(&self, a: &Self::E, b: &Self::E) -> Option<Self::E>;
    fn lift(&self, c: &Coeff) -> Self::E;
    fn lower(&self, e: Self::E) -> Coeff;
}

pub(crate) struct IntOps;
pub(crate) struct RatOps;
pub(crate) struct FpOps(pub u64);

impl ScalarOps for IntOps {
    type E = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn lift(&self, c: &Coeff) -> BigInt {
        match c {
            Coeff::Int(v) => v.clone(),
            other => panic!("expected integer coefficient, got {other:?}"),
        }
    }
    fn lower(&self, e: BigInt) -> Coeff {
        Coeff::Int(e)
    }
}

impl ScalarOps for RatOps {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn lift(&self, c: &Coeff) -> BigRational {
        match c {
            Coeff::Rat(v) => v.clone(),
            Coeff::Int(v) => BigRational::from_integer(v.clone()),
            other => panic!("expected rational coefficient, got {other:?}"),
        }
    }
    fn lower(&self, e: BigRational) -> Coeff {
        Coeff::Rat(e)
    }
}

impl FpOps {
    fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let (mut base, mut exp, mut acc) = (a, self.0 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        Some(acc)
    }
}

impl ScalarOps for FpOps {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.inv(*b).map(|bi| self.mul(a, &bi))
    }
    fn lift(&self, c: &Coeff) -> u64 {
        match c {
            Coeff::Mod(v) => *v,
            other => panic!("expected residue, got {other:?}"),
        }
    }
    fn lower(&self, e: u64) -> Coeff {
        Coeff::Mod(e)
    }
}

/// Dense polynomial, lowest degree first, no trailing zeros.
pub(crate) type Poly<E> = Vec<E>;

pub(crate) fn trim<O: ScalarOps>(ops: &O, mut p: Poly<O::E>) -> Poly<O::E> {
    while p.last().is_some_and(|c| ops.is_zero(c)) {
        p.pop();
    }
    p
}

pub(crate) fn sub<O: ScalarOps>(ops: &O, a: &[O::E], b: &[O::E]) -> Poly<O::E> {
    let n = a.len().max(b.len());
    let zero = ops.zero();
    let out = (0..n).map(|i| ops.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero))).collect();
    trim(ops, out)
}

pub(crate) fn mul<O: ScalarOps>(ops: &O, a: &[O::E], b: &[O::E]) -> Poly<O::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ops.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ops.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ops.add(&out[i + j], &ops.mul(x, y));
        }
    }
    trim(ops, out)
}

type QuotRem<E> = (Poly<E>, Poly<E>);

/// Quotient and remainder; `None` if a leading-coefficient division fails.
pub(crate) fn divrem<O: ScalarOps>(ops: &O, a: &[O::E], b: &[O::E]) -> Option<QuotRem<O::E>> {
    let lead = b.last()?;
    let mut rem: Poly<O::E> = a.to_vec();
    if rem.len() < b.len() {
        return Some((Vec::new(), rem));
    }
    let mut quot = vec![ops.zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let q = ops.div_exact(rem.last().expect("nonempty"), lead)?;
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] = ops.sub(&rem[shift + i], &ops.mul(&q, c));
        }
        quot[shift] = q;
        // the leading entry is now zero by construction
        rem.pop();
        rem = trim(ops, rem);
    }
    Some((trim(ops, quot), rem))
}

/// `a / b` when `b` divides `a` exactly.
pub(crate) fn div_exact<O: ScalarOps>(ops: &O, a: &[O::E], b: &[O::E]) -> Option<Poly<O::E>> {
    let (q, r) = divrem(ops, a, b)?;
    r.is_empty().then_some(q)
}

/// Monic gcd over a field.
pub(crate) fn gcd<O: ScalarOps>(ops: &O, a: &[O::E], b: &[O::E]) -> Poly<O::E> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(ops, &x, &y).expect("field division");
        x = y;
        y = r;
    }
    monic(ops, x)
}

pub(crate) fn monic<O: ScalarOps>(ops: &O, p: Poly<O::E>) -> Poly<O::E> {
    match p.last().cloned() {
        Some(lead) => p.iter().map(|c| ops.div_exact(c, &lead).expect("field division")).collect(),
        None => p,
    }
}

/// Fraction-free Gaussian elimination (Bareiss) on a square matrix of
/// polynomials. Every division is exact in the polynomial ring.
pub(crate) fn bareiss<O: ScalarOps>(ops: &O, mut m: Vec<Vec<Poly<O::E>>>) -> Poly<O::E> {
    let n = m.len();
    if n == 0 {
        return vec![ops.one()];
    }
    let mut negate = false;
    let mut prev: Poly<O::E> = vec![ops.one()];
    for k in 0..n {
        if m[k][k].is_empty() {
            match (k + 1..n).find(|&i| !m[i][k].is_empty()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Vec::new(),
            }
        }
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = sub(ops, &mul(ops, &m[k][k], &m[i][j]), &mul(ops, &m[i][k], &m[k][j]));
                m[i][j] = div_exact(ops, &num, &prev).expect("Bareiss division is exact");
            }
            m[i][k] = Vec::new();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        sub(ops, &[], &det)
    } else {
        det
    }
}

/// Complex determinant by LU with partial pivoting.
pub(crate) fn complex_det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[i][k].norm().partial_cmp(&a[j][k].norm()).unwrap_or(std::cmp::Ordering::Equal))
            .expect("nonempty range");
        if a[pivot][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        det *= a[k][k];
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in bottom.iter_mut() {
            let f = row[k] / pivot[k];
            for (x, &v) in row.iter_mut().zip(pivot.iter()).skip(k + 1) {
                *x -= f * v;
            }
        }
    }
    det
}

/// Picks the typed back end for an exact ring.
pub(crate) enum Backend {
    Int(IntOps),
    Rat(RatOps),
    Fp(FpOps),
}

impl Backend {
    pub(crate) fn for_ring(ring: CoeffRing) -> Option<Backend> {
        match ring {
            CoeffRing::Integers => Some(Backend::Int(IntOps)),
            CoeffRing::Rationals => Some(Backend::Rat(RatOps)),
            CoeffRing::PrimeField(p) => Some(Backend::Fp(FpOps(p))),
            CoeffRing::ApproxComplex(_) => None,
        }
    }
}
