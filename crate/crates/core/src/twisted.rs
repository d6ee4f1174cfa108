//! Representations, Fox Jacobians, the Wada invariant and its normalized
//! form.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Coeff, CoeffRing, HalfInt, HalfLaurent, Matrix, PolyMatrix, RationalFunction};
use crate::error::{Error, Result};
use crate::freegroup::{fox_derivative, GroupRingElement, Word};
use crate::presentation::{Presentation, TietzeMove, TietzeRun};

/// A representation of a knot group into `GL_n(R)`, given by the images
/// of the generators, keyed by generator name.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    ring: CoeffRing,
    dim: usize,
    images: BTreeMap<String, Matrix>,
}

impl Representation {
    /// Checks shapes and invertibility. Relators are checked separately by
    /// [`Representation::verify`], since that needs a presentation.
    pub fn new(ring: CoeffRing, dim: usize, images: BTreeMap<String, Matrix>) -> Result<Self> {
        for (name, m) in &images {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::BadShape { name: name.clone(), dim });
            }
            if m.ring() != ring {
                return Err(Error::RingMismatch(m.ring().to_string(), ring.to_string()));
            }
            if ring.inv(&m.det()).is_none() {
                return Err(Error::NotInvertible(name.clone()));
            }
        }
        Ok(Representation { ring, dim, images })
    }

    /// The trivial one-dimensional representation.
    pub fn trivial(p: &Presentation, ring: CoeffRing) -> Self {
        let images = p.generators().iter().map(|g| (g.clone(), Matrix::identity(ring, 1))).collect();
        Representation { ring, dim: 1, images }
    }

    /// Parses the text format:
    ///
    /// ```text
    /// dim: 2
    /// ring: F2
    /// x1: [1, 1; 0, 1]
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut dim = None;
        let mut ring = None;
        let mut images = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once(':').ok_or_else(|| Error::parse(line, "expected `key: value`"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "dim" => dim = Some(value.parse::<usize>().map_err(|_| Error::parse(line, format!("bad dimension `{value}`")))?),
                "ring" => ring = Some(CoeffRing::parse(value).map_err(|e| Error::parse(line, e.to_string()))?),
                name => {
                    let r = ring.ok_or_else(|| Error::parse(line, "matrix before `ring:` line"))?;
                    let n = dim.ok_or_else(|| Error::parse(line, "matrix before `dim:` line"))?;
                    let m = Matrix::parse(r, value).map_err(|e| Error::parse(line, e))?;
                    if m.rows() != n || m.cols() != n {
                        return Err(Error::parse(line, format!("`{name}` is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
                    }
                    if images.insert(name.to_string(), m).is_some() {
                        return Err(Error::parse(line, format!("`{name}` given twice")));
                    }
                }
            }
        }
        let dim = dim.ok_or_else(|| Error::parse(0, "missing `dim:` line"))?;
        let ring = ring.ok_or_else(|| Error::parse(0, "missing `ring:` line"))?;
        Representation::new(ring, dim, images)
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, name: &str) -> Option<&Matrix> {
        self.images.get(name)
    }

    pub fn images(&self) -> impl Iterator<Item = (&str, &Matrix)> {
        self.images.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// The same images over another ring.
    pub fn coerce(&self, ring: CoeffRing) -> Result<Representation> {
        if ring == self.ring {
            return Ok(self.clone());
        }
        let images = self.images.iter().map(|(k, m)| Ok((k.clone(), m.convert(ring)?))).collect::<Result<_>>()?;
        Representation::new(ring, self.dim, images)
    }

    /// Images of the generators of `p` and their inverses, in generator order.
    fn resolve(&self, p: &Presentation) -> Result<Images> {
        let mut fwd = Vec::with_capacity(p.generator_count());
        let mut inv = Vec::with_capacity(p.generator_count());
        for g in p.generators() {
            let m = self.images.get(g).ok_or_else(|| Error::MissingImage(g.clone()))?;
            inv.push(m.inverse().ok_or_else(|| Error::NotInvertible(g.clone()))?);
            fwd.push(m.clone());
        }
        Ok(Images { ring: self.ring, dim: self.dim, fwd, inv })
    }

    /// `rho(w)` for a word over the generators of `p`.
    pub fn image_of_word(&self, p: &Presentation, w: &Word) -> Result<Matrix> {
        self.resolve(p)?.word(w)
    }

    /// Checks that every generator of `p` has an image, that no image
    /// names an unknown generator, and that every relator maps to the
    /// identity. Reports the first failing relator.
    pub fn verify(&self, p: &Presentation) -> Result<()> {
        if let Some(extra) = self.images.keys().find(|k| p.generator_index(k).is_none()) {
            return Err(Error::UnknownGenerator(extra.clone()));
        }
        let images = self.resolve(p)?;
        for (i, r) in p.relators().iter().enumerate() {
            if !images.word(r)?.is_identity() {
                return Err(Error::RelatorFails { index: i + 1, relator: p.display_word(r).to_string() });
            }
        }
        Ok(())
    }

    /// The dual representation `g -> rho(g^-1)^*`.
    pub fn dagger(&self) -> Result<Representation> {
        let mut images = BTreeMap::new();
        for (name, m) in &self.images {
            let inv = m.inverse().ok_or_else(|| Error::NotInvertible(name.clone()))?;
            images.insert(name.clone(), inv.conj_transpose());
        }
        Representation::new(self.ring, self.dim, images)
    }

    /// Extends the representation along the generators added by a Tietze
    /// run, sending each new generator `y = w` to `rho(w)`.
    pub fn extend_along(&self, run: &TietzeRun) -> Result<Representation> {
        let names = run.presentation.generators();
        let mut out = self.clone();
        for mv in &run.moves {
            if let TietzeMove::AddGenerator { name, word } = mv {
                let mut acc = Matrix::identity(self.ring, self.dim);
                for l in word.letters() {
                    let m = out.images.get(&names[l.generator]).ok_or_else(|| Error::MissingImage(names[l.generator].clone()))?;
                    let m = if l.inverse { m.inverse().ok_or_else(|| Error::NotInvertible(names[l.generator].clone()))? } else { m.clone() };
                    acc = acc.mul(&m);
                }
                out.images.insert(name.clone(), acc);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Representation {
    /// Writes the text format accepted by [`Representation::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim: {}", self.dim)?;
        writeln!(f, "ring: {}", self.ring)?;
        for (name, m) in &self.images {
            writeln!(f, "{name}: {m}")?;
        }
        Ok(())
    }
}

struct Images {
    ring: CoeffRing,
    dim: usize,
    fwd: Vec<Matrix>,
    inv: Vec<Matrix>,
}

impl Images {
    fn word(&self, w: &Word) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.ring, self.dim);
        for l in w.letters() {
            let table = if l.inverse { &self.inv } else { &self.fwd };
            let m = table.get(l.generator).ok_or(Error::InvalidIndex { index: l.generator, count: self.fwd.len() })?;
            acc = acc.mul(m);
        }
        Ok(acc)
    }
}

/// `Phi(e)` as an `n x n` polynomial matrix, where `Phi(w) = t^alpha(w) rho(w)`.
pub fn phi_apply(e: &GroupRingElement, p: &Presentation, rho: &Representation) -> Result<PolyMatrix> {
    phi_resolved(e, p, &rho.resolve(p)?)
}

fn phi_resolved(e: &GroupRingElement, p: &Presentation, images: &Images) -> Result<PolyMatrix> {
    let (ring, n) = (images.ring, images.dim);
    let mut entries = vec![vec![HalfLaurent::zero(ring); n]; n];
    for (w, c) in e.terms() {
        let m = images.word(w)?;
        let exp = 2 * p.alpha_of(w);
        let c = ring.from_i64(c);
        for (a, row) in entries.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                slot.add_term(exp, ring.mul(&c, m.get(a, b)));
            }
        }
    }
    Ok(PolyMatrix::from_rows(ring, entries))
}

fn check_column(p: &Presentation, k: usize) -> Result<()> {
    let count = p.generator_count();
    if k >= count {
        return Err(Error::InvalidIndex { index: k, count });
    }
    Ok(())
}

/// The Jacobian `A_{Phi,k}`: block `(i, j)` is `Phi(d r_i / d x_j)`, with
/// column `k` (0-based) removed. Square of size `(m-1) n`.
pub fn fox_jacobian(p: &Presentation, rho: &Representation, k: usize) -> Result<PolyMatrix> {
    check_column(p, k)?;
    jacobian_resolved(p, &rho.resolve(p)?, k)
}

fn jacobian_resolved(p: &Presentation, images: &Images, k: usize) -> Result<PolyMatrix> {
    let n = images.dim;
    let size = p.relators().len() * n;
    let mut a = PolyMatrix::zeros(images.ring, size, size);
    for (i, r) in p.relators().iter().enumerate() {
        for (col, j) in (0..p.generator_count()).filter(|&j| j != k).enumerate() {
            let block = phi_resolved(&fox_derivative(r, j), p, images)?;
            a.put_block(i * n, col * n, &block);
        }
    }
    Ok(a)
}

/// Integer matrix of augmented Fox derivatives, column `k` removed.
fn augmented_jacobian(p: &Presentation, k: usize) -> Matrix {
    let rows: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| (0..p.generator_count()).filter(|&j| j != k).map(|j| fox_derivative(r, j).augmentation()).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    if refs.is_empty() {
        return Matrix::zeros(CoeffRing::Integers, 0, 0);
    }
    Matrix::from_i64(CoeffRing::Integers, &refs)
}

/// `det Phi(x_k - 1)`.
fn column_denominator(p: &Presentation, images: &Images, k: usize) -> Result<HalfLaurent> {
    let mut e = GroupRingElement::from_word(Word::generator(k));
    e.add_term(Word::identity(), -1);
    phi_resolved(&e, p, images)?.det()
}

/// The Wada invariant `det A_{Phi,k} / det Phi(x_k - 1)`.
pub fn wada_invariant(p: &Presentation, rho: &Representation, k: usize) -> Result<RationalFunction> {
    check_column(p, k)?;
    wada_resolved(p, &rho.resolve(p)?, k)
}

fn wada_resolved(p: &Presentation, images: &Images, k: usize) -> Result<RationalFunction> {
    let den = column_denominator(p, images, k)?;
    if den.is_zero() {
        return Err(Error::VanishingDenominator { k });
    }
    let num = jacobian_resolved(p, images, k)?.det()?;
    RationalFunction::reduce(num, den)
}

/// The quantities `epsilon`, `delta`, `d` fixing the unit ambiguity.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationData {
    /// `det rho(meridian)`.
    pub epsilon: Coeff,
    /// Sign of `alpha(x_k) det A_{phi,k}`.
    pub delta: i32,
    pub d: HalfInt,
    /// Column removed from the Jacobian (0-based).
    pub k: usize,
}

pub fn normalization_data(p: &Presentation, rho: &Representation, k: usize) -> Result<NormalizationData> {
    check_column(p, k)?;
    let epsilon = rho.image_of_word(p, p.meridian())?.det();
    normalization_with(p, epsilon, k)
}

fn normalization_with(p: &Presentation, epsilon: Coeff, k: usize) -> Result<NormalizationData> {
    let a_k = p.alpha()[k];
    if a_k == 0 {
        return Err(Error::BadColumn { k });
    }
    let z = CoeffRing::Integers;
    let aug = augmented_jacobian(p, k).det();
    let sign = z.signum(&aug).expect("integer determinant");
    if sign == 0 {
        return Err(Error::Degenerate(format!("augmented Jacobian without column {} is singular", k + 1)));
    }
    let trivial = Images { ring: z, dim: 1, fwd: vec![Matrix::identity(z, 1); p.generator_count()], inv: vec![Matrix::identity(z, 1); p.generator_count()] };
    let alex = jacobian_resolved(p, &trivial, k)?.det()?;
    let (Some(h), Some(l)) = (alex.highest(), alex.lowest()) else {
        return Err(Error::Degenerate(format!("abelian Jacobian without column {} is singular", k + 1)));
    };
    Ok(NormalizationData { epsilon, delta: sign * a_k.signum() as i32, d: HalfInt::from_doubled((h + l) / 2 - a_k), k })
}

/// The normalized invariant `value * eps^eps_power`, with `eps = det rho(mu)`
/// kept formal.
///
/// The integral part of the `eps` exponent is folded into `value`, so
/// `eps_power` is always `0` or `-1/2`. Two invariants are equal exactly
/// when all fields agree.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedInvariant {
    value: RationalFunction,
    eps: Coeff,
    eps_power: HalfInt,
    n: usize,
}

impl NormalizedInvariant {
    /// The zero invariant, for representations with non-vanishing twisted homology.
    pub fn zero(ring: CoeffRing, n: usize) -> Self {
        let field = ring.fraction_field();
        NormalizedInvariant { value: RationalFunction::zero(field), eps: field.one(), eps_power: HalfInt::ZERO, n }
    }

    /// Builds `value * eps^power` and moves the integral part of `power`
    /// into `value`. `eps` must lie in the ring of `value`.
    pub fn from_parts(value: RationalFunction, eps: Coeff, power: HalfInt, n: usize) -> Result<Self> {
        let field = value.ring();
        let int_part = power.ceil();
        let frac = power - HalfInt::from_int(int_part);
        let factor = field.pow(&eps, int_part).ok_or_else(|| Error::NotInvertible("epsilon".into()))?;
        Ok(NormalizedInvariant { value: value.scale(&factor), eps, eps_power: frac, n })
    }

    pub fn value(&self) -> &RationalFunction {
        &self.value
    }

    pub fn eps(&self) -> &Coeff {
        &self.eps
    }

    pub fn eps_power(&self) -> HalfInt {
        self.eps_power
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> CoeffRing {
        self.value.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn neg(&self) -> Self {
        NormalizedInvariant { value: self.value.neg(), ..self.clone() }
    }

    /// `(-1)^n` times this invariant.
    pub fn sign_twisted(&self) -> Self {
        if self.n % 2 == 1 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Equality up to the ring tolerance; exact rings compare exactly.
    pub fn approx_eq(&self, other: &NormalizedInvariant) -> bool {
        let ring = self.ring();
        if ring != other.ring() || self.n != other.n {
            return false;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.eps_power == other.eps_power
            && (self.eps_power == HalfInt::ZERO || ring.eq(&self.eps, &other.eps))
            && self.value.approx_eq(&other.value)
    }
}

impl fmt::Display for NormalizedInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps_power == HalfInt::ZERO || self.ring().is_one(&self.eps) {
            write!(f, "{}", self.value)
        } else {
            write!(f, "({}) * eps^({}), eps = {}", self.value, self.eps_power, self.eps)
        }
    }
}

/// Everything computed on the way to the normalized invariant.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub invariant: NormalizedInvariant,
    pub data: NormalizationData,
    pub wada: RationalFunction,
}

/// Columns `k` with `alpha(x_k) != 0`, in increasing order.
pub fn admissible_columns(p: &Presentation) -> Vec<usize> {
    (0..p.generator_count()).filter(|&k| p.alpha()[k] != 0).collect()
}

/// Evaluates with a specific column `k` (0-based).
pub fn evaluate_at(p: &Presentation, rho: &Representation, k: usize) -> Result<Evaluation> {
    check_column(p, k)?;
    let images = rho.resolve(p)?;
    let epsilon = images.word(p.meridian())?.det();
    let data = normalization_with(p, epsilon, k)?;
    let wada = wada_resolved(p, &images, k)?;
    let n = rho.dim();
    if wada.is_zero() {
        return Ok(Evaluation { invariant: NormalizedInvariant::zero(rho.ring(), n), data, wada });
    }
    let mut value = wada.shift(-(n as i64) * data.d.doubled());
    if data.delta < 0 && n % 2 == 1 {
        value = value.neg();
    }
    let field = value.ring();
    let eps = field.convert(&rho.ring(), &data.epsilon)?;
    let invariant = NormalizedInvariant::from_parts(value, eps, -data.d, n)?;
    Ok(Evaluation { invariant, data, wada })
}

/// Evaluates with the smallest admissible column.
pub fn evaluate(p: &Presentation, rho: &Representation) -> Result<Evaluation> {
    let k = *admissible_columns(p).first().ok_or(Error::NoAdmissibleColumn)?;
    evaluate_at(p, rho, k)
}

/// The normalized twisted Alexander invariant.
///
/// Well defined for presentations strongly Tietze equivalent to a
/// Wirtinger presentation; that property cannot be checked here and is
/// the caller's obligation.
pub fn normalized_invariant(p: &Presentation, rho: &Representation) -> Result<NormalizedInvariant> {
    Ok(evaluate(p, rho)?.invariant)
}

pub fn normalized_invariant_at(p: &Presentation, rho: &Representation, k: usize) -> Result<NormalizedInvariant> {
    Ok(evaluate_at(p, rho, k)?.invariant)
}

/// Applies `t -> t^-1` and the coefficient involution. The formal base
/// becomes `conj(eps)^-1`, which is `det rho†(mu)`.
pub fn conjugate_invariant(inv: &NormalizedInvariant) -> NormalizedInvariant {
    if inv.is_zero() {
        return inv.clone();
    }
    let ring = inv.ring();
    let eps = ring.inv(&ring.conj(&inv.eps)).expect("epsilon is a unit");
    // conj(eps)^f = eps'^(-f), with -f in {0, 1/2}
    NormalizedInvariant::from_parts(inv.value.conjugate(), eps, -inv.eps_power, inv.n).expect("epsilon is a unit")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Presentation {
        Presentation::parse("gens: x y\nmeridian: x y^-1\nx^2 y^-3\n").unwrap()
    }

    fn q_poly(terms: &[(i64, i64)]) -> HalfLaurent {
        HalfLaurent::from_int_terms(CoeffRing::Rationals, terms)
    }

    #[test]
    fn trefoil_jacobians() {
        let p = trefoil();
        let rho = Representation::trivial(&p, CoeffRing::Integers);
        let z = |terms: &[(i64, i64)]| HalfLaurent::from_int_terms(CoeffRing::Integers, terms);
        assert_eq!(fox_jacobian(&p, &rho, 0).unwrap().get(0, 0), &z(&[(4, -1), (2, -1), (0, -1)]));
        assert_eq!(fox_jacobian(&p, &rho, 1).unwrap().get(0, 0), &z(&[(3, 1), (0, 1)]));
        let w = wada_invariant(&p, &rho, 0).unwrap();
        assert_eq!(w, RationalFunction::reduce(q_poly(&[(4, -1), (2, -1), (0, -1)]), q_poly(&[(3, 1), (0, -1)])).unwrap());
    }

    #[test]
    fn trefoil_normalization() {
        let p = trefoil();
        let rho = Representation::trivial(&p, CoeffRing::Rationals);
        let d0 = normalization_data(&p, &rho, 0).unwrap();
        assert_eq!((d0.delta, d0.d), (-1, HalfInt::from_doubled(1)));
        let d1 = normalization_data(&p, &rho, 1).unwrap();
        assert_eq!((d1.delta, d1.d), (1, HalfInt::from_doubled(1)));
        let a = normalized_invariant_at(&p, &rho, 0).unwrap();
        let b = normalized_invariant_at(&p, &rho, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(t - 1 + t^-1)/(t^(1/2) - t^(-1/2))");
    }

    #[test]
    fn unknot() {
        let p = Presentation::parse("gens: x\nmeridian: x\n").unwrap();
        let rho = Representation::trivial(&p, CoeffRing::Rationals);
        let e = evaluate(&p, &rho).unwrap();
        assert_eq!((e.data.delta, e.data.d), (1, HalfInt::from_doubled(-1)));
        assert_eq!(e.invariant.to_string(), "1/(t^(1/2) - t^(-1/2))");
        assert_eq!(conjugate_invariant(&e.invariant), e.invariant.neg());
    }

    #[test]
    fn phi_of_simple_elements() {
        let p = Presentation::parse("gens: x\nmeridian: x\n").unwrap();
        let rho = Representation::trivial(&p, CoeffRing::Integers);
        let mut e = GroupRingElement::one();
        e.add_term(Word::generator(0), -1);
        let m = phi_apply(&e, &p, &rho).unwrap();
        assert_eq!(m.get(0, 0), &HalfLaurent::from_int_terms(CoeffRing::Integers, &[(0, 1), (1, -1)]));
    }

    #[test]
    fn parse_and_verify() {
        let p = trefoil();
        let rho = Representation::parse("dim: 1\nring: Q\nx: [1]\ny: [1]\n").unwrap();
        rho.verify(&p).unwrap();
        let bad = Representation::parse("dim: 1\nring: Q\nx: [2]\ny: [1]\n").unwrap();
        assert!(matches!(bad.verify(&p), Err(Error::RelatorFails { index: 1, .. })));
        let missing = Representation::parse("dim: 1\nring: Q\nx: [1]\n").unwrap();
        assert!(matches!(missing.verify(&p), Err(Error::MissingImage(_))));
        assert!(matches!(Representation::parse("dim: 2\nring: Q\nx: [1]\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(Representation::parse("dim: 1\nring: Q\nx: [0]\n"), Err(Error::NotInvertible(_))));
        assert!(matches!(Representation::parse("dim: 1\nx: [1]\n"), Err(Error::Parse { line: 2, .. })));
        assert_eq!(Representation::parse(&rho.to_string()).unwrap(), rho);
    }

    #[test]
    fn formal_square_root_of_epsilon() {
        // unknot with rho(x) = 2: eps^(1/2) t^(1/2) / (2t - 1) = (2 t^(1/2) / (2t - 1)) eps^(-1/2)
        let p = Presentation::parse("gens: x\nmeridian: x\n").unwrap();
        let rho = Representation::parse("dim: 1\nring: Q\nx: [2]\n").unwrap();
        let inv = normalized_invariant(&p, &rho).unwrap();
        assert_eq!(inv.eps_power(), HalfInt::from_doubled(-1));
        let expected = RationalFunction::reduce(HalfLaurent::t_pow(CoeffRing::Rationals, 1), q_poly(&[(1, 2), (0, -1)])).unwrap().scale(&CoeffRing::Rationals.from_i64(2));
        assert_eq!(inv.value(), &expected);
        let back = conjugate_invariant(&conjugate_invariant(&inv));
        assert_eq!(back, inv);
    }
}
