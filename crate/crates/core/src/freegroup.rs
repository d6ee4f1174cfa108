//! Free-group words, the integral group ring, and Fox derivatives.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// One letter of a word: a generator index raised to `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

/// A freely reduced word in the free group on numbered generators.
///
/// Every constructor reduces eagerly, so two words are equal as group
/// elements exactly when they are equal as values.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: usize) -> Self {
        Word { letters: vec![Letter::new(index, false)] }
    }

    pub fn generator_inverse(index: usize) -> Self {
        Word { letters: vec![Letter::new(index, true)] }
    }

    /// `x_index^exp` for any integer exponent.
    pub fn power_of(index: usize, exp: i64) -> Self {
        let letter = Letter::new(index, exp < 0);
        Word { letters: vec![letter; exp.unsigned_abs() as usize] }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds a word from `(generator, ±1)` pairs.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        Word::from_letters(pairs.iter().flat_map(|&(g, e)| {
            let l = Letter::new(g, e < 0);
            std::iter::repeat_n(l, e.unsigned_abs() as usize)
        }))
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        (0..exp.unsigned_abs()).fold(Word::identity(), |acc, _| acc.multiply(&base))
    }

    /// `w self w^-1`.
    pub fn conjugate_by(&self, w: &Word) -> Word {
        w.multiply(self).multiply(&w.inverse())
    }

    /// Exponent sum of each generator, indexed `0..generators`.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0; generators];
        for l in &self.letters {
            if l.generator < generators {
                sums[l.generator] += l.exponent();
            }
        }
        sums
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Parses `y x y^-1 z'` style text against a list of generator names.
    ///
    /// Tokens are separated by whitespace, `*` or `.`; a token is a name
    /// optionally followed by `^k` (any integer) or one or more `'`.
    /// The token `1` is the identity.
    pub fn parse(text: &str, names: &[String], line: usize) -> Result<Word> {
        let mut w = Word::identity();
        for token in text.split(|c: char| c.is_whitespace() || c == '*' || c == '.') {
            if token.is_empty() || token == "1" {
                continue;
            }
            let (base, exp) = split_power(token).ok_or_else(|| Error::parse(line, format!("bad word token `{token}`")))?;
            let index = names
                .iter()
                .position(|n| n == base)
                .ok_or_else(|| Error::UnknownGenerator(base.to_string()))?;
            w = w.multiply(&Word::power_of(index, exp));
        }
        Ok(w)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

fn split_power(token: &str) -> Option<(&str, i64)> {
    if let Some((base, exp)) = token.split_once('^') {
        let exp = exp.trim_start_matches('(').trim_end_matches(')');
        return Some((valid_name(base)?, exp.parse().ok()?));
    }
    let primes = token.len() - token.trim_end_matches('\'').len();
    let base = valid_name(&token[..token.len() - primes])?;
    let exp = if primes % 2 == 1 { -1 } else { 1 };
    Some((base, exp))
}

fn valid_name(s: &str) -> Option<&str> {
    let mut chars = s.chars();
    let first = chars.next()?;
    if (first.is_alphabetic() || first == '_') && chars.all(|c| c.is_alphanumeric() || c == '_') {
        Some(s)
    } else {
        None
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        // runs of one letter print as a power: x x y' -> x^2 y^-1
        let letters = &self.word.letters;
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let run = letters[i..].iter().take_while(|&&m| m == l).count();
            if i > 0 {
                write!(f, " ")?;
            }
            match self.names.get(l.generator) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "g{}", l.generator)?,
            }
            let exp = run as i64 * l.exponent();
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// A finite integer combination of words: an element of `Z[F]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        GroupRingElement::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        GroupRingElement::from_term(w, 1)
    }

    pub fn from_term(w: Word, c: i64) -> Self {
        let mut e = GroupRingElement::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(w).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &GroupRingElement) -> GroupRingElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement { terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect() }
    }

    pub fn multiply(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.multiply(b), ca * cb);
            }
        }
        out
    }

    /// Left multiplication by a single word.
    pub fn left_mul_word(&self, w: &Word) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (v, c) in self.terms() {
            out.add_term(w.multiply(v), c);
        }
        out
    }

    /// Image under the augmentation `w -> 1`.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

/// Fox free derivative `∂w/∂x_j`.
pub fn fox_derivative(w: &Word, j: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l.inverse {
            prefix.push(l);
            if l.generator == j {
                out.add_term(prefix.clone(), -1);
            }
        } else {
            if l.generator == j {
                out.add_term(prefix.clone(), 1);
            }
            prefix.push(l);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    fn w(text: &str) -> Word {
        Word::parse(text, &names("x y z"), 1).unwrap()
    }

    #[test]
    fn multiply_cancels() {
        assert_eq!(w("x").multiply(&w("x^-1")), Word::identity());
        assert_eq!(w("x y").multiply(&w("y^-1 z")), w("x z"));
        assert_eq!(Word::identity().multiply(&w("x y'")), w("x y'"));
    }

    #[test]
    fn inverse_reverses_and_flips() {
        assert_eq!(w("x y^-1").inverse(), w("y x^-1"));
        assert_eq!(Word::identity().inverse(), Word::identity());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(w("x x x"), w("x^3"));
        assert_eq!(w("x'"), w("x^-1"));
        assert_eq!(w("x''"), w("x"));
        assert_eq!(w("x*y.z"), w("x y z"));
        assert_eq!(w("1"), Word::identity());
        assert_eq!(w("x^(-2)"), w("x' x'"));
        assert!(matches!(Word::parse("x q", &names("x y"), 3), Err(Error::UnknownGenerator(g)) if g == "q"));
        assert!(matches!(Word::parse("x^a", &names("x"), 3), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn fox_basic_cases() {
        assert_eq!(fox_derivative(&w("x"), 0), GroupRingElement::one());
        assert_eq!(fox_derivative(&w("y"), 0), GroupRingElement::zero());
        assert_eq!(fox_derivative(&w("x^-1"), 0), GroupRingElement::from_term(w("x^-1"), -1));
    }

    #[test]
    fn fox_conjugation_relator() {
        // ∂(y x y^-1 z^-1)/∂y = 1 - y x y^-1
        let d = fox_derivative(&w("y x y^-1 z^-1"), 1);
        let expected = GroupRingElement::one().sub(&GroupRingElement::from_word(w("y x y^-1")));
        assert_eq!(d, expected);
    }

    #[test]
    fn fox_torus_relator() {
        // ∂(x^p y^-q)/∂x = 1 + x + ... + x^{p-1}
        for p in 2..6 {
            let r = Word::power_of(0, p).multiply(&Word::power_of(1, -3));
            let mut expected = GroupRingElement::zero();
            for i in 0..p {
                expected.add_term(Word::power_of(0, i), 1);
            }
            assert_eq!(fox_derivative(&r, 0), expected);
        }
    }

    #[test]
    fn ring_arithmetic() {
        let one = GroupRingElement::one();
        let x = GroupRingElement::from_word(w("x"));
        let lhs = one.sub(&x).multiply(&one.add(&x));
        assert_eq!(lhs, one.sub(&GroupRingElement::from_word(w("x^2"))));
        assert_eq!(x.add(&GroupRingElement::zero()), x);
        let y = GroupRingElement::from_word(w("y"));
        let z = GroupRingElement::from_word(w("z"));
        assert_eq!(x.add(&y).multiply(&z), x.multiply(&z).add(&y.multiply(&z)));
    }
}
