//! Knot-group presentations: text format, abelianization, Wirtinger
//! presentations from PD codes and strong Tietze transformations.

mod pd;
mod smith;
mod tietze;

use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::Word;

pub use pd::{wirtinger_from_pd, Crossing, CrossingSign, PdCode};
pub use smith::{smith_normal_form, SmithForm};
pub use tietze::{random_tietze_sequence, TietzeMove, TietzeRun};

/// A deficiency-one presentation of a knot group with a chosen meridian.
///
/// The abelianization `alpha` (exponent of `t` for each generator) is
/// always computed from the relators, never taken on trust.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    meridian: Word,
    alpha: Vec<i64>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>, meridian: Word) -> Result<Self> {
        let m = generators.len();
        for (i, name) in generators.iter().enumerate() {
            if generators[..i].contains(name) {
                return Err(Error::NameCollision(name.clone()));
            }
        }
        if relators.len() + 1 != m {
            return Err(Error::Deficiency { generators: m, relators: relators.len() });
        }
        for w in relators.iter().chain(std::iter::once(&meridian)) {
            if let Some(g) = w.max_generator().filter(|&g| g >= m) {
                return Err(Error::InvalidIndex { index: g, count: m });
            }
        }
        let alpha = abelianize(m, &relators, &meridian)?;
        Ok(Presentation { generators, relators, meridian, alpha })
    }

    /// Parses the text format:
    ///
    /// ```text
    /// gens: x y
    /// meridian: x y^-1
    /// x x y^-1 y^-1 y^-1
    /// ```
    ///
    /// Blank lines and `#` comments are ignored; every other line after
    /// the header is one relator.
    pub fn parse(text: &str) -> Result<Self> {
        let mut generators: Option<Vec<String>> = None;
        let mut meridian: Option<(usize, String)> = None;
        let mut relators = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("gens:") {
                generators = Some(rest.split_whitespace().map(String::from).collect());
            } else if let Some(rest) = content.strip_prefix("meridian:") {
                meridian = Some((line, rest.trim().to_string()));
            } else {
                let names = generators.as_ref().ok_or_else(|| Error::parse(line, "relator before `gens:` header"))?;
                relators.push(parse_word_at(content, names, line)?);
            }
        }
        let generators = generators.ok_or_else(|| Error::parse(0, "missing `gens:` header"))?;
        let (mline, mtext) = meridian.ok_or_else(|| Error::parse(0, "missing `meridian:` line"))?;
        let meridian = parse_word_at(&mtext, &generators, mline)?;
        Presentation::new(generators, relators, meridian)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn meridian(&self) -> &Word {
        &self.meridian
    }

    /// Exponent of `t` in the image of each generator.
    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    /// Exponent of `t` in the image of a word.
    pub fn alpha_of(&self, w: &Word) -> i64 {
        w.letters().iter().map(|l| l.exponent() * self.alpha[l.generator]).sum()
    }

    /// Recomputes the abelianization from the relators.
    pub fn abelianize(&self) -> Result<Vec<i64>> {
        abelianize(self.generators.len(), &self.relators, &self.meridian)
    }

    /// Parses a word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.generators, 0)
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> impl fmt::Display + 'a {
        w.display(&self.generators)
    }

    pub(crate) fn with_relators(&self, relators: Vec<Word>) -> Result<Self> {
        Presentation::new(self.generators.clone(), relators, self.meridian.clone())
    }
}

fn parse_word_at(text: &str, names: &[String], line: usize) -> Result<Word> {
    Word::parse(text, names, line).map_err(|e| match e {
        Error::UnknownGenerator(g) => Error::parse(line, format!("unknown generator `{g}`")),
        other => other,
    })
}

/// Computes `alpha: G -> Z` from exponent sums via Smith normal form,
/// checking that the abelianization is infinite cyclic and that the
/// meridian maps to a generator. The sign is fixed by `alpha(meridian) = 1`.
pub fn abelianize(generators: usize, relators: &[Word], meridian: &Word) -> Result<Vec<i64>> {
    let m = generators;
    if m == 0 {
        return Err(Error::NotKnotGroup("no generators".into()));
    }
    let rows: Vec<Vec<i64>> = relators.iter().map(|r| r.exponent_sums(m)).collect();
    let snf = smith_normal_form(&rows, m);
    if snf.rank() != m - 1 {
        return Err(Error::NotKnotGroup(format!("first homology has rank {}", m - snf.rank())));
    }
    if let Some(d) = snf.invariants.iter().find(|&&d| d != 1) {
        return Err(Error::NotKnotGroup(format!("first homology has torsion Z/{d}")));
    }
    let mut alpha: Vec<i64> = snf.right.iter().map(|row| row[m - 1] as i64).collect();
    let mu: i64 = meridian.exponent_sums(m).iter().zip(&alpha).map(|(e, a)| e * a).sum();
    match mu {
        1 => {}
        -1 => alpha.iter_mut().for_each(|a| *a = -*a),
        _ => return Err(Error::NotKnotGroup(format!("meridian maps to t^{mu}, not a generator"))),
    }
    Ok(alpha)
}

impl fmt::Display for Presentation {
    /// Writes the text format accepted by [`Presentation::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        writeln!(f, "meridian: {}", self.meridian.display(&self.generators))?;
        for r in &self.relators {
            writeln!(f, "{}", r.display(&self.generators))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_knot_alpha() {
        let p = Presentation::parse("gens: x y\nmeridian: x y^-1\nx^2 y^-3\n").unwrap();
        assert_eq!(p.alpha(), &[3, 2]);
    }

    #[test]
    fn alpha_sign_follows_meridian() {
        let p = Presentation::parse("gens: x y\nmeridian: y x^-1\nx^2 y^-3\n").unwrap();
        assert_eq!(p.alpha(), &[-3, -2]);
    }

    #[test]
    fn fibered_style_alpha() {
        // trefoil as a mapping torus: h a h^-1 = b, h b h^-1 = b a^-1
        let p = Presentation::parse("gens: a b h\nmeridian: h\nh a h^-1 b^-1\nh b h^-1 a b^-1\n").unwrap();
        assert_eq!(p.alpha(), &[0, 0, 1]);
    }

    #[test]
    fn unknot() {
        let p = Presentation::parse("gens: x\nmeridian: x\n").unwrap();
        assert_eq!(p.alpha(), &[1]);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn rejects_non_knot_groups() {
        // Z/2 * Z has torsion in H_1
        let err = Presentation::parse("gens: x y\nmeridian: y\nx^2\n").unwrap_err();
        assert!(matches!(err, Error::NotKnotGroup(_)), "{err}");
        let err = Presentation::parse("gens: x y\nmeridian: x^2\nx y^-1\n").unwrap_err();
        assert!(matches!(err, Error::NotKnotGroup(_)), "{err}");
        let err = Presentation::parse("gens: x y\nmeridian: x\n").unwrap_err();
        assert!(matches!(err, Error::Deficiency { generators: 2, relators: 0 }));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Presentation::parse("gens: x y\nmeridian: x\n\nx q y^-1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = Presentation::parse("gens: x y\nx y^-1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert!(matches!(Presentation::parse("x y\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn text_round_trip() {
        let p = Presentation::parse("# trefoil\ngens: x y\nmeridian: x y^-1\nx x y' y' y'  # comment\n").unwrap();
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
    }
}
