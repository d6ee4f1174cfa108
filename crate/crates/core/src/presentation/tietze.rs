use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Presentation;
use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};

/// Longest relator the random driver will create by conjugation or product.
const MAX_RELATOR_LEN: usize = 32;
/// Most generators the random driver will add to one presentation.
const MAX_NEW_GENERATORS: usize = 3;

/// One strong Tietze transformation. Relator indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TietzeMove {
    /// `r_i -> r_i^-1`
    Invert { relator: usize },
    /// `r_i -> w r_i w^-1`
    Conjugate { relator: usize, word: Word },
    /// `r_i -> r_i r_j`
    Multiply { relator: usize, by: usize },
    /// New generator `y` with new relator `y w^-1`.
    AddGenerator { name: String, word: Word },
}

impl TietzeMove {
    /// Human-readable description against the generator names in force
    /// when the move was applied.
    pub fn describe(&self, names: &[String]) -> String {
        match self {
            TietzeMove::Invert { relator } => format!("Ia: invert r{}", relator + 1),
            TietzeMove::Conjugate { relator, word } => format!("Ib: conjugate r{} by {}", relator + 1, word.display(names)),
            TietzeMove::Multiply { relator, by } => format!("Ic: r{} -> r{} r{}", relator + 1, relator + 1, by + 1),
            TietzeMove::AddGenerator { name, word } => format!("II: add {name} = {}", word.display(names)),
        }
    }
}

impl Presentation {
    fn check_relator(&self, i: usize) -> Result<()> {
        let count = self.relators.len();
        if i >= count {
            return Err(Error::InvalidIndex { index: i, count });
        }
        Ok(())
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        let count = self.generators.len();
        match w.max_generator() {
            Some(g) if g >= count => Err(Error::InvalidIndex { index: g, count }),
            _ => Ok(()),
        }
    }

    pub fn tietze_ia(&self, i: usize) -> Result<Presentation> {
        self.check_relator(i)?;
        let mut relators = self.relators.clone();
        relators[i] = relators[i].inverse();
        self.with_relators(relators)
    }

    pub fn tietze_ib(&self, i: usize, w: &Word) -> Result<Presentation> {
        self.check_relator(i)?;
        self.check_word(w)?;
        let mut relators = self.relators.clone();
        relators[i] = relators[i].conjugate_by(w);
        self.with_relators(relators)
    }

    pub fn tietze_ic(&self, i: usize, j: usize) -> Result<Presentation> {
        self.check_relator(i)?;
        self.check_relator(j)?;
        if i == j {
            return Err(Error::SameRelator { i });
        }
        let mut relators = self.relators.clone();
        relators[i] = relators[i].multiply(&relators[j]);
        self.with_relators(relators)
    }

    /// Adds generator `name` (the next index) and relator `name w^-1`.
    pub fn tietze_ii(&self, w: &Word, name: &str) -> Result<Presentation> {
        self.check_word(w)?;
        if self.generator_index(name).is_some() {
            return Err(Error::NameCollision(name.to_string()));
        }
        let mut generators = self.generators.clone();
        generators.push(name.to_string());
        let y = Word::generator(self.generators.len());
        let mut relators = self.relators.clone();
        relators.push(y.multiply(&w.inverse()));
        Presentation::new(generators, relators, self.meridian.clone())
    }

    pub fn apply(&self, mv: &TietzeMove) -> Result<Presentation> {
        match mv {
            TietzeMove::Invert { relator } => self.tietze_ia(*relator),
            TietzeMove::Conjugate { relator, word } => self.tietze_ib(*relator, word),
            TietzeMove::Multiply { relator, by } => self.tietze_ic(*relator, *by),
            TietzeMove::AddGenerator { name, word } => self.tietze_ii(word, name),
        }
    }
}

/// Result of [`random_tietze_sequence`]: the final presentation and the
/// moves that produced it, in order.
#[derive(Debug, Clone)]
pub struct TietzeRun {
    pub presentation: Presentation,
    pub moves: Vec<TietzeMove>,
}

impl TietzeRun {
    /// One line per move, naming generators as they were at that step.
    pub fn transcript(&self) -> Vec<String> {
        let mut names: Vec<String> = self.presentation.generators.clone();
        let added = self.moves.iter().filter(|m| matches!(m, TietzeMove::AddGenerator { .. })).count();
        names.truncate(names.len() - added);
        let mut lines = Vec::with_capacity(self.moves.len());
        for mv in &self.moves {
            lines.push(mv.describe(&names));
            if let TietzeMove::AddGenerator { name, .. } = mv {
                names.push(name.clone());
            }
        }
        lines
    }
}

impl fmt::Display for TietzeRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.transcript().iter().enumerate() {
            writeln!(f, "{:>4}. {line}", i + 1)?;
        }
        Ok(())
    }
}

fn random_word(rng: &mut ChaCha8Rng, generators: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=3);
        let w = Word::from_letters((0..len).map(|_| Letter::new(rng.gen_range(0..generators), rng.gen_bool(0.5))));
        if !w.is_identity() {
            return w;
        }
    }
}

fn fresh_name(p: &Presentation) -> String {
    (0..).map(|i| format!("y{i}")).find(|n| p.generator_index(n).is_none()).expect("unbounded supply of names")
}

/// Applies `steps` random strong Tietze moves, deterministically in `seed`.
///
/// Moves keep relators at most 32 letters long (a conjugation that would
/// exceed this becomes a cyclic rotation, an oversize product becomes an
/// inversion) and add at most three generators (further additions become
/// conjugations).
pub fn random_tietze_sequence(p: &Presentation, steps: usize, seed: u64) -> TietzeRun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = p.clone();
    let mut moves = Vec::with_capacity(steps);
    let mut added = 0;
    for _ in 0..steps {
        let r = current.relators.len();
        let mut kind = rng.gen_range(0..4u8);
        if kind == 3 && added >= MAX_NEW_GENERATORS {
            kind = 1;
        }
        if r == 0 {
            kind = 3;
        }
        if kind == 2 && r < 2 {
            kind = 0;
        }
        let mv = match kind {
            0 => TietzeMove::Invert { relator: rng.gen_range(0..r) },
            1 => {
                let i = rng.gen_range(0..r);
                let mut word = random_word(&mut rng, current.generators.len());
                if current.relators[i].conjugate_by(&word).len() > MAX_RELATOR_LEN {
                    word = match current.relators[i].letters().first() {
                        Some(l) => Word::from_letters([l.inv()]),
                        None => Word::identity(),
                    };
                }
                TietzeMove::Conjugate { relator: i, word }
            }
            2 => {
                let i = rng.gen_range(0..r);
                let j = (i + rng.gen_range(1..r)) % r;
                if current.relators[i].multiply(&current.relators[j]).len() > MAX_RELATOR_LEN {
                    TietzeMove::Invert { relator: i }
                } else {
                    TietzeMove::Multiply { relator: i, by: j }
                }
            }
            _ => {
                added += 1;
                let word = random_word(&mut rng, current.generators.len());
                TietzeMove::AddGenerator { name: fresh_name(&current), word }
            }
        };
        current = current.apply(&mv).expect("random moves are valid by construction");
        moves.push(mv);
    }
    TietzeRun { presentation: current, moves }
}
