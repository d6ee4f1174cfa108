//! Loading presentations and representations from disk, and mapping
//! library errors onto process exit codes.

use std::fmt;
use std::path::Path;

use twisted_alexander::algebra::CoeffRing;
use twisted_alexander::presentation::{wirtinger_from_pd, PdCode, Presentation};
use twisted_alexander::twisted::Representation;
use twisted_alexander::Error;

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;
pub const EXIT_DEGENERATE: u8 = 4;

/// An error message together with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    /// Attaches `context` (usually a file name) and picks the exit code
    /// from the error kind.
    pub fn from_error(context: &str, e: &Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::MalformedPd(_) | Error::NotPrime(_) => EXIT_PARSE,
            Error::RelatorFails { .. }
            | Error::MissingImage(_)
            | Error::UnknownGenerator(_)
            | Error::NotInvertible(_)
            | Error::BadShape { .. }
            | Error::RingMismatch(..) => EXIT_VERIFY,
            Error::Deficiency { .. }
            | Error::NotKnotGroup(_)
            | Error::Degenerate(_)
            | Error::NoAdmissibleColumn
            | Error::BadColumn { .. }
            | Error::VanishingDenominator { .. } => EXIT_DEGENERATE,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, format!("{context}: {e}"))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

/// A `.pd` file, or any file whose first content line is a crossing, is
/// read as a PD code; everything else as a presentation.
pub fn parse_presentation(text: &str, path: &Path) -> Result<Presentation, Failure> {
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
    let is_pd = path.extension().is_some_and(|e| e == "pd") || first.is_some_and(|l| l.starts_with('X'));
    let ctx = path.display().to_string();
    if is_pd {
        let pd = PdCode::parse(text).map_err(|e| Failure::from_error(&ctx, &e))?;
        wirtinger_from_pd(&pd).map_err(|e| Failure::from_error(&ctx, &e))
    } else {
        Presentation::parse(text).map_err(|e| Failure::from_error(&ctx, &e))
    }
}

/// Where the representation comes from: a file, or the trivial
/// one-dimensional representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RepSource {
    Trivial,
    File(std::path::PathBuf),
}

impl RepSource {
    pub fn from_arg(arg: Option<&Path>) -> Self {
        match arg {
            None => RepSource::Trivial,
            Some(p) if p.as_os_str() == "trivial" => RepSource::Trivial,
            Some(p) => RepSource::File(p.to_path_buf()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            RepSource::Trivial => "trivial".into(),
            RepSource::File(p) => p.display().to_string(),
        }
    }
}

/// Builds and verifies the representation. `ring` selects the ring of the
/// trivial representation, or coerces one read from a file.
pub fn load_representation(text: Option<&str>, source: &RepSource, p: &Presentation, ring: Option<CoeffRing>) -> Result<Representation, Failure> {
    let ctx = source.label();
    let rho = match text {
        None => Representation::trivial(p, ring.unwrap_or(CoeffRing::Rationals)),
        Some(t) => {
            let rho = Representation::parse(t).map_err(|e| Failure::from_error(&ctx, &e))?;
            match ring {
                Some(r) if r != rho.ring() => rho.coerce(r).map_err(|e| Failure::from_error(&ctx, &e))?,
                _ => rho,
            }
        }
    };
    rho.verify(p).map_err(|e| Failure::from_error(&ctx, &e))?;
    Ok(rho)
}

pub fn parse_ring(text: &str) -> Result<CoeffRing, Failure> {
    CoeffRing::parse(text).map_err(|_| Failure::new(EXIT_PARSE, format!("unknown ring `{text}` (expected Z, Q, F<p> or C)")))
}
