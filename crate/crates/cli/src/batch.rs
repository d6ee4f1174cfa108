//! Manifest-driven batch evaluation with a content-addressed record cache.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use twisted_alexander::algebra::CoeffRing;
use twisted_alexander::twisted::evaluate;

use crate::input::{load_representation, parse_presentation, read_text, Failure, RepSource, EXIT_PARSE};
use crate::render::{key_values, summary};

const RECORD_HEADER: &str = "tai-record 1";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hashes of the raw inputs; the representation hash of the trivial
/// representation is the hash of the word `trivial`.
pub struct InputHashes {
    pub presentation: String,
    pub representation: String,
}

impl InputHashes {
    pub fn new(pres_text: &str, rep_text: Option<&str>) -> Self {
        InputHashes { presentation: sha256_hex(pres_text.as_bytes()), representation: sha256_hex(rep_text.unwrap_or("trivial").as_bytes()) }
    }

    /// Cache key; the ring override is part of the input.
    pub fn key(&self, ring: Option<CoeffRing>) -> String {
        let ring = ring.map(|r| r.to_string()).unwrap_or_default();
        sha256_hex(format!("{RECORD_HEADER}\n{}\n{}\n{ring}\n", self.presentation, self.representation).as_bytes())
    }
}

/// A full record: header, input hashes, then the invariant summary.
pub fn record_text(hashes: &InputHashes, body: &[(&str, String)]) -> String {
    let mut out = format!("{RECORD_HEADER}\npresentation-sha256: {}\nrepresentation-sha256: {}\n", hashes.presentation, hashes.representation);
    out.push_str(&key_values(body));
    out
}

fn record_field<'a>(record: &'a str, key: &str) -> Option<&'a str> {
    record.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

/// Writes through a temporary file and a rename, so readers never see a
/// partial record.
fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub presentation: PathBuf,
    pub representation: RepSource,
}

/// One `presentation [representation]` pair per line. Relative paths are
/// resolved against the manifest's directory.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<Entry>, Failure> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let (pres, rep) = match fields.as_slice() {
            [p] => (*p, None),
            [p, r] => (*p, Some(*r)),
            _ => return Err(Failure::new(EXIT_PARSE, format!("manifest line {}: expected `presentation [representation]`", idx + 1))),
        };
        let representation = match rep {
            None | Some("trivial") => RepSource::Trivial,
            Some(r) => RepSource::File(base.join(r)),
        };
        out.push(Entry { presentation: base.join(pres), representation });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Computed,
    CacheHit,
    Error,
}

impl Status {
    fn label(&self) -> &'static str {
        match self {
            Status::Computed => "computed",
            Status::CacheHit => "cache hit",
            Status::Error => "error",
        }
    }
}

pub struct Row {
    pub entry: Entry,
    pub status: Status,
    /// The invariant, or the error message.
    pub detail: String,
    pub record: Option<String>,
}

enum Prepared {
    Failed(String),
    Ready { key: String, hashes: InputHashes, pres: String, rep: Option<String> },
}

fn prepare(entry: &Entry, ring: Option<CoeffRing>) -> Prepared {
    let pres = match read_text(&entry.presentation) {
        Ok(t) => t,
        Err(f) => return Prepared::Failed(f.message),
    };
    let rep = match &entry.representation {
        RepSource::Trivial => None,
        RepSource::File(p) => match read_text(p) {
            Ok(t) => Some(t),
            Err(f) => return Prepared::Failed(f.message),
        },
    };
    let hashes = InputHashes::new(&pres, rep.as_deref());
    Prepared::Ready { key: hashes.key(ring), hashes, pres, rep }
}

fn compute(entry: &Entry, pres: &str, rep: Option<&str>, hashes: &InputHashes, ring: Option<CoeffRing>) -> Result<String, Failure> {
    let p = parse_presentation(pres, &entry.presentation)?;
    let rho = load_representation(rep, &entry.representation, &p, ring)?;
    let e = evaluate(&p, &rho).map_err(|err| Failure::from_error(&entry.presentation.display().to_string(), &err))?;
    Ok(record_text(hashes, &summary(&e, &rho.ring().to_string())))
}

/// Runs every entry. Each distinct key is computed at most once per run
/// and never when its record is already cached.
pub fn run(entries: &[Entry], cache: &Path, ring: Option<CoeffRing>) -> Result<Vec<Row>, Failure> {
    fs::create_dir_all(cache).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", cache.display())))?;
    let prepared: Vec<Prepared> = entries.par_iter().map(|e| prepare(e, ring)).collect();

    // first occurrence of each key that is not yet cached gets computed
    let mut owners: HashMap<&str, usize> = HashMap::new();
    let mut work = Vec::new();
    for (i, p) in prepared.iter().enumerate() {
        if let Prepared::Ready { key, .. } = p {
            if owners.contains_key(key.as_str()) {
                continue;
            }
            owners.insert(key, i);
            if !cache.join(format!("{key}.rec")).exists() {
                work.push(i);
            }
        }
    }
    let results: HashMap<usize, Result<String, String>> = work
        .par_iter()
        .map(|&i| {
            let Prepared::Ready { key, hashes, pres, rep } = &prepared[i] else { unreachable!() };
            let out = compute(&entries[i], pres, rep.as_deref(), hashes, ring).map_err(|f| f.message);
            if let Ok(record) = &out {
                if let Err(e) = write_atomic(&cache.join(format!("{key}.rec")), record) {
                    return (i, Err(format!("cache write failed: {e}")));
                }
            }
            (i, out)
        })
        .collect();

    let mut rows = Vec::with_capacity(entries.len());
    for (i, p) in prepared.iter().enumerate() {
        let entry = entries[i].clone();
        let row = match p {
            Prepared::Failed(msg) => Row { entry, status: Status::Error, detail: msg.clone(), record: None },
            Prepared::Ready { key, .. } => {
                let owner = owners[key.as_str()];
                match results.get(&owner) {
                    Some(Err(msg)) => Row { entry, status: Status::Error, detail: msg.clone(), record: None },
                    Some(Ok(record)) if owner == i => Row { entry, status: Status::Computed, detail: invariant_of(record), record: Some(record.clone()) },
                    _ => match fs::read_to_string(cache.join(format!("{key}.rec"))) {
                        Ok(record) => Row { entry, status: Status::CacheHit, detail: invariant_of(&record), record: Some(record) },
                        Err(e) => Row { entry, status: Status::Error, detail: format!("cache read failed: {e}"), record: None },
                    },
                }
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

fn invariant_of(record: &str) -> String {
    record_field(record, "invariant").unwrap_or("?").to_string()
}

pub fn table(rows: &[Row]) -> String {
    let mut out = String::from("#\tstatus\tpresentation\trepresentation\tinvariant\n");
    for (i, r) in rows.iter().enumerate() {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            i + 1,
            r.status.label(),
            r.entry.presentation.display(),
            r.entry.representation.label(),
            r.detail
        ));
    }
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    out.push_str(&format!(
        "{} pairs: {} computed, {} cache hits, {} errors\n",
        rows.len(),
        count(Status::Computed),
        count(Status::CacheHit),
        count(Status::Error)
    ));
    out
}
