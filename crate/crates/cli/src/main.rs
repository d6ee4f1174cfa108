mod batch;
mod input;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twisted_alexander::algebra::CoeffRing;
use twisted_alexander::applications::{conway_polynomial, fibered_check_with};
use twisted_alexander::presentation::{random_tietze_sequence, Presentation};
use twisted_alexander::twisted::{evaluate, evaluate_at, normalized_invariant, Evaluation, Representation};

use batch::{record_text, InputHashes};
use input::{load_representation, parse_presentation, parse_ring, read_text, Failure, RepSource, EXIT_FAILURE};
use render::{key_values, report_lines, summary};

#[derive(Parser)]
#[command(name = "tai", version, about = "Normalized twisted Alexander invariants of knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Coefficient ring (Z, Q, F<p>, C): the ring of the trivial
    /// representation, or a ring to coerce a representation file into.
    #[arg(long, global = true)]
    ring: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Record,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the normalized invariant.
    Compute {
        /// Presentation file, or a `.pd` PD code.
        presentation: PathBuf,
        /// Representation file; omitted or `trivial` means the trivial 1-dim representation.
        representation: Option<PathBuf>,
        /// Column to delete (1-based); defaults to the first admissible one.
        #[arg(long)]
        column: Option<usize>,
    },
    /// Fibering check and genus lower bounds.
    Report {
        presentation: PathBuf,
        representation: Option<PathBuf>,
        /// Candidate genus for the fibering check.
        #[arg(long)]
        genus: Option<i64>,
    },
    /// Apply random Tietze moves and check the invariant does not change.
    Fuzz {
        presentation: PathBuf,
        representation: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate every pair listed in a manifest, caching the results.
    Batch {
        manifest: PathBuf,
        /// Cache directory; defaults to `.tai-cache` next to the manifest.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

struct Loaded {
    presentation: Presentation,
    representation: Representation,
    hashes: InputHashes,
}

fn load(pres_path: &Path, rep_path: Option<&Path>, ring: Option<CoeffRing>) -> Result<Loaded, Failure> {
    let pres_text = read_text(pres_path)?;
    let presentation = parse_presentation(&pres_text, pres_path)?;
    let source = RepSource::from_arg(rep_path);
    let rep_text = match &source {
        RepSource::Trivial => None,
        RepSource::File(p) => Some(read_text(p)?),
    };
    let representation = load_representation(rep_text.as_deref(), &source, &presentation, ring)?;
    Ok(Loaded { presentation, representation, hashes: InputHashes::new(&pres_text, rep_text.as_deref()) })
}

fn evaluation(l: &Loaded, column: Option<usize>, ctx: &Path) -> Result<Evaluation, Failure> {
    let ctx = ctx.display().to_string();
    let res = match column {
        None => evaluate(&l.presentation, &l.representation),
        Some(k) if k == 0 || k > l.presentation.generator_count() => {
            let count = l.presentation.generator_count();
            return Err(Failure::new(input::EXIT_PARSE, format!("{ctx}: --column {k} is outside 1..={count}")));
        }
        Some(k) => evaluate_at(&l.presentation, &l.representation, k - 1),
    };
    if let Err(twisted_alexander::Error::BadColumn { k }) = res {
        let name = &l.presentation.generators()[k];
        return Err(Failure::new(input::EXIT_DEGENERATE, format!("{ctx}: column {} ({name}) has alpha = 0", k + 1)));
    }
    res.map_err(|e| Failure::from_error(&ctx, &e))
}

fn render(l: &Loaded, e: &Evaluation, format: Format) -> String {
    let body = summary(e, &l.representation.ring().to_string());
    match format {
        Format::Text => key_values(&body),
        Format::Record => record_text(&l.hashes, &body),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let ring = cli.ring.as_deref().map(parse_ring).transpose()?;
    match cli.command {
        Command::Compute { presentation, representation, column } => {
            let l = load(&presentation, representation.as_deref(), ring)?;
            let e = evaluation(&l, column, &presentation)?;
            print!("{}", render(&l, &e, cli.format));
            Ok(0)
        }
        Command::Report { presentation, representation, genus } => {
            let l = load(&presentation, representation.as_deref(), ring)?;
            let e = evaluation(&l, None, &presentation)?;
            let fibered = genus.map(|g| {
                let conway = conway_polynomial(&l.presentation).map_err(|err| err.to_string())?;
                fibered_check_with(&e.invariant, conway.leading(), g).map_err(|err| err.to_string())
            });
            print!("{}", render(&l, &e, cli.format));
            for line in report_lines(&e, fibered) {
                println!("{line}");
            }
            Ok(0)
        }
        Command::Fuzz { presentation, representation, steps, seed } => {
            let l = load(&presentation, representation.as_deref(), ring)?;
            let ctx = presentation.display().to_string();
            let base = normalized_invariant(&l.presentation, &l.representation).map_err(|e| Failure::from_error(&ctx, &e))?;
            let run = random_tietze_sequence(&l.presentation, steps, seed);
            let rho = l.representation.extend_along(&run).map_err(|e| Failure::from_error(&ctx, &e))?;
            let after = normalized_invariant(&run.presentation, &rho);
            match after {
                Ok(inv) if inv.approx_eq(&base) => {
                    println!("pass: {steps} moves, seed {seed}, {} generators", run.presentation.generator_count());
                    println!("invariant: {base}");
                    Ok(0)
                }
                other => {
                    println!("FAIL: {steps} moves, seed {seed}");
                    println!("before: {base}");
                    match other {
                        Ok(inv) => println!("after: {inv}"),
                        Err(e) => println!("after: error ({e})"),
                    }
                    println!("moves:");
                    print!("{run}");
                    Ok(EXIT_FAILURE)
                }
            }
        }
        Command::Batch { manifest, cache } => {
            let text = read_text(&manifest)?;
            let base = manifest.parent().unwrap_or(Path::new(".")).to_path_buf();
            let entries = batch::parse_manifest(&text, &base)?;
            let cache = cache.unwrap_or_else(|| base.join(".tai-cache"));
            let rows = batch::run(&entries, &cache, ring)?;
            match cli.format {
                Format::Text => print!("{}", batch::table(&rows)),
                Format::Record => {
                    for r in &rows {
                        match &r.record {
                            Some(rec) => println!("{rec}"),
                            None => println!("error: {}\n", r.detail),
                        }
                    }
                }
            }
            Ok(if rows.iter().any(|r| r.status == batch::Status::Error) { EXIT_FAILURE } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
