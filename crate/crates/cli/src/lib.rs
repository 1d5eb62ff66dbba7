//! `hnnkit` command line. Every command prints canonical JSON on stdout.
//!
//! Exit status: 0 when the command succeeds and its verdict holds, 1 when
//! a verdict is false, 2 on usage, parse or input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use hnnkit::dehn::{area_bound_check, replay, sample_trivial_words, DehnSolver};
use hnnkit::hnn::{certify, construct_embedding, construct_irreducible_embedding};
use hnnkit::presentation::{compute_pieces, parse_file, PresentationFile};
use hnnkit::stallings::CoreGraph;
use hnnkit::subquotient::{check_no_duplicates, check_no_extra_powers, quotient, SubcomplexSpec};
use hnnkit::words::parse_word;
use hnnkit::{Error, PartialAscHnn, Presentation, Symmetrization};
use serde_json::{json, Value};

pub mod report;

#[derive(Parser, Debug)]
#[command(
    name = "hnnkit",
    version,
    about = "Small cancellation and ascending HNN embeddings"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PresArg {
    /// `.pres` file.
    file: PathBuf,
}

#[derive(Args, Debug)]
struct SymArg {
    /// Read pieces from the relators as written, without inverses.
    #[arg(long)]
    no_inverse_symmetrization: bool,
}

impl SymArg {
    fn mode(&self) -> Symmetrization {
        if self.no_inverse_symmetrization {
            Symmetrization::Literal
        } else {
            Symmetrization::Symmetrized
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a presentation and echo it.
    Parse(PresArg),
    /// Piece report for every relator.
    Pieces {
        #[command(flatten)]
        input: PresArg,
        #[command(flatten)]
        sym: SymArg,
    },
    /// C(p) and C'(λ) verdicts.
    CheckSmallcancel {
        #[command(flatten)]
        input: PresArg,
        #[command(flatten)]
        sym: SymArg,
        #[arg(long, default_value_t = 7)]
        p: usize,
        /// λ as `num/den`.
        #[arg(long, default_value = "1/7")]
        lambda: String,
    },
    /// Quotient by the subcomplex spanned by the killed generators.
    Quotient {
        #[command(flatten)]
        input: PresArg,
        #[arg(long, num_args = 1.., required = true)]
        kill: Vec<String>,
    },
    /// No-extra-powers and no-duplicates relative to the killed generators.
    CheckRel {
        #[command(flatten)]
        input: PresArg,
        #[arg(long, num_args = 1.., required = true)]
        kill: Vec<String>,
    },
    /// Folded graph of the subgroup generated by the file's `word:` lines.
    Fold {
        #[arg(long)]
        gens: PathBuf,
    },
    /// Embed a partial ascending HNN extension into an ascending one.
    Embed {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        irreducible: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recompute a certificate from H and G and compare it with a file.
    Certify {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Dehn's algorithm on one word.
    WordSolve {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Area against length on random trivial words.
    Isoperimetry {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        max_factors: usize,
        #[arg(long, default_value_t = 4)]
        max_conj: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command printed, and whether its verdict holds.
struct Outcome {
    json: Value,
    holds: bool,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Self { json, holds: true }
    }

    fn verdict(json: Value, holds: bool) -> Self {
        Self { json, holds }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_file(path: &Path) -> anyhow::Result<PresentationFile> {
    parse_file(&read(path)?).with_context(|| path.display().to_string())
}

fn load_presentation(path: &Path) -> anyhow::Result<Presentation> {
    let file = load_file(path)?;
    file.to_presentation()
        .with_context(|| path.display().to_string())
}

fn load_hnn(path: &Path) -> anyhow::Result<PartialAscHnn> {
    PartialAscHnn::from_file(&load_file(path)?).with_context(|| path.display().to_string())
}

fn parse_lambda(s: &str) -> anyhow::Result<(u64, u64)> {
    let (n, d) = s
        .split_once('/')
        .ok_or_else(|| anyhow!("λ must be `num/den`, got `{s}`"))?;
    let (n, d): (u64, u64) = (n.trim().parse()?, d.trim().parse()?);
    if d == 0 {
        bail!("λ has a zero denominator");
    }
    Ok((n, d))
}

fn killing(path: &Path, kill: &[String]) -> anyhow::Result<SubcomplexSpec> {
    let p = load_presentation(path)?;
    let names: Vec<&str> = kill.iter().map(String::as_str).collect();
    Ok(SubcomplexSpec::killing(p, &names)?)
}

fn execute(cmd: Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Parse(PresArg { file }) => {
            let f = load_file(&file)?;
            let p = f
                .to_presentation()
                .with_context(|| file.display().to_string())?;
            let mut json = report::presentation(&p);
            json["words"] = report::words(&f.word_list(), p.alphabet());
            let mut holds = true;
            json["hnn"] = match &f.hnn {
                None => Value::Null,
                Some(h) => {
                    let diagnostics = PartialAscHnn::from_file(&f)
                        .with_context(|| file.display().to_string())?
                        .validate();
                    holds = diagnostics.is_empty();
                    json!({
                        "stable": h.stable,
                        "ascending": h.ascending,
                        "free": h.free,
                        "diagnostics": diagnostics,
                    })
                }
            };
            Ok(Outcome::verdict(json, holds))
        }
        Command::Pieces { input, sym } => {
            let p = load_presentation(&input.file)?;
            let r = compute_pieces(&p, sym.mode());
            Ok(Outcome::ok(report::pieces(&r, &p)))
        }
        Command::CheckSmallcancel {
            input,
            sym,
            p: bound,
            lambda,
        } => {
            let (num, den) = parse_lambda(&lambda)?;
            let p = load_presentation(&input.file)?;
            let pieces = compute_pieces(&p, sym.mode());
            let c = pieces.cp_verdict(&p, bound)?;
            let cp = pieces.cprime_verdict(&p, num, den)?;
            let json = json!({
                "mode": report::mode(sym.mode()),
                "c": report::cp(&c, p.alphabet()),
                "cprime": report::cprime(&cp, p.alphabet()),
            });
            Ok(Outcome::verdict(json, c.holds && cp.holds))
        }
        Command::Quotient { input, kill } => {
            let spec = killing(&input.file, &kill)?;
            Ok(Outcome::ok(report::quotient(&quotient(&spec))))
        }
        Command::CheckRel { input, kill } => {
            let spec = killing(&input.file, &kill)?;
            let powers = check_no_extra_powers(&spec);
            let dups = check_no_duplicates(&spec);
            let holds = powers.holds && dups.holds;
            let json = json!({
                "quotient": report::quotient(&quotient(&spec)),
                "noExtraPowers": powers.holds,
                "noDuplicates": dups.holds,
                "violations": report::extra_powers(&powers, &spec)["violations"].clone(),
                "collisions": report::duplicates(&dups)["collisions"].clone(),
                "inverseCollisions": report::duplicates(&dups)["inverseCollisions"].clone(),
            });
            Ok(Outcome::verdict(json, holds))
        }
        Command::Fold { gens } => {
            let f = load_file(&gens)?;
            let words = f.word_list();
            let folded = CoreGraph::bouquet(&words).fold();
            let al = &f.alphabet;
            let json = json!({
                "graph": report::graph(&folded.canonical(), al),
                "core": report::graph(&folded.trim_to_core().canonical(), al),
                "rank": folded.rank()?,
                "basepointDegree": folded.basepoint_degree(),
                "monomorphism": hnnkit::stallings::is_monomorphism(&words),
            });
            Ok(Outcome::ok(json))
        }
        Command::Embed {
            input,
            out,
            cert,
            irreducible,
            seed,
        } => {
            let h = load_hnn(&input)?;
            let r = if irreducible {
                construct_irreducible_embedding(&h, seed)
            } else {
                construct_embedding(&h, seed)
            }?;
            let cert_json = report::certificate(&r.certificate);
            fs::write(&out, r.g.to_pres_text())
                .with_context(|| format!("cannot write {}", out.display()))?;
            fs::write(&cert, report::render(&cert_json))
                .with_context(|| format!("cannot write {}", cert.display()))?;
            let al = r.g.alphabet();
            let json = json!({
                "construction": report::construction(r.construction),
                "newGenerators": r.new_generators.iter().map(|&c| al.name(c)).collect::<Vec<_>>(),
                "newRelators": r.certificate.new_relators,
                "xLabels": r.x_labels.iter().map(|&l| hnnkit::words::format_letter(l, al)).collect::<Vec<_>>(),
                "blockLength": r.block_length,
                "escalations": r.escalations,
                "allHold": r.certificate.all_hold(),
                "out": out.display().to_string(),
                "cert": cert.display().to_string(),
            });
            Ok(Outcome::verdict(json, r.certificate.all_hold()))
        }
        Command::Certify { h, g, cert } => {
            let hh = load_hnn(&h)?;
            let gg = load_hnn(&g)?;
            let stored: Value = serde_json::from_str(&read(&cert)?)
                .with_context(|| format!("{}: not JSON", cert.display()))?;
            let construction = stored["construction"]
                .as_str()
                .and_then(report::parse_construction)
                .ok_or_else(|| anyhow!("{}: missing or unknown `construction`", cert.display()))?;
            let recomputed = report::certificate(&certify(&hh, &gg, construction)?);
            let stored = report::canonical(&stored);
            let differences: Vec<String> = match (stored.as_object(), recomputed.as_object()) {
                (Some(a), Some(b)) => {
                    let mut keys: Vec<&String> = a.keys().chain(b.keys()).collect();
                    keys.sort();
                    keys.dedup();
                    keys.into_iter()
                        .filter(|k| a.get(*k) != b.get(*k))
                        .cloned()
                        .collect()
                }
                _ => vec!["<root>".to_string()],
            };
            let all_hold = recomputed["allHold"] == Value::Bool(true);
            let json = json!({
                "matches": differences.is_empty(),
                "differences": differences,
                "allHold": all_hold,
                "failures": recomputed["failures"].clone(),
            });
            Ok(Outcome::verdict(json, differences.is_empty() && all_hold))
        }
        Command::WordSolve { pres, word } => {
            let p = load_presentation(&pres)?;
            let w = parse_word(&word, p.alphabet()).context("--word")?;
            let solver = DehnSolver::new(&p)?;
            let out = solver.solve(&w);
            let mut json = report::dehn(&out, p.alphabet());
            json["input"] = report::word(&w, p.alphabet());
            json["replayed"] = Value::Bool(replay(&p, &w, &out));
            Ok(Outcome::verdict(json, out.trivial))
        }
        Command::Isoperimetry {
            pres,
            samples,
            max_factors,
            max_conj,
            seed,
        } => {
            let p = load_presentation(&pres)?;
            // Fail early with the precondition error rather than per sample.
            DehnSolver::new(&p)?;
            let words = sample_trivial_words(&p, samples, max_factors, max_conj, seed);
            let r = area_bound_check(&p, &words)?;
            let holds = r.rows.iter().all(|row| row.within_bound);
            Ok(Outcome::verdict(report::area(&r, p.alphabet()), holds))
        }
    }
}

/// Runs the command line in `args` (program name first), writing JSON to
/// `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            let _ = write!(out, "{}", report::render(&outcome.json));
            if outcome.holds {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::CertificateFailure(_) | Error::GeneratorExhausted(_)) => 1,
                _ => 2,
            }
        }
    }
}
