//! Command dispatch for the `pweyl` binary.
//!
//! Exit codes: 0 success, 1 computation failure (bad prime, corpus
//! mismatch), 2 usage or parse error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pweyl::center::TwistIso;
use pweyl::expr::{is_input_error, parse_twisted, parse_weyl};
use pweyl::poisson::{Bracket, BracketContext};
use pweyl::psupport::corpus::{run_corpus, Corpus, CorpusResult, Outcome};
use pweyl::psupport::{characteristic_variety, p_support, DModuleSpec, Options, SupportReport, DEFAULT_SEED};
use pweyl::{Error, Ring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "PWEYL_SEED";

#[derive(Parser, Debug)]
#[command(name = "pweyl", version, about = "p-supports of cyclic D-modules on affine space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Field {
    /// Characteristic of the base field.
    #[arg(long)]
    prime: u64,
    /// Number of variables n.
    #[arg(long = "vars")]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report on A_n / A_n(EXPR...) at a prime.
    Psupport {
        #[command(flatten)]
        field: Field,
        #[arg(long)]
        json: bool,
        /// Seed for point sampling (default: $PWEYL_SEED, then a fixed value).
        #[arg(long)]
        seed: Option<u64>,
        /// Sample points for the generic rank.
        #[arg(long, default_value_t = 5)]
        attempts: usize,
        /// Skip the generic rank.
        #[arg(long)]
        no_rank: bool,
        /// Generators in x1..xn, d1..dn with rational coefficients.
        #[arg(required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Poisson bracket of two twisted polynomials (deformation bracket by default).
    Bracket {
        #[command(flatten)]
        field: Field,
        /// Use the canonical symplectic bracket.
        #[arg(long)]
        canonical: bool,
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Characteristic variety in characteristic zero.
    Charvar {
        #[arg(long = "vars")]
        n: usize,
        #[arg(long)]
        json: bool,
        #[arg(required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Whether a Weyl operator over F_p is central, and its twisted image.
    CenterCheck {
        #[command(flatten)]
        field: Field,
        #[arg(long)]
        json: bool,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Run a corpus file and compare against its expectations.
    Corpus {
        #[arg(long = "run", value_name = "PATH")]
        path: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// Also require the JSON output to equal this file byte for byte.
        #[arg(long, value_name = "FILE")]
        golden: Option<PathBuf>,
    },
}

/// A failed command: exit code plus message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if is_input_error(&e) || matches!(e, Error::NotPrime(_) | Error::Corpus(_)) {
            EXIT_USAGE
        } else {
            EXIT_FAILURE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

type CmdResult<T> = Result<T, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> CmdResult<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match env {
        None => Ok(DEFAULT_SEED),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{SEED_ENV} is not an unsigned integer: {v:?}"))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn prime_field(p: u64) -> CmdResult<Ring> {
    TwistIso::new(p, 1)?;
    Ok(Ring::IntMod(p))
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    match dispatch(cli.command, env_seed.as_deref(), out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, env_seed: Option<&str>, out: &mut dyn Write) -> CmdResult<i32> {
    match command {
        Command::Psupport {
            field,
            json,
            seed,
            attempts,
            no_rank,
            exprs,
        } => {
            let options = Options {
                seed: resolve_seed(seed, env_seed)?,
                attempts,
                generic_rank: !no_rank,
            };
            let spec = DModuleSpec::parse(None, field.n, &exprs)?;
            let report = p_support(&spec, field.prime, &options)?;
            if json {
                write!(out, "{}", to_json(&report))?;
            } else {
                write!(out, "{}", report_table(&report))?;
            }
            Ok(EXIT_OK)
        }
        Command::Bracket {
            field,
            canonical,
            first,
            second,
        } => {
            let ring = prime_field(field.prime)?;
            let f = parse_twisted(&first, field.n, ring)?;
            let g = parse_twisted(&second, field.n, ring)?;
            let kind = if canonical { Bracket::Canonical } else { Bracket::Bkk };
            let value = BracketContext::new(field.prime, field.n)?.bracket(kind, &f, &g)?;
            writeln!(out, "{value}")?;
            Ok(EXIT_OK)
        }
        Command::Charvar { n, json, exprs } => {
            let spec = DModuleSpec::parse(None, n, &exprs)?;
            let cv = characteristic_variety(&spec)?;
            let ideal: Vec<String> = cv.ideal.basis().iter().map(|g| g.to_string()).collect();
            let holonomic = cv.dimension == n as i64;
            if json {
                #[derive(Serialize)]
                struct Charvar {
                    n: usize,
                    ideal: Vec<String>,
                    dimension: i64,
                    holonomic: bool,
                }
                let body = Charvar {
                    n,
                    ideal,
                    dimension: cv.dimension,
                    holonomic,
                };
                write!(out, "{}", to_json(&body))?;
            } else {
                let rows = [
                    ("ideal", format!("({})", ideal.join(", "))),
                    ("dimension", cv.dimension.to_string()),
                    ("holonomic", holonomic.to_string()),
                ];
                write!(out, "{}", table(&rows))?;
            }
            Ok(EXIT_OK)
        }
        Command::CenterCheck { field, json, expr } => {
            let ring = prime_field(field.prime)?;
            let f = parse_weyl(&expr, field.n, ring)?;
            let c = f.is_central();
            let iso = TwistIso::new(field.prime, field.n)?;
            let image = if c.central { Some(iso.decompose(&f)?.to_string()) } else { None };
            let witness = c.witness.as_ref().map(|(g, v)| (g.to_string(), v.to_string()));
            if json {
                #[derive(Serialize)]
                struct Witness {
                    generator: String,
                    commutator: String,
                }
                #[derive(Serialize)]
                struct Check {
                    central: bool,
                    image: Option<String>,
                    witness: Option<Witness>,
                }
                let body = Check {
                    central: c.central,
                    image,
                    witness: witness.map(|(generator, commutator)| Witness { generator, commutator }),
                };
                write!(out, "{}", to_json(&body))?;
            } else {
                let mut rows = vec![("central", c.central.to_string())];
                if let Some(i) = image {
                    rows.push(("image", i));
                }
                if let Some((g, v)) = witness {
                    rows.push(("witness", format!("[{g}, f] = {v}")));
                }
                write!(out, "{}", table(&rows))?;
            }
            Ok(EXIT_OK)
        }
        Command::Corpus {
            path,
            json,
            seed,
            golden,
        } => {
            let corpus = Corpus::load(&path)?;
            let options = Options {
                seed: resolve_seed(seed, env_seed)?,
                ..Options::default()
            };
            let results = run_corpus(&corpus, &options);
            let rendered = to_json(&results);
            if json {
                write!(out, "{rendered}")?;
            } else {
                write!(out, "{}", corpus_table(&results))?;
            }
            let mut code = if results.iter().all(CorpusResult::passed) { EXIT_OK } else { EXIT_FAILURE };
            if let Some(g) = golden {
                let expected = std::fs::read_to_string(&g)
                    .map_err(|e| usage(format!("{}: {e}", g.display())))?;
                if expected != rendered {
                    code = EXIT_FAILURE;
                    if !json {
                        writeln!(out, "golden mismatch: {}", g.display())?;
                    }
                }
            }
            Ok(code)
        }
    }
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn report_table(r: &SupportReport) -> String {
    let mut rows = vec![
        ("prime", r.prime.to_string()),
        ("n", r.n.to_string()),
        ("annihilator", format!("({})", r.annihilator.join(", "))),
        ("status", r.annihilator_status.to_string()),
        ("dimension", r.dimension.to_string()),
        ("coisotropic", r.coisotropic.to_string()),
    ];
    if let Some(w) = &r.coisotropy_witness {
        rows.push(("witness", format!("{{{}, {}}} = {}", w.first, w.second, w.bracket)));
    }
    rows.push(("lagrangian", r.lagrangian.to_string()));
    rows.push(("conical", r.conical.to_string()));
    rows.push((
        "generic rank",
        match &r.generic_rank {
            None => "unavailable".into(),
            Some(g) => format!(
                "{} ({} samples, {})",
                g.rank,
                g.samples.len(),
                if g.agreement { "all agree" } else { "disagreement" }
            ),
        },
    ));
    for note in &r.notes {
        rows.push(("note", note.clone()));
    }
    table(&rows)
}

fn corpus_table(results: &[CorpusResult]) -> String {
    let mut s = String::new();
    for r in results {
        let verdict = if r.passed() { "ok  " } else { "FAIL" };
        let detail = match &r.outcome {
            Outcome::Ok { report } => format!(
                "({}) dim {} lagrangian {} conical {}",
                report.annihilator.join(", "),
                report.dimension,
                report.lagrangian,
                report.conical
            ),
            Outcome::BadPrime { denominator } => format!("bad prime (denominator {denominator})"),
            Outcome::Error { message } => format!("error: {message}"),
        };
        s.push_str(&format!("{verdict} {:<16} p={:<2} {detail}\n", r.module, r.prime));
        for m in &r.mismatches {
            s.push_str(&format!("       {m}\n"));
        }
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    s.push_str(&format!("{passed}/{} passed\n", results.len()));
    s
}
