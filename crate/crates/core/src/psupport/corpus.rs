//! The example corpus: modules with expected reports at chosen primes.
//!
//! ```toml
//! version = 1
//!
//! [[module]]
//! name = "exponential"
//! n = 1
//! generators = ["d1 - 1"]
//! primes = [2, 3, 5, 7]          # optional, this is the default
//!
//! [[module.expected]]
//! prime = 3
//! annihilator = ["Xi1 - 1"]
//! dimension = 1
//! lagrangian = true
//! conical = false
//! ```
//!
//! Every field of an `expected` record except `prime` is optional. Setting
//! `bad_prime = true` asserts that the prime divides a denominator.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{p_support, DModuleSpec, Options, SupportReport};
use crate::center::twisted_vars;
use crate::cgb::CIdeal;
use crate::error::{Error, Result};
use crate::expr::parse_twisted;
use crate::algebra::Ring;

/// Version accepted by [`Corpus::from_toml`].
pub const CORPUS_VERSION: u32 = 1;

fn default_primes() -> Vec<u64> {
    vec![2, 3, 5, 7]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub prime: u64,
    #[serde(default)]
    pub bad_prime: bool,
    pub annihilator: Option<Vec<String>>,
    pub dimension: Option<i64>,
    pub coisotropic: Option<bool>,
    pub lagrangian: Option<bool>,
    pub conical: Option<bool>,
    pub generic_rank: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub n: usize,
    pub generators: Vec<String>,
    #[serde(default = "default_primes")]
    pub primes: Vec<u64>,
    #[serde(default)]
    pub expected: Vec<Expected>,
}

impl CorpusEntry {
    pub fn spec(&self) -> Result<DModuleSpec> {
        DModuleSpec::parse(Some(self.name.clone()), self.n, &self.generators)
    }

    pub fn expected_at(&self, prime: u64) -> Option<&Expected> {
        self.expected.iter().find(|e| e.prime == prime)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub version: u32,
    #[serde(rename = "module", default)]
    pub modules: Vec<CorpusEntry>,
}

impl Corpus {
    /// Parses and validates a corpus document.
    pub fn from_toml(text: &str) -> Result<Self> {
        let corpus: Corpus = toml::from_str(text).map_err(|e| Error::Corpus(e.to_string()))?;
        if corpus.version != CORPUS_VERSION {
            return Err(Error::Corpus(format!(
                "unsupported version {} (expected {CORPUS_VERSION})",
                corpus.version
            )));
        }
        for m in &corpus.modules {
            let fail = |msg: String| Error::Corpus(format!("module {:?}: {msg}", m.name));
            if m.generators.is_empty() {
                return Err(fail("no generators".into()));
            }
            m.spec().map_err(|e| fail(e.to_string()))?;
            for e in &m.expected {
                if !m.primes.contains(&e.prime) {
                    return Err(fail(format!("expectation for untested prime {}", e.prime)));
                }
                if let Some(ann) = &e.annihilator {
                    for g in ann {
                        parse_twisted(g, m.n, Ring::IntMod(e.prime)).map_err(|err| fail(err.to_string()))?;
                    }
                }
            }
        }
        Ok(corpus)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Corpus(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }
}

/// What running one module at one prime produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Ok { report: SupportReport },
    BadPrime { denominator: String },
    Error { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusResult {
    pub module: String,
    pub prime: u64,
    #[serde(flatten)]
    pub outcome: Outcome,
    /// Differences from the expected record; empty when it matches.
    pub mismatches: Vec<String>,
}

impl CorpusResult {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && !matches!(self.outcome, Outcome::Error { .. })
    }
}

fn same_annihilator(report: &SupportReport, expected: &[String]) -> Result<bool> {
    let ring = Ring::IntMod(report.prime);
    let vars = twisted_vars(report.n);
    let ideal = |gens: &[String]| -> Result<CIdeal> {
        let polys = gens
            .iter()
            .map(|g| parse_twisted(g, report.n, ring))
            .collect::<Result<Vec<_>>>()?;
        CIdeal::grevlex(vars.clone(), ring, polys)
    };
    ideal(&report.annihilator)?.same_ideal(&ideal(expected)?)
}

/// Differences between `outcome` and `expected`.
pub fn compare(outcome: &Outcome, expected: &Expected) -> Vec<String> {
    let mut out = Vec::new();
    let report = match (outcome, expected.bad_prime) {
        (Outcome::BadPrime { .. }, true) => return out,
        (Outcome::BadPrime { denominator }, false) => {
            out.push(format!("unexpected bad prime (denominator {denominator})"));
            return out;
        }
        (Outcome::Error { message }, _) => {
            out.push(format!("computation failed: {message}"));
            return out;
        }
        (Outcome::Ok { .. }, true) => {
            out.push("expected a bad prime".into());
            return out;
        }
        (Outcome::Ok { report }, false) => report,
    };
    if let Some(ann) = &expected.annihilator {
        match same_annihilator(report, ann) {
            Ok(true) => {}
            Ok(false) => out.push(format!(
                "annihilator: expected {ann:?}, got {:?}",
                report.annihilator
            )),
            Err(e) => out.push(format!("annihilator: {e}")),
        }
    }
    let mut check = |field: &str, want: Option<String>, got: String| {
        if let Some(w) = want {
            if w != got {
                out.push(format!("{field}: expected {w}, got {got}"));
            }
        }
    };
    check("dimension", expected.dimension.map(|v| v.to_string()), report.dimension.to_string());
    check("coisotropic", expected.coisotropic.map(|v| v.to_string()), report.coisotropic.to_string());
    check("lagrangian", expected.lagrangian.map(|v| v.to_string()), report.lagrangian.to_string());
    check("conical", expected.conical.map(|v| v.to_string()), report.conical.to_string());
    check(
        "generic_rank",
        expected.generic_rank.map(|v| v.to_string()),
        report
            .generic_rank
            .as_ref()
            .map_or_else(|| "unavailable".to_string(), |g| g.rank.to_string()),
    );
    out
}

/// Runs one module at one prime.
pub fn run_entry(entry: &CorpusEntry, prime: u64, options: &Options) -> CorpusResult {
    let outcome = match entry.spec().and_then(|s| p_support(&s, prime, options)) {
        Ok(report) => Outcome::Ok { report },
        Err(Error::BadPrime { denominator, .. }) => Outcome::BadPrime { denominator },
        Err(e) => Outcome::Error {
            message: e.to_string(),
        },
    };
    let mismatches = entry
        .expected_at(prime)
        .map(|e| compare(&outcome, e))
        .unwrap_or_default();
    CorpusResult {
        module: entry.name.clone(),
        prime,
        outcome,
        mismatches,
    }
}

/// Every module at every listed prime, in file order.
pub fn run_corpus(corpus: &Corpus, options: &Options) -> Vec<CorpusResult> {
    corpus
        .modules
        .iter()
        .flat_map(|m| m.primes.iter().map(move |&p| run_entry(m, p, options)))
        .collect()
}
