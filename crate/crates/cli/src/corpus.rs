//! The proof corpus: a TOML manifest listing proof scripts and the verdict
//! each one should receive.
//!
//! ```toml
//! [[entry]]
//! name = "box_truth"
//! system = "MSQR"
//! script = "msqr/box_truth.prf"
//! expect = "accepted"
//! ```
//!
//! `expect` is `accepted` or `rejected:<reason code>`, where the code is the
//! one on the first diagnostic.

use std::fmt;
use std::path::{Path, PathBuf};

use mqr_core::kernel::{check, parse_script, ReasonCode, ScriptError};
use mqr_core::search::{find_countermodel, CountermodelResult, SearchBudget, SearchError};
use mqr_core::{Formula, System};
use rayon::prelude::*;
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Manifest { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Script { path: PathBuf, source: ScriptError },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Accepted,
    Rejected(ReasonCode),
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Accepted => f.write_str("accepted"),
            Expectation::Rejected(code) => write!(f, "rejected:{code}"),
        }
    }
}

impl std::str::FromStr for Expectation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            None if s == "accepted" => Ok(Expectation::Accepted),
            Some(("rejected", code)) => code.parse().map(Expectation::Rejected),
            _ => Err(format!("expectation `{s}` is neither `accepted` nor `rejected:<code>`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub system: System,
    pub script_path: PathBuf,
    pub source: String,
    pub expected: Expectation,
}

#[derive(Deserialize)]
struct RawManifest {
    entry: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    system: String,
    script: PathBuf,
    expect: String,
}

/// Directory of the corpus shipped with this crate.
pub fn default_manifest() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join("manifest.toml")
}

/// Reads the manifest and every script it names. Script paths are relative
/// to the manifest.
pub fn load_corpus(manifest: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let text = std::fs::read_to_string(manifest).map_err(|source| CorpusError::Io {
        path: manifest.to_path_buf(),
        source,
    })?;
    let bad = |message: String| CorpusError::Manifest {
        path: manifest.to_path_buf(),
        message,
    };
    let raw: RawManifest = toml::from_str(&text).map_err(|e| bad(e.to_string()))?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    raw.entry
        .into_iter()
        .map(|e| {
            let system: System = e.system.parse().map_err(|_| bad(format!("{}: unknown system `{}`", e.name, e.system)))?;
            let expected: Expectation = e.expect.parse().map_err(|m| bad(format!("{}: {m}", e.name)))?;
            let script_path = base.join(&e.script);
            let source = std::fs::read_to_string(&script_path).map_err(|source| CorpusError::Io {
                path: script_path.clone(),
                source,
            })?;
            Ok(CorpusEntry {
                name: e.name,
                system,
                script_path,
                source,
                expected,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Actual {
    Accepted,
    Rejected(ReasonCode),
    Unparsable(String),
}

impl fmt::Display for Actual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Actual::Accepted => f.write_str("accepted"),
            Actual::Rejected(code) => write!(f, "rejected:{code}"),
            Actual::Unparsable(msg) => write!(f, "unparsable ({msg})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EntryResult {
    pub name: String,
    pub system: System,
    pub expected: Expectation,
    pub actual: Actual,
    /// Statement of an accepted theorem, for the soundness check.
    pub theorem: Option<Formula>,
    pub countermodel: Option<CountermodelResult>,
}

impl EntryResult {
    pub fn verdict_ok(&self) -> bool {
        matches!(
            (self.expected, &self.actual),
            (Expectation::Accepted, Actual::Accepted)
        ) || matches!((self.expected, &self.actual), (Expectation::Rejected(a), Actual::Rejected(b)) if a == *b)
    }

    pub fn sound(&self) -> bool {
        !matches!(self.countermodel, Some(CountermodelResult::Found(_)))
    }

    pub fn passed(&self) -> bool {
        self.verdict_ok() && self.sound()
    }
}

pub fn check_entry(entry: &CorpusEntry) -> EntryResult {
    let (actual, theorem) = match parse_script(&entry.source) {
        Err(e) => (Actual::Unparsable(e.to_string()), None),
        Ok(script) => {
            let report = check(&script, entry.system);
            match report.first_code() {
                None => {
                    // an accepted derivation without a theorem header proves nothing
                    match &script.theorem {
                        Some(t) => (Actual::Accepted, Some(t.statement.clone())),
                        None if report.open_assumptions.is_empty() => (Actual::Accepted, None),
                        None => (Actual::Rejected(ReasonCode::UndischargedAtTheorem), None),
                    }
                }
                Some(code) => (Actual::Rejected(code), None),
            }
        }
    };
    EntryResult {
        name: entry.name.clone(),
        system: entry.system,
        expected: entry.expected,
        actual,
        theorem,
        countermodel: None,
    }
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub entries: Vec<EntryResult>,
    pub soundness_bound: usize,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryResult::passed)
    }

    pub fn accepted_theorems(&self) -> usize {
        self.entries.iter().filter(|e| e.theorem.is_some()).count()
    }

    pub fn countermodels(&self) -> usize {
        self.entries.iter().filter(|e| !e.sound()).count()
    }
}

/// Checks every entry, then searches for countermodels to every accepted
/// theorem among frames with at most `bound` worlds. Results follow the
/// manifest order.
pub fn run_corpus(entries: &[CorpusEntry], bound: usize) -> Result<CorpusReport, SearchError> {
    let results: Result<Vec<EntryResult>, SearchError> = entries
        .par_iter()
        .map(|entry| {
            let mut result = check_entry(entry);
            if let Some(theorem) = &result.theorem {
                let found = find_countermodel(entry.system, &[], theorem, &SearchBudget::new(bound))?;
                result.countermodel = Some(found);
            }
            Ok(result)
        })
        .collect();
    Ok(CorpusReport {
        entries: results?,
        soundness_bound: bound,
    })
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(4).max(4);
        writeln!(f, "{:<width$}  {:<6} {:<32} {:<32} status", "name", "system", "expected", "actual")?;
        for e in &self.entries {
            let status = match (e.verdict_ok(), e.sound()) {
                (true, true) => "ok",
                (false, _) => "FAIL",
                (true, false) => "UNSOUND",
            };
            writeln!(
                f,
                "{:<width$}  {:<6} {:<32} {:<32} {status}",
                e.name,
                e.system.to_string(),
                e.expected.to_string(),
                e.actual.to_string()
            )?;
        }
        let passed = self.entries.iter().filter(|e| e.passed()).count();
        writeln!(f, "{passed}/{} entries passed", self.entries.len())?;
        write!(
            f,
            "{} accepted theorems, {} countermodels with at most {} worlds",
            self.accepted_theorems(),
            self.countermodels(),
            self.soundness_bound
        )
    }
}
