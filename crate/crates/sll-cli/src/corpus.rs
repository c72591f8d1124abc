//! The corpus manifest and its entries.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use sll_process::{parse_process, Process};
use sll_proof::{generate, parse_thm, GenConfig, ProofTerm};
use sll_types::Judgment;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad manifest {path}: {msg}")]
    Manifest { path: PathBuf, msg: String },
    #[error("{path}:{line}:{col}: {msg}")]
    Parse { path: PathBuf, line: usize, col: usize, msg: String },
}

impl CorpusError {
    pub fn class(&self) -> &'static str {
        match self {
            CorpusError::Io { .. } => "Io",
            CorpusError::Manifest { .. } => "Manifest",
            CorpusError::Parse { .. } => "ParseError",
        }
    }
}

#[derive(Deserialize)]
struct Manifest {
    entry: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    kind: String,
    path: Option<String>,
    expect: String,
    error: Option<String>,
    seed: Option<u64>,
    fuel: Option<u32>,
    n: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum Source {
    /// A proof term with its declared judgment. Untypable entries keep the
    /// raw text so the checker's error can be reported.
    Proof {
        judgment: Judgment,
        term: ProofTerm,
    },
    Process(Process),
    Blowup(usize),
    Generated {
        seed: u64,
        fuel: u32,
        judgment: Judgment,
        term: ProofTerm,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Typable,
    Untypable(String),
    Normalizes,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub source_path: Option<PathBuf>,
    pub source: Source,
    pub expected: Expected,
}

impl CorpusEntry {
    pub fn kind(&self) -> &'static str {
        match self.source {
            Source::Proof { .. } => "proof",
            Source::Process(_) => "process",
            Source::Blowup(_) => "blowup",
            Source::Generated { .. } => "generated",
        }
    }

    /// The proof term and declared judgment, if the entry has one.
    pub fn proof(&self) -> Option<(&Judgment, &ProofTerm)> {
        match &self.source {
            Source::Proof { judgment, term } | Source::Generated { judgment, term, .. } => Some((judgment, term)),
            _ => None,
        }
    }

    /// A proof entry that is expected to type.
    pub fn typed_proof(&self) -> Option<(&Judgment, &ProofTerm)> {
        (self.expected == Expected::Typable).then(|| self.proof()).flatten()
    }
}

/// The manifest shipped with this crate.
pub fn default_manifest() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join("corpus.toml")
}

fn read(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_owned(), source })
}

pub fn read_thm(path: &Path) -> Result<(Judgment, ProofTerm), CorpusError> {
    parse_thm(&read(path)?).map_err(|e| CorpusError::Parse {
        path: path.to_owned(),
        line: e.line,
        col: e.col,
        msg: e.msg,
    })
}

pub fn read_pi(path: &Path) -> Result<Process, CorpusError> {
    parse_process(&read(path)?).map_err(|e| CorpusError::Parse {
        path: path.to_owned(),
        line: e.line,
        col: e.col,
        msg: e.msg,
    })
}

pub fn load_corpus(manifest: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let bad = |msg: String| CorpusError::Manifest { path: manifest.to_owned(), msg };
    let m: Manifest = toml::from_str(&read(manifest)?).map_err(|e| bad(e.to_string()))?;
    let dir = manifest.parent().unwrap_or(Path::new("."));
    let mut out = Vec::new();
    for raw in m.entry {
        let need = |v: Option<&str>, field: &str| {
            v.map(|s| dir.join(s)).ok_or_else(|| bad(format!("entry {}: missing {field}", raw.name)))
        };
        let path = raw.path.as_deref();
        let (source_path, source) = match raw.kind.as_str() {
            "proof" => {
                let p = need(path, "path")?;
                let (judgment, term) = read_thm(&p)?;
                (Some(p), Source::Proof { judgment, term })
            }
            "process" => {
                let p = need(path, "path")?;
                let proc = read_pi(&p)?;
                (Some(p), Source::Process(proc))
            }
            "blowup" => {
                let n = raw.n.ok_or_else(|| bad(format!("entry {}: missing n", raw.name)))?;
                (None, Source::Blowup(n))
            }
            "generated" => {
                let seed = raw.seed.ok_or_else(|| bad(format!("entry {}: missing seed", raw.name)))?;
                let fuel = raw.fuel.unwrap_or(GenConfig::default().fuel);
                let (judgment, term) = generate(seed, &GenConfig { fuel, ..GenConfig::default() });
                (None, Source::Generated { seed, fuel, judgment, term })
            }
            other => return Err(bad(format!("entry {}: unknown kind '{other}'", raw.name))),
        };
        let expected = match (raw.expect.as_str(), raw.error) {
            ("typable", None) => Expected::Typable,
            ("untypable", Some(class)) => Expected::Untypable(class),
            ("normalizes", None) => Expected::Normalizes,
            (e, _) => return Err(bad(format!("entry {}: bad expectation '{e}'", raw.name))),
        };
        out.push(CorpusEntry { name: raw.name, source_path, source, expected });
    }
    Ok(out)
}
