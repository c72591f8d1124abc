//! Subcommand bodies. Each returns the text to print, or an error carrying
//! a machine-readable class.

use std::fmt;
use std::path::Path;

use sll_metrics::{bde_term, dupf, size_term, wei};
use sll_process::struct_congruent;
use sll_proof::{check, extract, synthesize};
use sll_reducer::{build_blowup_family, collect_inert_servers, run_to_normal_form, RunOptions, Strategy};
use sll_rewrite::run_weighted_trace;
use sll_types::judgment_depth;

use crate::certify::certify;
use crate::corpus::{load_corpus, read_pi, read_thm, CorpusEntry, Expected, Source};
use crate::pool::run_ordered;
use crate::report::{Format, Table};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub class: String,
    pub msg: String,
}

impl CliError {
    pub fn new(class: &str, msg: impl Into<String>) -> CliError {
        CliError { class: class.to_string(), msg: msg.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.class, self.msg)
    }
}

impl From<crate::corpus::CorpusError> for CliError {
    fn from(e: crate::corpus::CorpusError) -> Self {
        CliError::new(e.class(), e.to_string())
    }
}

impl From<sll_proof::TypeError> for CliError {
    fn from(e: sll_proof::TypeError) -> Self {
        CliError::new(e.class(), e.to_string())
    }
}

impl From<sll_rewrite::SrError> for CliError {
    fn from(e: sll_rewrite::SrError) -> Self {
        CliError::new(e.class(), e.to_string())
    }
}

impl From<crate::certify::CertifyError> for CliError {
    fn from(e: crate::certify::CertifyError) -> Self {
        CliError::new(e.class(), e.to_string())
    }
}

pub type CliResult = Result<String, CliError>;

#[derive(Clone, Debug)]
pub struct TraceOptions {
    pub strategy: Strategy,
    pub max_steps: u64,
    pub emit_trace: Option<std::path::PathBuf>,
}

fn write_trace(path: &Path, table: &Table) -> Result<(), CliError> {
    std::fs::write(path, table.render(Format::Csv))
        .map_err(|e| CliError::new("Io", format!("cannot write {}: {e}", path.display())))
}

pub fn check_file(path: &Path) -> CliResult {
    let (j, d) = read_thm(path)?;
    let ev = check(&d, &j)?;
    Ok(format!("ok {}\n", ev.judgment))
}

pub fn extract_file(path: &Path) -> CliResult {
    let (_, d) = read_thm(path)?;
    Ok(format!("{}\n", extract(&d)))
}

const ANALYZE_HEADER: [&str; 6] = ["name", "size", "bde", "dupf", "wei", "judgment_depth"];

fn analyze_row(name: &str, d: &sll_proof::ProofTerm) -> Result<Vec<String>, CliError> {
    let j = synthesize(d)?.judgment;
    Ok(vec![
        name.to_string(),
        size_term(d).to_string(),
        bde_term(d).to_string(),
        dupf(d).to_string(),
        wei(d).to_string(),
        judgment_depth(&j).to_string(),
    ])
}

/// One metrics record per `.thm` file.
pub fn analyze_files(paths: &[std::path::PathBuf], format: Format) -> CliResult {
    let mut t = Table::new(&ANALYZE_HEADER);
    for p in paths {
        let (_, d) = read_thm(p)?;
        let name = p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
        t.push(analyze_row(&name, &d)?);
    }
    Ok(t.render(format))
}

/// One metrics record per typable proof entry of the corpus.
pub fn analyze_corpus(entries: &[CorpusEntry], format: Format) -> CliResult {
    let mut t = Table::new(&ANALYZE_HEADER);
    for e in entries {
        if let Some((_, d)) = e.typed_proof() {
            t.push(analyze_row(&e.name, d)?);
        }
    }
    Ok(t.render(format))
}

const TRACE_HEADER: [&str; 5] = ["index", "rule", "wei", "dupf", "size"];

pub fn reduce_file(path: &Path, opts: &TraceOptions, format: Format) -> CliResult {
    let (j, d) = read_thm(path)?;
    check(&d, &j)?;
    let tr = run_weighted_trace(&d, opts.strategy, opts.max_steps)?;
    if let Some(out) = &opts.emit_trace {
        let mut t = Table::new(&TRACE_HEADER);
        for (i, s) in tr.steps.iter().enumerate() {
            t.push(vec![
                (i + 1).to_string(),
                s.data.rule.to_string(),
                s.data.wei.to_string(),
                s.data.dupf.to_string(),
                s.size.to_string(),
            ]);
        }
        write_trace(out, &t)?;
    }
    let last = tr.steps.last().map(|s| &s.data.term).unwrap_or(&d);
    let mut t = Table::new(&[
        "name",
        "steps",
        "terminated",
        "initial_wei",
        "final_wei",
        "initial_size",
        "peak_size",
        "normal_form",
    ]);
    t.push(vec![
        path.display().to_string(),
        tr.len().to_string(),
        tr.terminated.to_string(),
        wei(&d).to_string(),
        wei(last).to_string(),
        tr.initial_size.to_string(),
        tr.peak_size().to_string(),
        sll_process::canonical_form(&tr.final_process).to_string(),
    ]);
    Ok(t.render(format))
}

pub fn run_file(path: &Path, opts: &TraceOptions, format: Format) -> CliResult {
    let p = read_pi(path)?;
    let ro = RunOptions { strategy: opts.strategy, max_steps: opts.max_steps, record_processes: false };
    let tr = run_to_normal_form(&p, &ro);
    if let Some(out) = &opts.emit_trace {
        let mut t = Table::new(&TRACE_HEADER);
        for (i, s) in tr.steps.iter().enumerate() {
            t.push(vec![(i + 1).to_string(), "tau".into(), String::new(), String::new(), s.size.to_string()]);
        }
        write_trace(out, &t)?;
    }
    let mut t = Table::new(&["name", "steps", "terminated", "initial_size", "peak_size", "normal_form"]);
    t.push(vec![
        path.display().to_string(),
        tr.len().to_string(),
        tr.terminated.to_string(),
        tr.initial_size.to_string(),
        tr.peak_size().to_string(),
        sll_process::canonical_form(&collect_inert_servers(&tr.final_process)).to_string(),
    ]);
    Ok(t.render(format))
}

/// Run the duplicating-server family at size `n`.
pub fn blowup(n: usize, strategy: Strategy, format: Format) -> CliResult {
    if n == 0 {
        return Err(CliError::new("Usage", "n must be at least 1"));
    }
    let p = build_blowup_family(n);
    let tr = run_to_normal_form(&p, &RunOptions { strategy, ..RunOptions::default() });
    let nil = struct_congruent(&collect_inert_servers(&tr.final_process), &sll_process::Process::Nil);
    let mut t = Table::new(&["n", "initial_size", "steps", "peak_size", "terminated", "ends_in_nil"]);
    t.push(vec![
        n.to_string(),
        tr.initial_size.to_string(),
        tr.len().to_string(),
        tr.peak_size().to_string(),
        tr.terminated.to_string(),
        nil.to_string(),
    ]);
    Ok(t.render(format))
}

const CERT_HEADER: [&str; 7] = ["name", "initial_size", "box_depth", "steps", "peak_size", "bound", "satisfied"];

fn cert_row(c: &crate::certify::BoundCertificate) -> Vec<String> {
    vec![
        c.entry_name.clone(),
        c.initial_size.to_string(),
        c.box_depth.to_string(),
        c.trace_length.to_string(),
        c.peak_size.to_string(),
        c.bound_value.to_string(),
        c.satisfied.to_string(),
    ]
}

pub fn certify_file(path: &Path, format: Format) -> CliResult {
    let (j, d) = read_thm(path)?;
    check(&d, &j)?;
    let c = certify(&path.display().to_string(), &d)?;
    let mut t = Table::new(&CERT_HEADER);
    t.push(cert_row(&c));
    let out = t.render(format);
    if c.satisfied {
        Ok(out)
    } else {
        Err(CliError::new("BoundViolated", out))
    }
}

/// Outcome of one corpus entry: the report row and whether it met its
/// expectation.
fn run_entry(e: &CorpusEntry) -> (Vec<String>, bool) {
    let mut row = vec![e.name.clone(), e.kind().to_string()];
    let blank = |row: &mut Vec<String>, k: usize| row.extend(std::iter::repeat_n(String::new(), k));
    let pass = match (&e.source, &e.expected) {
        (Source::Proof { judgment, term } | Source::Generated { judgment, term, .. }, Expected::Typable) => {
            let certified = check(term, judgment).map_err(CliError::from).and_then(|_| Ok(certify(&e.name, term)?));
            match certified {
                Ok(c) => {
                    row.push("typable".into());
                    row.extend([
                        size_term(term).to_string(),
                        bde_term(term).to_string(),
                        dupf(term).to_string(),
                        wei(term).to_string(),
                        judgment_depth(judgment).to_string(),
                        c.trace_length.to_string(),
                        c.peak_size.to_string(),
                        c.bound_value.to_string(),
                    ]);
                    c.satisfied
                }
                Err(err) => {
                    row.push(err.class.clone());
                    blank(&mut row, 8);
                    false
                }
            }
        }
        (Source::Proof { judgment, term } | Source::Generated { judgment, term, .. }, Expected::Untypable(class)) => {
            let got = match check(term, judgment) {
                Ok(_) => "typable".to_string(),
                Err(err) => err.class().to_string(),
            };
            let ok = &got == class;
            row.push(got);
            blank(&mut row, 8);
            ok
        }
        (Source::Process(_) | Source::Blowup(_), Expected::Normalizes) => {
            let p = match &e.source {
                Source::Blowup(n) => build_blowup_family(*n),
                Source::Process(p) => p.clone(),
                _ => unreachable!(),
            };
            let tr = run_to_normal_form(&p, &RunOptions::default());
            let nil = struct_congruent(&collect_inert_servers(&tr.final_process), &sll_process::Process::Nil);
            row.push(if tr.terminated { "normal" } else { "running" }.into());
            row.extend([
                tr.initial_size.to_string(),
                sll_metrics::bde_process(&p).to_string(),
                String::new(),
                String::new(),
                String::new(),
                tr.len().to_string(),
                tr.peak_size().to_string(),
                String::new(),
            ]);
            // Only the blowup family is closed; a lone server stays put.
            tr.terminated && (nil || matches!(e.source, Source::Process(_)))
        }
        _ => {
            row.push("unsupported".into());
            blank(&mut row, 8);
            false
        }
    };
    row.push(if pass { "PASS" } else { "FAIL" }.into());
    (row, pass)
}

/// Run every corpus entry on `workers` threads. The report lists entries in
/// manifest order; the error carries the report when an entry fails.
pub fn corpus(manifest: &Path, format: Format, workers: usize) -> CliResult {
    let entries = load_corpus(manifest)?;
    let results = run_ordered(&entries, workers, run_entry);
    let mut t = Table::new(&[
        "name",
        "kind",
        "outcome",
        "size",
        "bde",
        "dupf",
        "wei",
        "judgment_depth",
        "steps",
        "peak_size",
        "bound",
        "status",
    ]);
    let mut failed = 0;
    for (row, pass) in results {
        failed += usize::from(!pass);
        t.push(row);
    }
    let out = t.render(format);
    if failed == 0 {
        Ok(out)
    } else {
        Err(CliError::new("CorpusFailure", format!("{failed} entries failed\n{out}")))
    }
}
