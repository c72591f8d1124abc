//! Subject reduction: given a typed term and an internal redex of its
//! process, rewrite the term so that it types the reduct.
//!
//! Every communication happens across a cut on the unguarded spine of the
//! term (cuts, the body of exponential cuts, `1L` and `!L`). For a linear
//! cut both premises are normalised by structural and commuting conversions
//! until their heads meet, then the matching computational rule fires (or
//! the promotion shift, which turns the problem into an exponential one).
//! For an exponential cut the cut itself travels down to the chosen spawn;
//! whenever both sides of a linear cut need the server it is duplicated,
//! and after the spawn fires those duplications are merged again so the
//! process is congruent to the reduct rather than only bisimilar.
//!
//! The spawn to act on is tagged by renaming its bound channel to a fresh
//! marker, which survives the conversions unchanged.

use thiserror::Error;

use sll_process::{congruence_key, Name, Process};
use sll_proof::{check, extract, synthesize, Path, ProofTerm, ProofTerm::*, TypeError};
use sll_reducer::{internal_steps, RedexPos};
use sll_types::Judgment;

use crate::rules::{rule, Fresh, StepKind};
use crate::steps::{settle, RewriteStep};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SrError {
    #[error("NotTypable: {0}")]
    NotTypable(TypeError),
    #[error("RedexNotFound: {0}")]
    RedexNotFound(String),
    #[error("SearchExhausted: more than {0} equivalence steps")]
    SearchExhausted(usize),
}

impl SrError {
    pub fn class(&self) -> &'static str {
        match self {
            SrError::NotTypable(_) => "NotTypable",
            SrError::RedexNotFound(_) => "RedexNotFound",
            SrError::SearchExhausted(_) => "SearchExhausted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SrResult {
    pub target: ProofTerm,
    pub judgment: Judgment,
    pub script: Vec<RewriteStep>,
    /// The process reduct, as computed by the reducer.
    pub reduct: Process,
}

impl SrResult {
    /// The computational step of the script.
    pub fn computational(&self) -> &RewriteStep {
        self.script.iter().find(|s| s.kind == StepKind::Computational).expect("one computational step")
    }
}

/// True when `script` is conversions, one computational step, conversions.
pub fn has_sr_shape(script: &[RewriteStep]) -> bool {
    script.iter().filter(|s| s.kind == StepKind::Computational).count() == 1
}

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct SearchConfig {
    /// Maximum number of equivalence steps; `None` means `4·size²`.
    pub max_equivalences: Option<usize>,
}


pub fn subject_reduce(d: &ProofTerm, redex: RedexPos) -> Result<SrResult, SrError> {
    subject_reduce_with(d, redex, &SearchConfig::default())
}

pub fn subject_reduce_with(d: &ProofTerm, redex: RedexPos, cfg: &SearchConfig) -> Result<SrResult, SrError> {
    synthesize(d).map_err(SrError::NotTypable)?;
    let reduct = internal_steps(&extract(d))
        .into_iter()
        .find(|(pos, _)| *pos == redex)
        .map(|(_, q)| q)
        .ok_or_else(|| SrError::RedexNotFound(format!("no internal redex {redex}")))?;
    subject_reduce_to(d, reduct, cfg)
}

/// Subject reduction towards a reduct the caller already has.
pub fn subject_reduce_to(d: &ProofTerm, reduct: Process, cfg: &SearchConfig) -> Result<SrResult, SrError> {
    let judgment = synthesize(d).map_err(SrError::NotTypable)?.judgment;
    let size = sll_process::size(&extract(d)) as usize;
    let bound = cfg.max_equivalences.unwrap_or(4 * size.max(1) * size.max(1));
    let key = congruence_key(&reduct);
    let mut exhausted = false;
    let mut why = String::from("no cut of the term accounts for it");
    for site in sites(d) {
        match dig(d, &judgment, &site, bound) {
            Ok(s) => {
                let got = extract(&s.term);
                if got.free_names() == reduct.free_names() && congruence_key(&got) == key {
                    return Ok(SrResult { target: s.term, judgment: s.judgment, script: s.script, reduct });
                }
                why = "the rewritten term does not match the reduct".into();
            }
            Err(Fail::Exhausted) => exhausted = true,
            Err(Fail::Stuck(w)) => why = w,
        }
    }
    if exhausted {
        return Err(SrError::SearchExhausted(bound));
    }
    Err(SrError::RedexNotFound(why))
}

/// A place where a communication can be carried out.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Site {
    /// A linear cut whose premises end in dual prefixes on its channel.
    Linear(Path),
    /// A linear cut between a promotion and `!L`, with the spawn to serve.
    Promote(Path, Path),
    /// An exponential cut and one spawn on its channel.
    Spawn(Path, Path),
}

fn spine(t: &ProofTerm, p: &mut Path, out: &mut Vec<Path>) {
    let go = |i: usize, k: &ProofTerm, p: &mut Path, out: &mut Vec<Path>| {
        p.push(i);
        spine(k, p, out);
        p.pop();
    };
    match t {
        Cut(_, l, r) => {
            out.push(p.clone());
            go(0, l, p, out);
            go(1, r, p, out);
        }
        CutBang(_, _, _, e) | CutSharp(_, _, _, e) => {
            out.push(p.clone());
            go(1, e, p, out);
        }
        OneL(_, b) | BangLBang(_, b) | BangLSharp(_, b) => go(0, b, p, out),
        _ => {}
    }
}

/// The node that offers the subject, past cuts and left-only rules.
fn subject_head(t: &ProofTerm) -> &ProofTerm {
    match t {
        Cut(_, _, r) | CutBang(_, _, _, r) | CutSharp(_, _, _, r) => subject_head(r),
        OneL(_, b) | BangLBang(_, b) | BangLSharp(_, b) => subject_head(b),
        _ => t,
    }
}

/// The unguarded node that uses the linear channel `c`, if any.
fn use_head<'a>(t: &'a ProofTerm, c: &Name) -> Option<&'a ProofTerm> {
    match t {
        Cut(y, l, r) => {
            if y == c {
                None
            } else if l.is_free(c) {
                use_head(l, c)
            } else {
                use_head(r, c)
            }
        }
        CutBang(y, _, _, e) | CutSharp(y, _, _, e) => {
            if y == c {
                None
            } else {
                use_head(e, c)
            }
        }
        OneL(y, b) | BangLBang(y, b) | BangLSharp(y, b) => {
            if y == c {
                Some(t)
            } else {
                use_head(b, c)
            }
        }
        _ => Some(t),
    }
}

/// Unguarded spawns on `x` of the given flavour, as paths relative to `t`.
fn spawns(t: &ProofTerm, x: &Name, sharp: bool, p: &mut Path, out: &mut Vec<Path>) {
    let go = |i: usize, k: &ProofTerm, p: &mut Path, out: &mut Vec<Path>| {
        p.push(i);
        spawns(k, x, sharp, p, out);
        p.pop();
    };
    match t {
        Cut(y, l, r) if y != x => {
            go(0, l, p, out);
            go(1, r, p, out);
        }
        CutBang(y, _, _, e) | CutSharp(y, _, _, e) if y != x => go(1, e, p, out),
        OneL(_, b) | BangLBang(_, b) | BangLSharp(_, b) => go(0, b, p, out),
        FlatBang(x2, ..) if !sharp && x2 == x => out.push(p.clone()),
        FlatSharp(x2, ..) if sharp && x2 == x => out.push(p.clone()),
        _ => {}
    }
}

fn comp_rule(l: &ProofTerm, r: &ProofTerm, c: &Name) -> Option<&'static str> {
    let name = match (l, r) {
        (TensorR(a, ..), TensorL(b, ..)) if a == c && b == c => "(cut/⊗R/⊗L)",
        (LolliR(a, ..), LolliL(b, ..)) if a == c && b == c => "(cut/⊸L/⊸R)",
        (WithR(a, ..), WithL1(b, ..)) if a == c && b == c => "(cut/&R/&L₁)",
        (WithR(a, ..), WithL2(b, ..)) if a == c && b == c => "(cut/&R/&L₂)",
        (PlusR1(a, ..), PlusL(b, ..)) if a == c && b == c => "(cut/⊕R₁/⊕L)",
        (PlusR2(a, ..), PlusL(b, ..)) if a == c && b == c => "(cut/⊕R₂/⊕L)",
        (BangR(a, ..), BangLBang(b, _)) if a == c && b == c => "(cut/!R/!L_!)",
        (BangR(a, ..), BangLSharp(b, _)) if a == c && b == c => "(cut/!R/!L_#)",
        _ => return None,
    };
    Some(name)
}

fn sites(d: &ProofTerm) -> Vec<Site> {
    let mut cuts = Vec::new();
    spine(d, &mut Vec::new(), &mut cuts);
    let mut out = Vec::new();
    for p in cuts {
        match d.at(&p).expect("spine position") {
            Cut(c, l, r) => {
                let lh = subject_head(l);
                let Some(rh) = use_head(r, c) else { continue };
                match comp_rule(lh, rh, c) {
                    Some("(cut/!R/!L_!)") | Some("(cut/!R/!L_#)") => {
                        let (sharp, body) = match rh {
                            BangLSharp(_, b) => (true, b),
                            BangLBang(_, b) => (false, b),
                            _ => unreachable!(),
                        };
                        let mut fl = Vec::new();
                        spawns(body, c, sharp, &mut Vec::new(), &mut fl);
                        // Locate the `!L` node itself to build absolute paths.
                        let Some(bl) = find_node(d.at(&[p.clone(), vec![1]].concat()).unwrap(), rh) else {
                            continue;
                        };
                        for f in fl {
                            out.push(Site::Promote(p.clone(), [p.clone(), vec![1], bl.clone(), vec![0], f].concat()));
                        }
                    }
                    Some(_) => out.push(Site::Linear(p.clone())),
                    None => {}
                }
            }
            CutBang(x, _, _, e) | CutSharp(x, _, _, e) => {
                let sharp = matches!(d.at(&p), Some(CutSharp(..)));
                let mut fl = Vec::new();
                spawns(e, x, sharp, &mut Vec::new(), &mut fl);
                for f in fl {
                    out.push(Site::Spawn(p.clone(), [p.clone(), vec![1], f].concat()));
                }
            }
            _ => unreachable!("spine lists cuts only"),
        }
    }
    out
}

/// Path of `target` inside `t`, by pointer identity.
fn find_node(t: &ProofTerm, target: &ProofTerm) -> Option<Path> {
    if std::ptr::eq(t, target) {
        return Some(Vec::new());
    }
    for (i, k) in t.children().into_iter().enumerate() {
        if let Some(mut p) = find_node(k, target) {
            p.insert(0, i);
            return Some(p);
        }
    }
    None
}

enum Fail {
    Stuck(String),
    Exhausted,
}

struct Search {
    term: ProofTerm,
    judgment: Judgment,
    script: Vec<RewriteStep>,
    fresh: Fresh,
    equivalences: usize,
    bound: usize,
}

/// How the exponential cut travelled, so the way back can be retraced.
#[derive(Clone, Copy)]
enum Move {
    Commute,
    /// Past a linear cut into the given premise, without copying.
    Enter(usize),
    /// Copied into both premises of a linear cut.
    Split,
    /// Past another exponential cut.
    Swap,
    /// Copied under another exponential cut whose server needs it.
    Nest,
}

impl Search {
    fn node(&self, p: &[usize]) -> &ProofTerm {
        self.term.at(p).expect("search position")
    }

    fn step(&mut self, p: &[usize], name: &'static str, reversed: bool) -> Result<(), Fail> {
        let r = rule(name).expect("known rule");
        let sub = self.node(p).clone();
        let new =
            r.apply(&sub, reversed, &mut self.fresh).ok_or_else(|| Fail::Stuck(format!("{name} does not apply")))?;
        let after = self.term.replace_at(p, new).expect("search position");
        let after = match r.kind {
            StepKind::Computational => {
                let (a, j) =
                    settle(after, &self.judgment).ok_or_else(|| Fail::Stuck(format!("{name} loses typing")))?;
                self.judgment = j;
                a
            }
            _ => {
                if r.kind == StepKind::Equivalence {
                    self.equivalences += 1;
                    if self.equivalences > self.bound {
                        return Err(Fail::Exhausted);
                    }
                }
                check(&after, &self.judgment).map_err(|e| Fail::Stuck(format!("{name}: {e}")))?;
                after
            }
        };
        self.script.push(RewriteStep {
            kind: r.kind,
            rule: r.name,
            reversed,
            group: r.group,
            before: std::mem::replace(&mut self.term, after.clone()),
            after,
            position: p.to_vec(),
        });
        Ok(())
    }
}

fn tag(d: &ProofTerm, flat: &[usize], fresh: &mut Fresh) -> (ProofTerm, Name) {
    let node = d.at(flat).expect("spawn position");
    let marker = fresh.name(&node.binders()[0]);
    (d.replace_at(flat, node.with_binders(std::slice::from_ref(&marker))).unwrap(), marker)
}

fn dig(d: &ProofTerm, j: &Judgment, site: &Site, bound: usize) -> Result<Search, Fail> {
    let mut fresh = Fresh::for_term(d);
    let mut s = Search {
        term: d.clone(),
        judgment: j.clone(),
        script: Vec::new(),
        fresh: Fresh::default(),
        equivalences: 0,
        bound,
    };
    match site {
        Site::Linear(p) => {
            s.fresh = fresh;
            linear(&mut s, p.clone(), None)?;
        }
        Site::Promote(p, f) => {
            let (t, m) = tag(d, f, &mut fresh);
            s.term = t;
            s.fresh = fresh;
            linear(&mut s, p.clone(), Some(m))?;
        }
        Site::Spawn(p, f) => {
            let (t, m) = tag(d, f, &mut fresh);
            s.term = t;
            s.fresh = fresh;
            exponential(&mut s, p.clone(), &m)?;
        }
    }
    Ok(s)
}

fn head_name(t: &ProofTerm) -> &'static str {
    match t {
        OneL(..) => "1L",
        BangLBang(..) => "!L_!",
        _ => "!L_#",
    }
}

fn linear(s: &mut Search, mut p: Path, marker: Option<Name>) -> Result<(), Fail> {
    // Bring the offering premise's head up to the cut.
    loop {
        let Cut(_, l, _) = s.node(&p) else { return Err(Fail::Stuck("lost the cut".into())) };
        let (name, reversed, next) = match &**l {
            Cut(..) => ("(cut/−/cut₁)", true, 1),
            CutBang(..) => ("(cut/cut!/−)", false, 1),
            CutSharp(..) => ("(cut/cut#/−)", false, 1),
            OneL(..) => ("(cut/1L/−)", false, 0),
            BangLBang(..) => ("(cut/!L_!/−)", false, 0),
            BangLSharp(..) => ("(cut/!L_#/−)", false, 0),
            _ => break,
        };
        s.step(&p, name, reversed)?;
        p.push(next);
    }
    // Then the using premise's.
    loop {
        let Cut(c, _, r) = s.node(&p) else { return Err(Fail::Stuck("lost the cut".into())) };
        let (name, next) = match &**r {
            Cut(_, e1, _) => {
                if e1.is_free(c) {
                    ("(cut/−/cut₁)", 0)
                } else {
                    ("(cut/−/cut₂)", 1)
                }
            }
            CutBang(..) => ("(cut/−/cut!)", 1),
            CutSharp(..) => ("(cut/−/cut#)", 1),
            OneL(y, _) | BangLBang(y, _) | BangLSharp(y, _) if y != c => match head_name(r) {
                "1L" => ("(cut/−/1L)", 0),
                "!L_!" => ("(cut/−/!L_!)", 0),
                _ => ("(cut/−/!L_#)", 0),
            },
            _ => break,
        };
        s.step(&p, name, false)?;
        p.push(next);
    }
    let Cut(c, l, r) = s.node(&p) else { unreachable!() };
    let name = comp_rule(l, r, c).ok_or_else(|| Fail::Stuck("heads do not match".into()))?;
    let aux = match &**l {
        BangR(_, _, xs, _) => xs.len(),
        _ => 0,
    };
    s.step(&p, name, false)?;
    if let Some(m) = marker {
        p.extend(std::iter::repeat_n(0, aux));
        exponential(s, p, &m)?;
    }
    Ok(())
}

fn has_spawn(t: &ProofTerm, marker: &Name) -> bool {
    match t {
        FlatBang(_, w, _) | FlatSharp(_, w, _) if w == marker => true,
        _ => t.children().into_iter().any(|k| has_spawn(k, marker)),
    }
}

fn exponential(s: &mut Search, mut p: Path, marker: &Name) -> Result<(), Fail> {
    let mut moves: Vec<(Path, Move)> = Vec::new();
    let mut copied = false;
    loop {
        let (sharp, x, e) = match s.node(&p) {
            CutBang(x, _, _, e) => (false, x.clone(), e),
            CutSharp(x, _, _, e) => (true, x.clone(), e),
            _ => return Err(Fail::Stuck("lost the exponential cut".into())),
        };
        let (name, reversed, next, mv): (&'static str, bool, Vec<usize>, Move) = match &**e {
            FlatBang(_, w, _) | FlatSharp(_, w, _) if w == marker => {
                let name = if sharp { "(cut#/−/♭#)" } else { "(cut!/−/♭!)" };
                s.step(&p, name, false)?;
                break;
            }
            OneL(..) | BangLBang(..) | BangLSharp(..) => {
                let name = match (sharp, head_name(e)) {
                    (false, "1L") => "(cut!/−/1L)",
                    (false, "!L_!") => "(cut!/−/!L_!)",
                    (false, _) => "(cut!/−/!L_#)",
                    (true, "1L") => "(cut#/−/1L)",
                    (true, "!L_!") => "(cut#/−/!L_!)",
                    (true, _) => "(cut#/−/!L_#)",
                };
                (name, false, vec![0], Move::Commute)
            }
            Cut(_, e1, e2) => {
                let side = if has_spawn(e1, marker) { 0 } else { 1 };
                let other = if side == 0 { e2 } else { e1 };
                match (sharp, side) {
                    (false, 0) => ("(cut!/−/cut₁)", false, vec![0], Move::Enter(0)),
                    (false, _) => ("(cut!/−/cut₂)", false, vec![1], Move::Enter(1)),
                    (true, _) if other.is_free(&x) => ("(cut#/−/cut)", false, vec![side], Move::Split),
                    (true, 0) => ("(cut/cut#/−)", true, vec![0], Move::Enter(0)),
                    (true, _) => ("(cut/−/cut#)", true, vec![1], Move::Enter(1)),
                }
            }
            CutBang(..) => {
                let name = if sharp { "(cut#/−/cut!)" } else { "(cut!/−/cut!)₂" };
                (name, false, vec![1], Move::Swap)
            }
            CutSharp(_, _, t, _) => {
                if !sharp {
                    ("(cut!/−/cut#)", false, vec![1], Move::Swap)
                } else if t.is_free(&x) {
                    ("(cut#/−/cut#)", false, vec![1, 1], Move::Nest)
                } else {
                    ("(cut#/−/cut#)₀", false, vec![1], Move::Swap)
                }
            }
            _ => return Err(Fail::Stuck("spawn is guarded".into())),
        };
        s.step(&p, name, reversed)?;
        copied |= matches!(mv, Move::Split | Move::Nest);
        moves.push((p.clone(), mv));
        p.extend(next);
    }
    if !copied {
        return Ok(());
    }
    // Float the remaining server back over the new cut, then retrace.
    s.step(&p, "(cut/−/cut#)", false)?;
    for (q, mv) in moves.into_iter().rev() {
        let (name, reversed) = match mv {
            Move::Commute => {
                let inner = s.node(&q).children()[0];
                let name = match (inner, head_name(s.node(&q))) {
                    (CutBang(..), "1L") => "(cut!/−/1L)",
                    (CutBang(..), "!L_!") => "(cut!/−/!L_!)",
                    (CutBang(..), _) => "(cut!/−/!L_#)",
                    (_, "1L") => "(cut#/−/1L)",
                    (_, "!L_!") => "(cut#/−/!L_!)",
                    (_, _) => "(cut#/−/!L_#)",
                };
                (name, true)
            }
            Move::Enter(0) => ("(cut/cut#/−)", false),
            Move::Enter(_) => ("(cut/−/cut#)", false),
            Move::Split => ("(cut#/−/cut)", true),
            Move::Swap => match s.node(&q) {
                CutBang(..) => ("(cut#/−/cut!)", true),
                _ => ("(cut#/−/cut#)₀", false),
            },
            Move::Nest => ("(cut#/−/cut#)", true),
        };
        s.step(&q, name, reversed)?;
    }
    Ok(())
}
