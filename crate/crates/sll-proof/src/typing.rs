//! Bottom-up judgment synthesis and checking against a declared judgment.
//!
//! Synthesis computes the least contexts each node needs. Enlarging the
//! auxiliary or multiplexor context later is only sound when every path
//! that carries it reaches a `1R` leaf, since `!R` fixes its auxiliary
//! context to be empty and an exponential cut hands its multiplexor context
//! to the server as auxiliary. Each node therefore also records whether its
//! two exponential contexts may still be weakened.

use std::collections::BTreeMap;

use sll_process::Name;
use sll_types::{Context, Judgment, SessionType};
use thiserror::Error;

use crate::extract::{extract, occurrences};
use crate::term::{Path, ProofTerm, ProofTerm::*};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("NameClash at {rule}: {name} is bound twice")]
    NameClash { rule: &'static str, name: Name },
    #[error("ContextMismatch at {rule} on {chan}: {detail}")]
    ContextMismatch { rule: &'static str, chan: Name, detail: String },
    #[error("TypeMismatch at {rule} on {chan}: expected {expected}, found {found}")]
    TypeMismatch { rule: &'static str, chan: Name, expected: SessionType, found: SessionType },
    #[error("MultiplexorRequired at {rule}: {chan} is already used outside the multiplexor context")]
    MultiplexorRequired { rule: &'static str, chan: Name },
    #[error("AuxiliaryNonlinear at {rule} on {chan}: {detail}")]
    AuxiliaryNonlinear { rule: &'static str, chan: Name, detail: String },
    #[error("DeclaredMismatch: {detail}")]
    DeclaredMismatch { detail: String },
}

impl TypeError {
    /// Machine-readable error class.
    pub fn class(&self) -> &'static str {
        match self {
            TypeError::NameClash { .. } => "NameClash",
            TypeError::ContextMismatch { .. } => "ContextMismatch",
            TypeError::TypeMismatch { .. } => "TypeMismatch",
            TypeError::MultiplexorRequired { .. } => "MultiplexorRequired",
            TypeError::AuxiliaryNonlinear { .. } => "AuxiliaryNonlinear",
            TypeError::DeclaredMismatch { .. } => "DeclaredMismatch",
        }
    }
}

type R<T> = Result<T, TypeError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypingEvidence {
    pub judgment: Judgment,
    pub per_node: BTreeMap<Path, Judgment>,
}

#[derive(Clone)]
struct Syn {
    j: Judgment,
    aux_weak: bool,
    mux_weak: bool,
}

fn mismatch(rule: &'static str, chan: &Name, detail: impl Into<String>) -> TypeError {
    TypeError::ContextMismatch { rule, chan: chan.clone(), detail: detail.into() }
}

fn type_mismatch(rule: &'static str, chan: &Name, expected: &SessionType, found: &SessionType) -> TypeError {
    TypeError::TypeMismatch { rule, chan: chan.clone(), expected: expected.clone(), found: found.clone() }
}

fn clash(rule: &'static str, name: &Name) -> TypeError {
    TypeError::NameClash { rule, name: name.clone() }
}

fn mentions(j: &Judgment, x: &Name) -> bool {
    j.subject == *x || j.aux.contains(x) || j.mux.contains(x) || j.lin.contains(x)
}

/// `x` must not occur in any slot of `j` (it is bound at this node).
fn unmentioned(rule: &'static str, j: &Judgment, x: &Name) -> R<()> {
    if mentions(j, x) {
        Err(clash(rule, x))
    } else {
        Ok(())
    }
}

fn take_lin(rule: &'static str, j: &mut Judgment, x: &Name) -> R<SessionType> {
    if let Some(a) = j.lin.remove(x) {
        return Ok(a);
    }
    let detail = if j.aux.contains(x) || j.mux.contains(x) {
        "expected in the linear context, found in an exponential one"
    } else if j.subject == *x {
        "expected in the linear context, found as the offered channel"
    } else {
        "linear channel not used by the premise"
    };
    Err(mismatch(rule, x, detail))
}

fn expect_subject(rule: &'static str, j: &Judgment, x: &Name) -> R<()> {
    if j.subject == *x {
        Ok(())
    } else {
        Err(mismatch(rule, x, format!("premise offers {} instead", j.subject)))
    }
}

fn disjoint_aux(rule: &'static str, a: &Context, b: &Context) -> R<Context> {
    let mut out = a.clone();
    for (x, t) in b.iter() {
        if out.insert(x.clone(), t.clone()).is_some() {
            return Err(TypeError::AuxiliaryNonlinear {
                rule,
                chan: x.clone(),
                detail: "auxiliary channel used by both premises".into(),
            });
        }
    }
    Ok(out)
}

fn disjoint_lin(rule: &'static str, a: &Context, b: &Context) -> R<Context> {
    let mut out = a.clone();
    for (x, t) in b.iter() {
        if out.insert(x.clone(), t.clone()).is_some() {
            return Err(clash(rule, x));
        }
    }
    Ok(out)
}

fn union(rule: &'static str, a: &Context, b: &Context) -> R<Context> {
    let mut out = a.clone();
    for (x, t) in b.iter() {
        match out.get(x) {
            Some(u) if u != t => return Err(type_mismatch(rule, x, u, t)),
            _ => {
                out.insert(x.clone(), t.clone());
            }
        }
    }
    Ok(out)
}

/// A premise whose context must grow to `target` needs to be weakenable.
fn grow(rule: &'static str, have: &Context, target: &Context, weak: bool, what: &str) -> R<()> {
    if have == target || weak {
        return Ok(());
    }
    let x = target.names().find(|x| !have.contains(x)).expect("strictly smaller");
    Err(mismatch(rule, x, format!("{what} context cannot be weakened under a promotion")))
}

fn well_formed(rule: &'static str, s: Syn) -> R<Syn> {
    let j = &s.j;
    let slots = [&j.aux, &j.mux, &j.lin];
    for (i, a) in slots.iter().enumerate() {
        for x in a.names() {
            if *x == j.subject || slots[i + 1..].iter().any(|b| b.contains(x)) {
                return Err(clash(rule, x));
            }
        }
    }
    Ok(s)
}

fn leaf(x: &Name, a: SessionType) -> Judgment {
    Judgment::new(Context::new(), Context::new(), Context::new(), x.clone(), a)
}

/// Multiplicative binary rule: auxiliary split, multiplexor shared, linear split.
fn binary(rule: &'static str, d: &Syn, e: &Syn, lin_e: &Context) -> R<(Context, Context, Context)> {
    let aux = disjoint_aux(rule, &d.j.aux, &e.j.aux)?;
    let mux = union(rule, &d.j.mux, &e.j.mux)?;
    grow(rule, &d.j.mux, &mux, d.mux_weak, "multiplexor")?;
    grow(rule, &e.j.mux, &mux, e.mux_weak, "multiplexor")?;
    let lin = disjoint_lin(rule, &d.j.lin, lin_e)?;
    Ok((aux, mux, lin))
}

/// Additive binary rule: both premises share every context.
fn additive(rule: &'static str, chan: &Name, d: &Syn, e: &Syn) -> R<(Context, Context)> {
    if d.j.lin != e.j.lin {
        return Err(mismatch(
            rule,
            chan,
            format!("branches disagree on the linear context: {} vs {}", d.j.lin, e.j.lin),
        ));
    }
    let aux = union(rule, &d.j.aux, &e.j.aux)?;
    grow(rule, &d.j.aux, &aux, d.aux_weak, "auxiliary")?;
    grow(rule, &e.j.aux, &aux, e.aux_weak, "auxiliary")?;
    let mux = union(rule, &d.j.mux, &e.j.mux)?;
    grow(rule, &d.j.mux, &mux, d.mux_weak, "multiplexor")?;
    grow(rule, &e.j.mux, &mux, e.mux_weak, "multiplexor")?;
    Ok((aux, mux))
}

fn server_premise(rule: &'static str, s: &Syn, y: &Name) -> R<()> {
    if let Some(x) = s.j.mux.names().next() {
        return Err(mismatch(rule, x, "server premise must have an empty multiplexor context"));
    }
    if let Some(x) = s.j.lin.names().next() {
        return Err(mismatch(rule, x, "server premise must have an empty linear context"));
    }
    expect_subject(rule, &s.j, y)
}

fn syn(d: &ProofTerm, path: &mut Path, ev: &mut BTreeMap<Path, Judgment>) -> R<Syn> {
    let rule = d.rule();
    let mut kids = Vec::new();
    for (i, k) in d.children().into_iter().enumerate() {
        path.push(i);
        kids.push(syn(k, path, ev)?);
        path.pop();
    }
    let s = match d {
        OneR(x) => Syn { j: leaf(x, SessionType::One), aux_weak: true, mux_weak: true },
        OneL(x, _) => {
            let mut s = kids.remove(0);
            if mentions(&s.j, x) {
                return Err(clash(rule, x));
            }
            s.j.lin.insert(x.clone(), SessionType::One);
            s
        }
        TensorL(x, y, _) => {
            let mut s = kids.remove(0);
            if x == y {
                return Err(clash(rule, y));
            }
            let a = take_lin(rule, &mut s.j, y)?;
            let b = take_lin(rule, &mut s.j, x)?;
            unmentioned(rule, &s.j, y)?;
            unmentioned(rule, &s.j, x)?;
            s.j.lin.insert(x.clone(), SessionType::tensor(a, b));
            s
        }
        TensorR(x, y, _, _) => {
            let e = kids.pop().unwrap();
            let d = kids.pop().unwrap();
            expect_subject(rule, &d.j, y)?;
            expect_subject(rule, &e.j, x)?;
            unmentioned(rule, &e.j, y)?;
            if d.j.aux.contains(x) || d.j.mux.contains(x) || d.j.lin.contains(x) {
                return Err(clash(rule, x));
            }
            let (aux, mux, lin) = binary(rule, &d, &e, &e.j.lin)?;
            let a = SessionType::tensor(d.j.offered.clone(), e.j.offered.clone());
            Syn {
                j: Judgment::new(aux, mux, lin, x.clone(), a),
                aux_weak: d.aux_weak || e.aux_weak,
                mux_weak: d.mux_weak && e.mux_weak,
            }
        }
        LolliL(x, y, _, _) => {
            let mut e = kids.pop().unwrap();
            let d = kids.pop().unwrap();
            expect_subject(rule, &d.j, y)?;
            let b = take_lin(rule, &mut e.j, x)?;
            unmentioned(rule, &e.j, y)?;
            unmentioned(rule, &e.j, x)?;
            if d.j.aux.contains(x) || d.j.mux.contains(x) || d.j.lin.contains(x) {
                return Err(clash(rule, x));
            }
            let (aux, mux, mut lin) = binary(rule, &d, &e, &e.j.lin)?;
            lin.insert(x.clone(), SessionType::lolli(d.j.offered.clone(), b));
            Syn {
                j: Judgment::new(aux, mux, lin, e.j.subject.clone(), e.j.offered.clone()),
                aux_weak: d.aux_weak || e.aux_weak,
                mux_weak: d.mux_weak && e.mux_weak,
            }
        }
        LolliR(x, y, _) => {
            let mut s = kids.remove(0);
            expect_subject(rule, &s.j, x)?;
            let a = take_lin(rule, &mut s.j, y)?;
            unmentioned(rule, &s.j, y)?;
            s.j.offered = SessionType::lolli(a, s.j.offered.clone());
            s
        }
        PlusL(x, _, _) => {
            let mut e = kids.pop().unwrap();
            let mut d = kids.pop().unwrap();
            let a = take_lin(rule, &mut d.j, x)?;
            let b = take_lin(rule, &mut e.j, x)?;
            if d.j.subject != e.j.subject {
                return Err(mismatch(
                    rule,
                    &e.j.subject,
                    format!("branches offer {} and {}", d.j.subject, e.j.subject),
                ));
            }
            if d.j.offered != e.j.offered {
                return Err(type_mismatch(rule, &d.j.subject, &d.j.offered, &e.j.offered));
            }
            let (aux, mux) = additive(rule, x, &d, &e)?;
            let mut lin = d.j.lin.clone();
            lin.insert(x.clone(), SessionType::plus(a, b));
            Syn {
                j: Judgment::new(aux, mux, lin, d.j.subject.clone(), d.j.offered.clone()),
                aux_weak: d.aux_weak && e.aux_weak,
                mux_weak: d.mux_weak && e.mux_weak,
            }
        }
        WithR(x, _, _) => {
            let e = kids.pop().unwrap();
            let d = kids.pop().unwrap();
            expect_subject(rule, &d.j, x)?;
            expect_subject(rule, &e.j, x)?;
            let (aux, mux) = additive(rule, x, &d, &e)?;
            let a = SessionType::with(d.j.offered.clone(), e.j.offered.clone());
            Syn {
                j: Judgment::new(aux, mux, d.j.lin.clone(), x.clone(), a),
                aux_weak: d.aux_weak && e.aux_weak,
                mux_weak: d.mux_weak && e.mux_weak,
            }
        }
        PlusR1(x, t, _) | PlusR2(x, t, _) => {
            let mut s = kids.remove(0);
            expect_subject(rule, &s.j, x)?;
            let a = s.j.offered.clone();
            s.j.offered = match d {
                PlusR1(..) => SessionType::plus(a, t.clone()),
                _ => SessionType::plus(t.clone(), a),
            };
            s
        }
        WithL1(x, t, _) | WithL2(x, t, _) => {
            let mut s = kids.remove(0);
            let a = take_lin(rule, &mut s.j, x)?;
            unmentioned(rule, &s.j, x)?;
            let w = match d {
                WithL1(..) => SessionType::with(a, t.clone()),
                _ => SessionType::with(t.clone(), a),
            };
            s.j.lin.insert(x.clone(), w);
            s
        }
        FlatSharp(x, y, _) => {
            let mut s = kids.remove(0);
            let a = take_lin(rule, &mut s.j, y)?;
            unmentioned(rule, &s.j, y)?;
            if s.j.aux.contains(x) || s.j.lin.contains(x) || s.j.subject == *x || x == y {
                return Err(TypeError::MultiplexorRequired { rule, chan: x.clone() });
            }
            match s.j.mux.get(x) {
                Some(b) if *b != a => return Err(type_mismatch(rule, x, b, &a)),
                Some(_) => {}
                None => {
                    s.j.mux.insert(x.clone(), a);
                }
            }
            s
        }
        FlatBang(x, y, _) => {
            let mut s = kids.remove(0);
            let a = take_lin(rule, &mut s.j, y)?;
            unmentioned(rule, &s.j, y)?;
            if s.j.aux.contains(x) {
                return Err(TypeError::AuxiliaryNonlinear {
                    rule,
                    chan: x.clone(),
                    detail: "auxiliary channel spawned more than once".into(),
                });
            }
            if s.j.mux.contains(x) {
                return Err(mismatch(rule, x, "channel is in the multiplexor context"));
            }
            if mentions(&s.j, x) || x == y {
                return Err(clash(rule, x));
            }
            s.j.aux.insert(x.clone(), a);
            s
        }
        BangLSharp(x, _) | BangLBang(x, _) => {
            let mut s = kids.remove(0);
            let from = if matches!(d, BangLSharp(..)) { &mut s.j.mux } else { &mut s.j.aux };
            let Some(a) = from.remove(x) else {
                let slot = if matches!(d, BangLSharp(..)) { "multiplexor" } else { "auxiliary" };
                return Err(mismatch(rule, x, format!("channel must be used from the {slot} context")));
            };
            if mentions(&s.j, x) {
                return Err(clash(rule, x));
            }
            s.j.lin.insert(x.clone(), SessionType::bang(a));
            s
        }
        BangR(x, y, xs, body) => {
            let s = kids.remove(0);
            server_premise(rule, &s, y)?;
            let mut lin = Context::new();
            for a in xs {
                let Some(t) = s.j.aux.get(a) else {
                    return Err(TypeError::AuxiliaryNonlinear {
                        rule,
                        chan: a.clone(),
                        detail: "listed auxiliary channel is not used by the body".into(),
                    });
                };
                if lin.insert(a.clone(), SessionType::bang(t.clone())).is_some() {
                    return Err(TypeError::AuxiliaryNonlinear {
                        rule,
                        chan: a.clone(),
                        detail: "auxiliary channel listed twice".into(),
                    });
                }
            }
            if let Some(extra) = s.j.aux.names().find(|a| !lin.contains(a)) {
                return Err(mismatch(rule, extra, "auxiliary channel of the body missing from the list"));
            }
            let p = extract(body);
            for a in xs {
                let k = occurrences(&p, a);
                if k != 1 {
                    return Err(TypeError::AuxiliaryNonlinear {
                        rule,
                        chan: a.clone(),
                        detail: format!("occurs {k} times in the server body"),
                    });
                }
            }
            if lin.contains(x) || lin.contains(y) {
                return Err(clash(rule, x));
            }
            let a = SessionType::bang(s.j.offered.clone());
            Syn { j: Judgment::new(Context::new(), Context::new(), lin, x.clone(), a), aux_weak: false, mux_weak: true }
        }
        Cut(x, _, _) => {
            let mut e = kids.pop().unwrap();
            let d = kids.pop().unwrap();
            expect_subject(rule, &d.j, x)?;
            let b = take_lin(rule, &mut e.j, x)?;
            if b != d.j.offered {
                return Err(type_mismatch(rule, x, &d.j.offered, &b));
            }
            unmentioned(rule, &e.j, x)?;
            if d.j.aux.contains(x) || d.j.mux.contains(x) || d.j.lin.contains(x) {
                return Err(clash(rule, x));
            }
            let (aux, mux, lin) = binary(rule, &d, &e, &e.j.lin)?;
            Syn {
                j: Judgment::new(aux, mux, lin, e.j.subject.clone(), e.j.offered.clone()),
                aux_weak: d.aux_weak || e.aux_weak,
                mux_weak: d.mux_weak && e.mux_weak,
            }
        }
        CutBang(x, y, _, _) => {
            let mut e = kids.pop().unwrap();
            let d = kids.pop().unwrap();
            server_premise(rule, &d, y)?;
            if d.j.aux.contains(x) || x == y {
                return Err(clash(rule, x));
            }
            let a = &d.j.offered;
            match e.j.aux.remove(x) {
                Some(b) if b != *a => return Err(type_mismatch(rule, x, a, &b)),
                Some(_) => {}
                None if e.j.mux.contains(x) || e.j.lin.contains(x) || e.j.subject == *x => {
                    return Err(mismatch(rule, x, "cut channel must be auxiliary in the right premise"));
                }
                None if !e.aux_weak => {
                    return Err(mismatch(rule, x, "unused cut channel and the premise cannot be weakened"));
                }
                None => {}
            }
            let aux = disjoint_aux(rule, &d.j.aux, &e.j.aux)?;
            Syn {
                j: Judgment::new(aux, e.j.mux.clone(), e.j.lin.clone(), e.j.subject.clone(), e.j.offered.clone()),
                aux_weak: d.aux_weak || e.aux_weak,
                mux_weak: e.mux_weak,
            }
        }
        CutSharp(x, y, _, _) => {
            let mut e = kids.pop().unwrap();
            let d = kids.pop().unwrap();
            server_premise(rule, &d, y)?;
            if d.j.aux.contains(x) || x == y {
                return Err(clash(rule, x));
            }
            let a = &d.j.offered;
            match e.j.mux.remove(x) {
                Some(b) if b != *a => return Err(type_mismatch(rule, x, a, &b)),
                Some(_) => {}
                None if e.j.aux.contains(x) || e.j.lin.contains(x) || e.j.subject == *x => {
                    return Err(mismatch(rule, x, "cut channel must be a multiplexor channel in the right premise"));
                }
                None if !e.mux_weak => {
                    return Err(mismatch(rule, x, "unused cut channel and the premise cannot be weakened"));
                }
                None => {}
            }
            let mux = union(rule, &e.j.mux, &d.j.aux)?;
            grow(rule, &d.j.aux, &mux, d.aux_weak, "auxiliary")?;
            grow(rule, &e.j.mux, &mux, e.mux_weak, "multiplexor")?;
            Syn {
                j: Judgment::new(e.j.aux.clone(), mux, e.j.lin.clone(), e.j.subject.clone(), e.j.offered.clone()),
                aux_weak: e.aux_weak,
                mux_weak: e.mux_weak && d.aux_weak,
            }
        }
    };
    let s = well_formed(rule, s)?;
    ev.insert(path.clone(), s.j.clone());
    Ok(s)
}

fn synthesize_full(d: &ProofTerm) -> R<(Syn, BTreeMap<Path, Judgment>)> {
    let mut ev = BTreeMap::new();
    let s = syn(d, &mut Vec::new(), &mut ev)?;
    Ok((s, ev))
}

/// The minimal judgment of every node.
pub fn synthesize(d: &ProofTerm) -> R<TypingEvidence> {
    let (s, per_node) = synthesize_full(d)?;
    Ok(TypingEvidence { judgment: s.j, per_node })
}

/// Check against a declared judgment: the linear context and offered channel
/// must match exactly, the exponential contexts may be larger.
pub fn check(d: &ProofTerm, declared: &Judgment) -> R<TypingEvidence> {
    let (s, mut per_node) = synthesize_full(d)?;
    let bad = |detail: String| TypeError::DeclaredMismatch { detail };
    if !declared.well_formed() {
        return Err(bad("declared judgment has overlapping contexts".into()));
    }
    if s.j.subject != declared.subject || s.j.offered != declared.offered {
        return Err(bad(format!(
            "term offers {} : {}, declared {} : {}",
            s.j.subject, s.j.offered, declared.subject, declared.offered
        )));
    }
    if s.j.lin != declared.lin {
        return Err(bad(format!("linear context {} differs from declared {}", s.j.lin, declared.lin)));
    }
    for (slot, have, want, weak) in
        [("auxiliary", &s.j.aux, &declared.aux, s.aux_weak), ("multiplexor", &s.j.mux, &declared.mux, s.mux_weak)]
    {
        if !have.is_subset(want) {
            return Err(bad(format!("{slot} context {have} is not included in declared {want}")));
        }
        if have != want && !weak {
            return Err(bad(format!("{slot} context {have} cannot be weakened to {want}")));
        }
    }
    per_node.insert(Vec::new(), declared.clone());
    Ok(TypingEvidence { judgment: declared.clone(), per_node })
}

/// Move every auxiliary channel to the multiplexor context. Servers keep
/// their bodies, since a promotion needs its auxiliary channels.
pub fn lift(d: &ProofTerm) -> R<ProofTerm> {
    synthesize(d)?;
    Ok(lift_unchecked(d))
}

pub fn lift_unchecked(d: &ProofTerm) -> ProofTerm {
    let l = |d: &ProofTerm| Box::new(lift_unchecked(d));
    match d {
        FlatBang(x, y, d) => FlatSharp(x.clone(), y.clone(), l(d)),
        BangLBang(x, d) => BangLSharp(x.clone(), l(d)),
        CutBang(x, y, d, e) | CutSharp(x, y, d, e) => CutSharp(x.clone(), y.clone(), d.clone(), l(e)),
        BangR(..) | OneR(_) => d.clone(),
        OneL(x, d) => OneL(x.clone(), l(d)),
        BangLSharp(x, d) => BangLSharp(x.clone(), l(d)),
        FlatSharp(x, y, d) => FlatSharp(x.clone(), y.clone(), l(d)),
        TensorL(x, y, d) => TensorL(x.clone(), y.clone(), l(d)),
        LolliR(x, y, d) => LolliR(x.clone(), y.clone(), l(d)),
        TensorR(x, y, d, e) => TensorR(x.clone(), y.clone(), l(d), l(e)),
        LolliL(x, y, d, e) => LolliL(x.clone(), y.clone(), l(d), l(e)),
        PlusL(x, d, e) => PlusL(x.clone(), l(d), l(e)),
        WithR(x, d, e) => WithR(x.clone(), l(d), l(e)),
        PlusR1(x, t, d) => PlusR1(x.clone(), t.clone(), l(d)),
        PlusR2(x, t, d) => PlusR2(x.clone(), t.clone(), l(d)),
        WithL1(x, t, d) => WithL1(x.clone(), t.clone(), l(d)),
        WithL2(x, t, d) => WithL2(x.clone(), t.clone(), l(d)),
        Cut(x, d, e) => Cut(x.clone(), l(d), l(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;
    use crate::term::*;
    use sll_types::parse_judgment;

    fn j(s: &str) -> Judgment {
        parse_judgment(s).unwrap()
    }

    #[test]
    fn leaves() {
        assert_eq!(synthesize(&one_r("x")).unwrap().judgment, j("G: {} ; D: {} ; T: {} |- x : 1"));
        let d = bang_r("x", "y", &[], one_r("y"));
        assert_eq!(synthesize(&d).unwrap().judgment, j("G: {} ; D: {} ; T: {} |- x : !1"));
    }

    #[test]
    fn server_premise_must_be_closed() {
        let d = cut_sharp("x", "y", one_l("a", one_r("y")), one_r("z"));
        assert_eq!(synthesize(&d).unwrap_err().class(), "ContextMismatch");
    }

    #[test]
    fn weakening_at_check() {
        let d = one_r("x");
        assert!(check(&d, &j("G: {} ; D: {w: 1} ; T: {} |- x : 1")).is_ok());
        let e = check(&d, &j("G: {} ; D: {} ; T: {w: 1} |- x : 1")).unwrap_err();
        assert_eq!(e.class(), "DeclaredMismatch");
        let d = bang_r("x", "y", &[], one_r("y"));
        assert!(check(&d, &j("G: {a: 1} ; D: {} ; T: {} |- x : !1")).is_err());
        assert!(check(&d, &j("G: {} ; D: {a: 1} ; T: {} |- x : !1")).is_ok());
    }

    #[test]
    fn mult_two() {
        let d = parse_term(
            "(bangL# x (tensR y x1 (flat# x a (1L a (1R x1)))
               (tensR y x2 (flat# x b (1L b (1R x2))) (flat# x c (1L c (1R y))))))",
        )
        .unwrap();
        let want = j("G: {} ; D: {} ; T: {x: !1} |- y : 1 * 1 * 1");
        assert!(check(&d, &want).is_ok(), "{:?}", synthesize(&d));
    }

    #[test]
    fn contraction_on_auxiliary_rejected() {
        let d = parse_term("(bangR x0 y (x1) (flat! x1 z (1L z (flat! x1 w (1L w (1R y))))))").unwrap();
        assert_eq!(synthesize(&d).unwrap_err().class(), "AuxiliaryNonlinear");
    }

    #[test]
    fn flat_sharp_on_auxiliary() {
        let d = flat_sharp("a", "u", one_l("u", flat_bang("a", "v", one_l("v", one_r("z")))));
        assert_eq!(synthesize(&d).unwrap_err().class(), "MultiplexorRequired");
    }

    #[test]
    fn lift_moves_aux_to_mux() {
        let d = flat_bang("a", "u", one_l("u", one_r("z")));
        let l = lift(&d).unwrap();
        assert_eq!(l, flat_sharp("a", "u", one_l("u", one_r("z"))));
        assert_eq!(synthesize(&l).unwrap().judgment, j("G: {} ; D: {a: 1} ; T: {} |- z : 1"));
    }
}
