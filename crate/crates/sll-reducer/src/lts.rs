//! Reduction and labelled transitions on canonical forms.
//!
//! Positions index the component list of the canonical form, so they are
//! stable for congruent inputs.

use std::fmt;

use sll_process::process::Process::{self, *};
use sll_process::process::{new_all, par_all};
use sll_process::{canonical_form, hoist, soup_of, Name};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RedexPos {
    pub sender: usize,
    pub receiver: usize,
}

impl fmt::Display for RedexPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}", self.sender, self.receiver)
    }
}

/// Visible actions. `SelectL` is performed by `x.inl. P`; its dual
/// `CoSelectL` by a `case` receiving the left choice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Input(Name, Name),
    FreeOutput(Name, Name),
    BoundOutput(Name, Name),
    SelectL(Name),
    SelectR(Name),
    CoSelectL(Name),
    CoSelectR(Name),
    Tau,
}

impl Label {
    pub fn subject(&self) -> Option<&Name> {
        match self {
            Label::Input(x, _)
            | Label::FreeOutput(x, _)
            | Label::BoundOutput(x, _)
            | Label::SelectL(x)
            | Label::SelectR(x)
            | Label::CoSelectL(x)
            | Label::CoSelectR(x) => Some(x),
            Label::Tau => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Input(x, y) => write!(f, "{x}({y})"),
            Label::FreeOutput(x, y) => write!(f, "~{x}<{y}>"),
            Label::BoundOutput(x, y) => write!(f, "(new {y}) ~{x}<{y}>"),
            Label::SelectL(x) => write!(f, "~{x}.inl"),
            Label::SelectR(x) => write!(f, "~{x}.inr"),
            Label::CoSelectL(x) => write!(f, "{x}.inl"),
            Label::CoSelectR(x) => write!(f, "{x}.inr"),
            Label::Tau => f.write_str("tau"),
        }
    }
}

fn rebuild(binders: &[Name], comps: Vec<Process>) -> Process {
    canonical_form(&new_all(binders.iter().cloned(), par_all(comps)))
}

fn without(comps: &[Process], drop: &[usize]) -> Vec<Process> {
    comps.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, c)| c.clone()).collect()
}

/// Result of letting `sender` talk to `receiver`, if they form a redex.
fn communicate(comps: &[Process], i: usize, j: usize) -> Option<Vec<Process>> {
    let (s, r) = (&comps[i], &comps[j]);
    match (s, r) {
        (Out(x, y, p), In(x2, z, q)) if x == x2 => {
            let mut cs = without(comps, &[i, j]);
            cs.push((**p).clone());
            cs.push(q.substitute(z, y));
            Some(cs)
        }
        (Out(x, y, p), RepIn(x2, z, q)) if x == x2 => {
            let mut cs = without(comps, &[i]);
            cs.push((**p).clone());
            cs.push(q.substitute(z, y));
            Some(cs)
        }
        (SelL(x, p), Case(x2, q, _)) | (SelR(x, p), Case(x2, _, q)) if x == x2 => {
            let mut cs = without(comps, &[i, j]);
            cs.push((**p).clone());
            cs.push((**q).clone());
            Some(cs)
        }
        _ => None,
    }
}

/// All one-step internal reducts, canonicalised, ordered by position.
pub fn internal_steps(p: &Process) -> Vec<(RedexPos, Process)> {
    let c = canonical_form(p);
    let (bs, comps) = soup_of(&c);
    let mut out = Vec::new();
    for i in 0..comps.len() {
        for j in 0..comps.len() {
            if i == j {
                continue;
            }
            if let Some(cs) = communicate(&comps, i, j) {
                out.push((RedexPos { sender: i, receiver: j }, rebuild(&bs, cs)));
            }
        }
    }
    out
}

/// Visible transitions of each top-level capability on a free channel, then
/// one `Tau` per internal step.
pub fn labelled_steps(p: &Process) -> Vec<(Label, Process)> {
    let (bs, comps) = hoist(p);
    let mut out = Vec::new();
    for (i, comp) in comps.iter().enumerate() {
        let x = comp.subject().expect("prefix").clone();
        if bs.contains(&x) {
            continue;
        }
        let replace = |with: Vec<Process>| {
            let mut cs = without(&comps, &[i]);
            cs.extend(with);
            cs
        };
        match comp {
            In(_, y, q) => out.push((Label::Input(x.clone(), y.clone()), rebuild(&bs, replace(vec![(**q).clone()])))),
            RepIn(_, y, q) => {
                let mut cs = comps.clone();
                cs.push((**q).clone());
                out.push((Label::Input(x.clone(), y.clone()), rebuild(&bs, cs)));
            }
            Out(_, y, q) => {
                if bs.contains(y) {
                    let rest: Vec<Name> = bs.iter().filter(|b| *b != y).cloned().collect();
                    out.push((Label::BoundOutput(x.clone(), y.clone()), rebuild(&rest, replace(vec![(**q).clone()]))));
                } else {
                    out.push((Label::FreeOutput(x.clone(), y.clone()), rebuild(&bs, replace(vec![(**q).clone()]))));
                }
            }
            SelL(_, q) => out.push((Label::SelectL(x.clone()), rebuild(&bs, replace(vec![(**q).clone()])))),
            SelR(_, q) => out.push((Label::SelectR(x.clone()), rebuild(&bs, replace(vec![(**q).clone()])))),
            Case(_, l, r) => {
                out.push((Label::CoSelectL(x.clone()), rebuild(&bs, replace(vec![(**l).clone()]))));
                out.push((Label::CoSelectR(x.clone()), rebuild(&bs, replace(vec![(**r).clone()]))));
            }
            _ => unreachable!(),
        }
    }
    out.extend(internal_steps(p).into_iter().map(|(_, q)| (Label::Tau, q)));
    out
}
