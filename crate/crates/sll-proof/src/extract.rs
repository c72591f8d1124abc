//! From proof terms to processes.

use sll_process::process::{case, inp, new, out, par, rep, sel_l, sel_r, Process};
use sll_process::Name;

use crate::term::ProofTerm::{self, *};

pub fn extract(d: &ProofTerm) -> Process {
    match d {
        OneR(_) => Process::Nil,
        OneL(_, d) | BangLSharp(_, d) | BangLBang(_, d) => extract(d),
        TensorL(x, y, d) | LolliR(x, y, d) => inp(x.clone(), y.clone(), extract(d)),
        TensorR(x, y, d, e) | LolliL(x, y, d, e) => {
            new(y.clone(), out(x.clone(), y.clone(), par(extract(d), extract(e))))
        }
        PlusL(x, d, e) | WithR(x, d, e) => case(x.clone(), extract(d), extract(e)),
        PlusR1(x, _, d) | WithL1(x, _, d) => sel_l(x.clone(), extract(d)),
        PlusR2(x, _, d) | WithL2(x, _, d) => sel_r(x.clone(), extract(d)),
        FlatSharp(x, y, d) | FlatBang(x, y, d) => new(y.clone(), out(x.clone(), y.clone(), extract(d))),
        BangR(x, y, _, d) => rep(x.clone(), y.clone(), extract(d)),
        Cut(x, d, e) => new(x.clone(), par(extract(d), extract(e))),
        CutBang(x, y, d, e) | CutSharp(x, y, d, e) => {
            new(x.clone(), par(rep(x.clone(), y.clone(), extract(d)), extract(e)))
        }
    }
}

/// Free occurrences of `a` in a process, counting a `case` as its busier
/// branch.
pub fn occurrences(p: &Process, a: &Name) -> u64 {
    use Process::*;
    let here = |x: &Name| u64::from(x == a);
    match p {
        Nil => 0,
        Par(p, q) => occurrences(p, a) + occurrences(q, a),
        New(x, p) => {
            if x == a {
                0
            } else {
                occurrences(p, a)
            }
        }
        In(x, y, p) | RepIn(x, y, p) => here(x) + if y == a { 0 } else { occurrences(p, a) },
        Out(x, y, p) => here(x) + here(y) + occurrences(p, a),
        SelL(x, p) | SelR(x, p) => here(x) + occurrences(p, a),
        Case(x, p, q) => here(x) + occurrences(p, a).max(occurrences(q, a)),
    }
}
