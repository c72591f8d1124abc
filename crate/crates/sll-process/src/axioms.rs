//! One-step applications of the congruence axioms, in both directions.
//!
//! This is deliberately independent of the normal-form code so it can serve as
//! an oracle for it.

use crate::name::{fresh_avoiding, Name};
use crate::process::Process::*;
use crate::process::*;

/// Every process reachable from `p` by one axiom instance at one position.
pub fn axiom_moves(p: &Process) -> Vec<Process> {
    let mut out = root_moves(p);
    match p {
        Nil => {}
        Par(a, b) => {
            out.extend(axiom_moves(a).into_iter().map(|a2| par(a2, (**b).clone())));
            out.extend(axiom_moves(b).into_iter().map(|b2| par((**a).clone(), b2)));
        }
        New(x, a) => out.extend(axiom_moves(a).into_iter().map(|a2| New(x.clone(), Box::new(a2)))),
        In(x, y, a) => out.extend(axiom_moves(a).into_iter().map(|a2| In(x.clone(), y.clone(), Box::new(a2)))),
        RepIn(x, y, a) => out.extend(axiom_moves(a).into_iter().map(|a2| RepIn(x.clone(), y.clone(), Box::new(a2)))),
        Out(x, y, a) => out.extend(axiom_moves(a).into_iter().map(|a2| Out(x.clone(), y.clone(), Box::new(a2)))),
        SelL(x, a) => out.extend(axiom_moves(a).into_iter().map(|a2| SelL(x.clone(), Box::new(a2)))),
        SelR(x, a) => out.extend(axiom_moves(a).into_iter().map(|a2| SelR(x.clone(), Box::new(a2)))),
        Case(x, a, b) => {
            out.extend(axiom_moves(a).into_iter().map(|a2| Case(x.clone(), Box::new(a2), b.clone())));
            out.extend(axiom_moves(b).into_iter().map(|b2| Case(x.clone(), a.clone(), Box::new(b2))));
        }
    }
    out
}

fn alpha_variant(y: &Name, body: &Process) -> (Name, Process) {
    let mut avoid = body.all_names();
    avoid.insert(y.clone());
    let f = fresh_avoiding(y, &avoid);
    let b = body.substitute(y, &f);
    (f, b)
}

fn root_moves(p: &Process) -> Vec<Process> {
    let mut out = vec![par(p.clone(), Nil)];
    match p {
        Nil => out.push(new("g", Nil)),
        Par(a, b) => {
            out.push(par((**b).clone(), (**a).clone()));
            if **b == Nil {
                out.push((**a).clone());
            }
            if let Par(b1, b2) = &**b {
                out.push(par(par((**a).clone(), (**b1).clone()), (**b2).clone()));
            }
            if let Par(a1, a2) = &**a {
                out.push(par((**a1).clone(), par((**a2).clone(), (**b).clone())));
            }
            if let New(x, a1) = &**a {
                if !b.is_free(x) {
                    out.push(New(x.clone(), Box::new(par((**a1).clone(), (**b).clone()))));
                }
            }
        }
        New(x, a) => {
            if **a == Nil {
                out.push(Nil);
            }
            if let New(y, a1) = &**a {
                out.push(New(y.clone(), Box::new(New(x.clone(), a1.clone()))));
            }
            if let Par(l, r) = &**a {
                if !r.is_free(x) {
                    out.push(par(New(x.clone(), l.clone()), (**r).clone()));
                }
            }
            let (f, b) = alpha_variant(x, a);
            out.push(New(f, Box::new(b)));
        }
        In(x, y, a) => {
            let (f, b) = alpha_variant(y, a);
            out.push(In(x.clone(), f, Box::new(b)));
        }
        RepIn(x, y, a) => {
            let (f, b) = alpha_variant(y, a);
            out.push(RepIn(x.clone(), f, Box::new(b)));
        }
        _ => {}
    }
    out
}
