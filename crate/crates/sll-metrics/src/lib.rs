//! Quantitative measures on proof terms and processes.
//!
//! `foc`, `dupf` and `weip` are exact naturals: virtual occurrence counts
//! multiply through nested exponential cuts and overflow machine words on
//! modest inputs.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use sll_process::{Name, Process};
use sll_proof::term::ProofTerm::{self, *};
use sll_proof::{extract, synthesize, TypeError};

/// Nesting depth of replicated inputs.
pub fn bde_process(p: &Process) -> u64 {
    use Process as P;
    match p {
        P::Nil => 0,
        P::RepIn(_, _, p) => 1 + bde_process(p),
        P::New(_, p) | P::In(_, _, p) | P::Out(_, _, p) | P::SelL(_, p) | P::SelR(_, p) => bde_process(p),
        P::Par(p, q) | P::Case(_, p, q) => bde_process(p).max(bde_process(q)),
    }
}

pub fn bde_term(d: &ProofTerm) -> u64 {
    match d {
        BangR(_, _, _, d) => 1 + bde_term(d),
        CutBang(_, _, d, e) | CutSharp(_, _, d, e) => (bde_term(d) + 1).max(bde_term(e)),
        _ => d.children().into_iter().map(bde_term).max().unwrap_or(0),
    }
}

/// Virtual occurrences of the exponential channel `w`: literal spawns on
/// `w`, with everything inside an exponential-cut server counted once per
/// virtual use of the server. Below its own `!L` rule a channel is linear
/// from the outside, so those spawns do not count. Only one branch of a
/// case runs, so branches combine by maximum.
pub fn foc(w: &Name, d: &ProofTerm) -> BigUint {
    let zero = BigUint::default;
    let under = |y: &Name, d: &ProofTerm| if y == w { zero() } else { foc(w, d) };
    match d {
        OneR(_) | BangR(..) => zero(),
        OneL(_, d) => foc(w, d),
        BangLSharp(x, d) | BangLBang(x, d) => under(x, d),
        PlusR1(_, _, d) | PlusR2(_, _, d) | WithL1(_, _, d) | WithL2(_, _, d) => foc(w, d),
        TensorL(_, y, d) | LolliR(_, y, d) => under(y, d),
        TensorR(_, y, d, e) | LolliL(_, y, d, e) => under(y, d) + under(y, e),
        PlusL(_, d, e) | WithR(_, d, e) => foc(w, d).max(foc(w, e)),
        FlatSharp(x, y, d) | FlatBang(x, y, d) => BigUint::from(u8::from(x == w)) + under(y, d),
        Cut(x, d, e) => under(x, d) + under(x, e),
        CutBang(x, y, d, e) | CutSharp(x, y, d, e) => {
            if x == w {
                zero()
            } else {
                foc(x, e) * under(y, d) + foc(w, e)
            }
        }
    }
}

/// Largest virtual occurrence count of a channel at its `!L` rule.
pub fn dupf(d: &ProofTerm) -> BigUint {
    let below = d.children().into_iter().map(dupf).max().unwrap_or_default();
    match d {
        BangLSharp(x, body) | BangLBang(x, body) => below.max(foc(x, body)),
        _ => below,
    }
}

/// Largest virtual use of a server at an exponential cut. `dupf` ignores
/// these, so a free-standing `cut#` can exceed it.
pub fn server_uses(d: &ProofTerm) -> BigUint {
    let below = d.children().into_iter().map(server_uses).max().unwrap_or_default();
    match d {
        CutBang(x, _, _, e) | CutSharp(x, _, _, e) => below.max(foc(x, e)),
        _ => below,
    }
}

pub fn weip(n: &BigUint, d: &ProofTerm) -> BigUint {
    let one = || BigUint::from(1u8);
    let w = |d: &ProofTerm| weip(n, d);
    match d {
        OneR(_) => BigUint::default(),
        OneL(_, d) | BangLSharp(_, d) | BangLBang(_, d) => w(d),
        TensorL(_, _, d) | LolliR(_, _, d) | FlatSharp(_, _, d) | FlatBang(_, _, d) => one() + w(d),
        PlusR1(_, _, d) | PlusR2(_, _, d) | WithL1(_, _, d) | WithL2(_, _, d) => one() + w(d),
        TensorR(_, _, d, e) | LolliL(_, _, d, e) | PlusL(_, d, e) | WithR(_, d, e) => one() + w(d) + w(e),
        Cut(_, d, e) => w(d) + w(e),
        CutBang(x, _, d, e) | CutSharp(x, _, d, e) => foc(x, e) * w(d) + w(e),
        BangR(_, _, _, d) => n * (w(d) + one()),
    }
}

/// The weight: `weip` at the term's own duplicability factor.
pub fn wei(d: &ProofTerm) -> BigUint {
    weip(&dupf(d), d)
}

pub fn size_term(d: &ProofTerm) -> u64 {
    sll_process::size(&extract(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub box_depth: u64,
    pub dup_factor: BigUint,
    pub weight: BigUint,
    pub term_size: u64,
    /// `foc` of every auxiliary and multiplexor channel of the judgment.
    pub per_channel_foc: BTreeMap<Name, BigUint>,
}

pub fn report(d: &ProofTerm) -> Result<WeightReport, TypeError> {
    let j = synthesize(d)?.judgment;
    let dup_factor = dupf(d);
    let per_channel_foc = j.aux.names().chain(j.mux.names()).map(|x| (x.clone(), foc(x, d))).collect();
    Ok(WeightReport {
        box_depth: bde_term(d),
        weight: weip(&dup_factor, d),
        dup_factor,
        term_size: size_term(d),
        per_channel_foc,
    })
}
