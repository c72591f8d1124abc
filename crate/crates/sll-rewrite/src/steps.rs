//! Enumerating rule instances over a whole term, keeping only those whose
//! result is still typed the way the relation promises.

use std::fmt;

use sll_proof::typing::lift_unchecked;
use sll_proof::{check, synthesize, Path, ProofTerm};
use sll_types::{Context, Judgment};

use crate::rules::{Fresh, Group, Rule, StepKind, RULES};

#[derive(Clone, Debug)]
pub struct RewriteStep {
    pub kind: StepKind,
    pub rule: &'static str,
    /// The equivalence row was read right to left.
    pub reversed: bool,
    pub group: Option<Group>,
    pub before: ProofTerm,
    pub after: ProofTerm,
    pub position: Path,
}

impl RewriteStep {
    /// Rule label, with a trailing `⁻¹` for a right-to-left reading.
    pub fn label(&self) -> String {
        if self.reversed {
            format!("{}⁻¹", self.rule)
        } else {
            self.rule.to_string()
        }
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos: Vec<String> = self.position.iter().map(|i| i.to_string()).collect();
        write!(f, "{} at [{}]", self.label(), pos.join("."))
    }
}

/// A judgment for `after` with the same linear side and offered type as
/// `before`, whose exponential channels are those of `before` split
/// differently between the auxiliary and multiplexor contexts.
pub fn repartition(after: &ProofTerm, before: &Judgment) -> Option<Judgment> {
    let got = synthesize(after).ok()?.judgment;
    if got.lin != before.lin || got.subject != before.subject || got.offered != before.offered {
        return None;
    }
    let mut pool = before.aux.clone();
    for (x, a) in before.mux.iter() {
        pool.insert(x.clone(), a.clone());
    }
    if got.aux.iter().chain(got.mux.iter()).any(|(x, a)| pool.get(x) != Some(a)) {
        return None;
    }
    let mut mux = Context::new();
    for (x, a) in pool.iter() {
        if !got.aux.contains(x) {
            mux.insert(x.clone(), a.clone());
        }
    }
    let j = Judgment::new(got.aux.clone(), mux, got.lin, got.subject, got.offered);
    check(after, &j).ok().map(|ev| ev.judgment)
}

/// Root term after a computational step, lifting the whole term when the
/// step moved auxiliary channels into the multiplexor context and the
/// surrounding rules no longer accept them. Returns the new judgment too.
pub fn settle(after: ProofTerm, before: &Judgment) -> Option<(ProofTerm, Judgment)> {
    if let Some(j) = repartition(&after, before) {
        return Some((after, j));
    }
    let lifted = lift_unchecked(&after);
    repartition(&lifted, before).map(|j| (lifted, j))
}

/// Positions not guarded by a prefix of the extracted process: both sides of
/// a linear cut, the client of an exponential cut, and the bodies of `1L`
/// and `!L`. Server bodies and everything below a communication rule are
/// excluded.
pub fn active_positions(d: &ProofTerm) -> Vec<Path> {
    fn go(d: &ProofTerm, p: &mut Path, acc: &mut Vec<Path>) {
        use ProofTerm::*;
        acc.push(p.clone());
        let open: &[usize] = match d {
            Cut(..) => &[0, 1],
            CutBang(..) | CutSharp(..) => &[1],
            OneL(..) | BangLBang(..) | BangLSharp(..) => &[0],
            _ => &[],
        };
        let kids = d.children();
        for &i in open {
            p.push(i);
            go(kids[i], p, acc);
            p.pop();
        }
    }
    let mut acc = Vec::new();
    go(d, &mut Vec::new(), &mut acc);
    acc
}

fn instances(d: &ProofTerm, kind: StepKind) -> Vec<RewriteStep> {
    let Ok(ev) = synthesize(d) else { return Vec::new() };
    let j = ev.judgment;
    let rules: Vec<&Rule> = RULES.iter().filter(|r| r.kind == kind).collect();
    let mut fresh = Fresh::for_term(d);
    let mut out = Vec::new();
    let positions = match kind {
        StepKind::Computational => active_positions(d),
        _ => d.positions(),
    };
    for pos in positions {
        let sub = d.at(&pos).expect("position from positions()");
        for r in &rules {
            for reversed in [false, true] {
                if reversed && r.reverse.is_none() {
                    continue;
                }
                let Some(new) = r.apply(sub, reversed, &mut fresh) else { continue };
                let after = d.replace_at(&pos, new).expect("valid position");
                let after = match kind {
                    StepKind::Computational => match settle(after, &j) {
                        Some((a, _)) => a,
                        None => continue,
                    },
                    _ => {
                        if check(&after, &j).is_err() {
                            continue;
                        }
                        after
                    }
                };
                out.push(RewriteStep {
                    kind,
                    rule: r.name,
                    reversed,
                    group: r.group,
                    before: d.clone(),
                    after,
                    position: pos.clone(),
                });
            }
        }
    }
    out
}

/// Every computational redex at an active position whose contractum is typed with the same linear
/// interface and a repartition of the exponential channels.
pub fn computational_steps(d: &ProofTerm) -> Vec<RewriteStep> {
    instances(d, StepKind::Computational)
}

pub fn shift_steps(d: &ProofTerm) -> Vec<RewriteStep> {
    instances(d, StepKind::Shift)
}

/// Every typed instance of every equivalence row, in both directions.
pub fn equivalence_steps(d: &ProofTerm) -> Vec<RewriteStep> {
    instances(d, StepKind::Equivalence)
}
