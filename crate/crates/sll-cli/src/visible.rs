//! Which visible actions a typed process may offer on each channel of its
//! judgment. The subject channel and the linear channels each get one
//! clause per connective; exponential channels are only ever called.

use sll_process::Process;
use sll_reducer::{labelled_steps, Label};
use sll_types::{Judgment, SessionType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    OfferedOne,
    LinearOne,
    OfferedTensor,
    LinearTensor,
    OfferedLolli,
    LinearLolli,
    OfferedWith,
    LinearWith,
    OfferedPlus,
    LinearPlus,
    OfferedBang,
    /// A `!A` linear channel, or any auxiliary or multiplexor channel.
    Exponential,
}

impl Clause {
    pub const ALL: [Clause; 12] = [
        Clause::OfferedOne,
        Clause::LinearOne,
        Clause::OfferedTensor,
        Clause::LinearTensor,
        Clause::OfferedLolli,
        Clause::LinearLolli,
        Clause::OfferedWith,
        Clause::LinearWith,
        Clause::OfferedPlus,
        Clause::LinearPlus,
        Clause::OfferedBang,
        Clause::Exponential,
    ];

    pub fn of(j: &Judgment, x: &sll_process::Name) -> Option<Clause> {
        use SessionType::*;
        if *x == j.subject {
            return Some(match j.offered {
                One => Clause::OfferedOne,
                Tensor(..) => Clause::OfferedTensor,
                Lolli(..) => Clause::OfferedLolli,
                With(..) => Clause::OfferedWith,
                Plus(..) => Clause::OfferedPlus,
                Bang(_) => Clause::OfferedBang,
            });
        }
        if j.aux.contains(x) || j.mux.contains(x) {
            return Some(Clause::Exponential);
        }
        Some(match j.lin.get(x)? {
            One => Clause::LinearOne,
            Tensor(..) => Clause::LinearTensor,
            Lolli(..) => Clause::LinearLolli,
            With(..) => Clause::LinearWith,
            Plus(..) => Clause::LinearPlus,
            Bang(_) => Clause::Exponential,
        })
    }

    /// Whether `label`, whose subject is governed by this clause, has the
    /// shape the clause allows.
    pub fn allows(self, label: &Label) -> bool {
        use Clause::*;
        match self {
            OfferedOne | LinearOne => false,
            OfferedTensor | LinearLolli | Exponential => matches!(label, Label::BoundOutput(..)),
            LinearTensor | OfferedLolli | OfferedBang => matches!(label, Label::Input(..)),
            OfferedWith | LinearPlus => matches!(label, Label::CoSelectL(_) | Label::CoSelectR(_)),
            LinearWith | OfferedPlus => matches!(label, Label::SelectL(_) | Label::SelectR(_)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VisibleAction {
    pub label: Label,
    /// `None` when the subject is not in the judgment at all.
    pub clause: Option<Clause>,
    pub ok: bool,
}

/// Every visible action of `p`, classified against `j`.
pub fn visible_actions(j: &Judgment, p: &Process) -> Vec<VisibleAction> {
    labelled_steps(p)
        .into_iter()
        .filter_map(|(label, _)| {
            let x = label.subject()?.clone();
            let clause = Clause::of(j, &x);
            let ok = clause.is_some_and(|c| c.allows(&label));
            Some(VisibleAction { label, clause, ok })
        })
        .collect()
}

pub fn visible_violations(j: &Judgment, p: &Process) -> Vec<VisibleAction> {
    visible_actions(j, p).into_iter().filter(|a| !a.ok).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use sll_process::parse_process;
    use sll_types::parse_judgment;

    #[test]
    fn tensor_offers_bound_output() {
        let j = parse_judgment("G: {} ; D: {} ; T: {} |- x : 1 * 1").unwrap();
        let p = parse_process("new y. x!(y). 0").unwrap();
        let acts = visible_actions(&j, &p);
        assert_eq!(acts.len(), 1);
        assert_eq!(acts[0].clause, Some(Clause::OfferedTensor));
        assert!(acts[0].ok);
        let bad = parse_process("x?(y). 0").unwrap();
        assert_eq!(visible_violations(&j, &bad).len(), 1);
    }

    #[test]
    fn unit_channels_are_silent() {
        let j = parse_judgment("G: {} ; D: {} ; T: {z: 1} |- x : 1").unwrap();
        assert_eq!(visible_violations(&j, &parse_process("x.inl. 0 | z?(w). 0").unwrap()).len(), 2);
    }
}
