//! The π-calculus core: names, processes, α-equivalence, capture-avoiding
//! substitution, size, and a decision procedure for structural congruence.

pub mod axioms;
pub mod canon;
pub mod lex;
pub mod name;
pub mod parse;
pub mod process;

pub use axioms::axiom_moves;
pub use canon::{canonical_form, congruence_key, hoist, soup_of, struct_congruent};
pub use lex::ParseError;
pub use name::{fresh_avoiding, fresh_name, Name};
pub use parse::parse_process;
pub use process::Process;

/// Free names of a process.
pub fn free_names(p: &Process) -> std::collections::BTreeSet<Name> {
    p.free_names()
}

pub fn substitute(p: &Process, from: &Name, to: &Name) -> Process {
    p.substitute(from, to)
}

pub fn alpha_eq(p: &Process, q: &Process) -> bool {
    p.alpha_eq(q)
}

pub fn size(p: &Process) -> u64 {
    p.size()
}
