//! Proof terms: one constructor per typing rule, a checker that rebuilds the
//! judgment bottom-up, extraction to processes, lifting of auxiliary channels
//! and a random generator of typable terms.

pub mod extract;
pub mod gen;
pub mod parse;
pub mod term;
pub mod typing;

pub use extract::{extract, occurrences};
pub use gen::{generate, GenConfig};
pub use parse::{parse_term, parse_thm};
pub use term::{Path, ProofTerm};
pub use typing::{check, lift, synthesize, TypeError, TypingEvidence};
