//! Rewriting of proof terms: the computational, shift and equivalence
//! relations, and subject reduction, which replays one process reduction on
//! the typing derivation behind it.

pub mod rules;
pub mod steps;
pub mod subject;
pub mod trace;

pub use rules::{rule, Group, Rule, StepKind, RULES};
pub use steps::{active_positions, computational_steps, equivalence_steps, repartition, shift_steps, RewriteStep};
pub use subject::{
    has_sr_shape, subject_reduce, subject_reduce_to, subject_reduce_with, SearchConfig, SrError, SrResult,
};
pub use trace::{run_weighted_trace, WeightedStep};
