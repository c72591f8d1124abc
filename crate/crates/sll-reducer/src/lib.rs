//! Operational semantics: one-step internal reduction and an early labelled
//! transition system, both computed on canonical forms, plus a fast engine for
//! running a process to normal form and the exponential blowup family.

pub mod engine;
pub mod lts;

pub use engine::{
    build_blowup_family, collect_inert_servers, run_to_normal_form, RunOptions, Strategy, Trace, TraceStep,
};
pub use lts::{internal_steps, labelled_steps, Label, RedexPos};
