//! Front end for the session-typed pi-calculus toolkit: corpus loading,
//! reports, polynomial bound certificates and the visible-action check.

pub mod certify;
pub mod commands;
pub mod corpus;
pub mod pool;
pub mod report;
pub mod visible;

pub use certify::{bound_polynomial, certify, BoundCertificate, CertifyError};
pub use corpus::{default_manifest, load_corpus, CorpusEntry, CorpusError, Expected, Source};
pub use pool::{run_ordered, worker_count};
pub use report::{Format, Table};
pub use visible::{visible_violations, Clause};
