//! Polynomial bound certificates: a full trace checked against
//! `p_d(s) = q_d(s) + s·q_d(s)` with `q_d(s) = s^(d+2)`.

use num_bigint::BigUint;
use thiserror::Error;

use sll_metrics::bde_term;
use sll_proof::ProofTerm;
use sll_reducer::{Strategy, Trace};
use sll_rewrite::{run_weighted_trace, SrError, WeightedStep};

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Trace(#[from] SrError),
    #[error("Unterminated: no normal form within {0} steps")]
    Unterminated(BigUint),
}

impl CertifyError {
    pub fn class(&self) -> &'static str {
        match self {
            CertifyError::Trace(e) => e.class(),
            CertifyError::Unterminated(_) => "Unterminated",
        }
    }
}

/// `q(s) + s·q(s)` where `q(s) = s·s^(bd+1)`: the step and size bound for
/// processes of box depth `bd` and size `s`.
pub fn bound_polynomial(bd: u64, s: u64) -> BigUint {
    let s = BigUint::from(s);
    let q = s.pow(u32::try_from(bd + 2).expect("box depth fits in u32"));
    &q + &s * &q
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub entry_name: String,
    pub initial_size: u64,
    pub box_depth: u64,
    pub trace_length: u64,
    pub peak_size: u64,
    pub bound_value: BigUint,
    pub satisfied: bool,
}

impl BoundCertificate {
    pub fn new(entry_name: &str, initial_size: u64, box_depth: u64, trace_length: u64, peak_size: u64) -> Self {
        let mut c = BoundCertificate {
            entry_name: entry_name.to_string(),
            initial_size,
            box_depth,
            trace_length,
            peak_size,
            bound_value: bound_polynomial(box_depth, initial_size),
            satisfied: false,
        };
        c.recheck();
        c
    }

    /// Recompute `satisfied` from the recorded numbers.
    pub fn recheck(&mut self) {
        self.satisfied =
            BigUint::from(self.trace_length) <= self.bound_value && BigUint::from(self.peak_size) <= self.bound_value;
    }
}

/// Run `d` to normal form with the first-redex strategy and certify the
/// trace. The step limit is one past the bound, so running out of steps is
/// itself a counterexample.
pub fn certify_trace(name: &str, d: &ProofTerm) -> Result<(BoundCertificate, Trace<WeightedStep>), CertifyError> {
    let box_depth = bde_term(d);
    let size = sll_metrics::size_term(d);
    let limit = bound_polynomial(box_depth, size) + 1u8;
    let max_steps = u64::try_from(&limit).unwrap_or(u64::MAX);
    let trace = run_weighted_trace(d, Strategy::First, max_steps)?;
    if !trace.terminated {
        return Err(CertifyError::Unterminated(limit));
    }
    let cert = BoundCertificate::new(name, trace.initial_size, box_depth, trace.len() as u64, trace.peak_size());
    Ok((cert, trace))
}

pub fn certify(name: &str, d: &ProofTerm) -> Result<BoundCertificate, CertifyError> {
    certify_trace(name, d).map(|(c, _)| c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sll_proof::parse_term;

    #[test]
    fn polynomial_values() {
        assert_eq!(bound_polynomial(0, 1), BigUint::from(2u8));
        assert_eq!(bound_polynomial(0, 0), BigUint::default());
        assert_eq!(bound_polynomial(2, 3), BigUint::from(324u32));
    }

    #[test]
    fn unit_is_trivially_certified() {
        let c = certify("unit", &parse_term("(1R x)").unwrap()).unwrap();
        assert_eq!(c.trace_length, 0);
        assert!(c.satisfied);
    }

    #[test]
    fn corrupted_peak_is_caught() {
        let d = parse_term("(cut x (bangR x w () (1R w)) (bangL# x (flat# x z (1L z (1R y)))))").unwrap();
        let mut c = certify("der", &d).unwrap();
        assert!(c.satisfied);
        c.peak_size = u64::try_from(&c.bound_value).unwrap() + 1;
        c.recheck();
        assert!(!c.satisfied);
    }
}
