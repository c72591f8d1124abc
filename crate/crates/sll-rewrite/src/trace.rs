//! Running a typed term alongside its process, one subject reduction per
//! internal step, recording the weight as it goes.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sll_metrics::{dupf, wei};
use sll_proof::{extract, ProofTerm};
use sll_reducer::{internal_steps, Strategy, Trace, TraceStep};

use crate::subject::{subject_reduce_to, SearchConfig, SrError};

#[derive(Clone, Debug)]
pub struct WeightedStep {
    pub term: ProofTerm,
    /// The computational rule that carried out the step.
    pub rule: &'static str,
    pub wei: BigUint,
    pub dupf: BigUint,
    /// Length of the rewrite script behind the step.
    pub script_len: usize,
}

pub fn run_weighted_trace(d: &ProofTerm, strategy: Strategy, max_steps: u64) -> Result<Trace<WeightedStep>, SrError> {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Strategy::First => None,
    };
    let initial = extract(d);
    let initial_size = sll_process::size(&initial);
    let mut term = d.clone();
    let mut process = initial.clone();
    let mut steps = Vec::new();
    let mut terminated = false;
    loop {
        let mut redexes = internal_steps(&process);
        if redexes.is_empty() {
            terminated = true;
            break;
        }
        if steps.len() as u64 >= max_steps {
            break;
        }
        let k = match rng.as_mut() {
            Some(r) => r.gen_range(0..redexes.len()),
            None => 0,
        };
        let reduct = redexes.swap_remove(k).1;
        let sr = subject_reduce_to(&term, reduct, &SearchConfig::default())?;
        term = sr.target.clone();
        process = extract(&term);
        steps.push(TraceStep {
            process: Some(process.clone()),
            size: sll_process::size(&process),
            data: WeightedStep {
                rule: sr.computational().rule,
                wei: wei(&term),
                dupf: dupf(&term),
                script_len: sr.script.len(),
                term: term.clone(),
            },
        });
    }
    Ok(Trace { initial, initial_size, steps, terminated, final_process: process })
}
