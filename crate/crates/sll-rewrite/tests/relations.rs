//! How weights and extracted processes move along single rewrite steps.

use num_bigint::BigUint;
use proptest::prelude::*;
use sll_metrics::{dupf, wei};
use sll_process::struct_congruent;
use sll_proof::{extract, generate, GenConfig, ProofTerm};
use sll_reducer::{internal_steps, Strategy};
use sll_rewrite::{computational_steps, equivalence_steps, run_weighted_trace, shift_steps, Group, RewriteStep};

/// A generated term together with a few states of a random trace from it.
fn states(seed: u64, fuel: u32) -> Vec<ProofTerm> {
    let (_, d) = generate(seed, &GenConfig { fuel, ..GenConfig::default() });
    let tr = run_weighted_trace(&d, Strategy::Random(seed), 3).unwrap();
    let mut out = vec![d];
    out.extend(tr.steps.into_iter().map(|s| s.data.term));
    out
}

fn weights(d: &ProofTerm) -> (BigUint, BigUint) {
    (wei(d), dupf(d))
}

fn gc(s: &RewriteStep) -> bool {
    s.rule == "(cut#/−/−₀)"
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn computational_steps_decrease_weight_and_follow_the_reducer(seed in 0u64..10_000) {
        for d in states(seed, 4) {
            let (w, f) = weights(&d);
            let reducts: Vec<_> = internal_steps(&extract(&d)).into_iter().map(|(_, q)| q).collect();
            for s in computational_steps(&d) {
                let (w1, f1) = weights(&s.after);
                prop_assert!(w1 < w, "{s}: wei {w} -> {w1}");
                prop_assert!(f1 <= f, "{s}: dupf {f} -> {f1}");
                let e = extract(&s.after);
                prop_assert!(reducts.iter().any(|q| struct_congruent(q, &e)), "{s}: no matching reduct");
            }
        }
    }

    #[test]
    fn shift_steps_do_not_increase_weight(seed in 0u64..10_000) {
        for d in states(seed, 4) {
            let (w, f) = weights(&d);
            for s in shift_steps(&d) {
                let (w1, f1) = weights(&s.after);
                prop_assert!(w1 <= w && f1 <= f, "{s}: ({w}, {f}) -> ({w1}, {f1})");
                prop_assert!(struct_congruent(&extract(&d), &extract(&s.after)), "{s}");
            }
        }
    }

    /// Exact preservation, except that discarding an unused server may drop
    /// its duplicability factor and with it the weight parameter.
    #[test]
    fn equivalences_preserve_weight(seed in 0u64..10_000) {
        for d in states(seed, 3) {
            let (w, f) = weights(&d);
            for s in equivalence_steps(&d) {
                let (w1, f1) = weights(&s.after);
                if gc(&s) {
                    prop_assert!(f1 <= f && w1 <= w, "{s}");
                    prop_assert!(f1 < f || w1 == w, "{s}: wei moved with dupf fixed");
                } else {
                    prop_assert!(w1 == w && f1 == f, "{s}: ({w}, {f}) -> ({w1}, {f1})");
                }
                if s.group != Some(Group::Bisimilarity) {
                    prop_assert!(struct_congruent(&extract(&d), &extract(&s.after)), "{s}");
                }
            }
        }
    }

    #[test]
    fn trace_length_is_bounded_by_the_initial_weight(seed in 0u64..10_000, fuel in 2u32..5) {
        let (_, d) = generate(seed, &GenConfig { fuel, ..GenConfig::default() });
        let tr = run_weighted_trace(&d, Strategy::Random(seed), 10_000).unwrap();
        prop_assert!(tr.terminated);
        prop_assert!(BigUint::from(tr.steps.len()) <= wei(&d));
        let mut last = wei(&d);
        for st in &tr.steps {
            prop_assert!(st.data.wei < last, "{}", st.data.rule);
            last = st.data.wei.clone();
        }
    }
}

#[test]
fn garbage_collection_can_lower_the_duplicability_factor() {
    let server = "(cut c (bangR c y1 () (1R y1)) (bangL! c (flat! c u (1L u (1R y)))))";
    let d = sll_proof::parse_term(&format!("(cut# s y {server} (1R z))")).unwrap();
    sll_proof::synthesize(&d).unwrap();
    let steps: Vec<_> = equivalence_steps(&d).into_iter().filter(gc).collect();
    assert_eq!(steps.len(), 1);
    assert_eq!(dupf(&d), BigUint::from(1u8));
    assert_eq!(dupf(&steps[0].after), BigUint::default());
}
