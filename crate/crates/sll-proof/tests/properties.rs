use proptest::prelude::*;

use sll_process::Name;
use sll_proof::term::*;
use sll_proof::typing::lift;
use sll_proof::{check, extract, generate, parse_term, synthesize, GenConfig, ProofTerm};
use sll_types::SessionType;

fn gen(seed: u64) -> (sll_types::Judgment, ProofTerm) {
    generate(seed, &GenConfig::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn check_accepts_synthesized(seed in any::<u64>()) {
        let (j, d) = gen(seed);
        prop_assert!(check(&d, &j).is_ok());
    }

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let (_, d) = gen(seed);
        prop_assert_eq!(parse_term(&d.to_string()).unwrap(), d);
    }

    #[test]
    fn lift_keeps_the_process(seed in any::<u64>()) {
        let (j, d) = gen(seed);
        let l = lift(&d).unwrap();
        prop_assert!(sll_process::alpha_eq(&extract(&l), &extract(&d)));
        let lj = synthesize(&l).unwrap().judgment;
        prop_assert!(lj.aux.is_empty());
        prop_assert_eq!(&lj.lin, &j.lin);
        prop_assert_eq!(&lj.offered, &j.offered);
        let mut both = j.mux.clone();
        for (x, a) in j.aux.iter() {
            both.insert(x.clone(), a.clone());
        }
        prop_assert_eq!(lj.mux, both);
    }

    #[test]
    fn multiplexor_weakening(seed in any::<u64>(), extra in 1usize..4) {
        let (mut j, d) = gen(seed);
        for i in 0..extra {
            j.mux.insert(Name::new(&format!("w{i}")), SessionType::One);
        }
        prop_assert!(check(&d, &j).is_ok(), "{}", check(&d, &j).unwrap_err());
    }

    #[test]
    fn promotion_rejects_repeated_auxiliary(uses in prop::collection::vec(any::<bool>(), 2..6)) {
        // A tensor spine whose leaves may spawn on the auxiliary channel a.
        prop_assume!(uses.iter().filter(|u| **u).count() >= 2);
        let leaf = |i: usize, z: &str, used: bool| {
            if used {
                flat_bang("a", &format!("u{i}"), one_l(&format!("u{i}"), one_r(z)))
            } else {
                one_r(z)
            }
        };
        let mut body = leaf(0, "y", uses[0]);
        for (i, &u) in uses.iter().enumerate().skip(1) {
            body = tens_r("y", &format!("p{i}"), leaf(i, &format!("p{i}"), u), body);
        }
        let d = bang_r("x", "y", &["a"], body);
        prop_assert_eq!(synthesize(&d).unwrap_err().class(), "AuxiliaryNonlinear");
    }
}

#[test]
fn dupser_script_is_rejected() {
    let d = parse_term("(bangR x0 y (x1) (flat! x1 z (1L z (flat! x1 w (1L w (1R y))))))").unwrap();
    assert_eq!(synthesize(&d).unwrap_err().class(), "AuxiliaryNonlinear");
}
