use proptest::prelude::*;
use sll_process::process::*;
use sll_process::{axiom_moves, canonical_form, parse_process, struct_congruent, Name, Process};

fn name() -> impl Strategy<Value = Name> {
    prop::sample::select(vec!["a", "b", "c", "x", "y"]).prop_map(Name::new)
}

fn process() -> impl Strategy<Value = Process> {
    let leaf = Just(Process::Nil);
    leaf.prop_recursive(5, 40, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(p, q)| par(p, q)),
            (name(), inner.clone()).prop_map(|(x, p)| new(x, p)),
            (name(), name(), inner.clone()).prop_map(|(x, y, p)| inp(x, y, p)),
            (name(), name(), inner.clone()).prop_map(|(x, y, p)| out(x, y, p)),
            (name(), name(), inner.clone()).prop_map(|(x, y, p)| rep(x, y, p)),
            (name(), inner.clone()).prop_map(|(x, p)| sel_l(x, p)),
            (name(), inner.clone()).prop_map(|(x, p)| sel_r(x, p)),
            (name(), inner.clone(), inner).prop_map(|(x, p, q)| case(x, p, q)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_idempotent(p in process()) {
        let c = canonical_form(&p);
        prop_assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn canonical_form_is_congruent_and_keeps_size(p in process()) {
        let c = canonical_form(&p);
        prop_assert!(struct_congruent(&p, &c));
        prop_assert_eq!(c.size(), p.size());
        prop_assert_eq!(c.free_names(), p.free_names());
        prop_assert!(c.node_count() <= (p.size() + 1).pow(2));
    }

    #[test]
    fn every_axiom_step_is_congruent(p in process()) {
        let c = canonical_form(&p);
        for q in axiom_moves(&p) {
            prop_assert_eq!(q.size(), p.size());
            prop_assert_eq!(&canonical_form(&q), &c, "{} vs {}", p, q);
        }
    }

    #[test]
    fn printing_round_trips(p in process()) {
        prop_assert_eq!(parse_process(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn identity_substitution(p in process(), w in name()) {
        prop_assert!(p.substitute(&w, &w).alpha_eq(&p));
    }

    #[test]
    fn substitution_keeps_size_and_is_capture_free(p in process(), x in name(), y in name()) {
        let q = p.substitute(&x, &y);
        prop_assert_eq!(q.size(), p.size());
        let mut expect = p.free_names();
        if expect.remove(&x) {
            expect.insert(y.clone());
        }
        prop_assert_eq!(q.free_names(), expect);
    }

    #[test]
    fn alpha_renaming_is_invisible(p in process()) {
        let c = canonical_form(&p);
        prop_assert!(p.alpha_eq(&p));
        prop_assert!(c.alpha_eq(&canonical_form(&c)));
    }

    #[test]
    fn distinct_sizes_are_not_congruent(p in process(), q in process()) {
        if struct_congruent(&p, &q) {
            prop_assert_eq!(p.size(), q.size());
        }
    }
}

#[test]
fn swapping_restrictions() {
    let p = parse_process("new x. new y. (x!(y).0 | y?(z).0)").unwrap();
    let q = parse_process("new y. new x. (x!(y).0 | y?(z).0)").unwrap();
    assert!(struct_congruent(&p, &q));
}

#[test]
fn extrusion_needs_freshness() {
    let p = parse_process("(new x. x!(a).0) | x!(b).0").unwrap();
    let q = parse_process("new x. (x!(a).0 | x!(b).0)").unwrap();
    assert!(!struct_congruent(&p, &q));
}
