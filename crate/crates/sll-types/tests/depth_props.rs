use proptest::prelude::*;
use sll_process::Name;
use sll_types::{parse_type, Context, Judgment, SessionType};

fn ty() -> impl Strategy<Value = SessionType> {
    Just(SessionType::One).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SessionType::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SessionType::lolli(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SessionType::plus(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SessionType::with(a, b)),
            inner.prop_map(SessionType::bang),
        ]
    })
}

proptest! {
    #[test]
    fn bang_adds_one(a in ty()) {
        prop_assert_eq!(SessionType::bang(a.clone()).depth(), 1 + a.depth());
    }

    #[test]
    fn printing_round_trips(a in ty()) {
        prop_assert_eq!(parse_type(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn depth_monotone_under_extension(a in ty(), b in ty(), c in ty()) {
        let j = Judgment::new(Context::new(), Context::new(), Context::single(Name::new("u"), a), Name::new("z"), b);
        let mut k = j.clone();
        k.mux.insert(Name::new("v"), c);
        prop_assert!(k.depth() >= j.depth());
    }
}
