use num_bigint::BigUint;
use proptest::prelude::*;

use sll_metrics::*;
use sll_proof::typing::lift;
use sll_proof::{extract, generate, GenConfig};

fn cfg(fuel: u32) -> GenConfig {
    GenConfig { fuel, ..GenConfig::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn occurrence_bounds(seed in any::<u64>()) {
        let (j, d) = generate(seed, &cfg(3));
        let size = BigUint::from(size_term(&d));
        for x in j.aux.names() {
            prop_assert!(foc(x, &d) <= BigUint::from(1u8), "aux {x}");
        }
        for x in j.mux.names() {
            prop_assert!(foc(x, &d) <= size, "mux {x}");
        }
        for x in j.lin.names() {
            prop_assert_eq!(foc(x, &d), BigUint::default(), "lin {}", x);
        }
        prop_assert!(dupf(&d) <= size);
    }

    #[test]
    fn weight_bound(seed in any::<u64>(), extra in 0u32..6) {
        // The bound's induction uses 1 ≤ n^k and foc(x, E) ≤ n at every
        // exponential cut, so n must also cover those.
        let (_, d) = generate(seed, &cfg(3));
        let n = dupf(&d).max(server_uses(&d)).max(BigUint::from(1u8)) + extra;
        let bound = BigUint::from(size_term(&d)) * n.pow(bde_term(&d) as u32 + 1);
        prop_assert!(weip(&n, &d) <= bound);
    }

    #[test]
    fn weight_monotone_in_parameter(seed in any::<u64>(), n in 0u32..8) {
        let (_, d) = generate(seed, &cfg(3));
        prop_assert!(weip(&BigUint::from(n), &d) <= weip(&BigUint::from(n + 1), &d));
    }

    #[test]
    fn term_and_process_agree(seed in any::<u64>()) {
        let (_, d) = generate(seed, &cfg(3));
        prop_assert_eq!(bde_term(&d), bde_process(&extract(&d)));
        prop_assert_eq!(size_term(&d), sll_process::size(&extract(&d)));
    }

    #[test]
    fn lift_keeps_measures(seed in any::<u64>(), n in 0u32..6) {
        let (_, d) = generate(seed, &cfg(3));
        let l = lift(&d).unwrap();
        prop_assert_eq!(dupf(&l), dupf(&d));
        let n = BigUint::from(n);
        prop_assert_eq!(weip(&n, &l), weip(&n, &d));
    }

    #[test]
    fn cut_free_depth_at_most_type_depth(seed in any::<u64>()) {
        let (j, d) = generate(seed, &cfg(0));
        prop_assert!(d.is_cut_free());
        prop_assert!(bde_term(&d) <= j.depth());
    }
}
