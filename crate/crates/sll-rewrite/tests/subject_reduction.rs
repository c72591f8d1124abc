use sll_proof::{extract, generate, GenConfig};
use sll_reducer::internal_steps;
use sll_rewrite::{has_sr_shape, subject_reduce};

#[test]
fn every_redex_of_generated_terms() {
    let cfg = GenConfig::default();
    let mut total = 0;
    let mut failures = Vec::new();
    for seed in 0..300 {
        let (j, d) = generate(seed, &cfg);
        for (pos, _) in internal_steps(&extract(&d)) {
            total += 1;
            match subject_reduce(&d, pos) {
                Ok(r) => {
                    assert!(has_sr_shape(&r.script));
                    assert_eq!(r.judgment.lin, j.lin);
                    assert_eq!(r.judgment.offered, j.offered);
                }
                Err(e) => failures.push(format!("seed {seed} redex {pos}: {e}\n  {d}")),
            }
        }
    }
    eprintln!("checked {total} redexes");
    assert!(failures.is_empty(), "{} of {total} failed:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn rule_coverage() {
    let cfg = GenConfig::default();
    let mut seen = std::collections::BTreeMap::new();
    for seed in 0..300 {
        let (_, d) = generate(seed, &cfg);
        for (pos, _) in internal_steps(&extract(&d)) {
            let r = subject_reduce(&d, pos).unwrap();
            for s in &r.script {
                *seen.entry(s.label()).or_insert(0) += 1;
            }
        }
    }
    eprintln!("{seen:#?}");
}
