use sll_proof::{extract, generate, GenConfig};
use sll_reducer::{internal_steps, Strategy};
use sll_rewrite::{run_weighted_trace, subject_reduce};

#[test]
fn traces_with_all_redexes() {
    let mut total = 0;
    let mut seen = std::collections::BTreeMap::new();
    let mut fails = Vec::new();
    for fuel in [4, 5] {
        let cfg = GenConfig { fuel, ..GenConfig::default() };
        for seed in 0..50 {
            let (_, d) = generate(seed, &cfg);
            let tr = match run_weighted_trace(&d, Strategy::Random(seed), 80) {
                Ok(t) => t,
                Err(e) => {
                    fails.push(format!("trace fuel {fuel} seed {seed}: {e}\n {d}"));
                    continue;
                }
            };
            let mut terms = vec![d.clone()];
            terms.extend(tr.steps.iter().map(|s| s.data.term.clone()));
            for t in &terms {
                for (pos, _) in internal_steps(&extract(t)) {
                    total += 1;
                    match subject_reduce(t, pos) {
                        Ok(r) => {
                            for s in &r.script {
                                *seen.entry(s.label()).or_insert(0) += 1;
                            }
                        }
                        Err(e) => fails.push(format!("fuel {fuel} seed {seed} {pos}: {e}\n {t}")),
                    }
                }
            }
        }
    }
    eprintln!("{total} redexes {seen:#?}");
    assert!(fails.is_empty(), "{}\n{}", fails.len(), fails.iter().take(5).cloned().collect::<Vec<_>>().join("\n"));
}
