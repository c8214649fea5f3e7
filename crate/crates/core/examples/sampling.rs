//! Draws measurement shots from a random circuit and tallies the most
//! frequent outcomes.

use std::collections::BTreeMap;

use ensemble_rcs::circuits::{default_xi, generate_random_circuit, run_circuit};
use ensemble_rcs::ensemble::{sample_outcomes, EnsembleDims};

fn main() -> ensemble_rcs::Result<()> {
    let dims = EnsembleDims::new(4, 2)?;
    let spec = generate_random_circuit(dims, 6, default_xi(&dims), 1);
    let probs = run_circuit(&spec)?.probabilities();
    let shots = sample_outcomes(&probs, &dims, 10_000, 1)?;
    let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for k in shots {
        *counts.entry(k.occupations().to_vec()).or_default() += 1;
    }
    let mut ranked: Vec<_> = counts.into_iter().collect();
    ranked.sort_by_key(|entry| std::cmp::Reverse(entry.1));
    for (k, count) in ranked.into_iter().take(8) {
        let p = probs[dims.encode(&k.clone().into())?];
        println!("k = {k:?}  frequency {:.4}  exact {p:.4}", count as f64 / 10_000.0);
    }
    Ok(())
}
