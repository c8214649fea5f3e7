use rayon::prelude::*;
use serde::Serialize;

use super::density::dephased_trace;
use super::spec::{generate_random_circuit, run_circuit_trace};
use super::stats::shannon_entropy;
use crate::ensemble::EnsembleDims;
use crate::Result;

/// Circuit-averaged entropy at one cycle count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub cycles: usize,
    pub mean_entropy: f64,
    /// Sample standard deviation across circuits (0 for a single circuit).
    pub std_entropy: f64,
    /// Entropy of each circuit, in seed order.
    pub per_circuit: Vec<f64>,
}

/// Entropy of the outcome distribution after `0..=max_cycles` cycles,
/// averaged over `circuits` random circuits with seeds `seed, seed+1, ..`.
///
/// Each circuit is generated once with `max_cycles` cycles and its prefixes
/// are measured. With `tau > 0` the density-matrix diagonal is used.
pub fn entropy_sweep(
    dims: EnsembleDims,
    xi: f64,
    tau: f64,
    max_cycles: usize,
    circuits: usize,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    if tau > 0.0 {
        dims.check_density_cap()?;
    }
    let curves: Vec<Vec<f64>> = (0..circuits)
        .into_par_iter()
        .map(|i| {
            let spec = generate_random_circuit(dims, max_cycles, xi, seed.wrapping_add(i as u64));
            if tau > 0.0 {
                let mut entropies = Vec::with_capacity(max_cycles + 1);
                let mut failure = None;
                dephased_trace(&spec, tau, |rho| match shannon_entropy(&rho.diagonal()) {
                    Ok(e) => entropies.push(e),
                    Err(err) => failure = Some(err),
                })?;
                failure.map_or(Ok(entropies), Err)
            } else {
                run_circuit_trace(&spec)?.iter().map(|p| shannon_entropy(p)).collect()
            }
        })
        .collect::<Result<_>>()?;

    Ok((0..=max_cycles)
        .map(|l| {
            let per_circuit: Vec<f64> = curves.iter().map(|c| c[l]).collect();
            let n = per_circuit.len() as f64;
            let mean = per_circuit.iter().sum::<f64>() / n;
            let std = if per_circuit.len() > 1 {
                (per_circuit.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
            } else {
                0.0
            };
            SweepRow { cycles: l, mean_entropy: mean, std_entropy: std, per_circuit }
        })
        .collect())
}
