use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dims::{EnsembleDims, FockConfig};
use crate::{Error, Result};

/// Draws `shots` i.i.d. flat indices from `probs` by inverse-CDF lookup.
pub fn sample_indices(probs: &[f64], shots: usize, seed: u64) -> Result<Vec<usize>> {
    if let Some(bad) = probs.iter().find(|p| p.is_nan() || **p < 0.0) {
        return Err(Error::Domain(format!("probability {bad} is negative or NaN")));
    }
    let cumulative: Vec<f64> = probs
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let total = cumulative.last().copied().unwrap_or(0.0);
    if (total - 1.0).abs() > 1e-6 {
        return Err(Error::NotNormalized { sum: total });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..shots)
        .map(|_| {
            let u = rng.random::<f64>() * total;
            cumulative.partition_point(|&c| c <= u).min(probs.len() - 1)
        })
        .collect())
}

/// [`sample_indices`] decoded into Fock configurations.
pub fn sample_outcomes(probs: &[f64], dims: &EnsembleDims, shots: usize, seed: u64) -> Result<Vec<FockConfig>> {
    if probs.len() != dims.dim() {
        return Err(Error::DimensionMismatch(format!("{} probabilities for dimension {}", probs.len(), dims.dim())));
    }
    Ok(sample_indices(probs, shots, seed)?.into_iter().map(|i| dims.decode(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_distribution() {
        let dims = EnsembleDims::new(2, 2).unwrap();
        let mut probs = vec![0.0; 9];
        probs[5] = 1.0;
        let shots = sample_outcomes(&probs, &dims, 100, 4).unwrap();
        assert!(shots.iter().all(|k| k == &FockConfig(vec![2, 1])));
    }

    #[test]
    fn uniform_frequencies_within_five_sigma() {
        let shots = 1_000_000;
        let draws = sample_indices(&[0.25; 4], shots, 2024).unwrap();
        let sigma = (shots as f64 * 0.25 * 0.75).sqrt();
        for outcome in 0..4 {
            let count = draws.iter().filter(|&&d| d == outcome).count() as f64;
            assert!((count - 0.25 * shots as f64).abs() < 5.0 * sigma, "outcome {outcome}: {count}");
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let probs = [0.1, 0.2, 0.3, 0.4];
        assert_eq!(sample_indices(&probs, 500, 9).unwrap(), sample_indices(&probs, 500, 9).unwrap());
        assert_ne!(sample_indices(&probs, 500, 9).unwrap(), sample_indices(&probs, 500, 10).unwrap());
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(matches!(sample_indices(&[0.3, 0.3], 1, 0), Err(Error::NotNormalized { .. })));
        assert!(matches!(sample_indices(&[1.5, -0.5], 1, 0), Err(Error::Domain(_))));
    }
}
