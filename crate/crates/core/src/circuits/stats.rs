//! Entropy and Porter-Thomas diagnostics of outcome distributions.

use crate::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `-sum p ln p` in nats, with `0 ln 0 = 0`.
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    let mut entropy = 0.0;
    for &p in probs {
        if p < -1e-12 || p.is_nan() {
            return Err(Error::Domain(format!("negative probability {p}")));
        }
        if p > 0.0 {
            entropy -= p * p.ln();
        }
    }
    Ok(entropy)
}

/// Entropy `ln D - 1 + gamma` of a Porter-Thomas distribution over `D` outcomes.
pub fn pt_entropy(dim: usize) -> Result<f64> {
    if dim < 2 {
        return Err(Error::Domain(format!("Porter-Thomas entropy needs D >= 2, got {dim}")));
    }
    Ok((dim as f64).ln() - 1.0 + EULER_GAMMA)
}

/// Ideal sorted probability `(ln D - ln k) / D` at rank `k` (1-based).
pub fn pt_ideal_sorted(dim: usize, rank: usize) -> Result<f64> {
    if dim < 2 || rank == 0 || rank > dim {
        return Err(Error::Domain(format!("rank {rank} outside [1, {dim}]")));
    }
    Ok(((dim as f64).ln() - (rank as f64).ln()) / dim as f64)
}

/// Stable descending sort.
pub fn sorted_probabilities(probs: &[f64]) -> Vec<f64> {
    let mut sorted = probs.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted
}

/// Kolmogorov-Smirnov statistic between the empirical law of `{D p_k}` and
/// the unit-rate exponential.
pub fn pt_distance(probs: &[f64]) -> f64 {
    let dim = probs.len();
    let mut scaled: Vec<f64> = probs.iter().map(|p| p * dim as f64).collect();
    scaled.sort_by(f64::total_cmp);
    let n = dim as f64;
    scaled
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let cdf = 1.0 - (-x.max(0.0)).exp();
            ((i + 1) as f64 / n - cdf).max(cdf - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// Largest `|sorted_k - (ln D - ln k)/D|` over all ranks.
pub fn pt_sorted_deviation(probs: &[f64]) -> f64 {
    let dim = probs.len();
    sorted_probabilities(probs)
        .iter()
        .enumerate()
        .map(|(i, p)| (p - pt_ideal_sorted(dim, i + 1).unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_edge_cases() {
        assert_eq!(shannon_entropy(&[0.0, 1.0, 0.0]).unwrap(), 0.0);
        let uniform = vec![0.01; 100];
        assert!((shannon_entropy(&uniform).unwrap() - 100f64.ln()).abs() < 1e-12);
        assert!(shannon_entropy(&[-1e-13, 1.0]).is_ok());
        assert!(matches!(shannon_entropy(&[-1e-3, 1.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_entropy() {
        // -sum C(9,k)/512 ln(C(9,k)/512), evaluated independently.
        let binom = [1., 9., 36., 84., 126., 126., 84., 36., 9., 1.];
        let probs: Vec<f64> = binom.iter().map(|c| c / 512.0).collect();
        assert!((shannon_entropy(&probs).unwrap() - 1.8229268345739977).abs() < 1e-12);
    }

    #[test]
    fn porter_thomas_targets() {
        assert!((pt_entropy(100).unwrap() - 4.182385850889625).abs() < 1e-12);
        assert!((pt_ideal_sorted(100, 1).unwrap() - 0.04605170185988092).abs() < 1e-15);
        assert_eq!(pt_ideal_sorted(100, 100).unwrap(), 0.0);
        assert!(pt_entropy(1).is_err());
        assert!(pt_ideal_sorted(10, 0).is_err());
        assert!(pt_ideal_sorted(10, 11).is_err());
    }

    #[test]
    fn sorting() {
        assert_eq!(sorted_probabilities(&[0.1, 0.7, 0.2]), vec![0.7, 0.2, 0.1]);
        assert_eq!(sorted_probabilities(&[0.7, 0.2, 0.1]), vec![0.7, 0.2, 0.1]);
    }

    #[test]
    fn ks_statistic() {
        let dim = 1000;
        let quantiles: Vec<f64> = (0..dim).map(|i| -(1.0 - (i as f64 + 0.5) / dim as f64).ln() / dim as f64).collect();
        assert!(pt_distance(&quantiles) <= 1.0 / dim as f64 + 1e-9);

        let uniform = vec![0.01; 100];
        assert!((pt_distance(&uniform) - (1.0 - (-1f64).exp())).abs() < 1e-12);

        let mut delta = vec![0.0; 1000];
        delta[0] = 1.0;
        assert!(pt_distance(&delta) >= 0.999);
    }
}
