use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::exact_amplitude_with_cap;
use super::flat::{FlatCircuit, FlatGate};
use crate::ensemble::{FockConfig, StateVector};
use crate::{Error, Result};

/// Paths per unit of parallel work. Partial sums are combined in chunk order,
/// so the result does not depend on the thread count.
const CHUNK: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McOptions {
    pub paths: u64,
    pub seed: u64,
    /// Enumerate all paths instead of sampling when `(N+1)^G <= paths`.
    pub exhaustive_fallback: bool,
}

impl McOptions {
    pub fn new(paths: u64, seed: u64) -> Self {
        Self { paths, seed, exhaustive_fallback: true }
    }
}

/// An estimate of `<k_f| C |psi_0>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeEstimate {
    /// Sum of the sampled path products (exact amplitude when `exact`).
    pub value: Complex64,
    /// Paths summed; `(N+1)^G` when `exact`.
    pub paths_used: u128,
    pub exact: bool,
    /// Multiplying `value` by this gives an unbiased amplitude estimate:
    /// the number of freely sampled path configurations over the path count.
    pub scale: f64,
    /// Standard error of `value * scale` (0 when exact).
    pub std_error: f64,
}

impl AmplitudeEstimate {
    pub fn unbiased(&self) -> Complex64 {
        self.value * self.scale
    }
}

/// Monte Carlo path sum with uniform proposals and exhaustive fallback.
pub fn mc_amplitude(flat: &FlatCircuit, k_f: &FockConfig, paths: u64, seed: u64) -> Result<AmplitudeEstimate> {
    mc_amplitude_with(flat, k_f, &McOptions::new(paths, seed))
}

/// Samples `options.paths` independent paths ending at `k_f`.
///
/// At every two-sparse gate the targeted occupation is redrawn uniformly from
/// `0..=N`, except at the last such gate on each ensemble where it is set to
/// `k_f`'s value (proposal weight 1). Path `p` draws from its own ChaCha
/// stream keyed by `(seed, index of k_f, p)`.
pub fn mc_amplitude_with(flat: &FlatCircuit, k_f: &FockConfig, options: &McOptions) -> Result<AmplitudeEstimate> {
    let dims = flat.dims();
    let target_index = dims.encode(k_f)?;
    if options.paths == 0 {
        return Err(Error::Domain("path budget must be at least 1".into()));
    }
    let capacity = flat.path_capacity();
    if options.exhaustive_fallback && capacity <= options.paths as u128 {
        let value = exact_amplitude_with_cap(flat, k_f, capacity)?;
        return Ok(AmplitudeEstimate { value, paths_used: capacity, exact: true, scale: 1.0, std_error: 0.0 });
    }

    let forced = flat.endpoint_mask();
    let free = flat.two_sparse_count() - forced.iter().filter(|&&f| f).count();
    let scale = (dims.radix() as f64).powi(free as i32) / options.paths as f64;
    let target = k_f.occupations();

    let chunks = options.paths.div_ceil(CHUNK);
    let partials: Vec<(Complex64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut sum_sq = 0.0;
            let mut config = vec![0usize; dims.m()];
            let mut spins = vec![0i64; dims.m()];
            for p in c * CHUNK..((c + 1) * CHUNK).min(options.paths) {
                let mut rng = path_rng(options.seed, target_index as u64, p);
                let x = sample_path(flat, &forced, target, &mut rng, &mut config, &mut spins);
                sum += x;
                sum_sq += x.norm_sqr();
            }
            (sum, sum_sq)
        })
        .collect();
    let (value, sum_sq) = partials.iter().fold((Complex64::new(0.0, 0.0), 0.0), |(v, s), (pv, ps)| (v + pv, s + ps));

    let n = options.paths as f64;
    let mean = value / n;
    let variance = if options.paths > 1 { (sum_sq / n - mean.norm_sqr()).max(0.0) * n / (n - 1.0) } else { 0.0 };
    let std_error = scale * n * (variance / n).sqrt();
    Ok(AmplitudeEstimate { value, paths_used: options.paths as u128, exact: false, scale, std_error })
}

fn path_rng(seed: u64, target: u64, path: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&target.to_le_bytes());
    key[16..24].copy_from_slice(&path.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn sample_path(
    flat: &FlatCircuit,
    forced: &[bool],
    target: &[usize],
    rng: &mut ChaCha8Rng,
    config: &mut [usize],
    spins: &mut [i64],
) -> Complex64 {
    let n = flat.dims().n();
    config.fill(n);
    spins.fill(n as i64);
    let mut amp = Complex64::new(1.0, 0.0);
    for (t, gate) in flat.gates().iter().enumerate() {
        match gate {
            FlatGate::TwoSparse { ensemble, matrix, .. } => {
                let m = *ensemble;
                let next = if forced[t] { target[m] } else { rng.random_range(0..=n) };
                amp *= matrix.get(next, config[m]);
                config[m] = next;
                spins[m] = 2 * next as i64 - n as i64;
            }
            diagonal => amp *= Complex64::from_polar(1.0, -diagonal.phase(spins)),
        }
    }
    if config == target {
        amp
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Runs [`mc_amplitude`] for every output configuration and normalizes.
pub fn mc_wavefunction(flat: &FlatCircuit, paths: u64, seed: u64) -> Result<StateVector> {
    mc_wavefunction_with(flat, &McOptions::new(paths, seed))
}

pub fn mc_wavefunction_with(flat: &FlatCircuit, options: &McOptions) -> Result<StateVector> {
    let dims = *flat.dims();
    let amps = (0..dims.dim())
        .into_par_iter()
        .map(|i| mc_amplitude_with(flat, &dims.decode(i), options).map(|e| e.value))
        .collect::<Result<Vec<_>>>()?;
    let mut state = StateVector::from_amplitudes(dims, amps)?;
    if state.normalize() == 0.0 {
        return Err(Error::DegenerateEstimate);
    }
    Ok(state)
}

/// `|<est|exact>|^2`.
pub fn fpi_fidelity(estimate: &StateVector, exact: &StateVector) -> Result<f64> {
    Ok(estimate.inner(exact)?.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{generate_random_circuit, run_circuit, CircuitSpec, GateChoice};
    use crate::ensemble::{Axis, EnsembleDims, Gate};
    use crate::path_integral::{exact_amplitude_enumeration, flatten_circuit};

    fn dims(n: usize, m: usize) -> EnsembleDims {
        EnsembleDims::new(n, m).unwrap()
    }

    #[test]
    fn fallback_is_exact() {
        let spec = generate_random_circuit(dims(2, 2), 1, 0.5, 4);
        let flat = flatten_circuit(&spec);
        let budget = flat.path_capacity() as u64;
        for k in spec.dims().configs() {
            let est = mc_amplitude(&flat, &k, budget, 1).unwrap();
            assert!(est.exact);
            assert_eq!(est.paths_used, flat.path_capacity());
            assert!((est.value - exact_amplitude_enumeration(&flat, &k).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn diagonal_only_single_path() {
        let d = dims(4, 2);
        let gates = [Gate::GlobalSqueeze { xi: 0.7 }, Gate::Rotation { ensemble: 0, axis: Axis::Z, angle: 0.2 }];
        let flat = FlatCircuit::from_gates(d, &gates).unwrap();
        let options = McOptions { paths: 1, seed: 3, exhaustive_fallback: false };
        let top = d.top_config();
        let est = mc_amplitude_with(&flat, &top, &options).unwrap();
        assert!((est.unbiased() - exact_amplitude_enumeration(&flat, &top).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn sampled_single_qubit_amplitude() {
        let d = dims(1, 1);
        let flat = flatten_circuit(&CircuitSpec::from_choices(d, 0.1, vec![]).unwrap());
        let options = McOptions { paths: 10_000, seed: 42, exhaustive_fallback: false };
        let est = mc_amplitude_with(&flat, &vec![0].into(), &options).unwrap();
        assert!(!est.exact);
        let err = (est.unbiased().norm() - std::f64::consts::FRAC_1_SQRT_2).abs();
        assert!(err <= 3.0 * est.std_error + 1e-12, "err {err}, se {}", est.std_error);
    }

    #[test]
    fn wavefunction_exhaustive_and_degenerate() {
        let d = dims(3, 1);
        let spec = CircuitSpec::from_choices(d, 0.5, vec![vec![GateChoice::XHalf], vec![GateChoice::YHalf]]).unwrap();
        let flat = flatten_circuit(&spec);
        let exact = run_circuit(&spec).unwrap();
        let est = mc_wavefunction(&flat, flat.path_capacity() as u64, 0).unwrap();
        assert!((fpi_fidelity(&est, &exact).unwrap() - 1.0).abs() < 1e-10);

        let est = mc_wavefunction(&flat, 1, 5).unwrap();
        assert!((est.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fidelity_properties() {
        let d = dims(2, 1);
        let a = StateVector::basis(d, &vec![0].into()).unwrap();
        let b = StateVector::basis(d, &vec![2].into()).unwrap();
        assert_eq!(fpi_fidelity(&a, &a).unwrap(), 1.0);
        assert_eq!(fpi_fidelity(&a, &b).unwrap(), 0.0);
        let phased = StateVector::from_amplitudes(
            d,
            a.amplitudes().iter().map(|z| z * Complex64::from_polar(1.0, 0.9)).collect(),
        )
        .unwrap();
        assert!((fpi_fidelity(&phased, &a).unwrap() - 1.0).abs() < 1e-15);
        assert!(fpi_fidelity(&a, &StateVector::initial(dims(2, 2))).is_err());
    }

    #[test]
    fn zero_budget_rejected() {
        let flat = flatten_circuit(&CircuitSpec::from_choices(dims(1, 1), 0.1, vec![]).unwrap());
        assert!(mc_amplitude(&flat, &vec![0].into(), 0, 0).is_err());
    }
}
