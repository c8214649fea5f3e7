use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::dims::{spins_of_index, EnsembleDims, FockConfig};
use super::gate::{Action, Gate};
use super::spin::RotationMatrix;
use crate::{Error, Result};

/// Below this many amplitudes kernels run on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 12;

/// Amplitudes `<k|psi>` over the `(N+1)^M` Fock configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: EnsembleDims,
    amp: Vec<Complex64>,
}

impl StateVector {
    /// `|k = N>^{(x)M}`, i.e. every qubit in `|0>`.
    pub fn initial(dims: EnsembleDims) -> Self {
        let top = dims.encode(&dims.top_config()).expect("top configuration is valid");
        let mut amp = vec![Complex64::new(0.0, 0.0); dims.dim()];
        amp[top] = Complex64::new(1.0, 0.0);
        Self { dims, amp }
    }

    pub fn basis(dims: EnsembleDims, k: &FockConfig) -> Result<Self> {
        let idx = dims.encode(k)?;
        let mut amp = vec![Complex64::new(0.0, 0.0); dims.dim()];
        amp[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { dims, amp })
    }

    pub fn from_amplitudes(dims: EnsembleDims, amp: Vec<Complex64>) -> Result<Self> {
        if amp.len() != dims.dim() {
            return Err(Error::DimensionMismatch(format!("{} amplitudes for dimension {}", amp.len(), dims.dim())));
        }
        Ok(Self { dims, amp })
    }

    pub fn dims(&self) -> &EnsembleDims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amp
    }

    pub fn amplitude(&self, k: &FockConfig) -> Result<Complex64> {
        Ok(self.amp[self.dims.encode(k)?])
    }

    pub fn norm(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rescales to unit norm; returns the norm before rescaling.
    pub fn normalize(&mut self) -> f64 {
        let norm = self.norm();
        if norm > 0.0 {
            let inv = 1.0 / norm;
            self.amp.iter_mut().for_each(|a| *a *= inv);
        }
        norm
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(self.amp.iter().zip(&other.amp).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|<self|other>|`, the phase-insensitive comparison used throughout.
    pub fn overlap_modulus(&self, other: &StateVector) -> Result<f64> {
        self.inner(other).map(|z| z.norm())
    }

    /// Outcome probabilities `|<k|psi>|^2` in flat-index order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amp.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(&self.dims)?;
        for primitive in gate.primitives() {
            match primitive.action(self.dims.n()) {
                Action::Local { ensemble, matrix } => {
                    apply_local(&mut self.amp, &self.dims, ensemble, matrix.entries())
                }
                Action::Diagonal => apply_phase(&mut self.amp, &self.dims, |s| primitive.phase(s)),
            }
        }
        Ok(())
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply(g))
    }

    /// Contracts `rot` with the amplitude tensor along ensemble `m`.
    pub fn apply_rotation(&mut self, m: usize, rot: &RotationMatrix) -> Result<()> {
        self.dims.check_ensemble(m)?;
        if rot.n() != self.dims.n() {
            return Err(Error::RotationSize { matrix: rot.n(), state: self.dims.n() });
        }
        apply_local(&mut self.amp, &self.dims, m, rot.entries());
        Ok(())
    }

    pub fn apply_hadamard(&mut self, m: usize) -> Result<()> {
        self.apply(&Gate::Hadamard { ensemble: m })
    }

    pub fn apply_global_squeeze(&mut self, xi: f64) -> Result<()> {
        self.apply(&Gate::GlobalSqueeze { xi })
    }

    pub fn apply_local_squeeze(&mut self, m: usize, xi: f64) -> Result<()> {
        self.apply(&Gate::LocalSqueeze { ensemble: m, xi })
    }

    pub fn apply_pairwise_squeeze(&mut self, n: usize, m: usize, xi: f64) -> Result<()> {
        self.apply(&Gate::PairSqueeze { first: n, second: m, xi })
    }

    pub fn apply_two_ensemble_t(&mut self, n: usize, m: usize, xi: f64) -> Result<()> {
        self.apply(&Gate::TwoBody { first: n, second: m, xi })
    }

    pub fn apply_three_ensemble_r(&mut self, l: usize, m: usize, n: usize, chi: f64) -> Result<()> {
        self.apply(&Gate::ThreeBody { first: l, second: m, third: n, chi })
    }
}

#[inline]
fn local_element(
    input: &[Complex64],
    idx: usize,
    stride: usize,
    radix: usize,
    matrix: &DMatrix<Complex64>,
) -> Complex64 {
    let k = (idx / stride) % radix;
    let base = idx - k * stride;
    let mut acc = Complex64::new(0.0, 0.0);
    for kp in 0..radix {
        acc += matrix[(k, kp)] * input[base + kp * stride];
    }
    acc
}

/// `amps <- (I (x) .. (x) matrix_m (x) .. (x) I) amps`.
///
/// Every output element is computed independently from a snapshot of the
/// input, so the result does not depend on how the work is split.
pub(crate) fn apply_local(amps: &mut [Complex64], dims: &EnsembleDims, m: usize, matrix: &DMatrix<Complex64>) {
    let input = amps.to_vec();
    let (stride, radix) = (dims.stride(m), dims.radix());
    if amps.len() >= PARALLEL_THRESHOLD {
        amps.par_iter_mut().enumerate().for_each(|(idx, out)| *out = local_element(&input, idx, stride, radix, matrix));
    } else {
        for (idx, out) in amps.iter_mut().enumerate() {
            *out = local_element(&input, idx, stride, radix, matrix);
        }
    }
}

/// Serial variant writing through a caller-provided scratch buffer.
pub(crate) fn apply_local_with(
    amps: &mut [Complex64],
    scratch: &mut Vec<Complex64>,
    dims: &EnsembleDims,
    m: usize,
    matrix: &DMatrix<Complex64>,
) {
    scratch.clear();
    scratch.extend_from_slice(amps);
    let (stride, radix) = (dims.stride(m), dims.radix());
    for (idx, out) in amps.iter_mut().enumerate() {
        *out = local_element(scratch, idx, stride, radix, matrix);
    }
}

/// `amps[k] *= e^{-i phase(s(k))}` with `s(k)` the spin projections of `k`.
pub(crate) fn apply_phase<F>(amps: &mut [Complex64], dims: &EnsembleDims, phase: F)
where
    F: Fn(&[i64]) -> f64 + Sync,
{
    let kernel = |idx: usize, a: &mut Complex64, spins: &mut Vec<i64>| {
        spins_of_index(idx, dims, spins);
        *a *= Complex64::from_polar(1.0, -phase(spins));
    };
    if amps.len() >= PARALLEL_THRESHOLD {
        amps.par_iter_mut().enumerate().for_each_init(|| vec![0i64; dims.m()], |spins, (idx, a)| kernel(idx, a, spins));
    } else {
        let mut spins = vec![0i64; dims.m()];
        for (idx, a) in amps.iter_mut().enumerate() {
            kernel(idx, a, &mut spins);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::spin::{x_half, y_half, z_quarter, Axis};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_8, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dims(n: usize, m: usize) -> EnsembleDims {
        EnsembleDims::new(n, m).unwrap()
    }

    fn binomial(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    fn pseudo_random_state(d: EnsembleDims, salt: u64) -> StateVector {
        let amp = (0..d.dim())
            .map(|i| {
                let x = (i as f64 + 1.0) * 0.618 + salt as f64;
                c(x.sin(), (1.7 * x).cos())
            })
            .collect();
        let mut s = StateVector::from_amplitudes(d, amp).unwrap();
        s.normalize();
        s
    }

    #[test]
    fn initial_state() {
        let s = StateVector::initial(dims(1, 1));
        assert_eq!(s.amplitudes(), &[c(0., 0.), c(1., 0.)]);
        let s = StateVector::initial(dims(9, 2));
        assert_eq!(s.amplitudes()[99], c(1., 0.));
        assert_eq!(s.amplitudes().iter().filter(|a| a.norm() > 0.0).count(), 1);
        assert_eq!(s.norm(), 1.0);
    }

    #[test]
    fn z_quarter_phase_on_single_qubit() {
        let mut s = StateVector::initial(dims(1, 1));
        s.apply_rotation(0, &z_quarter(1)).unwrap();
        assert!((s.amplitudes()[1] - Complex64::from_polar(1.0, -FRAC_PI_8)).norm() < 1e-15);
    }

    #[test]
    fn y_half_on_single_qubit() {
        let mut s = StateVector::initial(dims(1, 1));
        s.apply_rotation(0, &y_half(1)).unwrap();
        assert!((s.amplitudes()[0] - c(FRAC_1_SQRT_2, 0.)).norm() < 1e-12);
        assert!((s.amplitudes()[1] - c(FRAC_1_SQRT_2, 0.)).norm() < 1e-12);
    }

    #[test]
    fn rotation_checks_sizes() {
        let mut s = StateVector::initial(dims(2, 2));
        assert!(matches!(s.apply_rotation(2, &x_half(2)), Err(Error::EnsembleIndex { .. })));
        assert!(matches!(s.apply_rotation(0, &x_half(3)), Err(Error::RotationSize { .. })));
    }

    #[test]
    fn rotation_acts_on_the_right_axis() {
        // Rotating ensemble 1 of a product state only touches the second factor.
        let d = dims(2, 2);
        let mut s = StateVector::basis(d, &vec![1, 2].into()).unwrap();
        let u = y_half(2);
        s.apply_rotation(1, &u).unwrap();
        for k1 in 0..3 {
            let amp = s.amplitude(&vec![1, k1].into()).unwrap();
            assert!((amp - u.get(k1, 2)).norm() < 1e-15);
            assert_eq!(s.amplitude(&vec![0, k1].into()).unwrap(), c(0., 0.));
        }
    }

    #[test]
    fn hadamard_probabilities_are_binomial() {
        let mut s = StateVector::initial(dims(1, 1));
        s.apply_hadamard(0).unwrap();
        let p = s.probabilities();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);

        let mut s = StateVector::initial(dims(9, 1));
        s.apply_hadamard(0).unwrap();
        for (k, p) in s.probabilities().into_iter().enumerate() {
            assert!((p - binomial(9, k) / 512.0).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn hadamard_squares_to_identity_up_to_phase() {
        for (n, m) in [(1, 1), (4, 2), (9, 1)] {
            let start = pseudo_random_state(dims(n, m), 3);
            let mut s = start.clone();
            for e in 0..m {
                s.apply_hadamard(e).unwrap();
                s.apply_hadamard(e).unwrap();
            }
            assert!((s.overlap_modulus(&start).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn global_squeeze_phases() {
        let d = dims(1, 2);
        let mut s = StateVector::basis(d, &vec![1, 0].into()).unwrap();
        s.apply_global_squeeze(0.9).unwrap();
        assert!((s.amplitude(&vec![1, 0].into()).unwrap() - c(1., 0.)).norm() < 1e-15);

        let mut s = StateVector::basis(d, &vec![1, 1].into()).unwrap();
        s.apply_global_squeeze(0.9).unwrap();
        assert!((s.amplitude(&vec![1, 1].into()).unwrap() - Complex64::from_polar(1.0, -3.6)).norm() < 1e-15);
    }

    #[test]
    fn local_and_pairwise_squeeze() {
        let d = dims(1, 1);
        for k in 0..2 {
            let mut s = StateVector::basis(d, &vec![k].into()).unwrap();
            s.apply_local_squeeze(0, 0.4).unwrap();
            assert!((s.amplitudes()[k] - Complex64::from_polar(1.0, -0.4)).norm() < 1e-15);
        }
        let mut s = StateVector::basis(dims(2, 1), &vec![1].into()).unwrap();
        s.apply_local_squeeze(0, 0.4).unwrap();
        assert_eq!(s.amplitudes()[1], c(1., 0.));

        let d = dims(2, 2);
        let mut s = StateVector::basis(d, &vec![2, 2].into()).unwrap();
        s.apply_pairwise_squeeze(0, 1, 0.1).unwrap();
        assert!((s.amplitude(&vec![2, 2].into()).unwrap() - Complex64::from_polar(1.0, -1.6)).norm() < 1e-15);
        assert!(matches!(s.apply_pairwise_squeeze(1, 1, 0.1), Err(Error::DuplicateEnsemble(_))));
    }

    #[test]
    fn two_and_three_body_phases() {
        let mut s = StateVector::basis(dims(1, 2), &vec![1, 1].into()).unwrap();
        s.apply_two_ensemble_t(0, 1, FRAC_PI_4).unwrap();
        assert!((s.amplitudes()[3] - Complex64::from_polar(1.0, -FRAC_PI_4)).norm() < 1e-15);

        let k: FockConfig = vec![1, 0, 1].into();
        let mut s = StateVector::basis(dims(1, 3), &k).unwrap();
        s.apply_three_ensemble_r(0, 1, 2, PI).unwrap();
        assert!((s.amplitude(&k).unwrap() - c(-1., 0.)).norm() < 1e-15);

        assert!(matches!(s.apply_three_ensemble_r(0, 2, 2, 0.1), Err(Error::DuplicateEnsemble(_))));
        assert!(matches!(s.apply_two_ensemble_t(0, 5, 0.1), Err(Error::EnsembleIndex { .. })));
    }

    #[test]
    fn zero_strength_gates_are_identity() {
        let d = dims(3, 3);
        let start = pseudo_random_state(d, 11);
        let gates = [
            Gate::GlobalSqueeze { xi: 0.0 },
            Gate::LocalSqueeze { ensemble: 1, xi: 0.0 },
            Gate::PairSqueeze { first: 0, second: 2, xi: 0.0 },
            Gate::TwoBody { first: 0, second: 1, xi: 0.0 },
            Gate::ThreeBody { first: 0, second: 1, third: 2, chi: 0.0 },
            Gate::Rotation { ensemble: 2, axis: Axis::Y, angle: 0.0 },
            Gate::Rotation { ensemble: 0, axis: Axis::X, angle: 0.0 },
        ];
        for g in &gates {
            let mut s = start.clone();
            s.apply(g).unwrap();
            let diff = s.amplitudes().iter().zip(start.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(diff < 1e-12, "{g:?}");
        }
    }

    #[test]
    fn diagonal_gates_commute() {
        let d = dims(2, 3);
        let gates = [
            Gate::Rotation { ensemble: 1, axis: Axis::Z, angle: FRAC_PI_8 },
            Gate::GlobalSqueeze { xi: 0.3 },
            Gate::TwoBody { first: 2, second: 0, xi: 0.7 },
            Gate::ThreeBody { first: 0, second: 1, third: 2, chi: 0.2 },
        ];
        let start = pseudo_random_state(d, 5);
        let mut forward = start.clone();
        forward.apply_all(&gates).unwrap();
        let mut backward = start.clone();
        backward.apply_all(gates.iter().rev()).unwrap();
        for (a, b) in forward.amplitudes().iter().zip(backward.amplitudes()) {
            assert!((a - b).norm() < 1e-10);
        }
        let drift =
            forward.probabilities().iter().zip(start.probabilities()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(drift < 1e-12);
    }

    #[test]
    fn parallel_kernel_matches_serial() {
        // D = 5^6 = 15625 takes the rayon path in apply_local.
        let d = dims(4, 6);
        let start = pseudo_random_state(d, 1);
        let u = x_half(4);
        let mut par = start.clone();
        par.apply_rotation(3, &u).unwrap();
        let mut serial = start.amplitudes().to_vec();
        let mut scratch = Vec::new();
        apply_local_with(&mut serial, &mut scratch, &d, 3, u.entries());
        assert_eq!(par.amplitudes(), &serial[..]);
    }
}
