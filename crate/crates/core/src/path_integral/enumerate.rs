use num_complex::Complex64;

use super::flat::{FlatCircuit, FlatGate};
use crate::ensemble::FockConfig;
use crate::{Error, Result};

/// Default bound on `(N+1)^G` for exhaustive enumeration.
pub const DEFAULT_PATH_CAP: u128 = 10_000_000;

/// `<k_f| C |psi_0>` as the sum over every configuration-space path.
///
/// Paths branch into `N+1` successors at each two-sparse gate and never at
/// diagonal gates. Branches at the final two-sparse gate of an ensemble that
/// do not reach `k_f` contribute nothing and are skipped.
pub fn exact_amplitude_enumeration(flat: &FlatCircuit, k_f: &FockConfig) -> Result<Complex64> {
    exact_amplitude_with_cap(flat, k_f, DEFAULT_PATH_CAP)
}

pub fn exact_amplitude_with_cap(flat: &FlatCircuit, k_f: &FockConfig, cap: u128) -> Result<Complex64> {
    let dims = flat.dims();
    dims.encode(k_f)?;
    let paths = flat.path_capacity();
    if paths > cap {
        return Err(Error::PathCapExceeded { paths, cap });
    }
    let mut walker = Walker {
        gates: flat.gates(),
        forced: flat.endpoint_mask(),
        target: k_f.occupations(),
        n: dims.n(),
        config: vec![dims.n(); dims.m()],
        spins: vec![dims.n() as i64; dims.m()],
    };
    Ok(walker.walk(0, Complex64::new(1.0, 0.0)))
}

struct Walker<'a> {
    gates: &'a [FlatGate],
    forced: Vec<bool>,
    target: &'a [usize],
    n: usize,
    config: Vec<usize>,
    spins: Vec<i64>,
}

impl Walker<'_> {
    fn walk(&mut self, t: usize, amp: Complex64) -> Complex64 {
        let Some(gate) = self.gates.get(t) else {
            return if self.config == self.target { amp } else { Complex64::new(0.0, 0.0) };
        };
        match gate {
            FlatGate::TwoSparse { ensemble, matrix, .. } => {
                let m = *ensemble;
                let old = self.config[m];
                let successors = if self.forced[t] { self.target[m]..=self.target[m] } else { 0..=self.n };
                let mut total = Complex64::new(0.0, 0.0);
                for new in successors {
                    let weight = matrix.get(new, old);
                    self.config[m] = new;
                    self.spins[m] = 2 * new as i64 - self.n as i64;
                    total += self.walk(t + 1, amp * weight);
                }
                self.config[m] = old;
                self.spins[m] = 2 * old as i64 - self.n as i64;
                total
            }
            diagonal => {
                let phase = Complex64::from_polar(1.0, -diagonal.phase(&self.spins));
                self.walk(t + 1, amp * phase)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{run_circuit, CircuitSpec, GateChoice};
    use crate::ensemble::{EnsembleDims, Gate, StateVector};
    use crate::path_integral::flatten_circuit;

    #[test]
    fn single_qubit_hadamard() {
        let dims = EnsembleDims::new(1, 1).unwrap();
        let flat = flatten_circuit(&CircuitSpec::from_choices(dims, 0.2, vec![]).unwrap());
        assert_eq!(flat.path_capacity(), 4);
        let amp = exact_amplitude_enumeration(&flat, &vec![0].into()).unwrap();
        let direct = run_circuit(&CircuitSpec::from_choices(dims, 0.2, vec![]).unwrap()).unwrap();
        assert!((amp.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((amp - direct.amplitudes()[0]).norm() < 1e-12);
    }

    #[test]
    fn diagonal_only_circuit_has_one_path() {
        let dims = EnsembleDims::new(3, 2).unwrap();
        let gates = [
            Gate::GlobalSqueeze { xi: 0.4 },
            Gate::TwoBody { first: 0, second: 1, xi: 1.1 },
            Gate::Rotation { ensemble: 1, axis: crate::ensemble::Axis::Z, angle: 0.3 },
        ];
        let flat = FlatCircuit::from_gates(dims, &gates).unwrap();
        let start = dims.top_config();
        let amp = exact_amplitude_enumeration(&flat, &start).unwrap();
        assert!((amp.norm() - 1.0).abs() < 1e-14);
        let mut state = StateVector::initial(dims);
        state.apply_all(&gates).unwrap();
        assert!((amp - state.amplitude(&start).unwrap()).norm() < 1e-14);
        assert_eq!(exact_amplitude_enumeration(&flat, &vec![0, 3].into()).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn matches_state_vector_on_mixed_circuit() {
        let dims = EnsembleDims::new(3, 2).unwrap();
        let choices = vec![vec![GateChoice::XHalf, GateChoice::ZQuarter], vec![GateChoice::YHalf, GateChoice::XHalf]];
        let spec = CircuitSpec::from_choices(dims, 0.37, choices).unwrap();
        let flat = flatten_circuit(&spec);
        let state = run_circuit(&spec).unwrap();
        for k in dims.configs() {
            let amp = exact_amplitude_enumeration(&flat, &k).unwrap();
            assert!((amp - state.amplitude(&k).unwrap()).norm() < 1e-10, "{k:?}");
        }
    }

    #[test]
    fn path_cap_enforced() {
        let dims = EnsembleDims::new(9, 1).unwrap();
        let spec = CircuitSpec::from_choices(dims, 0.1, vec![vec![GateChoice::XHalf]; 3]).unwrap();
        let flat = flatten_circuit(&spec);
        assert!(matches!(
            exact_amplitude_with_cap(&flat, &vec![0].into(), 1000),
            Err(Error::PathCapExceeded { paths: 100_000, cap: 1000 })
        ));
    }
}
