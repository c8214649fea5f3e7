//! Density-matrix evolution with collective `S^z` dephasing.
//!
//! With no Hamiltonian the dephasing master equation is solved exactly by
//! `rho_{kk'} -> exp(-2 tau sum_m (k_m - k'_m)^2) rho_{kk'}`, `tau = gamma t`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::spec::CircuitSpec;
use crate::ensemble::{apply_local_with, apply_phase, spins_of_index, Action, EnsembleDims, Gate, StateVector};
use crate::{Error, Result};

/// `D x D` density matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: EnsembleDims,
    rho: Vec<Complex64>,
}

impl DensityMatrix {
    /// `|psi><psi|`.
    pub fn from_pure(state: &StateVector) -> Result<Self> {
        let dims = *state.dims();
        dims.check_density_cap()?;
        let amp = state.amplitudes();
        let rho = amp.iter().flat_map(|a| amp.iter().map(move |b| a * b.conj())).collect();
        Ok(Self { dims, rho })
    }

    pub fn dims(&self) -> &EnsembleDims {
        &self.dims
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.rho[row * self.dims.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.rho
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let d = self.dims.dim();
        (0..d).map(|i| self.rho[i * d + i].re).collect()
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().iter().sum()
    }

    /// `Tr(rho^2) = sum |rho_ij|^2` for Hermitian `rho`.
    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dims.dim();
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in r..d {
                worst = worst.max((self.rho[r * d + c] - self.rho[c * d + r].conj()).norm());
            }
        }
        worst
    }

    /// `rho <- G rho G'`.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(&self.dims)?;
        let d = self.dims.dim();
        for primitive in gate.primitives() {
            match primitive.action(self.dims.n()) {
                Action::Local { ensemble, matrix } => {
                    // With B(X) = X U', the conjugation is (B(B(rho)'))'.
                    let conj = matrix.entries().map(|z| z.conj());
                    for _ in 0..2 {
                        let dims = self.dims;
                        self.rho.par_chunks_mut(d).for_each_init(Vec::new, |scratch, row| {
                            apply_local_with(row, scratch, &dims, ensemble, &conj)
                        });
                        self.conj_transpose();
                    }
                }
                Action::Diagonal => {
                    let mut phases = vec![Complex64::new(1.0, 0.0); d];
                    apply_phase(&mut phases, &self.dims, |s| primitive.phase(s));
                    self.rho.par_chunks_mut(d).enumerate().for_each(|(r, row)| {
                        for (c, z) in row.iter_mut().enumerate() {
                            *z *= phases[r] * phases[c].conj();
                        }
                    });
                }
            }
        }
        Ok(())
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply(g))
    }

    fn conj_transpose(&mut self) {
        let d = self.dims.dim();
        for r in 0..d {
            self.rho[r * d + r] = self.rho[r * d + r].conj();
            for c in r + 1..d {
                let upper = self.rho[r * d + c];
                self.rho[r * d + c] = self.rho[c * d + r].conj();
                self.rho[c * d + r] = upper.conj();
            }
        }
    }

    /// Exact dephasing map with dimensionless strength `tau = gamma t`.
    pub fn dephase(&mut self, tau: f64) -> Result<()> {
        if tau.is_nan() || tau < 0.0 {
            return Err(Error::Domain(format!("dephasing strength must be non-negative, got {tau}")));
        }
        let d = self.dims.dim();
        let dims = self.dims;
        let occupations: Vec<Vec<i64>> = (0..d)
            .map(|i| {
                let mut s = vec![0; dims.m()];
                spins_of_index(i, &dims, &mut s);
                s
            })
            .collect();
        self.rho.par_chunks_mut(d).enumerate().for_each(|(r, row)| {
            for (c, z) in row.iter_mut().enumerate() {
                if r == c {
                    continue;
                }
                // (s - s')^2 = 4 (k - k')^2
                let dist: i64 = occupations[r].iter().zip(&occupations[c]).map(|(a, b)| (a - b).pow(2)).sum();
                *z *= (-0.5 * tau * dist as f64).exp();
            }
        });
        Ok(())
    }
}

/// Convenience wrapper around [`DensityMatrix::dephase`].
pub fn dephase(rho: &DensityMatrix, tau: f64) -> Result<DensityMatrix> {
    let mut out = rho.clone();
    out.dephase(tau)?;
    Ok(out)
}

/// Hadamard layer, then per cycle the cycle unitary followed by one dephasing
/// step of strength `tau`.
pub fn run_circuit_with_dephasing(spec: &CircuitSpec, tau: f64) -> Result<DensityMatrix> {
    Ok(dephased_trace(spec, tau, |_| ())?.expect("at least the hadamard layer"))
}

/// Like [`run_circuit_with_dephasing`], calling `visit` with the density matrix
/// after the Hadamard layer and after every cycle.
pub(crate) fn dephased_trace(
    spec: &CircuitSpec,
    tau: f64,
    mut visit: impl FnMut(&DensityMatrix),
) -> Result<Option<DensityMatrix>> {
    if tau.is_nan() || tau < 0.0 {
        return Err(Error::Domain(format!("dephasing strength must be non-negative, got {tau}")));
    }
    let mut state = StateVector::initial(*spec.dims());
    state.apply_all(&spec.hadamard_layer())?;
    let mut rho = DensityMatrix::from_pure(&state)?;
    visit(&rho);
    for l in 0..spec.cycles() {
        rho.apply_all(&spec.cycle_gates(l))?;
        rho.dephase(tau)?;
        visit(&rho);
    }
    Ok(Some(rho))
}
