use std::sync::Arc;

use crate::circuits::CircuitSpec;
use crate::ensemble::{cached_rotation, Axis, EnsembleDims, Gate, RotationMatrix, StateVector};
use crate::Result;

/// One gate of a flattened circuit, classified by how it acts on a path.
#[derive(Debug, Clone)]
pub enum FlatGate {
    /// Diagonal gate coupling several ensembles (squeezing, `T`, `R`, ...).
    DiagonalGlobal(Gate),
    /// `e^{-i angle S^z_m}`.
    DiagonalLocal { ensemble: usize, angle: f64 },
    /// X or Y rotation: the only gates at which a path branches.
    TwoSparse { ensemble: usize, axis: Axis, matrix: Arc<RotationMatrix> },
}

impl FlatGate {
    /// Phase exponent of a diagonal gate at spin projections `spins`.
    #[inline]
    pub(crate) fn phase(&self, spins: &[i64]) -> f64 {
        match self {
            FlatGate::DiagonalGlobal(gate) => gate.phase(spins),
            FlatGate::DiagonalLocal { ensemble, angle } => angle * spins[*ensemble] as f64,
            FlatGate::TwoSparse { .. } => 0.0,
        }
    }

    pub fn is_two_sparse(&self) -> bool {
        matches!(self, FlatGate::TwoSparse { .. })
    }

    fn to_gate(&self) -> Gate {
        match self {
            FlatGate::DiagonalGlobal(gate) => gate.clone(),
            FlatGate::DiagonalLocal { ensemble, angle } => {
                Gate::Rotation { ensemble: *ensemble, axis: Axis::Z, angle: *angle }
            }
            FlatGate::TwoSparse { ensemble, matrix, .. } => {
                Gate::Rotation { ensemble: *ensemble, axis: matrix.axis(), angle: matrix.angle() }
            }
        }
    }
}

/// A circuit written gate by gate, `C^(1) .. C^(T)` in application order.
#[derive(Debug, Clone)]
pub struct FlatCircuit {
    dims: EnsembleDims,
    gates: Vec<FlatGate>,
    two_sparse: usize,
}

impl FlatCircuit {
    /// Flattens an arbitrary gate list, expanding Hadamards into
    /// `U^x U^z U^x`.
    pub fn from_gates(dims: EnsembleDims, gates: &[Gate]) -> Result<Self> {
        let mut flat = Vec::new();
        for gate in gates {
            gate.validate(&dims)?;
            for primitive in gate.primitives() {
                flat.push(match primitive {
                    Gate::Rotation { ensemble, axis: Axis::Z, angle } => FlatGate::DiagonalLocal { ensemble, angle },
                    Gate::Rotation { ensemble, axis, angle } => {
                        FlatGate::TwoSparse { ensemble, axis, matrix: cached_rotation(dims.n(), axis, angle) }
                    }
                    other => FlatGate::DiagonalGlobal(other),
                });
            }
        }
        let two_sparse = flat.iter().filter(|g| g.is_two_sparse()).count();
        Ok(Self { dims, gates: flat, two_sparse })
    }

    pub fn dims(&self) -> &EnsembleDims {
        &self.dims
    }

    pub fn gates(&self) -> &[FlatGate] {
        &self.gates
    }

    /// `T`, the number of gates.
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// `G`, the number of two-sparse gates.
    pub fn two_sparse_count(&self) -> usize {
        self.two_sparse
    }

    /// `(N+1)^G`, saturating.
    pub fn path_capacity(&self) -> u128 {
        (self.dims.radix() as u128).saturating_pow(self.two_sparse as u32)
    }

    /// For each gate, whether it is the final two-sparse gate on its ensemble.
    /// Those gates must land on the requested output occupation.
    pub(crate) fn endpoint_mask(&self) -> Vec<bool> {
        let mut seen = vec![false; self.dims.m()];
        let mut mask = vec![false; self.gates.len()];
        for (t, gate) in self.gates.iter().enumerate().rev() {
            if let FlatGate::TwoSparse { ensemble, .. } = gate {
                if !seen[*ensemble] {
                    seen[*ensemble] = true;
                    mask[t] = true;
                }
            }
        }
        mask
    }

    /// Applies the gates in order to `state` with the dense kernels.
    pub fn apply_to(&self, state: &mut StateVector) -> Result<()> {
        self.gates.iter().try_for_each(|g| state.apply(&g.to_gate()))
    }
}

/// Hadamard layer then, per cycle, the global squeeze and the per-ensemble
/// rotations.
pub fn flatten_circuit(spec: &CircuitSpec) -> FlatCircuit {
    FlatCircuit::from_gates(*spec.dims(), &spec.gates()).expect("circuit spec gates are valid for its dims")
}
