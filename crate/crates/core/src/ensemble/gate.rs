use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::dims::EnsembleDims;
use super::spin::{cached_rotation, Axis, RotationMatrix, HADAMARD_ANGLE};
use crate::Result;

/// Every gate the simulator knows about. Ensemble indices are 0-based.
///
/// Diagonal gates multiply the amplitude of `|k>` by `e^{-i phi(k)}` with `phi`
/// a polynomial in the spin projections `s_m = 2 k_m - N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    /// `e^{-i S^axis_m angle}`.
    Rotation { ensemble: usize, axis: Axis, angle: f64 },
    /// `U^x U^z U^x` on one ensemble.
    Hadamard { ensemble: usize },
    /// `e^{-i (sum_m S^z_m)^2 xi}`.
    GlobalSqueeze { xi: f64 },
    /// `Q_m(xi) = e^{-i (S^z_m)^2 xi}`.
    LocalSqueeze { ensemble: usize, xi: f64 },
    /// `Q_nm(xi) = e^{-i (S^z_n + S^z_m)^2 xi}`.
    PairSqueeze { first: usize, second: usize, xi: f64 },
    /// `T_nm(xi) = e^{-i S^z_n S^z_m xi}`.
    TwoBody { first: usize, second: usize, xi: f64 },
    /// `R_lmn(chi) = e^{-i S^z_l S^z_m S^z_n chi}`.
    ThreeBody { first: usize, second: usize, third: usize, chi: f64 },
    /// `e^{-i angle prod_j S^z_{e_j}}`; indices may repeat.
    SpinProduct { ensembles: Vec<usize>, angle: f64 },
}

/// How a primitive gate acts on the amplitude array.
pub enum Action {
    /// Dense `(N+1) x (N+1)` matrix on one ensemble.
    Local { ensemble: usize, matrix: Arc<RotationMatrix> },
    /// Diagonal phase; see [`Gate::phase`].
    Diagonal,
}

impl Gate {
    pub fn validate(&self, dims: &EnsembleDims) -> Result<()> {
        match self {
            Gate::Rotation { ensemble, .. } | Gate::Hadamard { ensemble } | Gate::LocalSqueeze { ensemble, .. } => {
                dims.check_ensemble(*ensemble)
            }
            Gate::GlobalSqueeze { .. } => Ok(()),
            Gate::PairSqueeze { first, second, .. } | Gate::TwoBody { first, second, .. } => {
                dims.check_distinct(&[*first, *second])
            }
            Gate::ThreeBody { first, second, third, .. } => dims.check_distinct(&[*first, *second, *third]),
            Gate::SpinProduct { ensembles, .. } => ensembles.iter().try_for_each(|&e| dims.check_ensemble(e)),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        match self {
            Gate::Rotation { axis, .. } => *axis == Axis::Z,
            Gate::Hadamard { .. } => false,
            _ => true,
        }
    }

    /// Splits composite gates into the gates actually applied, in order.
    pub fn primitives(&self) -> Vec<Gate> {
        match *self {
            Gate::Hadamard { ensemble } => [Axis::X, Axis::Z, Axis::X]
                .into_iter()
                .map(|axis| Gate::Rotation { ensemble, axis, angle: HADAMARD_ANGLE })
                .collect(),
            _ => vec![self.clone()],
        }
    }

    /// Action of a primitive gate. Composite gates must be expanded first.
    pub fn action(&self, n: usize) -> Action {
        match *self {
            Gate::Rotation { ensemble, axis, angle } if axis != Axis::Z => {
                Action::Local { ensemble, matrix: cached_rotation(n, axis, angle) }
            }
            Gate::Hadamard { .. } => panic!("Hadamard must be expanded into primitives"),
            _ => Action::Diagonal,
        }
    }

    /// Phase exponent `phi(k)` of a diagonal gate given the spin projections
    /// `s_m = 2 k_m - N`. Returns 0 for non-diagonal gates.
    pub fn phase(&self, spins: &[i64]) -> f64 {
        let s = |m: usize| spins[m] as f64;
        match self {
            Gate::Rotation { ensemble, axis: Axis::Z, angle } => angle * s(*ensemble),
            Gate::Rotation { .. } | Gate::Hadamard { .. } => 0.0,
            Gate::GlobalSqueeze { xi } => {
                let total: i64 = spins.iter().sum();
                (total * total) as f64 * xi
            }
            Gate::LocalSqueeze { ensemble, xi } => s(*ensemble).powi(2) * xi,
            Gate::PairSqueeze { first, second, xi } => (s(*first) + s(*second)).powi(2) * xi,
            Gate::TwoBody { first, second, xi } => s(*first) * s(*second) * xi,
            Gate::ThreeBody { first, second, third, chi } => s(*first) * s(*second) * s(*third) * chi,
            Gate::SpinProduct { ensembles, angle } => ensembles.iter().map(|&e| s(e)).product::<f64>() * angle,
        }
    }
}
