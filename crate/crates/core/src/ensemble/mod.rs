//! Fock-space representation of `M` ensembles of `N` qubits and exact
//! application of every collective gate.

mod dims;
mod gate;
mod sampling;
mod spin;
mod state;

pub(crate) use dims::spins_of_index;
pub use dims::{decode_config, encode_config, EnsembleDims, FockConfig, DENSITY_DIM_CAP, STATE_DIM_CAP};
pub use gate::{Action, Gate};
pub use sampling::{sample_indices, sample_outcomes};
pub use spin::{
    cached_rotation, rotation_matrix, spin_operator_matrix, x_half, y_half, y_quarter_closed_form, z_quarter, Axis,
    RotationMatrix, HADAMARD_ANGLE, HALF_TURN_ANGLE, QUARTER_TURN_ANGLE,
};
pub use state::StateVector;
pub(crate) use state::{apply_local_with, apply_phase};

/// Convenience alias for [`StateVector::initial`].
pub fn make_initial_state(dims: EnsembleDims) -> StateVector {
    StateVector::initial(dims)
}

/// Outcome probabilities `|<k|psi>|^2` in flat-index order.
pub fn measurement_probabilities(state: &StateVector) -> Vec<f64> {
    state.probabilities()
}
