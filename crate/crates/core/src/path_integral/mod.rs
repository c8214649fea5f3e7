//! Feynman path sums over Fock configurations.
//!
//! The amplitude `<k_f| C |psi_0>` of a circuit written gate by gate is a sum
//! over paths `k^0 -> k^1 -> .. -> k^T`. Diagonal gates only contribute a
//! phase; X/Y rotations ("two-sparse" gates) branch the path on one ensemble,
//! so there are `(N+1)^G` paths for `G` such gates.

mod enumerate;
mod fidelity;
mod flat;
mod monte_carlo;

pub use enumerate::{exact_amplitude_enumeration, exact_amplitude_with_cap, DEFAULT_PATH_CAP};
pub use fidelity::{fidelity_vs_cycles, reference_sequence, FidelityRow};
pub use flat::{flatten_circuit, FlatCircuit, FlatGate};
pub use monte_carlo::{
    fpi_fidelity, mc_amplitude, mc_amplitude_with, mc_wavefunction, mc_wavefunction_with, AmplitudeEstimate, McOptions,
};
