//! Random circuits, exact dephasing and Porter-Thomas diagnostics.

mod density;
mod spec;
mod stats;
mod sweep;

pub use density::{dephase, run_circuit_with_dephasing, DensityMatrix};
pub use spec::{default_xi, generate_random_circuit, run_circuit, run_circuit_trace, CircuitSpec, GateChoice};
pub use stats::{
    pt_distance, pt_entropy, pt_ideal_sorted, pt_sorted_deviation, shannon_entropy, sorted_probabilities, EULER_GAMMA,
};
pub use sweep::{entropy_sweep, SweepRow};
