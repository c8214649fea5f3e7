//! Random circuit sampling on spin-squeezed qubit ensembles.
//!
//! `M` ensembles of `N` qubits are controlled only through their collective
//! spins, so the dynamics live in the symmetric subspace of dimension
//! `(N+1)^M`. The crate provides:
//!
//! - [`ensemble`]: Fock-basis states, collective rotations and squeezing gates.
//! - [`circuits`]: the cycle-based random circuits, exact dephasing and
//!   Porter-Thomas diagnostics.
//! - [`path_integral`]: Feynman path sums over configuration space, exhaustive
//!   and Monte Carlo, with the fidelity of the resulting state.
//! - [`hardness`]: gap-function oracles for the worst-case diagonal circuit and
//!   gate synthesis of two- and three-ensemble interactions.
//! - [`cli`]: the experiment runner behind the `ensemble-rcs` binary.

pub mod circuits;
pub mod cli;
pub mod ensemble;
mod error;
pub mod hardness;
pub mod path_integral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
