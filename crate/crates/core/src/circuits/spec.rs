use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ensemble::{Axis, EnsembleDims, Gate, StateVector, HALF_TURN_ANGLE, QUARTER_TURN_ANGLE};
use crate::{Error, Result};

/// Per-ensemble basis rotation drawn on each cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateChoice {
    XHalf,
    YHalf,
    ZQuarter,
}

impl GateChoice {
    pub const ALL: [GateChoice; 3] = [GateChoice::XHalf, GateChoice::YHalf, GateChoice::ZQuarter];

    pub fn gate(self, ensemble: usize) -> Gate {
        let (axis, angle) = match self {
            GateChoice::XHalf => (Axis::X, HALF_TURN_ANGLE),
            GateChoice::YHalf => (Axis::Y, HALF_TURN_ANGLE),
            GateChoice::ZQuarter => (Axis::Z, QUARTER_TURN_ANGLE),
        };
        Gate::Rotation { ensemble, axis, angle }
    }

    /// X and Y rotations mix Fock states; Z is diagonal.
    pub fn is_two_sparse(self) -> bool {
        self != GateChoice::ZQuarter
    }
}

impl fmt::Display for GateChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateChoice::XHalf => "X",
            GateChoice::YHalf => "Y",
            GateChoice::ZQuarter => "Z",
        })
    }
}

impl FromStr for GateChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "X" | "X1/2" | "XHALF" => Ok(GateChoice::XHalf),
            "Y" | "Y1/2" | "YHALF" => Ok(GateChoice::YHalf),
            "Z" | "Z1/4" | "ZQUARTER" => Ok(GateChoice::ZQuarter),
            other => Err(Error::Domain(format!("unknown gate choice `{other}` (expected X, Y or Z)"))),
        }
    }
}

/// Squeezing strength `pi / sqrt(M N)` used by default on every cycle.
pub fn default_xi(dims: &EnsembleDims) -> f64 {
    std::f64::consts::PI / ((dims.m() * dims.n()) as f64).sqrt()
}

/// An `L`-cycle random circuit: Hadamard layer, then `L` rounds of global
/// squeezing followed by one rotation per ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec {
    dims: EnsembleDims,
    xi: f64,
    choices: Vec<Vec<GateChoice>>,
    seed: Option<u64>,
}

impl CircuitSpec {
    /// A circuit with a hand-picked choice table (`choices[l][m]`).
    pub fn from_choices(dims: EnsembleDims, xi: f64, choices: Vec<Vec<GateChoice>>) -> Result<Self> {
        if let Some(row) = choices.iter().find(|row| row.len() != dims.m()) {
            return Err(Error::DimensionMismatch(format!("cycle has {} gate choices for M={}", row.len(), dims.m())));
        }
        Ok(Self { dims, xi, choices, seed: None })
    }

    pub fn dims(&self) -> &EnsembleDims {
        &self.dims
    }

    pub fn cycles(&self) -> usize {
        self.choices.len()
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn choices(&self) -> &[Vec<GateChoice>] {
        &self.choices
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// The first `cycles` cycles of this circuit.
    pub fn prefix(&self, cycles: usize) -> CircuitSpec {
        CircuitSpec {
            dims: self.dims,
            xi: self.xi,
            choices: self.choices[..cycles.min(self.cycles())].to_vec(),
            seed: self.seed,
        }
    }

    pub fn hadamard_layer(&self) -> Vec<Gate> {
        (0..self.dims.m()).map(|ensemble| Gate::Hadamard { ensemble }).collect()
    }

    /// Gates of cycle `l` (0-based) in application order.
    pub fn cycle_gates(&self, l: usize) -> Vec<Gate> {
        std::iter::once(Gate::GlobalSqueeze { xi: self.xi })
            .chain(self.choices[l].iter().enumerate().map(|(m, c)| c.gate(m)))
            .collect()
    }

    /// The whole circuit in application order.
    pub fn gates(&self) -> Vec<Gate> {
        let mut gates = self.hadamard_layer();
        for l in 0..self.cycles() {
            gates.extend(self.cycle_gates(l));
        }
        gates
    }

    /// Number of X/Y choices in the table.
    pub fn two_sparse_choices(&self) -> usize {
        self.choices.iter().flatten().filter(|c| c.is_two_sparse()).count()
    }
}

/// Draws every `choices[l][m]` uniformly and independently (repeats allowed).
pub fn generate_random_circuit(dims: EnsembleDims, cycles: usize, xi: f64, seed: u64) -> CircuitSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choices =
        (0..cycles).map(|_| (0..dims.m()).map(|_| GateChoice::ALL[rng.random_range(0..3)]).collect()).collect();
    CircuitSpec { dims, xi, choices, seed: Some(seed) }
}

/// Final state of the circuit started from `|k = N>^{(x)M}`.
pub fn run_circuit(spec: &CircuitSpec) -> Result<StateVector> {
    let mut state = StateVector::initial(spec.dims);
    state.apply_all(&spec.gates())?;
    Ok(state)
}

/// Outcome probabilities after the Hadamard layer and after every cycle;
/// entry `l` belongs to the `l`-cycle prefix.
pub fn run_circuit_trace(spec: &CircuitSpec) -> Result<Vec<Vec<f64>>> {
    let mut state = StateVector::initial(spec.dims);
    state.apply_all(&spec.hadamard_layer())?;
    let mut trace = vec![state.probabilities()];
    for l in 0..spec.cycles() {
        state.apply_all(&spec.cycle_gates(l))?;
        trace.push(state.probabilities());
    }
    Ok(trace)
}
