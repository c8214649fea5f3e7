use std::f64::consts::PI;

use serde::Serialize;

use super::poly::PolynomialSpec;
use crate::ensemble::{Axis, EnsembleDims, Gate, StateVector};
use crate::{Error, Result};

/// Angles of the diagonal layer that turns the cubic polynomial into phases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstCaseParams {
    m: usize,
    chi: Vec<f64>,
    xi: Vec<f64>,
    theta: Vec<f64>,
}

impl WorstCaseParams {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Three-body angle for the ordered triple `(a, b, c)`.
    pub fn chi(&self, a: usize, b: usize, c: usize) -> f64 {
        self.chi[(a * self.m + b) * self.m + c]
    }

    /// Two-body angle for the ordered pair `(a, b)`.
    pub fn xi(&self, a: usize, b: usize) -> f64 {
        self.xi[a * self.m + b]
    }

    /// z-rotation angle on ensemble `a`.
    pub fn theta(&self, a: usize) -> f64 {
        self.theta[a]
    }
}

/// Chooses the angles so that, with `S^z = 2k - N`, the layer's phase on `|k>`
/// is `pi f(k)` plus a `k`-independent constant.
pub fn params_from_poly(spec: &PolynomialSpec, n: usize) -> WorstCaseParams {
    let m = spec.m();
    let nf = n as f64;
    let a = |i: usize, j: usize, k: usize| spec.alpha(i, j, k) as f64;
    let b = |i: usize, j: usize| spec.beta(i, j) as f64;

    let mut chi = Vec::with_capacity(m * m * m);
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                chi.push(PI * a(i, j, k) / 8.0);
            }
        }
    }
    let mut xi = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let placements: f64 = (0..m).map(|l| a(i, j, l) + a(i, l, j) + a(l, j, i)).sum();
            xi.push(nf * PI / 8.0 * placements + PI * b(i, j) / 4.0);
        }
    }
    let theta = (0..m)
        .map(|i| {
            let cubic: f64 = (0..m)
                .flat_map(|j| (0..m).map(move |l| (j, l)))
                .map(|(j, l)| a(i, j, l) + a(j, i, l) + a(j, l, i))
                .sum();
            let quadratic: f64 = (0..m).map(|j| b(i, j) + b(j, i)).sum();
            nf * nf * PI / 8.0 * cubic + nf * PI / 4.0 * quadratic + spec.gamma(i) as f64 * PI / 2.0
        })
        .collect();
    WorstCaseParams { m, chi, xi, theta }
}

/// Hadamard layer, three-body phases, two-body phases, z rotations, Hadamard
/// layer. Zero-angle gates are omitted.
pub fn worst_case_circuit(params: &WorstCaseParams) -> Vec<Gate> {
    let m = params.m();
    let hadamards = (0..m).map(|ensemble| Gate::Hadamard { ensemble });
    let mut gates: Vec<Gate> = hadamards.clone().collect();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let chi = params.chi(a, b, c);
                if chi == 0.0 {
                    continue;
                }
                gates.push(if a != b && b != c && a != c {
                    Gate::ThreeBody { first: a, second: b, third: c, chi }
                } else {
                    Gate::SpinProduct { ensembles: vec![a, b, c], angle: chi }
                });
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            let xi = params.xi(a, b);
            if xi == 0.0 {
                continue;
            }
            gates.push(if a != b {
                Gate::TwoBody { first: a, second: b, xi }
            } else {
                Gate::LocalSqueeze { ensemble: a, xi }
            });
        }
    }
    for ensemble in 0..m {
        let angle = params.theta(ensemble);
        if angle != 0.0 {
            gates.push(Gate::Rotation { ensemble, axis: Axis::Z, angle });
        }
    }
    gates.extend(hadamards);
    gates
}

/// Probability of measuring `k = (N, .., N)` after the worst-case circuit.
pub fn build_and_simulate_worst_case(spec: &PolynomialSpec, dims: &EnsembleDims) -> Result<f64> {
    if spec.m() != dims.m() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial over {} ensembles, dims have M={}",
            spec.m(),
            dims.m()
        )));
    }
    let gates = worst_case_circuit(&params_from_poly(spec, dims.n()));
    let mut state = StateVector::initial(*dims);
    state.apply_all(&gates)?;
    Ok(state.amplitude(&dims.top_config())?.norm_sqr())
}
