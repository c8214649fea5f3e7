use serde::Serialize;

use super::flat::flatten_circuit;
use super::monte_carlo::{fpi_fidelity, mc_wavefunction_with, McOptions};
use crate::circuits::{run_circuit, CircuitSpec, GateChoice};
use crate::ensemble::EnsembleDims;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelityRow {
    pub cycles: usize,
    /// Two-sparse gate count `G` of the prefix.
    pub two_sparse: usize,
    /// `(N+1)^G`.
    pub path_capacity: u128,
    pub fidelity: f64,
    /// Whether the path budget covered every path.
    pub exhaustive: bool,
}

/// Fidelity of the path-integral state against direct simulation for every
/// prefix `0..=sequence.len()` of a fixed cycle sequence.
pub fn fidelity_vs_cycles(
    dims: EnsembleDims,
    sequence: &[Vec<GateChoice>],
    xi: f64,
    paths: u64,
    seed: u64,
) -> Result<Vec<FidelityRow>> {
    let full = CircuitSpec::from_choices(dims, xi, sequence.to_vec())?;
    let options = McOptions::new(paths, seed);
    (0..=sequence.len())
        .map(|cycles| {
            let spec = full.prefix(cycles);
            let flat = flatten_circuit(&spec);
            let estimate = mc_wavefunction_with(&flat, &options)?;
            let exact = run_circuit(&spec)?;
            Ok(FidelityRow {
                cycles,
                two_sparse: flat.two_sparse_count(),
                path_capacity: flat.path_capacity(),
                fidelity: fpi_fidelity(&estimate, &exact)?,
                exhaustive: flat.path_capacity() <= paths as u128,
            })
        })
        .collect()
}

/// The ten-cycle single-ensemble sequence X Y Z X Z Y Z X Y X.
pub fn reference_sequence() -> Vec<Vec<GateChoice>> {
    use GateChoice::*;
    [XHalf, YHalf, ZQuarter, XHalf, ZQuarter, YHalf, ZQuarter, XHalf, YHalf, XHalf]
        .into_iter()
        .map(|c| vec![c])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::default_xi;

    #[test]
    fn exhaustive_rows_are_exact() {
        let dims = EnsembleDims::new(4, 1).unwrap();
        let rows = fidelity_vs_cycles(dims, &reference_sequence()[..4], default_xi(&dims), 200, 1).unwrap();
        assert_eq!(rows.len(), 5);
        for row in rows {
            assert_eq!(row.path_capacity, 5u128.pow(row.two_sparse as u32));
            assert_eq!(row.exhaustive, row.path_capacity <= 200);
            if row.exhaustive {
                assert!(row.fidelity >= 1.0 - 1e-9);
            }
        }
    }
}
