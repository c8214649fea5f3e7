//! Monte Carlo path-integral fidelity against exact simulation as the number
//! of branching gates outgrows the path budget.

use ensemble_rcs::circuits::default_xi;
use ensemble_rcs::ensemble::EnsembleDims;
use ensemble_rcs::path_integral::{fidelity_vs_cycles, reference_sequence};

fn main() -> ensemble_rcs::Result<()> {
    let dims = EnsembleDims::new(19, 1)?;
    let paths = 100_000;
    println!("N=19, M=1, {paths} paths per amplitude");
    for row in fidelity_vs_cycles(dims, &reference_sequence(), default_xi(&dims), paths, 0)? {
        println!(
            "L={:2}  G={}  (N+1)^G = {:>15}  F = {:.4}{}",
            row.cycles,
            row.two_sparse,
            row.path_capacity,
            row.fidelity,
            if row.exhaustive { "  (all paths)" } else { "" }
        );
    }
    Ok(())
}
