//! Mean output entropy of ten random circuits against depth, for two layouts
//! with the same Hilbert-space dimension.

use ensemble_rcs::circuits::{default_xi, entropy_sweep, pt_entropy};
use ensemble_rcs::ensemble::EnsembleDims;

fn main() -> ensemble_rcs::Result<()> {
    for (n, m) in [(99, 1), (9, 2)] {
        let dims = EnsembleDims::new(n, m)?;
        let target = pt_entropy(dims.dim())?;
        println!("N={n} M={m}  Porter-Thomas entropy {target:.4}");
        for row in entropy_sweep(dims, default_xi(&dims), 0.0, 10, 10, 0)? {
            println!("  L={:2}  S = {:.4} +- {:.4}", row.cycles, row.mean_entropy, row.std_entropy);
        }
    }
    Ok(())
}
