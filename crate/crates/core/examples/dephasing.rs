//! Exact dephasing between cycles drives the output towards the uniform
//! distribution as the rate grows.

use ensemble_rcs::circuits::{default_xi, generate_random_circuit, run_circuit_with_dephasing, shannon_entropy};
use ensemble_rcs::ensemble::EnsembleDims;

fn main() -> ensemble_rcs::Result<()> {
    let dims = EnsembleDims::new(99, 1)?;
    let spec = generate_random_circuit(dims, 8, default_xi(&dims), 0);
    let uniform = 1.0 / dims.dim() as f64;
    for tau in [0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0] {
        let rho = run_circuit_with_dephasing(&spec, tau)?;
        let diag = rho.diagonal();
        let spread = diag.iter().map(|p| (p - uniform).abs()).fold(0.0, f64::max);
        println!(
            "tau {tau:7.0e}  purity {:.4}  entropy {:.4}  max|p - 1/D| {spread:.2e}",
            rho.purity(),
            shannon_entropy(&diag)?
        );
    }
    Ok(())
}
