//! The worst-case circuit's return probability equals the squared normalized
//! gap function of the polynomial it encodes.

use ensemble_rcs::ensemble::EnsembleDims;
use ensemble_rcs::hardness::{
    build_and_simulate_worst_case, gap_probability_bruteforce, gap_sum_reduced, PolynomialSpec,
};

fn main() -> ensemble_rcs::Result<()> {
    for (n, m, seed) in [(1, 2, 0), (2, 2, 1), (1, 3, 2), (2, 3, 3), (3, 3, 4)] {
        let dims = EnsembleDims::new(n, m)?;
        let spec = PolynomialSpec::random(m, seed);
        let p_circuit = build_and_simulate_worst_case(&spec, &dims)?;
        let p_gap = gap_probability_bruteforce(&spec, &dims)?;
        println!(
            "N={n} M={m} seed {seed}  gap {:>4}  p_circuit {p_circuit:.6}  p_gap {p_gap:.6}  |delta| {:.1e}",
            gap_sum_reduced(&spec, &dims)?,
            (p_circuit - p_gap).abs()
        );
    }
    Ok(())
}
