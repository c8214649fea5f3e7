//! Sorted output probabilities of one deep circuit next to the ideal
//! Porter-Thomas curve, with the KS distance of the rescaled distribution.

use ensemble_rcs::circuits::{
    default_xi, generate_random_circuit, pt_distance, pt_ideal_sorted, pt_sorted_deviation, run_circuit,
    sorted_probabilities,
};
use ensemble_rcs::ensemble::EnsembleDims;

fn main() -> ensemble_rcs::Result<()> {
    let dims = EnsembleDims::new(99, 1)?;
    let spec = generate_random_circuit(dims, 10, default_xi(&dims), 0);
    let probs = run_circuit(&spec)?.probabilities();
    let sorted = sorted_probabilities(&probs);
    for rank in [1, 2, 5, 10, 20, 50, 80, 100] {
        println!("rank {rank:3}  p = {:.5}  ideal = {:.5}", sorted[rank - 1], pt_ideal_sorted(dims.dim(), rank)?);
    }
    println!("KS distance to Exp(1): {:.4}", pt_distance(&probs));
    println!("max sorted deviation:  {:.4}", pt_sorted_deviation(&probs));
    Ok(())
}
