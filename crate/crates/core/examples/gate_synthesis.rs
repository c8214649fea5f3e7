//! Two-body phases from squeezers (exact) and three-body phases from group
//! commutators (error shrinking with the step count).

use ensemble_rcs::ensemble::{EnsembleDims, Gate};
use ensemble_rcs::hardness::{sequence_distance, synthesize_r_commutator, synthesize_t};

fn main() -> ensemble_rcs::Result<()> {
    let pair = EnsembleDims::new(2, 2)?;
    let t = synthesize_t(0, 1, 0.7)?;
    let err = sequence_distance(pair, &t, &[Gate::TwoBody { first: 0, second: 1, xi: 0.7 }])?;
    println!("T from {} squeezers: error {err:.1e}", t.len());

    let triple = EnsembleDims::new(1, 3)?;
    let target = [Gate::ThreeBody { first: 0, second: 1, third: 2, chi: 0.3 }];
    for steps in [1, 3, 10, 30, 100, 300] {
        let r = synthesize_r_commutator(0, 1, 2, 0.3, steps)?;
        println!("R with {steps:3} steps ({:5} gates): error {:.3e}", r.len(), sequence_distance(triple, &r, &target)?);
    }
    Ok(())
}
