use std::f64::consts::FRAC_PI_4;

use crate::ensemble::{Axis, EnsembleDims, Gate, StateVector};
use crate::{Error, Result};

fn distinct(indices: &[usize]) -> Result<()> {
    for (i, a) in indices.iter().enumerate() {
        if indices[i + 1..].contains(a) {
            return Err(Error::DuplicateEnsemble(indices.to_vec()));
        }
    }
    Ok(())
}

/// `T_nm(xi)` from squeezers: `Q_nm(xi/2) Q_n(-xi/2) Q_m(-xi/2)`.
pub fn synthesize_t(n: usize, m: usize, xi: f64) -> Result<Vec<Gate>> {
    distinct(&[n, m])?;
    Ok(vec![
        Gate::PairSqueeze { first: n, second: m, xi: xi / 2.0 },
        Gate::LocalSqueeze { ensemble: n, xi: -xi / 2.0 },
        Gate::LocalSqueeze { ensemble: m, xi: -xi / 2.0 },
    ])
}

/// `e^{-i c S^axis_target S^z_control}` as a squeezer sequence conjugated by a
/// quarter rotation of the target ensemble.
pub fn conjugated_two_body(target: usize, axis: Axis, control: usize, coeff: f64) -> Result<Vec<Gate>> {
    let core = synthesize_t(target, control, coeff)?;
    // `U S^z U^dag = S^axis`; the sequence applies `U^dag` first.
    let (rot_axis, u_angle) = match axis {
        Axis::Z => return Ok(core),
        Axis::X => (Axis::Y, FRAC_PI_4),
        Axis::Y => (Axis::X, -FRAC_PI_4),
    };
    let rot = |angle| Gate::Rotation { ensemble: target, axis: rot_axis, angle };
    let mut gates = vec![rot(-u_angle)];
    gates.extend(core);
    gates.push(rot(u_angle));
    Ok(gates)
}

/// Approximates `R_lmn(chi)` by `steps` group commutators of
/// `A = S^x_n S^z_m` and `B = S^y_n S^z_l`, using `[A, B] = 2i S^z_l S^z_m S^z_n`.
///
/// Each step applies `e^{iA'e}`, `e^{iBe}`, `e^{-iA'e}`, `e^{-iBe}` in that order,
/// with `e = sqrt(|chi| / (2 steps))` and `A' = -sign(chi) A`.
pub fn synthesize_r_commutator(l: usize, m: usize, n: usize, chi: f64, steps: usize) -> Result<Vec<Gate>> {
    distinct(&[l, m, n])?;
    if steps == 0 {
        return Err(Error::Domain("commutator synthesis needs at least one step".into()));
    }
    if chi == 0.0 {
        return Ok(Vec::new());
    }
    let eps = (chi.abs() / 2.0 / steps as f64).sqrt();
    let sign = chi.signum();
    let mut block = Vec::new();
    block.extend(conjugated_two_body(n, Axis::X, m, sign * eps)?);
    block.extend(conjugated_two_body(n, Axis::Y, l, -eps)?);
    block.extend(conjugated_two_body(n, Axis::X, m, -sign * eps)?);
    block.extend(conjugated_two_body(n, Axis::Y, l, eps)?);
    Ok((0..steps).flat_map(|_| block.iter().cloned()).collect())
}

/// Largest L2 distance between the outputs of two gate sequences over all
/// computational basis inputs.
pub fn sequence_distance(dims: EnsembleDims, left: &[Gate], right: &[Gate]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in dims.configs() {
        let mut a = StateVector::basis(dims, &k)?;
        let mut b = a.clone();
        a.apply_all(left)?;
        b.apply_all(right)?;
        let d: f64 = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm_sqr()).sum();
        worst = worst.max(d.sqrt());
    }
    Ok(worst)
}
