//! Collective spin operators in the Dicke (Fock) basis and the rotations they
//! generate.
//!
//! With Schwinger bosons `S^x = a'b + b'a`, `S^y = -i a'b + i b'a`,
//! `S^z = a'a - b'b`, the Fock state `|k>` carries `k` quanta in mode `a`, so
//! `S^z |k> = (2k - N) |k>` and `[S^x, S^y] = 2i S^z`.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Rotation angle of `X^{1/2}` and `Y^{1/2}`.
pub const HALF_TURN_ANGLE: f64 = FRAC_PI_4;
/// Rotation angle of `Z^{1/4}`.
pub const QUARTER_TURN_ANGLE: f64 = std::f64::consts::FRAC_PI_8;
/// Angle of each factor in `H = U^x U^z U^x`.
///
/// `U^a(pi/4) = e^{-i S^a pi/4}` is the per-qubit `pi/2` rotation, which is what
/// makes the product a Hadamard (up to phase) on every qubit of the ensemble.
pub const HADAMARD_ANGLE: f64 = FRAC_PI_4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// `(N+1) x (N+1)` matrix of `S^axis`, rows and columns indexed by `k`.
pub fn spin_operator_matrix(n: usize, axis: Axis) -> DMatrix<Complex64> {
    let dim = n + 1;
    let mut s = DMatrix::<Complex64>::zeros(dim, dim);
    match axis {
        Axis::Z => {
            for k in 0..dim {
                s[(k, k)] = Complex64::new(2.0 * k as f64 - n as f64, 0.0);
            }
        }
        Axis::X | Axis::Y => {
            for k in 0..n {
                // <k+1| a'b |k> = sqrt((N-k)(k+1))
                let v = (((n - k) * (k + 1)) as f64).sqrt();
                let (raise, lower) = match axis {
                    Axis::X => (Complex64::new(v, 0.0), Complex64::new(v, 0.0)),
                    _ => (Complex64::new(0.0, -v), Complex64::new(0.0, v)),
                };
                s[(k + 1, k)] = raise;
                s[(k, k + 1)] = lower;
            }
        }
    }
    s
}

/// `e^{-i S^axis angle}` for one ensemble of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationMatrix {
    n: usize,
    axis: Axis,
    angle: f64,
    entries: DMatrix<Complex64>,
}

impl RotationMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// `<row| U |col>`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    /// Largest entry of `|U'U - I|`.
    pub fn unitarity_error(&self) -> f64 {
        let product = self.entries.adjoint() * &self.entries;
        let dim = self.n + 1;
        let mut worst = 0.0f64;
        for r in 0..dim {
            for c in 0..dim {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((product[(r, c)] - target).norm());
            }
        }
        worst
    }
}

/// Builds `e^{-i S^axis angle}` from the Hermitian eigendecomposition of the
/// spin operator.
///
/// The spectrum of every `S^a` is exactly `{2j - N}`, so the numerically
/// computed eigenvalues are replaced by those integers before exponentiating;
/// only the eigenvectors carry rounding error.
pub fn rotation_matrix(n: usize, axis: Axis, angle: f64) -> RotationMatrix {
    let dim = n + 1;
    let entries = if axis == Axis::Z {
        DMatrix::from_fn(dim, dim, |r, c| {
            if r == c {
                Complex64::from_polar(1.0, -angle * (2.0 * r as f64 - n as f64))
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    } else {
        let eigen = SymmetricEigen::new(spin_operator_matrix(n, axis));
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eigen.eigenvalues[a].total_cmp(&eigen.eigenvalues[b]));
        let mut phased = eigen.eigenvectors.clone();
        for (j, &col) in order.iter().enumerate() {
            let exact = 2.0 * j as f64 - n as f64;
            debug_assert!((eigen.eigenvalues[col] - exact).abs() < 1e-6 * (1.0 + n as f64));
            let phase = Complex64::from_polar(1.0, -angle * exact);
            for r in 0..dim {
                phased[(r, col)] *= phase;
            }
        }
        phased * eigen.eigenvectors.adjoint()
    };
    RotationMatrix { n, axis, angle, entries }
}

type CacheKey = (usize, Axis, u64);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<RotationMatrix>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<RotationMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// [`rotation_matrix`] memoized per `(N, axis, angle)`.
pub fn cached_rotation(n: usize, axis: Axis, angle: f64) -> Arc<RotationMatrix> {
    let key = (n, axis, angle.to_bits());
    if let Some(hit) = cache().lock().expect("rotation cache poisoned").get(&key) {
        return Arc::clone(hit);
    }
    let built = Arc::new(rotation_matrix(n, axis, angle));
    cache().lock().expect("rotation cache poisoned").entry(key).or_insert(built).clone()
}

/// `X^{1/2} = e^{-i S^x pi/4}`.
pub fn x_half(n: usize) -> Arc<RotationMatrix> {
    cached_rotation(n, Axis::X, HALF_TURN_ANGLE)
}

/// `Y^{1/2} = e^{-i S^y pi/4}`.
pub fn y_half(n: usize) -> Arc<RotationMatrix> {
    cached_rotation(n, Axis::Y, HALF_TURN_ANGLE)
}

/// `Z^{1/4} = e^{-i S^z pi/8}`.
pub fn z_quarter(n: usize) -> Arc<RotationMatrix> {
    cached_rotation(n, Axis::Z, QUARTER_TURN_ANGLE)
}

/// `<k| e^{-i S^y pi/4} |k'>` from the factorial sum
///
/// ```text
/// sqrt(k'! (N-k')! k! (N-k)!) / sqrt(2^N)
///     * sum_n (-1)^n / ((k-n)! (N-k'-n)! n! (k'-k+n)!)
/// ```
///
/// evaluated term by term in the log domain with the sign carried separately.
/// Kept as an independent check on [`rotation_matrix`]; cancellation limits it
/// to moderate `N` (a few dozen).
pub fn y_quarter_closed_form(n: usize, k: usize, kp: usize) -> f64 {
    let ln_fact = log_factorials(n);
    let prefactor =
        0.5 * (ln_fact[kp] + ln_fact[n - kp] + ln_fact[k] + ln_fact[n - k]) - 0.5 * n as f64 * std::f64::consts::LN_2;
    let lo = k.saturating_sub(kp);
    let hi = k.min(n - kp);
    let mut sum = 0.0;
    for j in lo..=hi {
        let ln_term = prefactor - ln_fact[k - j] - ln_fact[n - kp - j] - ln_fact[j] - ln_fact[kp + j - k];
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * ln_term.exp();
    }
    sum
}

fn log_factorials(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    table.push(0.0);
    for i in 1..=n {
        acc += (i as f64).ln();
        table.push(acc);
    }
    table
}
