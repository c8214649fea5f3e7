use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest state-vector dimension we are willing to allocate.
pub const STATE_DIM_CAP: usize = 1 << 27;
/// Largest density-matrix dimension (the matrix itself holds `D^2` entries).
pub const DENSITY_DIM_CAP: usize = 1 << 13;

/// `M` ensembles of `N` qubits each, restricted to the symmetric subspace.
///
/// The Hilbert space is spanned by Fock configurations `k = (k_1, .., k_M)` with
/// `0 <= k_m <= N`, so `D = (N+1)^M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnsembleDims {
    n: usize,
    m: usize,
    dim: usize,
}

impl EnsembleDims {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidDims { n, m });
        }
        let dim = (n as u128 + 1).checked_pow(m as u32).filter(|&d| d <= STATE_DIM_CAP as u128).ok_or(
            Error::CapExceeded {
                what: "state vector",
                dim: (n as u128 + 1).saturating_pow(m.min(u32::MAX as usize) as u32),
                cap: STATE_DIM_CAP as u128,
            },
        )?;
        Ok(Self { n, m, dim: dim as usize })
    }

    /// Qubits per ensemble.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of ensembles.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Hilbert-space dimension `(N+1)^M`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Local dimension `N+1` of one ensemble.
    pub fn radix(&self) -> usize {
        self.n + 1
    }

    /// Flat-index stride of ensemble `m` (0-based).
    pub fn stride(&self, m: usize) -> usize {
        self.radix().pow(m as u32)
    }

    pub fn check_ensemble(&self, m: usize) -> Result<()> {
        if m < self.m {
            Ok(())
        } else {
            Err(Error::EnsembleIndex { index: m, count: self.m })
        }
    }

    pub fn check_distinct(&self, ensembles: &[usize]) -> Result<()> {
        for &e in ensembles {
            self.check_ensemble(e)?;
        }
        for (i, a) in ensembles.iter().enumerate() {
            if ensembles[i + 1..].contains(a) {
                return Err(Error::DuplicateEnsemble(ensembles.to_vec()));
            }
        }
        Ok(())
    }

    /// Fails unless a `D x D` density matrix fits under [`DENSITY_DIM_CAP`].
    pub fn check_density_cap(&self) -> Result<()> {
        if self.dim > DENSITY_DIM_CAP {
            return Err(Error::CapExceeded {
                what: "density matrix",
                dim: self.dim as u128,
                cap: DENSITY_DIM_CAP as u128,
            });
        }
        Ok(())
    }

    /// The configuration `(N, .., N)`, i.e. every qubit in `|0>`.
    pub fn top_config(&self) -> FockConfig {
        FockConfig(vec![self.n; self.m])
    }

    pub fn encode(&self, k: &FockConfig) -> Result<usize> {
        encode_config(k, self)
    }

    pub fn decode(&self, index: usize) -> FockConfig {
        decode_config(index, self)
    }

    /// Iterate all configurations in flat-index order.
    pub fn configs(&self) -> impl Iterator<Item = FockConfig> + '_ {
        (0..self.dim).map(move |i| self.decode(i))
    }
}

/// Occupations `k_m` of the `a` mode in each ensemble.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FockConfig(pub Vec<usize>);

impl FockConfig {
    pub fn occupations(&self) -> &[usize] {
        &self.0
    }

    /// `S^z` eigenvalues `2 k_m - N` per ensemble.
    pub fn spins(&self, n: usize) -> Vec<i64> {
        self.0.iter().map(|&k| 2 * k as i64 - n as i64).collect()
    }
}

impl From<Vec<usize>> for FockConfig {
    fn from(k: Vec<usize>) -> Self {
        FockConfig(k)
    }
}

/// Little-endian mixed-radix index: `sum_m k_m (N+1)^m`, ensemble 0 fastest.
pub fn encode_config(k: &FockConfig, dims: &EnsembleDims) -> Result<usize> {
    if k.0.len() != dims.m || k.0.iter().any(|&km| km > dims.n) {
        return Err(Error::InvalidConfig { config: k.0.clone(), n: dims.n, m: dims.m });
    }
    Ok(k.0.iter().rev().fold(0, |acc, &km| acc * dims.radix() + km))
}

/// Inverse of [`encode_config`]. `index` must be below `D`.
pub fn decode_config(index: usize, dims: &EnsembleDims) -> FockConfig {
    debug_assert!(index < dims.dim);
    let mut rest = index;
    let mut k = Vec::with_capacity(dims.m);
    for _ in 0..dims.m {
        k.push(rest % dims.radix());
        rest /= dims.radix();
    }
    FockConfig(k)
}

/// Writes the `S^z` eigenvalues of flat index `index` into `out`.
pub(crate) fn spins_of_index(index: usize, dims: &EnsembleDims, out: &mut [i64]) {
    let mut rest = index;
    for s in out.iter_mut() {
        let k = rest % dims.radix();
        rest /= dims.radix();
        *s = 2 * k as i64 - dims.n as i64;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_examples() {
        let dims = EnsembleDims::new(9, 2).unwrap();
        assert_eq!(dims.dim(), 100);
        assert_eq!(encode_config(&vec![0, 0].into(), &dims).unwrap(), 0);
        assert_eq!(encode_config(&vec![3, 7].into(), &dims).unwrap(), 73);
        assert_eq!(encode_config(&vec![9, 9].into(), &dims).unwrap(), 99);
    }

    #[test]
    fn encode_rejects_out_of_range() {
        let dims = EnsembleDims::new(9, 2).unwrap();
        assert!(matches!(encode_config(&vec![10, 0].into(), &dims), Err(Error::InvalidConfig { .. })));
        assert!(encode_config(&vec![1].into(), &dims).is_err());
    }

    #[test]
    fn decode_inverts_encode() {
        let dims = EnsembleDims::new(3, 4).unwrap();
        for i in 0..dims.dim() {
            assert_eq!(encode_config(&decode_config(i, &dims), &dims).unwrap(), i);
        }
    }

    #[test]
    fn dims_validation() {
        assert!(matches!(EnsembleDims::new(0, 2), Err(Error::InvalidDims { .. })));
        assert!(matches!(EnsembleDims::new(3, 0), Err(Error::InvalidDims { .. })));
        assert!(matches!(EnsembleDims::new(1, 28), Err(Error::CapExceeded { .. })));
        assert!(EnsembleDims::new(1, 27).is_ok());
        assert!(matches!(EnsembleDims::new(1000, 1000), Err(Error::CapExceeded { .. })));
        assert!(EnsembleDims::new(99, 1).unwrap().check_density_cap().is_ok());
        assert!(EnsembleDims::new(1, 14).unwrap().check_density_cap().is_err());
    }

    #[test]
    fn distinct_indices() {
        let dims = EnsembleDims::new(1, 3).unwrap();
        assert!(dims.check_distinct(&[0, 1, 2]).is_ok());
        assert!(matches!(dims.check_distinct(&[0, 1, 0]), Err(Error::DuplicateEnsemble(_))));
        assert!(matches!(dims.check_distinct(&[0, 3]), Err(Error::EnsembleIndex { .. })));
    }
}
