use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{parity_reduced_f, PolynomialSpec};
use crate::ensemble::EnsembleDims;
use crate::{Error, Result};

/// Largest `N * M` accepted by [`gap_sum_naive`].
pub const NAIVE_QUBIT_CAP: usize = 20;

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one(); n + 1];
    for k in 1..=n {
        row[k] = &row[k - 1] * (n - k + 1) / k;
    }
    row
}

fn check_m(spec: &PolynomialSpec, dims: &EnsembleDims) -> Result<()> {
    if spec.m() != dims.m() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial over {} ensembles, dims have M={}",
            spec.m(),
            dims.m()
        )));
    }
    Ok(())
}

/// `sum_k prod_m C(N, k_m) (-1)^{f(k)}` over the `(N+1)^M` Fock configurations.
pub fn gap_sum_reduced(spec: &PolynomialSpec, dims: &EnsembleDims) -> Result<BigInt> {
    check_m(spec, dims)?;
    let row = binomial_row(dims.n());
    let mut total = BigInt::zero();
    for k in dims.configs() {
        let weight: BigInt = k.occupations().iter().map(|&v| &row[v]).product();
        if parity_reduced_f(&k, spec) == 0 {
            total += weight;
        } else {
            total -= weight;
        }
    }
    Ok(total)
}

/// `sum_z (-1)^{f(k(z))}` over all `2^{NM}` qubit strings, where `k_m(z)` is
/// the number of set bits in ensemble `m`'s block.
pub fn gap_sum_naive(spec: &PolynomialSpec, dims: &EnsembleDims) -> Result<BigInt> {
    check_m(spec, dims)?;
    let (n, m) = (dims.n(), dims.m());
    if n * m > NAIVE_QUBIT_CAP {
        return Err(Error::CapExceeded {
            what: "naive gap sum qubit",
            dim: (n * m) as u128,
            cap: NAIVE_QUBIT_CAP as u128,
        });
    }
    let parity: Vec<u8> = dims.configs().map(|k| parity_reduced_f(&k, spec)).collect();
    let block = (1u64 << n) - 1;
    let mut total = 0i64;
    for z in 0..1u64 << (n * m) {
        let index: usize = (0..m).map(|e| ((z >> (e * n)) & block).count_ones() as usize * dims.stride(e)).sum();
        total += if parity[index] == 0 { 1 } else { -1 };
    }
    Ok(BigInt::from(total))
}

/// `(gap / 2^{NM})^2`: the probability the worst-case circuit returns to its
/// initial configuration.
pub fn gap_probability_bruteforce(spec: &PolynomialSpec, dims: &EnsembleDims) -> Result<f64> {
    let sum = gap_sum_reduced(spec, dims)?;
    let bits = dims.n() * dims.m();
    // |sum| <= 2^bits; shift both so the mantissa fits an f64.
    let shift = bits.saturating_sub(1000);
    let scaled = (sum >> shift).to_f64().unwrap_or(f64::NAN);
    let ratio = scaled / 2f64.powi((bits - shift) as i32);
    Ok(ratio * ratio)
}
