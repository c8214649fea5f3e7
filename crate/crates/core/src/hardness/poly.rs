use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ensemble::FockConfig;
use crate::{Error, Result};

/// Binary coefficients of the cubic polynomial
/// `f(k) = sum alpha_abc k_a k_b k_c + sum beta_ab k_a k_b + sum gamma_a k_a`
/// over ordered index tuples. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialSpec {
    m: usize,
    alpha: Vec<u8>,
    beta: Vec<u8>,
    gamma: Vec<u8>,
}

impl PolynomialSpec {
    pub fn zero(m: usize) -> Self {
        Self { m, alpha: vec![0; m * m * m], beta: vec![0; m * m], gamma: vec![0; m] }
    }

    /// Every coefficient an independent fair coin.
    pub fn random(m: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut spec = Self::zero(m);
        for c in spec.alpha.iter_mut().chain(&mut spec.beta).chain(&mut spec.gamma) {
            *c = rng.random_bool(0.5) as u8;
        }
        spec
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha(&self, a: usize, b: usize, c: usize) -> u8 {
        self.alpha[(a * self.m + b) * self.m + c]
    }

    pub fn beta(&self, a: usize, b: usize) -> u8 {
        self.beta[a * self.m + b]
    }

    pub fn gamma(&self, a: usize) -> u8 {
        self.gamma[a]
    }

    pub fn set_alpha(&mut self, a: usize, b: usize, c: usize, value: bool) -> Result<()> {
        self.check(&[a, b, c])?;
        self.alpha[(a * self.m + b) * self.m + c] = value as u8;
        Ok(())
    }

    pub fn set_beta(&mut self, a: usize, b: usize, value: bool) -> Result<()> {
        self.check(&[a, b])?;
        self.beta[a * self.m + b] = value as u8;
        Ok(())
    }

    pub fn set_gamma(&mut self, a: usize, value: bool) -> Result<()> {
        self.check(&[a])?;
        self.gamma[a] = value as u8;
        Ok(())
    }

    fn check(&self, indices: &[usize]) -> Result<()> {
        match indices.iter().find(|&&i| i >= self.m) {
            Some(&index) => Err(Error::EnsembleIndex { index, count: self.m }),
            None => Ok(()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().chain(&self.beta).chain(&self.gamma).all(|&c| c == 0)
    }

    /// Parses the line format `alpha a b c`, `beta a b`, `gamma a` with
    /// 1-based indices. `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str, m: usize, path: &Path) -> Result<Self> {
        let mut spec = Self::zero(m);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fail = |message: String| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                entry: line.to_string(),
                message,
            };
            let mut words = line.split_whitespace();
            let kind = words.next().unwrap_or_default();
            let arity = match kind {
                "alpha" => 3,
                "beta" => 2,
                "gamma" => 1,
                other => return Err(fail(format!("unknown coefficient `{other}`"))),
            };
            let indices = words
                .map(|w| match w.parse::<usize>() {
                    Ok(v) if (1..=m).contains(&v) => Ok(v - 1),
                    _ => Err(fail(format!("index `{w}` is not in 1..={m}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if indices.len() != arity {
                return Err(fail(format!("{kind} takes {arity} indices, got {}", indices.len())));
            }
            match arity {
                3 => spec.set_alpha(indices[0], indices[1], indices[2], true)?,
                2 => spec.set_beta(indices[0], indices[1], true)?,
                _ => spec.set_gamma(indices[0], true)?,
            }
        }
        Ok(spec)
    }

    pub fn from_file(path: &Path, m: usize) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, m, path)
    }

    /// Inverse of [`PolynomialSpec::parse`]: one line per nonzero coefficient.
    pub fn to_text(&self) -> String {
        let m = self.m;
        let mut out = String::new();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if self.alpha(a, b, c) == 1 {
                        let _ = writeln!(out, "alpha {} {} {}", a + 1, b + 1, c + 1);
                    }
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                if self.beta(a, b) == 1 {
                    let _ = writeln!(out, "beta {} {}", a + 1, b + 1);
                }
            }
        }
        for a in 0..m {
            if self.gamma(a) == 1 {
                let _ = writeln!(out, "gamma {}", a + 1);
            }
        }
        out
    }
}

/// `f(k)` as an exact integer.
pub fn eval_f(k: &FockConfig, spec: &PolynomialSpec) -> u128 {
    eval_on(k.occupations(), spec)
}

fn eval_on(k: &[usize], spec: &PolynomialSpec) -> u128 {
    let m = spec.m();
    assert_eq!(k.len(), m, "configuration length must equal the ensemble count");
    let k: Vec<u128> = k.iter().map(|&v| v as u128).collect();
    let mut f = 0u128;
    for a in 0..m {
        f += spec.gamma(a) as u128 * k[a];
        for b in 0..m {
            f += spec.beta(a, b) as u128 * k[a] * k[b];
            for c in 0..m {
                f += spec.alpha(a, b, c) as u128 * k[a] * k[b] * k[c];
            }
        }
    }
    f
}

/// `f(k mod 2) mod 2`, which equals `f(k) mod 2` because `k^j = k (mod 2)`.
pub fn parity_reduced_f(k: &FockConfig, spec: &PolynomialSpec) -> u8 {
    let reduced: Vec<usize> = k.occupations().iter().map(|v| v % 2).collect();
    (eval_on(&reduced, spec) % 2) as u8
}
