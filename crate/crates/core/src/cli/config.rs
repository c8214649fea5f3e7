use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuits::default_xi;
use crate::ensemble::EnsembleDims;
use crate::{Error, Result};

/// Squeezing strength: a number, or `auto` for `pi / sqrt(M N)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "XiRepr", into = "XiRepr")]
pub enum Xi {
    Auto,
    Value(f64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum XiRepr {
    Number(f64),
    Text(String),
}

impl TryFrom<XiRepr> for Xi {
    type Error = Error;

    fn try_from(repr: XiRepr) -> Result<Self> {
        match repr {
            XiRepr::Number(v) => Ok(Xi::Value(v)),
            XiRepr::Text(s) => s.parse(),
        }
    }
}

impl From<Xi> for XiRepr {
    fn from(xi: Xi) -> Self {
        match xi {
            Xi::Auto => XiRepr::Text("auto".into()),
            Xi::Value(v) => XiRepr::Number(v),
        }
    }
}

impl FromStr for Xi {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Xi::Auto);
        }
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(Xi::Value)
            .ok_or_else(|| Error::Domain(format!("xi must be a finite number or `auto`, got `{s}`")))
    }
}

/// Settings that may come from the command line or a TOML file. Unset fields
/// fall through to the next source.
#[derive(Debug, Clone, Default, PartialEq, clap::Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    /// Qubits per ensemble.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of ensembles.
    #[arg(long)]
    pub m: Option<usize>,
    /// Circuit depth L.
    #[arg(long)]
    pub cycles: Option<usize>,
    /// Squeezing strength, or `auto`.
    #[arg(long)]
    pub xi: Option<Xi>,
    /// Dephasing rate per cycle.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Monte Carlo path budget per amplitude.
    #[arg(long)]
    pub paths: Option<u64>,
    /// Measurement shots.
    #[arg(long)]
    pub shots: Option<usize>,
    /// Master seed for every random choice.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Random circuits averaged by entropy-sweep.
    #[arg(long)]
    pub circuits: Option<usize>,
    /// Fixed gate sequence, e.g. `XYZ` (M = 1) or `XY,ZZ` (one group per cycle).
    #[arg(long)]
    pub sequence: Option<String>,
    /// Polynomial coefficient file for worst-case.
    #[arg(long)]
    pub spec_file: Option<PathBuf>,
    /// Number of random polynomials checked by worst-case instead of a file.
    #[arg(long)]
    pub random_specs: Option<usize>,
    /// Leave out the initial Hadamard layer (sample).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub skip_hadamard: Option<bool>,
    /// Commutator step counts checked by synth-check.
    #[arg(long, value_delimiter = ',')]
    pub steps: Option<Vec<usize>>,
    /// Three-body angle checked by synth-check.
    #[arg(long)]
    pub chi: Option<f64>,
    /// TOML file with any of the keys above (underscored).
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

/// Fully resolved settings, echoed into every output header.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub m: usize,
    pub cycles: usize,
    /// Resolved squeezing strength.
    pub xi: f64,
    pub tau: f64,
    pub paths: u64,
    pub shots: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub circuits: usize,
    pub sequence: Option<String>,
    pub spec_file: Option<PathBuf>,
    pub random_specs: usize,
    pub skip_hadamard: bool,
    pub steps: Vec<usize>,
    pub chi: f64,
}

impl RunConfig {
    /// Defaults, then the `--config` file, then explicit flags.
    pub fn resolve(flags: &Overrides) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => load_overrides(path)?,
            None => Overrides::default(),
        };
        let pick = |flag: &Overrides, file: &Overrides| -> Overrides {
            macro_rules! or {
                ($($f:ident),*) => { Overrides { $($f: flag.$f.clone().or_else(|| file.$f.clone()),)* } };
            }
            or!(
                n,
                m,
                cycles,
                xi,
                tau,
                paths,
                shots,
                seed,
                out,
                threads,
                circuits,
                sequence,
                spec_file,
                random_specs,
                skip_hadamard,
                steps,
                chi,
                config
            )
        };
        let o = pick(flags, &file);
        let n = o.n.unwrap_or(99);
        let m = o.m.unwrap_or(1);
        let dims = EnsembleDims::new(n, m)?;
        let xi = match o.xi.unwrap_or(Xi::Auto) {
            Xi::Auto => default_xi(&dims),
            Xi::Value(v) => v,
        };
        let config = Self {
            n,
            m,
            cycles: o.cycles.unwrap_or(10),
            xi,
            tau: o.tau.unwrap_or(0.0),
            paths: o.paths.unwrap_or(100_000),
            shots: o.shots.unwrap_or(1000),
            seed: o.seed.unwrap_or(0),
            out: o.out,
            threads: o.threads,
            circuits: o.circuits.unwrap_or(10),
            sequence: o.sequence,
            spec_file: o.spec_file,
            random_specs: o.random_specs.unwrap_or(0),
            skip_hadamard: o.skip_hadamard.unwrap_or(false),
            steps: o.steps.unwrap_or_else(|| vec![10, 100]),
            chi: o.chi.unwrap_or(0.3),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Domain(what.to_string()));
        if !(self.tau.is_finite() && self.tau >= 0.0) {
            return bad("tau must be a finite non-negative number");
        }
        if self.paths == 0 {
            return bad("paths must be at least 1");
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1");
        }
        if self.circuits == 0 {
            return bad("circuits must be at least 1");
        }
        if self.steps.contains(&0) {
            return bad("steps must all be at least 1");
        }
        if !self.chi.is_finite() {
            return bad("chi must be finite");
        }
        Ok(())
    }

    pub fn dims(&self) -> Result<EnsembleDims> {
        EnsembleDims::new(self.n, self.m)
    }
}

fn load_overrides(path: &Path) -> Result<Overrides> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| {
        let (line, entry) = match e.span() {
            Some(span) => {
                let line = text[..span.start].matches('\n').count() + 1;
                (line, text.lines().nth(line - 1).unwrap_or("").trim().to_string())
            }
            None => (0, String::new()),
        };
        Error::Parse { path: path.to_path_buf(), line, entry, message: e.message().to_string() }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn xi_parsing() {
        assert_eq!("auto".parse::<Xi>().unwrap(), Xi::Auto);
        assert_eq!("0.25".parse::<Xi>().unwrap(), Xi::Value(0.25));
        assert!("nan".parse::<Xi>().is_err());
        assert!("fast".parse::<Xi>().is_err());
    }

    #[test]
    fn defaults_resolve_auto_xi() {
        let cfg = RunConfig::resolve(&Overrides::default()).unwrap();
        assert_eq!((cfg.n, cfg.m, cfg.cycles), (99, 1, 10));
        assert!((cfg.xi - std::f64::consts::PI / 99f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn flags_beat_file_beat_defaults() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "n = 5\nm = 2\nxi = \"auto\"\nseed = 7\nsteps = [3, 30]").unwrap();
        let flags = Overrides { n: Some(4), config: Some(file.path().to_path_buf()), ..Default::default() };
        let cfg = RunConfig::resolve(&flags).unwrap();
        assert_eq!((cfg.n, cfg.m, cfg.seed, cfg.cycles), (4, 2, 7, 10));
        assert_eq!(cfg.steps, vec![3, 30]);
        assert!((cfg.xi - std::f64::consts::PI / 8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bad_file_keys_are_parse_errors() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "n = 5\nbogus = 1").unwrap();
        let flags = Overrides { config: Some(file.path().to_path_buf()), ..Default::default() };
        match RunConfig::resolve(&flags).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_values_rejected() {
        for o in [
            Overrides { n: Some(0), ..Default::default() },
            Overrides { tau: Some(-1.0), ..Default::default() },
            Overrides { paths: Some(0), ..Default::default() },
            Overrides { steps: Some(vec![0]), ..Default::default() },
        ] {
            assert!(RunConfig::resolve(&o).is_err());
        }
        let huge = Overrides { n: Some(1000), m: Some(5), ..Default::default() };
        assert!(matches!(RunConfig::resolve(&huge), Err(Error::CapExceeded { .. })));
    }
}
