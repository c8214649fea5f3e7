use std::io::Write;

use crate::circuits::{
    entropy_sweep, generate_random_circuit, pt_entropy, pt_ideal_sorted, run_circuit, run_circuit_with_dephasing,
    sorted_probabilities, GateChoice,
};
use crate::ensemble::{sample_indices, EnsembleDims, Gate, StateVector};
use crate::hardness::{
    build_and_simulate_worst_case, gap_probability_bruteforce, sequence_distance, synthesize_r_commutator,
    synthesize_t, PolynomialSpec,
};
use crate::path_integral::fidelity_vs_cycles;
use crate::{Error, Result};

use super::config::RunConfig;

/// Largest `|p_circuit - p_gap|` accepted by worst-case.
pub const WORST_CASE_TOLERANCE: f64 = 1e-9;
/// Largest distance accepted for the exact T synthesis.
pub const T_SYNTHESIS_TOLERANCE: f64 = 1e-10;

/// Whether a command's built-in check held. Only worst-case and synth-check
/// can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

fn io(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => Error::Io(e),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

struct Table<'a> {
    csv: csv::Writer<&'a mut dyn Write>,
}

impl<'a> Table<'a> {
    fn new(out: &'a mut dyn Write, command: &str, config: &RunConfig, columns: &[&str]) -> Result<Self> {
        writeln!(out, "# ensemble-rcs {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(out, "# command: {command}")?;
        let json = serde_json::to_string(config).map_err(|e| Error::Domain(e.to_string()))?;
        writeln!(out, "# config: {json}")?;
        let mut csv = csv::Writer::from_writer(out);
        csv.write_record(columns).map_err(io)?;
        Ok(Self { csv })
    }

    fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) -> Result<()> {
        self.csv.write_record(fields.into_iter().collect::<Vec<_>>()).map_err(io)
    }

    fn footer(self, line: &str) -> Result<()> {
        let out = self.csv.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
        writeln!(out, "# {line}")?;
        Ok(())
    }

    fn finish(mut self) -> Result<()> {
        self.csv.flush()?;
        Ok(())
    }
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

/// Mean and spread of the output entropy for every depth `0..=cycles`.
pub fn cmd_entropy_sweep(config: &RunConfig, out: &mut dyn Write) -> Result<Verdict> {
    let dims = config.dims()?;
    let rows = entropy_sweep(dims, config.xi, config.tau, config.cycles, config.circuits, config.seed)?;
    let target = pt_entropy(dims.dim())?;
    let mut table = Table::new(out, "entropy-sweep", config, &["L", "mean_entropy", "std_entropy", "pt_target"])?;
    for row in rows {
        table.row([row.cycles.to_string(), num(row.mean_entropy), num(row.std_entropy), num(target)])?;
    }
    table.finish()?;
    Ok(Verdict::Pass)
}

/// Sorted output distribution of one circuit next to the Porter-Thomas curve.
pub fn cmd_pt_dist(config: &RunConfig, out: &mut dyn Write) -> Result<Verdict> {
    let dims = config.dims()?;
    let spec = generate_random_circuit(dims, config.cycles, config.xi, config.seed);
    let probs = if config.tau > 0.0 {
        run_circuit_with_dephasing(&spec, config.tau)?.diagonal()
    } else {
        run_circuit(&spec)?.probabilities()
    };
    let sorted = sorted_probabilities(&probs);
    let mut table = Table::new(out, "pt-dist", config, &["rank", "p_sorted", "p_ideal"])?;
    for (i, p) in sorted.iter().enumerate() {
        table.row([(i + 1).to_string(), num(*p), num(pt_ideal_sorted(dims.dim(), i + 1)?)])?;
    }
    let total: f64 = sorted.iter().sum();
    table.footer(&format!("sum_p_sorted={total:e}"))?;
    Ok(Verdict::Pass)
}

/// Parses `XYZ` (one letter per cycle, `M = 1`) or comma-separated groups of
/// `M` letters.
pub fn parse_sequence(text: &str, m: usize) -> Result<Vec<Vec<GateChoice>>> {
    let groups: Vec<&str> = if text.contains(',') {
        text.split(',').map(str::trim).collect()
    } else if m == 1 {
        text.trim().matches(|_: char| true).collect()
    } else {
        vec![text.trim()]
    };
    groups
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|g| {
            let cycle = g.chars().map(|c| c.to_string().parse()).collect::<Result<Vec<GateChoice>>>()?;
            if cycle.len() != m {
                return Err(Error::Domain(format!("cycle `{g}` has {} gates, expected M={m}", cycle.len())));
            }
            Ok(cycle)
        })
        .collect()
}

/// Path-integral fidelity for every prefix of a fixed or seeded sequence.
pub fn cmd_fpi_fidelity(config: &RunConfig, out: &mut dyn Write) -> Result<Verdict> {
    let dims = config.dims()?;
    let sequence = match &config.sequence {
        Some(text) => parse_sequence(text, dims.m())?,
        None => generate_random_circuit(dims, config.cycles, config.xi, config.seed).choices().to_vec(),
    };
    let rows = fidelity_vs_cycles(dims, &sequence, config.xi, config.paths, config.seed)?;
    let mut table = Table::new(out, "fpi-fidelity", config, &["L", "G", "paths_capacity", "fidelity"])?;
    for row in rows {
        table.row([
            row.cycles.to_string(),
            row.two_sparse.to_string(),
            row.path_capacity.to_string(),
            num(row.fidelity),
        ])?;
    }
    table.finish()?;
    Ok(Verdict::Pass)
}

/// Worst-case circuit probability against the gap oracle, for one file or a
/// batch of random polynomials.
pub fn cmd_worst_case(config: &RunConfig, out: &mut dyn Write) -> Result<Verdict> {
    let dims = config.dims()?;
    let specs: Vec<(String, PolynomialSpec)> = if config.random_specs > 0 {
        (0..config.random_specs as u64)
            .map(|i| {
                let seed = config.seed.wrapping_add(i);
                (format!("random:{seed}"), PolynomialSpec::random(dims.m(), seed))
            })
            .collect()
    } else if let Some(path) = &config.spec_file {
        vec![(path.display().to_string(), PolynomialSpec::from_file(path, dims.m())?)]
    } else {
        return Err(Error::Domain("worst-case needs --spec-file or --random-specs".into()));
    };
    let mut table = Table::new(out, "worst-case", config, &["spec", "p_circuit", "p_gap", "abs_delta"])?;
    let mut worst: f64 = 0.0;
    for (name, spec) in &specs {
        let p_circuit = build_and_simulate_worst_case(spec, &dims)?;
        let p_gap = gap_probability_bruteforce(spec, &dims)?;
        let delta = (p_circuit - p_gap).abs();
        worst = worst.max(delta);
        table.row([name.clone(), num(p_circuit), num(p_gap), num(delta)])?;
    }
    if specs.len() > 1 {
        table.row(["max".into(), String::new(), String::new(), num(worst)])?;
    }
    table.footer(&format!("max_abs_delta={worst:e} tolerance={WORST_CASE_TOLERANCE:e}"))?;
    Ok(if worst <= WORST_CASE_TOLERANCE { Verdict::Pass } else { Verdict::Fail })
}

/// Measurement shots from the exact output distribution.
pub fn cmd_sample(config: &RunConfig, out: &mut dyn Write) -> Result<Verdict> {
    let dims = config.dims()?;
    let spec = generate_random_circuit(dims, config.cycles, config.xi, config.seed);
    let gates = spec.gates();
    let skip = if config.skip_hadamard { spec.hadamard_layer().len() } else { 0 };
    let mut state = StateVector::initial(dims);
    state.apply_all(&gates[skip..])?;
    let probs = state.probabilities();
    let shots = sample_indices(&probs, config.shots, config.seed)?;

    let mut columns = vec!["shot".to_string(), "index".to_string()];
    columns.extend((1..=dims.m()).map(|m| format!("k{m}")));
    columns.push("probability".into());
    let columns: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(out, "sample", config, &columns)?;
    for (shot, &index) in shots.iter().enumerate() {
        let k = dims.decode(index);
        let mut fields = vec![shot.to_string(), index.to_string()];
        fields.extend(k.occupations().iter().map(usize::to_string));
        fields.push(num(probs[index]));
        table.row(fields)?;
    }
    table.finish()?;
    Ok(Verdict::Pass)
}

/// T synthesis exactness and R commutator convergence.
pub fn cmd_synth_check(config: &RunConfig, out: &mut dyn Write) -> Result<Verdict> {
    let mut table =
        Table::new(out, "synth-check", config, &["check", "n", "m", "steps", "error", "tolerance", "passed"])?;
    let mut all = true;
    for n in 1..=2 {
        let dims = EnsembleDims::new(n, 2)?;
        let direct = [Gate::TwoBody { first: 0, second: 1, xi: config.xi }];
        let error = sequence_distance(dims, &synthesize_t(0, 1, config.xi)?, &direct)?;
        let ok = error <= T_SYNTHESIS_TOLERANCE;
        all &= ok;
        table.row([
            "t_exact".into(),
            n.to_string(),
            "2".into(),
            String::new(),
            num(error),
            num(T_SYNTHESIS_TOLERANCE),
            ok.to_string(),
        ])?;
    }

    let dims = EnsembleDims::new(1, 3)?;
    let target = [Gate::ThreeBody { first: 0, second: 1, third: 2, chi: config.chi }];
    let mut errors = Vec::new();
    for &steps in &config.steps {
        let error = sequence_distance(dims, &synthesize_r_commutator(0, 1, 2, config.chi, steps)?, &target)?;
        errors.push(error);
        table.row([
            "r_commutator".into(),
            "1".into(),
            "3".into(),
            steps.to_string(),
            num(error),
            String::new(),
            String::new(),
        ])?;
    }
    if let (Some(&first), Some(&last)) = (errors.first(), errors.last()) {
        if errors.len() > 1 {
            let ok = last <= first / 2.0;
            all &= ok;
            table.row([
                "r_decay".into(),
                "1".into(),
                "3".into(),
                String::new(),
                num(last / first),
                "5e-1".into(),
                ok.to_string(),
            ])?;
        }
    }
    table.finish()?;
    Ok(if all { Verdict::Pass } else { Verdict::Fail })
}
