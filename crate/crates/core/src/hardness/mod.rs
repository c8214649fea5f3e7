//! Worst-case circuits whose return probability is a squared gap function of
//! a binary cubic polynomial, together with the exact combinatorial oracle and
//! the synthesis of multi-ensemble phase gates from squeezers and rotations.

mod gap;
mod poly;
mod synthesis;
mod worst_case;

pub use gap::{gap_probability_bruteforce, gap_sum_naive, gap_sum_reduced, NAIVE_QUBIT_CAP};
pub use poly::{eval_f, parity_reduced_f, PolynomialSpec};
pub use synthesis::{conjugated_two_body, sequence_distance, synthesize_r_commutator, synthesize_t};
pub use worst_case::{build_and_simulate_worst_case, params_from_poly, worst_case_circuit, WorstCaseParams};
