//! The `verify` subcommand's checks. Each check reports pass/fail plus
//! the residual it measured.

use serde::Serialize;

use qudsim::protocol::{build_codebook, capacity, sweep_all, CodebookMode};
use qudsim::radix::FactorPlan;
use qudsim::{dense_coding_unitary, Result};

pub const MATRIX_TOL: f64 = 1e-12;
pub const CAPACITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckName {
    /// Codebook Gram matrix equals the identity.
    Gram,
    /// Every encoding operator is unitary.
    Unitarity,
    /// Exhaustive encode/decode sweep recovers every lawful message.
    Roundtrip,
    /// Mixed-radix compose/decompose bijection and exact sum coverage.
    Bijection,
    /// Capacity additivity and the closed form at delta = d.
    Capacity,
}

impl CheckName {
    pub fn all() -> Vec<CheckName> {
        vec![
            CheckName::Gram,
            CheckName::Unitarity,
            CheckName::Roundtrip,
            CheckName::Bijection,
            CheckName::Capacity,
        ]
    }

    pub fn label(self) -> &'static str {
        match self {
            CheckName::Gram => "gram",
            CheckName::Unitarity => "unitarity",
            CheckName::Roundtrip => "roundtrip",
            CheckName::Bijection => "bijection",
            CheckName::Capacity => "capacity",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub pass: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

pub fn run_check(
    name: CheckName,
    plan: &FactorPlan,
    mode: CodebookMode,
    state_tol: f64,
) -> Result<CheckOutcome> {
    match name {
        CheckName::Gram => {
            let codebook = build_codebook(plan, mode, false)?;
            let residual = codebook.max_gram_residual();
            Ok(CheckOutcome {
                check: name.label(),
                pass: residual <= state_tol,
                max_residual: residual,
                tolerance: state_tol,
                detail: format!("{} codewords, max |Gram - I| = {residual:.3e}", codebook.len()),
            })
        }
        CheckName::Unitarity => {
            let d = plan.dimension();
            let mut worst = 0.0f64;
            for n in 0..d.get() {
                for i in 0..d.get() {
                    worst = worst.max(dense_coding_unitary(d, n, i)?.unitarity_residual());
                }
            }
            Ok(CheckOutcome {
                check: name.label(),
                pass: worst <= MATRIX_TOL,
                max_residual: worst,
                tolerance: MATRIX_TOL,
                detail: format!(
                    "{} operators, max |U†U - I| = {worst:.3e}",
                    d.get() * d.get()
                ),
            })
        }
        CheckName::Roundtrip => {
            let summary = sweep_all(plan, mode)?;
            Ok(CheckOutcome {
                check: name.label(),
                pass: summary.failures == 0,
                max_residual: summary.failures as f64,
                tolerance: 0.0,
                detail: format!("{} rounds, {} failures", summary.rounds, summary.failures),
            })
        }
        CheckName::Bijection => {
            let mut mismatches = 0usize;
            for n in 0..plan.delta() {
                if plan.compose(&plan.decompose(n)?)? != n {
                    mismatches += 1;
                }
            }
            let mut sums: Vec<usize> = vec![0];
            for k in 1..=plan.num_senders() {
                let set = plan.sender_set(k)?;
                if set.len() != plan.factors()[k - 1] {
                    mismatches += 1;
                }
                sums = sums
                    .iter()
                    .flat_map(|&acc| set.members().iter().map(move |&m| acc + m))
                    .collect();
            }
            sums.sort_unstable();
            if sums != (0..plan.delta()).collect::<Vec<_>>() {
                mismatches += 1;
            }
            Ok(CheckOutcome {
                check: name.label(),
                pass: mismatches == 0,
                max_residual: mismatches as f64,
                tolerance: 0.0,
                detail: format!(
                    "{} joint indices, {} sum tuples, {} mismatches",
                    plan.delta(),
                    plan.delta(),
                    mismatches
                ),
            })
        }
        CheckName::Capacity => {
            let report = capacity(plan);
            let sum: f64 = report.per_sender_bits.iter().sum();
            let mut residual = (report.total_bits - sum).abs();
            if plan.delta() == plan.dimension().get() {
                let closed_form =
                    (plan.num_senders() as f64 + 1.0) * (plan.dimension().get() as f64).log2();
                residual = residual.max((report.total_bits - closed_form).abs());
            }
            Ok(CheckOutcome {
                check: name.label(),
                pass: residual <= CAPACITY_TOL,
                max_residual: residual,
                tolerance: CAPACITY_TOL,
                detail: format!(
                    "total {:.4} bits, additivity residual {residual:.3e}",
                    report.total_bits
                ),
            })
        }
    }
}
