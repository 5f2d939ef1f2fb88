//! Wire formats: the JSON transcript schema and the capacity table
//! renderers.

use serde::Serialize;

use qudsim::protocol::{CapacityReport, Transcript};
use qudsim::radix::FactorPlan;

/// Output format selector shared by the subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Serialize)]
pub struct PlanJson {
    pub d: usize,
    pub factors: Vec<usize>,
    pub ladder: Vec<usize>,
    pub delta: usize,
}

impl PlanJson {
    pub fn from_plan(plan: &FactorPlan) -> Self {
        Self {
            d: plan.dimension().get(),
            factors: plan.factors().to_vec(),
            ladder: plan.ladder().to_vec(),
            delta: plan.delta(),
        }
    }
}

#[derive(Serialize)]
pub struct ActionJson {
    pub k: usize,
    pub n: usize,
    pub i: usize,
}

#[derive(Serialize)]
pub struct DecodedJson {
    pub n: usize,
    pub i: Vec<usize>,
}

#[derive(Serialize)]
pub struct CapacityJson {
    pub per_sender: Vec<f64>,
    pub total: f64,
}

impl CapacityJson {
    pub fn from_report(report: &CapacityReport) -> Self {
        Self {
            per_sender: report.per_sender_bits.clone(),
            total: report.total_bits,
        }
    }
}

/// One protocol round as emitted by `qudsim run`.
#[derive(Serialize)]
pub struct TranscriptJson {
    pub plan: PlanJson,
    pub mode: String,
    pub actions: Vec<ActionJson>,
    pub decoded: DecodedJson,
    pub recovered: Vec<ActionJson>,
    pub capacity: CapacityJson,
    pub ok: bool,
    /// Amplitude triples (base-d index string, re, im); present only with
    /// `--dump-state`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<(String, f64, f64)>>,
}

impl TranscriptJson {
    pub fn from_transcript(transcript: &Transcript, dump_state: bool) -> Self {
        let to_json = |actions: &[qudsim::SenderAction]| {
            actions
                .iter()
                .map(|a| ActionJson {
                    k: a.sender,
                    n: a.phase,
                    i: a.shift,
                })
                .collect::<Vec<_>>()
        };
        Self {
            plan: PlanJson::from_plan(&transcript.plan),
            mode: transcript.mode.to_string(),
            actions: to_json(&transcript.actions),
            decoded: DecodedJson {
                n: transcript.decoded.phase,
                i: transcript.decoded.shifts.clone(),
            },
            recovered: to_json(&transcript.recovered),
            capacity: CapacityJson::from_report(&transcript.capacity),
            ok: transcript.is_faithful(),
            state: dump_state.then(|| transcript.final_state.labeled_amplitudes()),
        }
    }
}

/// One row of the capacity table.
#[derive(Serialize)]
pub struct PlanRowJson {
    pub factors: Vec<usize>,
    pub delta: usize,
    pub per_sender_bits: Vec<f64>,
    pub total_bits: f64,
}

/// Summary of an exhaustive sweep as emitted by `qudsim sweep`.
#[derive(Serialize)]
pub struct SweepJson {
    pub rounds: usize,
    pub failures: usize,
    pub wall_time_ms: f64,
}

pub fn comma_list(values: &[usize]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Bits rendered to 4 decimals; `{:.4}` rounds ties half-to-even.
pub fn bits4(value: f64) -> String {
    format!("{value:.4}")
}

pub fn render_plan_table(rows: &[(FactorPlan, CapacityReport)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::from("factors      delta  bits_per_sender           bits_total\n");
            for (plan, report) in rows {
                let bits = report
                    .per_sender_bits
                    .iter()
                    .map(|&b| bits4(b))
                    .collect::<Vec<_>>()
                    .join(", ");
                out.push_str(&format!(
                    "{:<12} {:<6} {:<25} {}\n",
                    comma_list(plan.factors()),
                    plan.delta(),
                    bits,
                    bits4(report.total_bits),
                ));
            }
            out
        }
        OutputFormat::Csv => {
            let n_senders = rows.first().map_or(0, |(p, _)| p.num_senders());
            let mut out = String::from("factors;delta");
            for k in 1..=n_senders {
                out.push_str(&format!(";bits_sender_{k}"));
            }
            out.push_str(";bits_total\n");
            for (plan, report) in rows {
                out.push_str(&comma_list(plan.factors()));
                out.push_str(&format!(";{}", plan.delta()));
                for &b in &report.per_sender_bits {
                    out.push_str(&format!(";{}", bits4(b)));
                }
                out.push_str(&format!(";{}\n", bits4(report.total_bits)));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<PlanRowJson> = rows
                .iter()
                .map(|(plan, report)| PlanRowJson {
                    factors: plan.factors().to_vec(),
                    delta: plan.delta(),
                    per_sender_bits: report.per_sender_bits.clone(),
                    total_bits: report.total_bits,
                })
                .collect();
            let mut out = serde_json::to_string(&rows).expect("rows serialize");
            out.push('\n');
            out
        }
    }
}
