//! Sweep report assembly: JSON and CSV renderings of audit rows plus the
//! metadata block recording every convention that affects the numbers.

use anyhow::Result;
use findex::bounds::{AuditRecord, AuditStatus, RuntimeMs, TheoremTag};
use serde::Serialize;

#[derive(Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub date: String,
    pub enumeration_cap: usize,
    pub max_degree_filter: &'static str,
    pub bicyclic_convention: &'static str,
    pub degree_sum_identity: &'static str,
}

pub struct SweepTable {
    pub metadata: Metadata,
    pub rows: Vec<AuditRecord>,
}

#[derive(Serialize)]
struct RowView<'a> {
    n: u64,
    delta: usize,
    p: u64,
    k: u64,
    theorem: TheoremTag,
    closed_form: Option<u64>,
    histogram_max: u64,
    empirical_max: Option<u64>,
    status: AuditStatus,
    gap: Option<i64>,
    witness_graph6: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    runtime_ms: Option<RuntimeMs>,
}

#[derive(Serialize)]
struct TableView<'a> {
    metadata: &'a Metadata,
    rows: Vec<RowView<'a>>,
}

impl SweepTable {
    pub fn new(rows: Vec<AuditRecord>, enumeration_cap: usize, delta_at_most: bool) -> Self {
        SweepTable {
            metadata: Metadata {
                tool: "findex",
                version: env!("CARGO_PKG_VERSION"),
                date: today_utc(),
                enumeration_cap,
                max_degree_filter: if delta_at_most { "at_most" } else { "exact" },
                bicyclic_convention: "connected, m = n + 1",
                degree_sum_identity: "sum(i * n_i) = 2n + 2 (handshake for m = n + 1)",
            },
            rows,
        }
    }

    /// Pretty JSON. Runtimes are dropped unless requested so that repeated
    /// runs with any job count stay byte-identical.
    pub fn to_json(&self, timings: bool) -> Result<String> {
        let view = TableView {
            metadata: &self.metadata,
            rows: self
                .rows
                .iter()
                .map(|r| RowView {
                    n: r.n,
                    delta: r.delta,
                    p: r.p,
                    k: r.k,
                    theorem: r.theorem,
                    closed_form: r.closed_form,
                    histogram_max: r.histogram_max,
                    empirical_max: r.empirical_max,
                    status: r.status,
                    gap: r.gap,
                    witness_graph6: r.witness_graph6.as_deref(),
                    runtime_ms: timings.then_some(r.runtime_ms),
                })
                .collect(),
        };
        Ok(format!("{}\n", serde_json::to_string_pretty(&view)?))
    }

    /// Comma-separated rows; no quoting is needed because every field is an
    /// integer, an identifier, or graph6 text (whose alphabet excludes ',').
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,delta,p,theorem,closed_form,histogram_max,empirical_max,status,gap,witness_graph6\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.n,
                r.delta,
                r.p,
                r.theorem.as_str(),
                opt_u(r.closed_form),
                r.histogram_max,
                opt_u(r.empirical_max),
                r.status.as_str(),
                opt_i(r.gap),
                r.witness_graph6.as_deref().unwrap_or(""),
            ));
        }
        out
    }

    pub fn any_violated(&self) -> bool {
        self.rows.iter().any(|r| r.status == AuditStatus::Violated)
    }
}

fn opt_u(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_i(v: Option<i64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn today_utc() -> String {
    let now = time::OffsetDateTime::now_utc();
    format!(
        "{:04}-{:02}-{:02}",
        now.year(),
        u8::from(now.month()),
        now.day()
    )
}
