//! Report emission: JSON, CSV, and human-readable text.

use ostrowski_core::bounds::BoundReport;
use ostrowski_core::harness::{CaseOutcome, CaseStatus, SuiteSummary};
use ostrowski_core::supnorm::SupEstimate;
use serde::Serialize;

/// Flattened report row with a fixed column order — the CSV wire format.
/// Field for field, values match the JSON report.
#[derive(Debug, Serialize)]
pub struct FlatReport {
    pub bound_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub ratio: f64,
    pub seminorm_value: f64,
    pub seminorm_argmax: Option<f64>,
    pub seminorm_provenance: String,
    pub x: f64,
    pub a: f64,
    pub b: f64,
}

impl From<&BoundReport> for FlatReport {
    fn from(r: &BoundReport) -> Self {
        FlatReport {
            bound_id: r.bound_id.to_string(),
            lhs: r.lhs,
            rhs: r.rhs,
            slack: r.slack,
            ratio: r.ratio,
            seminorm_value: r.seminorm.value,
            seminorm_argmax: r.seminorm.argmax,
            seminorm_provenance: format!("{:?}", r.seminorm.provenance),
            x: r.x,
            a: r.a,
            b: r.b,
        }
    }
}

pub fn report_csv(reports: &[&BoundReport]) -> Result<String, csv::Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for report in reports {
        writer.serialize(FlatReport::from(*report))?;
    }
    let bytes = writer.into_inner().expect("in-memory writer");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn sup_line(estimate: &SupEstimate) -> String {
    match estimate.argmax {
        Some(arg) => format!(
            "value = {:.16e} at argmax = {:.16e} ({:?})",
            estimate.value, arg, estimate.provenance
        ),
        None => format!(
            "value = {:.16e} ({:?})",
            estimate.value, estimate.provenance
        ),
    }
}

pub fn outcome_text_line(outcome: &CaseOutcome) -> String {
    match (&outcome.status, &outcome.report) {
        (CaseStatus::Error, _) => format!(
            "case {:>4}  ERROR  {}",
            outcome.index,
            outcome.error.as_deref().unwrap_or("unknown error")
        ),
        (status, Some(r)) => format!(
            "case {:>4}  [{:>4}]  x={:<22} lhs={:<23} rhs={:<23} ratio={:<10.6} {}",
            outcome.index,
            r.bound_id,
            r.x,
            r.lhs,
            r.rhs,
            r.ratio,
            if *status == CaseStatus::Pass {
                "PASS"
            } else {
                "FAIL"
            },
        ),
        (status, None) => format!("case {:>4}  {:?}", outcome.index, status),
    }
}

pub fn summary_text(summary: &SuiteSummary) -> String {
    let worst = summary
        .worst_ratio
        .as_ref()
        .map(|w| {
            format!(
                "worst_ratio={} (case {}, bound {}, x={})",
                w.ratio, w.index, w.bound_id, w.x
            )
        })
        .unwrap_or_else(|| "worst_ratio=n/a".to_string());
    format!(
        "summary: total={} passed={} failed={} {} max_violation={:e}",
        summary.total, summary.passed, summary.failed, worst, summary.max_violation
    )
}
