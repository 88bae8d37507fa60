//! Scenario-driven command line front end.

pub mod eval;
pub mod report;
pub mod scenario;
pub mod selftest;

use rayon::prelude::*;

use crate::error::Result;
use crate::tolerance::Tolerances;
use report::{Fields, Out, Report, Status};
use scenario::{parse_document, ParsedScenario};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions {
    /// Replaces the post-condition tolerances before per-scenario overrides.
    pub tol: Option<f64>,
    pub with_oracle: bool,
}

fn report_for(index: usize, parsed: &ParsedScenario, with_oracle: bool) -> Report {
    let kind = parsed
        .raw
        .get("kind")
        .and_then(|k| k.as_str())
        .map(str::to_string);
    let mut report = Report {
        index,
        name: None,
        kind,
        scenario: Out::from(&parsed.raw),
        results: Fields::new(),
        oracle: None,
        status: Status::Ok,
    };
    match &parsed.scenario {
        Err(e) => report.status = Status::from_error(e),
        Ok(s) => {
            report.name = s.name.clone();
            match eval::evaluate(s, with_oracle) {
                Ok((results, oracle)) => {
                    report.results = results;
                    report.oracle = oracle.filter(|o| !o.is_empty());
                }
                Err(e) => report.status = Status::from_error(&e),
            }
        }
    }
    report
}

/// Evaluates every scenario of a document, in parallel, returning the
/// reports in input order.
pub fn run_document(text: &str, options: &RunOptions) -> Result<Vec<Report>> {
    let mut base = Tolerances::default();
    if let Some(t) = options.tol {
        base = base.with_check_tolerance(t);
    }
    let parsed = parse_document(text, &base)?;
    Ok(parsed
        .par_iter()
        .enumerate()
        .map(|(i, p)| report_for(i, p, options.with_oracle))
        .collect())
}

/// Exit code of a batch: that of its first failing scenario, 0 if none.
pub fn exit_code(reports: &[Report]) -> i32 {
    reports
        .iter()
        .map(|r| r.status.exit_code())
        .find(|&c| c != 0)
        .unwrap_or(0)
}
