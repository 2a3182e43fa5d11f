//! Report rendering in json, csv and text.

use std::fmt::Write as _;

use carlitz_core::report::{CheckRecord, Metric, Status, SuiteReport};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::suites::REGISTRY;

/// Output of one registry suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteRun {
    pub name: String,
    pub passed: bool,
    pub reports: Vec<SuiteReport>,
}

impl SuiteRun {
    pub fn new(name: &str, reports: Vec<SuiteReport>) -> Self {
        SuiteRun { name: name.into(), passed: reports.iter().all(SuiteReport::passed), reports }
    }

    fn checks(&self) -> impl Iterator<Item = (&SuiteReport, &CheckRecord)> {
        self.reports.iter().flat_map(|r| r.checks.iter().map(move |c| (r, c)))
    }
}

pub fn strip_timings(runs: &mut [SuiteRun]) {
    for c in runs.iter_mut().flat_map(|r| r.reports.iter_mut()).flat_map(|r| r.checks.iter_mut()) {
        c.elapsed_ms = None;
    }
}

fn summary(runs: &[SuiteRun]) -> Value {
    let count = |s: Status| runs.iter().flat_map(SuiteRun::checks).filter(|(_, c)| c.status == s).count();
    json!({
        "suites": runs.len(),
        "suites_failed": runs.iter().filter(|r| !r.passed).count(),
        "pass": count(Status::Pass),
        "fail": count(Status::Fail),
        "skipped": count(Status::Skipped),
    })
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

fn metric(m: Option<Metric>) -> (&'static str, String) {
    match m {
        Some(Metric::Residual(r)) => ("residual", format!("{r:e}")),
        Some(Metric::FirstMismatch(i)) => ("first_mismatch", i.to_string()),
        None => ("", String::new()),
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn render(cfg: &RunConfig, runs: &[SuiteRun]) -> String {
    match cfg.format.unwrap_or_default() {
        Format::Json => {
            let doc = json!({ "config": cfg.echo(), "suites": runs, "summary": summary(runs) });
            serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header = [
                "suite", "params", "check", "status", "metric", "value", "achieved_prec", "required_prec", "elapsed_ms",
                "detail",
            ];
            w.write_record(header).expect("in-memory csv");
            for run in runs {
                for (rep, c) in run.checks() {
                    let (kind, value) = metric(c.metric);
                    w.write_record([
                        run.name.as_str(),
                        &rep.params.to_string(),
                        &c.name,
                        status(c.status),
                        kind,
                        &value,
                        &opt(c.achieved_prec),
                        &opt(c.required_prec),
                        &opt(c.elapsed_ms.map(|t| format!("{t:.3}"))),
                        c.detail.as_deref().unwrap_or(""),
                    ])
                    .expect("in-memory csv");
                }
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Text => {
            let mut out = String::new();
            for run in runs {
                let verdict = if run.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{verdict}  {}", run.name);
                for rep in &run.reports {
                    if !rep.params.is_null() {
                        let _ = writeln!(out, "    {}", rep.params);
                    }
                    for c in &rep.checks {
                        let (kind, value) = metric(c.metric);
                        let mut line = format!("      {:<7} {}", status(c.status), c.name);
                        if !kind.is_empty() {
                            let _ = write!(line, "  [{kind} {value}]");
                        }
                        if let Some(a) = c.achieved_prec {
                            let _ = write!(line, "  [prec {a}{}]", opt(c.required_prec.map(|r| format!(" / {r}"))));
                        }
                        if let Some(t) = c.elapsed_ms {
                            let _ = write!(line, "  [{t:.1} ms]");
                        }
                        if let Some(d) = &c.detail {
                            let _ = write!(line, "  {d}");
                        }
                        let _ = writeln!(out, "{line}");
                    }
                }
            }
            let _ = writeln!(out, "summary {}", summary(runs));
            out
        }
    }
}

pub fn render_listing(format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<Value> = REGISTRY
                .iter()
                .map(|e| json!({ "name": e.name, "identity": e.identity, "about": e.about }))
                .collect();
            serde_json::to_string_pretty(&rows).expect("listing serializes") + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "identity", "about"]).expect("in-memory csv");
            for e in REGISTRY {
                w.write_record([e.name, e.identity, e.about]).expect("in-memory csv");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Text => {
            let width = REGISTRY.iter().map(|e| e.name.len()).max().unwrap_or(0);
            REGISTRY.iter().map(|e| format!("{:<width$}  {}\n{:<width$}  ({})\n", e.name, e.about, "", e.identity)).collect()
        }
    }
}
