//! Text and JSON-lines rendering of reports.

use std::fmt::Write as _;

use lmx_core::report::{CheckRecord, Status};
use serde::Serialize;

use crate::commands::{format_complex, Output};
use crate::problem::{matrix_to_rows, RawMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Text,
    JsonLines,
}

/// One JSON-lines record.
#[derive(Debug, Serialize)]
pub struct JsonRecord<'a> {
    pub check: &'a str,
    pub anchor: &'a str,
    pub status: &'a str,
    pub residual: Option<f64>,
    pub tol: Option<f64>,
    pub reason: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<RawMatrix>,
}

pub fn format_report(out: &Output, mode: Mode) -> String {
    match mode {
        Mode::Text => text(out),
        Mode::JsonLines => json_lines(out),
    }
}

fn json_lines(out: &Output) -> String {
    let mut s = String::new();
    for (i, r) in out.report.records.iter().enumerate() {
        let rec = JsonRecord {
            check: &r.check,
            anchor: &r.anchor,
            status: r.status.as_str(),
            residual: r.residual,
            tol: r.tol,
            reason: r.reason.as_deref(),
            value: out.values.get(&i).map(matrix_to_rows),
        };
        s += &serde_json::to_string(&rec).expect("record serializes");
        s.push('\n');
    }
    s
}

fn text(out: &Output) -> String {
    let report = &out.report;
    let mut s = format!("{}\n", report.title);
    for (i, r) in report.records.iter().enumerate() {
        s += &text_record(r);
        if let Some(m) = out.values.get(&i) {
            for row in 0..m.order() {
                let entries: Vec<String> = (0..m.order())
                    .map(|j| format_complex(m.get(row, j)))
                    .collect();
                let _ = writeln!(s, "        [{}]", entries.join(", "));
            }
        }
    }
    let _ = writeln!(
        s,
        "overall: {} ({} passed, {} failed, {} skipped)",
        report.overall().as_str().to_uppercase(),
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skipped)
    );
    s
}

fn text_record(r: &CheckRecord) -> String {
    let mut s = format!(
        "{:<7} {}  [{}]",
        r.status.as_str().to_uppercase(),
        r.check,
        r.anchor
    );
    match (r.residual, r.tol) {
        (Some(res), Some(tol)) => {
            let _ = write!(s, "  {res:.3e} vs {tol:.1e}");
        }
        (Some(res), None) => {
            let _ = write!(s, "  {res:.3e}");
        }
        _ => {}
    }
    if let Some(reason) = &r.reason {
        let _ = write!(s, "\n        {reason}");
    }
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use lmx_core::report::VerificationReport;
    use std::collections::BTreeMap;

    fn output(records: Vec<CheckRecord>) -> Output {
        let mut report = VerificationReport::new("title");
        for r in records {
            report.push(r);
        }
        Output {
            report,
            values: BTreeMap::new(),
        }
    }

    #[test]
    fn empty_report_is_header_and_pass() {
        let out = output(vec![]);
        assert_eq!(
            format_report(&out, Mode::Text),
            "title\noverall: PASS (0 passed, 0 failed, 0 skipped)\n"
        );
        assert_eq!(format_report(&out, Mode::JsonLines), "");
    }

    #[test]
    fn failing_check_fails_overall() {
        let out = output(vec![CheckRecord::compare("c", "a", 1.0, 0.5)]);
        assert!(format_report(&out, Mode::Text).contains("overall: FAIL"));
        assert_eq!(crate::commands::exit_status(&out.report), 1);
    }

    #[test]
    fn skipped_record_carries_reason() {
        let out = output(vec![CheckRecord::skipped("c", "a", "why")]);
        let line = format_report(&out, Mode::JsonLines);
        let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(v["status"], "skipped");
        assert_eq!(v["reason"], "why");
        assert!(v["residual"].is_null() && v["tol"].is_null());
        assert_eq!(crate::commands::exit_status(&out.report), 0);
    }
}
