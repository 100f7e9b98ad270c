//! Pass/fail records shared by the verifiers and the CLI.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub check: String,
    /// Which result of the theory the check exercises, in words.
    pub anchor: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub tol: Option<f64>,
    /// Why a check was skipped, or extra detail on a failure.
    pub reason: Option<String>,
}

impl CheckRecord {
    /// Passes iff `residual <= tol`; NaN fails.
    pub fn compare(
        check: impl Into<String>,
        anchor: impl Into<String>,
        residual: f64,
        tol: f64,
    ) -> Self {
        Self {
            check: check.into(),
            anchor: anchor.into(),
            status: if residual <= tol {
                Status::Pass
            } else {
                Status::Fail
            },
            residual: Some(residual),
            tol: Some(tol),
            reason: None,
        }
    }

    pub fn pass(check: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self::bare(check, anchor, Status::Pass, None)
    }

    pub fn fail(
        check: impl Into<String>,
        anchor: impl Into<String>,
        reason: impl Into<String>,
    ) -> Self {
        Self::bare(check, anchor, Status::Fail, Some(reason.into()))
    }

    pub fn skipped(
        check: impl Into<String>,
        anchor: impl Into<String>,
        reason: impl Into<String>,
    ) -> Self {
        Self::bare(check, anchor, Status::Skipped, Some(reason.into()))
    }

    fn bare(
        check: impl Into<String>,
        anchor: impl Into<String>,
        status: Status,
        reason: Option<String>,
    ) -> Self {
        Self {
            check: check.into(),
            anchor: anchor.into(),
            status,
            residual: None,
            tol: None,
            reason,
        }
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub title: String,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    /// Fail if any check failed; skipped checks do not count.
    pub fn overall(&self) -> Status {
        if self.records.iter().any(|r| r.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.overall() == Status::Pass
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_passes() {
        assert_eq!(VerificationReport::new("x").overall(), Status::Pass);
    }

    #[test]
    fn skipped_is_not_failed() {
        let mut r = VerificationReport::new("x");
        r.push(CheckRecord::skipped("a", "b", "no representation"));
        assert!(r.passed());
        r.push(CheckRecord::compare("c", "d", f64::NAN, 1.0));
        assert_eq!(r.overall(), Status::Fail);
        assert_eq!(r.count(Status::Skipped), 1);
    }
}
