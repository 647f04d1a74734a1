//! Line-oriented verification reports.

use std::fmt;

use crate::geometry::{Chart, VectorField};
use crate::graded::SuperScalar;
use crate::scalar::{Assumptions, Equality};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub check_id: String,
    pub anchor: String,
    pub tuple: String,
    pub residual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub scope: String,
    pub checksum: String,
    pub records: Vec<CheckRecord>,
    pub notes: Vec<String>,
}

/// Renders a scalar residual, `"0"` exactly when it tests equal to zero.
pub fn scalar_residual(r: &SuperScalar, chart: &Chart, assume: &Assumptions, seed: u64) -> String {
    match r.zero_test(assume, seed) {
        Equality::Equal => "0".into(),
        Equality::Unequal => r.display_with(chart.odd_names()).to_string(),
        Equality::Undecided => format!("undecided: {}", r.display_with(chart.odd_names())),
    }
}

pub fn field_residual(r: &VectorField, chart: &Chart, assume: &Assumptions, seed: u64) -> String {
    let mut undecided = false;
    for c in r.coeffs() {
        match c.zero_test(assume, seed) {
            Equality::Equal => {}
            Equality::Unequal => return r.display_with(chart),
            Equality::Undecided => undecided = true,
        }
    }
    if undecided {
        format!("undecided: {}", r.display_with(chart))
    } else {
        "0".into()
    }
}

impl VerificationReport {
    pub fn new(scope: impl Into<String>) -> Self {
        VerificationReport {
            scope: scope.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, check_id: &str, anchor: &str, tuple: &str, residual: String) {
        let pass = residual == "0";
        self.records.push(CheckRecord {
            check_id: check_id.into(),
            anchor: anchor.into(),
            tuple: tuple.into(),
            residual,
            pass,
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
        for n in other.notes {
            self.note(n);
        }
    }

    pub fn total(&self) -> usize {
        self.records.len()
    }

    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.total() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# superwarp verification report")?;
        writeln!(f, "version\t{VERSION}")?;
        writeln!(f, "scope\t{}", self.scope)?;
        writeln!(f, "checksum\t{}", self.checksum)?;
        writeln!(f, "[checks]")?;
        writeln!(f, "check_id\tanchor\ttuple\tresidual\tpass")?;
        for r in &self.records {
            writeln!(
                f,
                "{}\t{}\t{}\t{}\t{}",
                r.check_id, r.anchor, r.tuple, r.residual, r.pass
            )?;
        }
        writeln!(f, "[summary]")?;
        writeln!(f, "total\t{}", self.total())?;
        writeln!(f, "passed\t{}", self.passed())?;
        writeln!(f, "failed\t{}", self.failed())?;
        if !self.notes.is_empty() {
            writeln!(f, "[notes]")?;
            for n in &self.notes {
                writeln!(f, "- {n}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_zero_residual() {
        let mut r = VerificationReport::new("x");
        r.push("a", "s", "(t)", "0".into());
        r.push("b", "s", "(t)", "h'".into());
        assert_eq!((r.total(), r.passed(), r.failed()), (2, 1, 1));
        let text = r.to_string();
        assert!(text.contains("a\ts\t(t)\t0\ttrue"));
        assert!(text.contains("failed\t1"));
    }
}
