//! Check reports: violations are data, not errors.

use std::fmt;

use serde::Serialize;

use crate::algebra::AlgebraError;

/// Number of offending instances kept per check.
pub const SAMPLE_LIMIT: usize = 10;

/// Whether a check tests a defining axiom of the input or a consequence
/// that the theory guarantees once the axioms hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Defining,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub location: String,
    pub detail: String,
}

/// Outcome of one identity checked over a family of basis instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub checked: usize,
    /// Instances not evaluated because a product left the degree window.
    pub skipped: usize,
    pub violations: usize,
    pub samples: Vec<Violation>,
}

impl Check {
    pub fn new(name: impl Into<String>, kind: CheckKind) -> Self {
        Check {
            name: name.into(),
            kind,
            checked: 0,
            skipped: 0,
            violations: 0,
            samples: Vec::new(),
        }
    }

    pub fn defining(name: impl Into<String>) -> Self {
        Self::new(name, CheckKind::Defining)
    }

    pub fn derived(name: impl Into<String>) -> Self {
        Self::new(name, CheckKind::Derived)
    }

    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, location: impl fmt::Display, detail: impl fmt::Display) {
        self.checked += 1;
        self.violations += 1;
        if self.samples.len() < SAMPLE_LIMIT {
            self.samples.push(Violation {
                location: location.to_string(),
                detail: detail.to_string(),
            });
        }
    }

    pub fn record(&mut self, ok: bool, location: impl FnOnce() -> String, detail: impl FnOnce() -> String) {
        if ok {
            self.pass();
        } else {
            self.fail(location(), detail());
        }
    }

    /// Records the outcome of a fallible comparison. Window overflow counts
    /// as a skip; any other error is a violation.
    pub fn record_result(&mut self, outcome: Result<Option<String>, AlgebraError>, location: impl FnOnce() -> String) {
        match outcome {
            Ok(None) => self.pass(),
            Ok(Some(detail)) => self.fail(location(), detail),
            Err(AlgebraError::WindowOverflow { .. }) => self.skipped += 1,
            Err(e) => self.fail(location(), e),
        }
    }
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn is_clean(&self) -> bool {
        self.checks.iter().all(Check::is_clean)
    }

    pub fn total_violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn defining_clean(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.kind == CheckKind::Defining)
            .all(Check::is_clean)
    }

    /// The same report with at most `k` samples per check.
    pub fn truncated(&self, k: usize) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.samples.truncate(k);
        }
        r
    }

    pub fn derived_clean(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.kind == CheckKind::Derived)
            .all(Check::is_clean)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.is_clean() { "ok" } else { "FAIL" };
            write!(f, "{status:>4}  {} ({} checked", c.name, c.checked)?;
            if c.skipped > 0 {
                write!(f, ", {} outside window", c.skipped)?;
            }
            if c.violations > 0 {
                write!(f, ", {} violations", c.violations)?;
            }
            writeln!(f, ")")?;
            for v in &c.samples {
                writeln!(f, "        at {}: {}", v.location, v.detail)?;
            }
        }
        Ok(())
    }
}
