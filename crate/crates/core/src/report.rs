//! Named collections of identity checks.

use crate::algebra::IdentityReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCheck {
    pub name: String,
    pub report: IdentityReport,
}

impl NamedCheck {
    pub fn passed(&self) -> bool {
        self.report.holds()
    }
}

/// Ordered list of named checks.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub checks: Vec<NamedCheck>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, report: IdentityReport) {
        self.checks.push(NamedCheck { name: name.into(), report });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(NamedCheck::passed)
    }

    pub fn failures(&self) -> Vec<&NamedCheck> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn first_failure(&self) -> Option<&NamedCheck> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&NamedCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.checks.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn summary(&self) -> String {
        self.checks
            .iter()
            .map(|c| format!("{}: {}", c.name, if c.passed() { "pass".into() } else { c.report.describe() }))
            .collect::<Vec<_>>()
            .join("\n")
    }
}
