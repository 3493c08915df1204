//! Residual reports shared by all checks.

use serde::{Deserialize, Serialize};

/// One named residual.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IdentityEntry {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// A list of residuals checked against tolerances.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct IdentityReport {
    pub tolerance: f64,
    pub entries: Vec<IdentityEntry>,
}

impl IdentityReport {
    pub fn new(tolerance: f64) -> Self {
        IdentityReport {
            tolerance,
            entries: Vec::new(),
        }
    }

    /// Record a residual against the report tolerance.
    pub fn push(&mut self, name: impl Into<String>, residual: f64) {
        let tol = self.tolerance;
        self.push_with(name, residual, tol);
    }

    /// Record a residual against its own tolerance.
    pub fn push_with(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        self.entries.push(IdentityEntry {
            name: name.into(),
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
        });
    }

    /// Record a boolean condition as residual 0 or 1.
    pub fn push_flag(&mut self, name: impl Into<String>, ok: bool) {
        self.entries.push(IdentityEntry {
            name: name.into(),
            residual: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass: ok,
        });
    }

    /// Append all entries of another report.
    pub fn extend(&mut self, other: IdentityReport) {
        self.entries.extend(other.entries);
    }

    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    /// Residual of the entry with the given name.
    pub fn residual(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.name == name).map(|e| e.residual)
    }

    /// Largest residual in the report.
    pub fn max_residual(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.residual))
    }
}
