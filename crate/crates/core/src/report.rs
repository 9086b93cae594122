//! Validation and check reports: named pass/fail items with witnesses,
//! serializable for the CLI and byte-stable under a fixed seed.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
}

impl CheckItem {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckItem { name: name.into(), passed: true, witness: None, trials: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckItem { name: name.into(), passed: false, witness: Some(witness.into()), trials: None }
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = Some(trials);
        self
    }
}

/// Outcome of a structural validation (pair axioms, superalgebra axioms, …).
#[derive(Clone, Debug, Serialize)]
pub struct Validation {
    pub subject: String,
    pub items: Vec<CheckItem>,
}

impl Validation {
    pub fn new(subject: impl Into<String>) -> Self {
        Validation { subject: subject.into(), items: Vec::new() }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }

    /// Error out unless everything passed; the message lists each failure.
    pub fn into_result(self) -> crate::error::Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(crate::error::Error::Validation {
                name: self.subject.clone(),
                report: self.to_string(),
            })
        }
    }
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let status = if item.passed { "ok  " } else { "FAIL" };
            write!(f, "[{status}] {}", item.name)?;
            if let Some(w) = &item.witness {
                write!(f, "  ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
