//! Pass/fail records shared by the verification routines.

use serde::{Deserialize, Serialize};

/// One named check. A failed check always carries a finite witness
/// (a matrix position, an eigenvalue, an edge class, ...).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        }
    }

    /// A pass when `failure` is `None`, else a failure with that witness.
    pub fn from_failure(name: impl Into<String>, failure: Option<String>) -> Self {
        match failure {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
