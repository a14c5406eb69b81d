//! Serializable results shared by the verifiers, the engine and the CLI.

use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    /// Folds per-input outcomes (`Some(description)` on failure) into a check
    /// that keeps the first failure.
    pub fn collect(name: impl Into<String>, outcomes: impl IntoIterator<Item = Option<String>>) -> Check {
        let mut checked = 0;
        let mut counterexample = None;
        for o in outcomes {
            checked += 1;
            if counterexample.is_none() {
                counterexample = o;
            }
        }
        Check { name: name.into(), passed: counterexample.is_none(), checked, counterexample }
    }

    pub fn single(name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) -> Check {
        Check::collect(name, [if ok { None } else { Some(detail()) }])
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
