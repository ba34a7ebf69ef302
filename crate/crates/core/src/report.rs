//! Structured pass/fail records shared by every verification routine.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One sampled (or otherwise concrete) instance of a check, with its exact
/// inputs and computed values rendered as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub index: usize,
    pub passed: bool,
    pub values: BTreeMap<String, String>,
}

impl Witness {
    pub fn new(index: usize, passed: bool) -> Self {
        Witness {
            index,
            passed,
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.values.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witnesses: Vec<Witness>,
    /// Index into `witnesses` of the first failing instance.
    pub first_failure: Option<usize>,
}

impl CheckRecord {
    /// A check decided by its witnesses: it passes when all of them do.
    pub fn from_witnesses(name: &str, detail: impl Into<String>, witnesses: Vec<Witness>) -> Self {
        let first_failure = witnesses.iter().position(|w| !w.passed);
        CheckRecord {
            name: name.to_string(),
            passed: first_failure.is_none(),
            detail: detail.into(),
            witnesses,
            first_failure,
        }
    }

    /// A check decided by a single condition.
    pub fn single(name: &str, passed: bool, detail: impl Into<String>, witness: Witness) -> Self {
        CheckRecord {
            name: name.to_string(),
            passed,
            detail: detail.into(),
            first_failure: (!passed).then_some(0),
            witnesses: vec![Witness { passed, ..witness }],
        }
    }

    pub fn failure(&self) -> Option<&Witness> {
        self.first_failure.map(|i| &self.witnesses[i])
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.checks.push(check);
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            write!(f, "[{verdict}] {} ({} witnesses)", c.name, c.witnesses.len())?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
            if let Some(w) = c.failure() {
                let vals: Vec<String> = w.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(f, "       first failure #{}: {}", w.index, vals.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_tracked() {
        let ws = vec![
            Witness::new(0, true),
            Witness::new(1, false).with("z", "25"),
            Witness::new(2, false),
        ];
        let c = CheckRecord::from_witnesses("iso", "", ws);
        assert!(!c.passed);
        assert_eq!(c.first_failure, Some(1));
        assert_eq!(c.failure().unwrap().values["z"], "25");
    }

    #[test]
    fn absorb_prefixes_names() {
        let mut a = VerificationReport::new();
        let mut b = VerificationReport::new();
        b.push(CheckRecord::single("x", true, "", Witness::new(0, true)));
        a.absorb("inner", b);
        assert_eq!(a.checks[0].name, "inner.x");
        assert!(a.passed());
    }
}
