//! Structured outcome of an identity check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::numeric::serde_rational;
use crate::Rational;

/// An independent recomputation of a case's left-hand side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub label: String,
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
    pub equal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

impl IdentityCase {
    pub fn new(label: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        let equal = lhs == rhs;
        Self {
            label: label.into(),
            lhs,
            rhs,
            equal,
            cross_check: None,
        }
    }

    pub fn with_cross_check(mut self, value: Rational) -> Self {
        let agrees = value == self.lhs;
        self.cross_check = Some(CrossCheck { value, agrees });
        self
    }
}

/// Per-case exact values plus the aggregate verdict.
///
/// `all_equal` is always the conjunction of the per-case `equal` flags. When
/// `rhs_asserted` is false the left/right comparison is informational only and
/// [`IdentityReport::passed`] depends solely on the cross-checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub rhs_asserted: bool,
    pub cases: Vec<IdentityCase>,
    pub all_equal: bool,
    pub note: String,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            params: BTreeMap::new(),
            rhs_asserted: true,
            cases: Vec::new(),
            all_equal: true,
            note: String::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn informational(mut self) -> Self {
        self.rhs_asserted = false;
        self
    }

    pub fn push(&mut self, case: IdentityCase) {
        self.all_equal &= case.equal;
        self.cases.push(case);
    }

    /// Appends the cases of `other`, prefixing their labels with its identity.
    pub fn absorb(&mut self, other: IdentityReport) {
        for mut case in other.cases {
            case.label = format!("{}: {}", other.identity, case.label);
            self.push(case);
        }
    }

    pub fn finish(mut self) -> Self {
        self.all_equal = self.cases.iter().all(|c| c.equal);
        let equal = self.cases.iter().filter(|c| c.equal).count();
        let mut note = format!("{equal}/{} cases equal", self.cases.len());
        let checks: Vec<_> = self
            .cases
            .iter()
            .filter_map(|c| c.cross_check.as_ref())
            .collect();
        if !checks.is_empty() {
            let agree = checks.iter().filter(|c| c.agrees).count();
            note.push_str(&format!("; {agree}/{} cross-checks agree", checks.len()));
        }
        if !self.rhs_asserted {
            note.push_str("; lhs/rhs comparison reported, not asserted");
        }
        self.note = note;
        self
    }

    pub fn cross_checks_agree(&self) -> bool {
        self.cases
            .iter()
            .filter_map(|c| c.cross_check.as_ref())
            .all(|c| c.agrees)
    }

    /// True when every hard-asserted comparison holds.
    pub fn passed(&self) -> bool {
        (!self.rhs_asserted || self.all_equal) && self.cross_checks_agree()
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCase> {
        self.cases.iter().filter(|c| !c.equal)
    }
}
