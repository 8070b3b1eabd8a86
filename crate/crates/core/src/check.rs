//! Named pass/fail entries shared by every report.

use serde::Serialize;

use crate::geometry::TensorField;
use crate::symbolic::{Scalar, ScalarField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// First nonzero component of a residual.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub index: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            note: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Option<Witness>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness,
            note: None,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            witness: None,
            note: Some(reason.into()),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, None)
        }
    }

    /// Passes iff `residual` is identically zero.
    pub fn residual(name: impl Into<String>, residual: &TensorField<ScalarField>) -> Self {
        match residual.first_nonzero() {
            None => Self::pass(name),
            Some((index, v)) => Self::fail(name, Some(Witness { index, value: v.render() })),
        }
    }

    /// Residual check for a scalar identity.
    pub fn scalar(name: impl Into<String>, residual: &ScalarField) -> Self {
        if residual.is_zero() {
            Self::pass(name)
        } else {
            Self::fail(
                name,
                Some(Witness {
                    index: vec![],
                    value: residual.render(),
                }),
            )
        }
    }

    /// Residual check for any scalar type, with a debug rendering.
    pub fn generic<S: Scalar>(name: impl Into<String>, residual: &TensorField<S>) -> Self {
        match residual.first_nonzero() {
            None => Self::pass(name),
            Some((index, v)) => Self::fail(
                name,
                Some(Witness {
                    index,
                    value: format!("{v:?}"),
                }),
            ),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

pub fn find<'a>(checks: &'a [Check], name: &str) -> Option<&'a Check> {
    checks.iter().find(|c| c.name == name)
}
