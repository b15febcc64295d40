//! Labeled pass/fail records shared by the verification reports.

use serde::Serialize;

/// One labeled identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub identity: String,
    pub params: String,
    pub pass: bool,
}

impl CheckOutcome {
    pub fn new(identity: &str, params: String, pass: bool) -> Self {
        CheckOutcome { identity: identity.into(), params, pass }
    }
}
