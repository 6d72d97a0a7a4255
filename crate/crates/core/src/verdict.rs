use std::fmt;

use crate::error::Error;
use crate::values::Value;

/// Why a check failed at its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    Values { lhs: Value, rhs: Value },
    /// One side could not be evaluated, typically a product of two logs.
    Undefined(Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub at: Vec<u64>,
    pub mismatch: Mismatch,
}

/// Outcome of an exhaustive identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub(crate) fn compare(at: Vec<u64>, lhs: crate::error::Result<Value>, rhs: crate::error::Result<Value>) -> Verdict {
        match (lhs, rhs) {
            (Ok(lhs), Ok(rhs)) if lhs == rhs => Verdict::Pass,
            (Ok(lhs), Ok(rhs)) => Verdict::Fail(Witness { at, mismatch: Mismatch::Values { lhs, rhs } }),
            (Err(e), _) | (_, Err(e)) => Verdict::Fail(Witness { at, mismatch: Mismatch::Undefined(e) }),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self.at.iter().map(u64::to_string).collect();
        write!(f, "({})", at.join(", "))?;
        match &self.mismatch {
            Mismatch::Values { lhs, rhs } => write!(f, ": lhs = {lhs}, rhs = {rhs}"),
            Mismatch::Undefined(e) => write!(f, ": undefined ({e})"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(w) => write!(f, "fail at {w}"),
        }
    }
}
