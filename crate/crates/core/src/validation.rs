//! Axiom-validation reports with concrete witnesses.
//!
//! Structural problems (a table entry out of range, mismatched sizes) are
//! reported through [`crate::Error::Malformed`] and never through a report:
//! a report only ever speaks about well-formed tables that violate axioms.

use std::fmt;

/// One violated axiom together with a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Short axiom label, e.g. `"associativity"` or `"unit"`.
    pub axiom: String,
    /// Rendered witness, e.g. `"(a*a)*b = a, a*(a*b) = b"`.
    pub witness: String,
}

impl Violation {
    pub fn new(axiom: impl Into<String>, witness: impl Into<String>) -> Self {
        Violation {
            axiom: axiom.into(),
            witness: witness.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.witness)
    }
}

/// Outcome of an exhaustive axiom check: either empty (valid) or a list of
/// violations, at most one witness per axiom.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn valid() -> Self {
        ValidationReport::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records a violation unless the axiom already has a witness.
    pub fn record(&mut self, axiom: &str, witness: impl Into<String>) {
        if self.violations.iter().all(|v| v.axiom != axiom) {
            self.violations.push(Violation::new(axiom, witness));
        }
    }

    pub fn into_result(self) -> Result<(), crate::Error> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::Invalid(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
