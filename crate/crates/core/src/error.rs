use crate::validation::ValidationReport;
use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Structural problem: sizes or indices inconsistent with declarations.
    /// Distinct from axiom failure, which is reported as [`Error::Invalid`].
    #[error("malformed input: {0}")]
    Malformed(String),

    /// Axiom violations found by an exhaustive check.
    #[error("invalid structure: {0}")]
    Invalid(ValidationReport),

    /// A map claimed to be a (partial-action or algebra) morphism is not one.
    #[error("not a morphism: {0}")]
    NotAMorphism(String),

    /// An equivalence relation without the substitution property.
    #[error("invalid congruence: {0}")]
    InvalidCongruence(String),

    /// Construction requires a globalizable input.
    #[error("not globalizable: {0}")]
    NotGlobalizable(String),

    /// Domains are not all unital ideals.
    #[error("domains not unital: {0}")]
    NotUnital(String),

    /// Values from different instances were mixed.
    #[error("mismatched instances: {0}")]
    InstanceMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
