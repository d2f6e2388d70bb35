//! Partial actions of finite groups on finite structures: axiom
//! validation, universal globalizations of sets, relational systems and
//! partial algebras, a decision procedure for globalizability over
//! semigroups with ideal domains, the explicit unital-ideal globalization,
//! and bounded embeddability analysis of the associated amalgams.

mod action;
mod algebra;
mod algebra_action;
mod amalgam;
mod congruence;
pub mod corpus;
mod error;
mod globalization;
mod group;
pub mod iso;
mod relational;
mod semigroup;
mod semigroup_action;
pub mod term;
mod util;
mod validation;
mod wordstore;

pub use action::{compose_maps, morphism_witness, validate_action_tables, PartialAction};
pub use algebra::{homomorphism_witness, FinitePartialAlgebra, TypeSignature};
pub use algebra_action::{
    validate_algebra_action, AlgebraGlobalization, AlgebraPartialAction, GlobalizabilityWitness,
};
pub use amalgam::{
    Amalgam, AmalgamChainEntry, AmalgamStep, Amalgamation, EmbeddabilityReport,
    EmbeddabilityViolation,
};
pub use congruence::{minimal_congruence_by_enumeration, Congruence};
pub use error::{Error, Result};
pub use globalization::{globalization_witness, GlobClass, UniversalGlobalization};
pub use group::{validate_group_table, FiniteGroup};
pub use relational::{
    lift_relational_system, validate_relational_action, LiftedSystem, Relation,
    RelationalPartialAction, RelationalSystem,
};
pub use semigroup::{validate_semigroup_table, FiniteSemigroup};
pub use semigroup_action::{
    check_ideal_domains, ChainEntry, CollapsePair, CollapseSearch, ConfluenceCounterexample,
    ConfluenceReport, CriterionWitness, DomainConditions, IdealPartialAction, RewriteStep,
    RewriteTrace, StepKind, SufficientConditions, UWord, UnitalGlobalization,
};
pub use validation::{ValidationReport, Violation};
