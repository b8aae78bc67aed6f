//! Crate-wide error type. Variants that reject an input carry the witness
//! that broke the rule, so callers can report it verbatim.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set must contain at least one atom")]
    EmptyGroundSet,
    #[error("ground set atoms exceed the supported maximum of 64")]
    TooManyAtoms,
    #[error("duplicate atom label `{0}`")]
    DuplicateAtom(String),
    #[error("unknown atom label `{0}`")]
    UnknownLabel(String),
    #[error("subset uses atoms outside the ground set")]
    SubsetOutOfRange,
    #[error("ground sets do not match")]
    GroundSetMismatch,
    #[error("cannot parse `{0}` as a rational number")]
    BadRational(String),
    #[error("measure mass for `{0}` is negative")]
    NegativeMass(String),

    #[error("conditioning set has measure zero")]
    ZeroConditioningSet,
    #[error("collection is not down-closed: member {member:?} has subset {missing:?} outside the collection")]
    NotDownClosed { member: Vec<String>, missing: Vec<String> },
    #[error("collection is not union-closed: union of {left:?} and {right:?} is outside the collection")]
    NotUnionClosed { left: Vec<String>, right: Vec<String> },
    #[error("collection is not proper: it contains the whole ground set")]
    NotProper,
    #[error("collection is not the full principal ideal of its union: {missing:?} is absent")]
    NotPrincipalComplete { missing: Vec<String> },
    #[error("ideal is not proper (its generator is the whole ground set)")]
    ImproperIdeal,

    #[error("set family is empty")]
    EmptyFamily,
    #[error("set family contains an empty member")]
    EmptySetInFamily,
    #[error("sequence is empty")]
    EmptySequence,

    #[error("threshold must be positive, got {0}")]
    BadThreshold(String),
    #[error("decomposition does not verify: {0}")]
    InvalidDecomposition(String),
    #[error("functional cannot be normalized: it dominates no probability")]
    NormalizationImpossible,
    #[error("all vertices of the functional are zero measures")]
    DegenerateFunctional,

    #[error("vertex functional needs at least one vertex")]
    NoVertices,
    #[error("measure family needs at least one member")]
    EmptyMeasureFamily,
    #[error("family member {0} is not a probability")]
    NotAProbability(usize),
    #[error("order-backing measure has zero total mass")]
    ZeroTotalMeasure,

    #[error("enumeration budget exceeded: {needed} multisets, cap {cap}")]
    BudgetTooLarge { needed: u128, cap: u64 },
}
