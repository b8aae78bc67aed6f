//! Exact-arithmetic toolkit for finitely additive measures on finite set
//! algebras: Kelley intersection numbers (computed as values of zero-sum
//! matrix games), synthesis of strictly positive measures from
//! decompositions, null-ideal representation, weak domination of measure
//! families and probabilistic representation of almost-sure rankings.
//!
//! Every quantity is an arbitrary-precision rational; there is no
//! floating-point path anywhere. Algebras are the powersets of a finite
//! ground set of atoms — an arbitrary finite set algebra enters through
//! [`model::atoms_from_generators`].

pub mod domination;
pub mod error;
pub mod intersection;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod rankings;
pub mod rational;
pub mod synthesis;

pub use error::{Error, Result};
pub use rational::Rational;

pub use model::{
    atoms_from_generators, AtomPartition, GroundSet, Ideal, Measure, SetSystem, SimpleFunction,
    Subset, VertexFunctional,
};
