//! Data model shared by every other module: finite ground sets of atoms,
//! bitmask subsets, set systems, point-mass measures, principal ideals,
//! vertex-represented sublinear functionals and rational-valued functions.
//!
//! The algebra of sets is always the full powerset of a ground set; an
//! arbitrary finite algebra is brought into that form by
//! [`atoms_from_generators`], which computes the atoms of the algebra the
//! generators generate. All values are immutable after construction.

mod function;
mod functional;
mod ground;
mod ideal;
mod measure;
mod system;

pub use function::SimpleFunction;
pub use functional::VertexFunctional;
pub use ground::{atoms_from_generators, AtomPartition, GroundSet, Subset};
pub use ideal::Ideal;
pub use measure::Measure;
pub use system::SetSystem;
