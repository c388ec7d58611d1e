//! Decorated fans classifying quasinormal toric supervarieties with one odd
//! dimension, with the lattice, cone and semigroup machinery they need.

pub mod decorated_fan;
pub mod embedding;
pub mod error;
pub mod fan;
pub mod io;
pub mod lattice;
pub mod morphism;
pub mod polyhedral;
pub mod report;
pub mod semigroup;
pub mod supertorus;

pub use decorated_fan::{enumerate_decorations, DecoratedFan};
pub use error::{Error, Result};
pub use fan::Fan;
pub use lattice::{CParam, IntVector, LatticeMap, Rational, Subspace};
pub use morphism::{fiber_product, validate_morphism, DecoratedFanMorphism};
pub use polyhedral::{Cone, FaceDescriptor};
pub use semigroup::{AffineSemigroup, SIdeal};
pub use supertorus::SupertorusDatum;
