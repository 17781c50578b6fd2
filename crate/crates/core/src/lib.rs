//! Preradicals, first modules and poset actions over finite rings.
//!
//! Rings and modules are explicit tables; every predicate is decided by
//! exhaustive scans. Class-level statements are checked on a finite
//! [`Universe`] of generated modules and are labelled as such.

pub mod classifier;
mod closure;
pub mod corpus;
pub mod error;
pub mod firstness;
pub mod job;
pub mod modules;
pub mod order;
pub mod preradical;
pub mod ring;
pub mod universe;

pub use error::{Error, Result};
pub use modules::{FiniteModule, ModuleMorphism, Submodule, SubmoduleLattice};
pub use preradical::Preradical;
pub use ring::{Caps, FiniteRing, Ideal, RingSpec, Sidedness};
pub use universe::{Universe, UniverseParams};
