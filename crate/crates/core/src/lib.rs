//! Exact homomorphism counting for finite groups.
//!
//! The crate counts homomorphisms from fundamental groups of simplicial complexes,
//! closed surfaces and Heegaard-glued 3-manifolds into small finite groups, and
//! compiles Boolean circuits through a chain of count-preserving reductions ending
//! in zombie circuits over group-set alphabets.

pub mod bounds;
pub mod circuits;
pub mod complex;
pub mod counting;
pub mod error;
pub mod group;
pub mod io;
pub mod perm;
pub mod surfaces;

pub use bounds::WorkBounds;
pub use error::{Error, Result};
