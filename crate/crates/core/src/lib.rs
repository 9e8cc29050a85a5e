//! Equivariant invariants of modules over the twisted commutative algebra
//! `A = Sym(V⊗E)`: formal Schur characters and γ, exact Gröbner bases over
//! `ℚ`, minimal free resolutions and Koszul Tor, and eventual-linearity
//! checks across ranks `n`.

pub mod asymptotics;
pub mod character;
pub mod families;
mod linalg;
pub mod partition;
pub mod poly;
pub mod resolution;

pub use character::{cauchy_character, grassmannian_hilbert, CharacterError, Gamma, SchurCharacter};
pub use partition::{Partition, PartitionError};
