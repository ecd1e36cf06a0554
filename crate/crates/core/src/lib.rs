//! Block combinatorics of Ariki-Koike algebras.
//!
//! Multipartitions and residues, `e`-abacus displays, weights and hubs, core
//! blocks and the `K_i` invariant, the Scopes maps `Φ_i`, and graded
//! branching degrees. Every operation is pure and works on immutable values.

#![no_std]

extern crate alloc;

pub mod abacus;
pub mod blocks;
pub mod branching;
pub mod caps;
pub mod error;
pub mod multipartition;
pub mod scopes;
pub mod verify;

pub use abacus::{AbacusDisplay, BetaSet, Multicore, SMove};
pub use blocks::{Block, BlockDescriptor, Hub};
pub use branching::{LaurentPolynomial, RemovalOrder};
pub use caps::Caps;
pub use error::{Error, Result};
pub use multipartition::{Multicharge, Multipartition, Node, Partition};
pub use scopes::ScopesCertificate;
