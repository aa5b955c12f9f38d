//! Relative Picard groups of moduli stacks of principal bundles over pointed
//! curves, computed as explicit integer lattices from a root datum.
//!
//! Every computation is exact. The layers build on each other:
//! [`abelian`] (normal forms, lattices, finitely generated abelian groups),
//! [`rootdata`], [`symforms`], [`taut`] and [`picard`]. The [`cli`] module holds
//! the job format shared by the `rpic` binary and the C ABI.

pub mod abelian;
pub mod cli;
pub mod error;
pub mod picard;
pub mod rootdata;
pub mod symforms;
pub mod taut;

pub use abelian::{FgAbGroup, FgAbHom, IntMatrix};
pub use error::{Error, Result};
pub use rootdata::RootDatum;
