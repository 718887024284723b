//! Exact arithmetic dynamics for commuting polynomial maps.
//!
//! Scalars live in `ℚ`, `ℚ(ζ_p)` or `𝔽_p` and every decision (equality of
//! points, commutation, rank) is made exactly. The crate is `no_std` and only
//! needs an allocator; I/O, parsing and the command-line driver live in the
//! companion `comdyn` crate.
#![no_std]
extern crate alloc;

pub mod commutant;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod linalg;
pub mod map;
pub mod poly;
pub mod ring;
pub mod veronese;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldKind, FieldSpec};
pub use map::{Point, PolyMap, ProjMap};
pub use poly::{Monomial, Polynomial};
pub use ring::Ring;
