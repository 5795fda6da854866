//! Tabulated divisor systems ("A-functions"), generalized arithmetical
//! convolutions, and the supporting machinery: structural predicates,
//! primitive decompositions, Cohen triangles, arithmetical classes, and
//! rational (raft) approximation of class functions.
//!
//! Everything is tabulated up to an explicit bound; all quantified claims
//! are claims at that bound, never about the infinite objects.

pub mod arith;
pub mod catalog;
pub mod classes;
pub mod decomp;
mod error;
mod num;
pub mod properties;
pub mod raft;
pub mod system;
pub mod triangle;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;

pub use arith::{ArithFunc, Derived, MetricValue, Side, Standard};
pub use decomp::{Chi, Decomposition, DeriveWhich, PrimitivitySummary};
pub use properties::{Predicate, PropertyReport};
pub use raft::{BlockSolve, Raft, RaftFactor};
pub use system::{DivisorSystem, Family};
pub use triangle::{CohenTriangle, SizeSpec, Structure};
