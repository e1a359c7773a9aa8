//! Exact convex polyhedra over the rationals.
//!
//! Polyhedra are closed (non-strict constraints only) and carry both a
//! constraint and a generator description, converted on demand with the
//! double description method. Values are immutable once built and can be
//! shared across threads.

mod dd;
mod integer_hull;
mod linear;
mod parse;
mod polyhedron;
pub mod rational;
mod space;
mod union;

pub use integer_hull::IntegerBox;
pub use linear::{Constraint, LinearExpr, Relation};
pub use parse::{parse_constraints, ParseError};
pub use polyhedron::{Generators, Optimum, Polyhedron};
pub use rational::Rational;
pub use space::{Role, Variable, VariableSpace};
pub use union::{union_contains, union_covers, unions_equal};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("a variable space holds at most one cost variable")]
    MultipleCostVariables,
    #[error("polyhedra live in different variable spaces")]
    SpaceMismatch,
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the polyhedron is empty")]
    Empty,
    #[error("integer hull needs finite bounds for parameter `{0}`")]
    UnboundedBox(String),
    #[error("constraint syntax: {0}")]
    Syntax(String),
}
