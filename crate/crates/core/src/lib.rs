//! Exact closure–complement algebra for semilinear sets in the line and the
//! plane.

pub mod arrangement;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod monoid;
pub mod gen;
pub mod geometry;
pub mod operators;
pub mod rational;
pub mod selftest;
pub mod orbit;
pub mod separation;
pub mod set;
pub mod word;

pub use arrangement::{Arrangement, FaceId, FaceKind};
pub use error::EngineError;
pub use geometry::{Formula, Hyperplane, LinConstraint, Relation, Space};
pub use rational::{Point, Rational, Sign};
pub use set::FlaggedSet;
