//! Exact-arithmetic kernels for compact-group symplectic geometry at desk
//! scale: type-A root systems and their Weyl chamber faces, Kähler reduction
//! linear algebra, imploded cotangent-bundle metrics through fundamental
//! representations, torus GIT weight configurations with wall-and-chamber
//! decompositions, and the simplex-parameterized master construction tying
//! the two sides together.
//!
//! All structural decisions (signs, memberships, wall incidences) are made
//! over arbitrary-precision rationals; floating point appears only for output
//! magnitudes and in the seeded random stress suites.

pub mod arrangement;
pub mod combinat;
pub mod error;
pub mod irrep;
pub mod linalg;
pub mod lp;
pub mod master;
pub mod matrix_lie;
pub mod orbit;
pub mod polytope;
pub mod rational;
pub mod reduction;
pub mod roots;
pub mod scalar;
pub mod stability;
pub mod suites;

pub use error::{Error, Result};
pub use rational::Rat;
