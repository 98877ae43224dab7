//! Cohomology of Lie superalgebras of Hamiltonian vector fields.
//!
//! The pipeline runs bottom-up: [`algebra`] builds generating functions and
//! their Poisson bracket, [`complex`] enumerates super skew-symmetric cochains
//! per (degree, grade) cell and assembles the differential, [`linalg`]
//! computes the quotient of cocycles by coboundaries over exact rationals, and
//! [`engine`] ties these into tables, representatives and cup products.

pub mod algebra;
pub mod cli;
pub mod complex;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod rational;

pub use algebra::{AlgebraSpec, Element, Family};
pub use complex::{Cochain, Module};
pub use error::{Error, Result};
pub use rational::Q;
