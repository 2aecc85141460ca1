//! Exact computations for nerves of covers, clump calculus over
//! group-labelled patch systems, Euclidean minset arrangements and
//! lattice-periodic box unions.
//!
//! Every homological quantity is computed over the integers with
//! arbitrary-precision arithmetic; every geometric quantity is computed
//! over the rationals. Nothing in this crate uses floating point in a
//! decision path.

pub mod clumps;
pub mod cover;
pub mod error;
pub mod euclid;
pub mod groups;
pub mod linalg;
pub mod models;
pub mod periodic;
pub mod scenario;
pub mod simplicial;

pub use error::{Error, Result};
