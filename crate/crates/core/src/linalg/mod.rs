//! Exact integer and rational linear algebra.

mod hnf;
mod int_matrix;
mod rational;
mod snf;

pub use hnf::{hermite_normal_form, integer_left_kernel};
pub use int_matrix::IntMatrix;
pub use rational::{
    dot, identity_q, least_squares, mat_mul, mat_vec, nullspace_q, q, q_int, rank_q, rref,
    solve_q, transpose, LeastSquares, QMatrix, QVector,
};
pub use snf::{normalize_diagonal, smith_normal_form, sparse_invariant_factors, SmithForm};
