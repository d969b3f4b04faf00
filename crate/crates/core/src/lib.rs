//! Exact reformulation of linearly constrained bilinear systems.
//!
//! For `C = { (x, w, y) : Ax = b, w_j = x_j y for all j }` with `A` an
//! `m x n` matrix of full row rank, the linear rows `Aw - by = 0` make `m`
//! of the `n` bilinear terms redundant. This crate finds which ones
//! ([`reduction::compute_reduction`]), decides validity of any candidate
//! index set, builds counterexamples for invalid ones, checks the set
//! equality by sampling, and compares McCormick LP relaxations of both
//! formulations. All arithmetic is exact.

pub mod cli;
pub mod error;
pub mod exactla;
pub mod model;
pub mod reduction;
pub mod relax;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    parse_system, serialize_system, BilinearSystem, Bounds, IndexSet, Matrix, Objective, Rational,
    SamplePoint, Sense, Vector,
};
