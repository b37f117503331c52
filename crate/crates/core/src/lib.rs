//! Quark gap equation with Ball-Chiu vertex, solved by successive
//! approximation on a Gauss-Legendre discretization.
//!
//! The crate benchmarks two accelerations against their baselines:
//! interpolation brackets precomputed at grid construction versus a bisection
//! per evaluation, and a data-parallel sweep over external momenta versus a
//! sequential one. All four combinations produce bitwise-identical solutions.

// `!(x > 0.0)` style checks are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod error;
pub mod fixed_point;
pub mod fredholm;
pub mod grid;
pub mod interpolation;
pub mod kernels;
pub mod output;
pub mod quadrature;
pub mod solver;

pub use bench::{run_bench, BenchReport};
pub use error::{Error, Result};
pub use fredholm::{solve_generic, FredholmSolution, FredholmSystem};
pub use grid::{build_grid, GridSpec, MomentumGrid};
pub use interpolation::{interp_indexed, interp_search, InterpStrategy};
pub use kernels::ModelParams;
pub use quadrature::{gauss_chebyshev2, gauss_legendre, QuadratureRule};
pub use solver::{
    AlgorithmVariant, Execution, Executor, HistoryRecord, PropagatorSolution, Solver, SolverOptions,
};
