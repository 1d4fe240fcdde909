//! A structured-grid solver library for the 3D Poisson Dirichlet problem:
//! a 19-point fourth-order compact discretization, an extrapolation
//! cascadic multigrid (EXCMG) driver with tri-quartic interpolation,
//! classical V/W-cycle multigrid baselines, sixth-order Richardson solution
//! enhancement, and fourth-order gradient recovery.
//!
//! The numeric kernels are generic over the scalar type via [`scalar::Real`]
//! (`f32` or `f64`); the aliases at the crate root fix `f64`, the precision
//! the benchmark CLI uses.

pub mod error;
pub mod excmg;
pub mod gradient;
pub mod grid;
pub mod multigrid;
pub mod problems;
pub mod scalar;
pub mod solvers;
pub mod stencil;

pub use error::{Error, Result};
pub use excmg::{
    build_initial_guess, excmg_solve, extrapolate_corner, extrapolate_midpoint, richardson_true,
    ExcmgConfig, LevelOutcome, TriquarticTable,
};
pub use gradient::{gradient, gradient_component, Axis, GradientField};
pub use grid::{build_hierarchy, Field3, Grid3, GridHierarchy};
pub use multigrid::{
    mg_cycle, mg_solve, prolong_trilinear, restrict_full_weighting, CycleConfig, MgOutcome,
    Smoother,
};
pub use problems::{by_name, catalog, Problem};
pub use scalar::Real;
pub use solvers::{
    cg_solve, default_max_iters, direct_solve_coarse, direct_solve_with_cap, gauss_seidel_sweep,
    thomas_solve, CgOutcome, DEFAULT_DIRECT_CAP,
};
pub use stencil::{
    apply_operator, assemble_rhs, diagonal_coefficient, residual, OperatorCoefficients,
};

/// Double-precision grid, the instantiation the benchmark CLI uses.
pub type Grid = Grid3<f64>;
/// Double-precision node field.
pub type Field = Field3<f64>;
/// Double-precision grid hierarchy.
pub type Hierarchy = GridHierarchy<f64>;
/// Double-precision benchmark problem.
pub type BenchProblem = Problem<f64>;
