//! Green's function of the right-focal problem
//!
//! ```text
//! -Δ^α y(t) = h(t+α-1),  t = 0..b,
//! y(α-2) = 0,  Δy(α-2) = Δy(α+b-1),
//! ```
//!
//! its closed-form diagonal maximum, a dense direct solver that only uses the
//! operator definitions, and the fixed-point form of the nonlinear problem.
//!
//! Rows of a kernel are indexed by `k`, with abscissa `t = α-2+k`,
//! `k = 0..=b+2`; columns by `s = 0..=b`.

mod direct;
mod fixed_point;
mod kernel;

pub use direct::{assemble_direct_system, sign_sigma, solve_linear_bvp_direct, solve_linear_bvp_green, solution_lattice};
pub use fixed_point::{
    certify, fixed_point_map, solve_homogeneous_fixed_point, solve_nonlinear_fixed_point, BvpProblem, FixedPointOptions,
    FixedPointOutcome, Nonlinearity,
};
pub use kernel::{
    denominator, diag_increment_closed_form, diag_increment_factor, green_diag_max_exhaustive, green_kernel,
    green_max_closed_form, green_value, row_abscissa, DiagonalMax, GreenKernel, GreenParams,
};
