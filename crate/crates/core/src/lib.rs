//! Discrete fractional calculus on shifted integer lattices.
//!
//! * [`gamma`]: signed log-gamma and falling-factorial powers `t^(ν)` with
//!   exact pole handling on abscissae `m·α + n`.
//! * [`calculus`]: grid functions, forward differences, fractional sums and
//!   fractional differences.
//! * [`green`]: the Green's function of the right-focal problem, its
//!   closed-form diagonal maximum, a dense direct solver used as an oracle,
//!   and fixed-point solvers for the nonlinear problem.
//! * [`lyapunov`]: the Lyapunov-type bound, inequality reports, and the
//!   Perron eigenvalue scan.
//! * [`cli`]: the `dfrac` command-line front end.

pub mod calculus;
pub mod cli;
pub mod error;
pub mod gamma;
pub mod green;
pub mod linalg;
pub mod lyapunov;
pub mod verify;

pub use calculus::{composition_residual, forward_difference, fractional_difference, fractional_sum, Abscissa, GridFunction};
pub use error::{Error, Result};
pub use gamma::{falling_factorial, falling_factorial_real, signed_log_gamma, GridValue, Order, SignedLogGamma};
pub use green::{sign_sigma, BvpProblem, GreenKernel, GreenParams, Nonlinearity};
pub use lyapunov::{check_inequality, lyapunov_bound, perron_smallest_lambda, EigenResult, LyapunovReport};
