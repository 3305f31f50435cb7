macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(falling_factorial, "falling_factorial.rs");
example!(fractional_operators, "fractional_operators.rs");
example!(green_kernel, "green_kernel.rs");
example!(linear_bvp, "linear_bvp.rs");
example!(lyapunov_bound, "lyapunov_bound.rs");
example!(perron_eigen, "perron_eigen.rs");
example!(nonlinear_fixed_point, "nonlinear_fixed_point.rs");
example!(bound_sweep, "bound_sweep.rs");

#[test]
fn falling_factorial_example_runs() {
    falling_factorial::run().expect("falling_factorial example");
}

#[test]
fn fractional_operators_example_runs() {
    fractional_operators::run().expect("fractional_operators example");
}

#[test]
fn green_kernel_example_runs() {
    green_kernel::run().expect("green_kernel example");
}

#[test]
fn linear_bvp_example_runs() {
    linear_bvp::run().expect("linear_bvp example");
}

#[test]
fn lyapunov_bound_example_runs() {
    lyapunov_bound::run().expect("lyapunov_bound example");
}

#[test]
fn perron_eigen_example_runs() {
    perron_eigen::run().expect("perron_eigen example");
}

#[test]
fn nonlinear_fixed_point_example_runs() {
    nonlinear_fixed_point::run().expect("nonlinear_fixed_point example");
}

#[test]
fn bound_sweep_example_runs() {
    bound_sweep::run().expect("bound_sweep example");
}
