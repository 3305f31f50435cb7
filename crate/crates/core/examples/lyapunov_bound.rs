// Evaluate the Lyapunov-type constant and check the inequality for a
// solution of the nonlinear problem.

use dfrac::green::{green_max_closed_form, solve_homogeneous_fixed_point, FixedPointOptions};
use dfrac::{check_inequality, lyapunov_bound, BvpProblem, GreenParams, Nonlinearity};

pub fn run() -> dfrac::Result<()> {
    let p = GreenParams::new(1.5, 3)?;
    let c = lyapunov_bound(p);
    println!("C(1.5, 3) = {c:.12e}");
    println!("C * G_max = {:.12e} (Gamma(1.5) = 8.862269254528e-01)", c * green_max_closed_form(p));

    let problem = BvpProblem::new(p, vec![1.0; p.cols()], 0.8, Nonlinearity::power(2.0)?)?;
    let y = solve_homogeneous_fixed_point(&problem, &FixedPointOptions::default())?.into_result()?;
    let report = check_inequality(&problem, &y)?;
    println!(
        "eta = {:.6e}, lhs = {:.6e}, rhs = {:.6e}, holds = {}, margin = {:.6e}",
        report.eta, report.lhs, report.rhs, report.holds, report.margin
    );

    // the zero function is never accepted as a witness
    let zero = dfrac::GridFunction::new(y.base(), vec![0.0; y.len()])?;
    if let Err(e) = check_inequality(&problem, &zero) {
        println!("y = 0: {e}");
    }
    Ok(())
}

fn main() -> dfrac::Result<()> {
    run()
}
