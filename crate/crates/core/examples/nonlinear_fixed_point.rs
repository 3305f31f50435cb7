// Damped Picard iteration for `y = (λ/Γ(α)) Σ G h f(y)`.
//
// With `f(0) = 0` plain Picard from zero stays at the trivial solution, so
// homogeneous nonlinearities have their own normalized solver.

use dfrac::green::{certify, solve_homogeneous_fixed_point, solve_nonlinear_fixed_point, FixedPointOptions};
use dfrac::{BvpProblem, GreenParams, Nonlinearity};

pub fn run() -> dfrac::Result<()> {
    let p = GreenParams::new(1.25, 5)?;
    let h = vec![1.0; p.cols()];
    let opts = FixedPointOptions::default();

    let bounded = BvpProblem::new(p, h.clone(), 0.03, Nonlinearity::parse("exp")?)?;
    let out = solve_nonlinear_fixed_point(&bounded, &opts)?;
    println!("exp: {} iterations, residual {:.3e}", out.iterations(), out.residual());

    let square = BvpProblem::new(p, h.clone(), 0.5, Nonlinearity::parse("pow:2")?)?;
    let picard = solve_nonlinear_fixed_point(&square, &opts)?;
    let from_zero = picard.converged().map(|y| y.sup_norm()).unwrap_or(f64::NAN);
    println!("pow:2 by Picard from 0: sup-norm {from_zero:.3e}");

    let y = solve_homogeneous_fixed_point(&square, &opts)?.into_result()?;
    println!("pow:2 homogeneous: sup-norm {:.6e}, residual {:.3e}", y.sup_norm(), certify(&square, y.values())?);

    let table = Nonlinearity::table(vec![(0.0, 0.0), (1.0, 0.5), (4.0, 1.0)])?;
    let tabulated = BvpProblem::new(p, h, 0.3, table)?;
    let out = solve_nonlinear_fixed_point(&tabulated, &FixedPointOptions { initial: Some(vec![1.0; p.rows()]), ..opts })?;
    println!("table: {} iterations, residual {:.3e}", out.iterations(), out.residual());
    Ok(())
}

fn main() -> dfrac::Result<()> {
    run()
}
