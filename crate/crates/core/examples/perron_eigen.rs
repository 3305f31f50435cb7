// Smallest λ for which the linear problem `y = λ K y` has a nontrivial
// nonnegative solution, by power iteration and by determinant bisection.

use dfrac::lyapunov::smallest_lambda_bisection;
use dfrac::{lyapunov_bound, perron_smallest_lambda, GreenParams};

pub fn run() -> dfrac::Result<()> {
    for (alpha, b) in [(1.5, 1), (1.5, 3), (1.9, 6)] {
        let p = GreenParams::new(alpha, b)?;
        let h = vec![1.0; p.cols()];
        let eig = perron_smallest_lambda(p, &h)?;
        let bisect = smallest_lambda_bisection(p, &h)?;
        let c = lyapunov_bound(p);
        let lhs = eig.lambda_star * (b + 1) as f64;
        println!(
            "alpha {alpha} b {b}: lambda* {:.10e} (bisection {:.10e}, {} iterations), lambda*(b+1) = {lhs:.6e} vs C = {c:.6e}",
            eig.lambda_star, bisect, eig.iterations
        );
        println!("  y* = {:?}", eig.y_star.values().iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>());
    }
    Ok(())
}

fn main() -> dfrac::Result<()> {
    run()
}
