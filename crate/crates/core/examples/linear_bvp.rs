// Solve `-Δ^α y = h` with right-focal conditions two ways: by dense
// elimination of the operator itself, and through the Green's function.

use dfrac::green::{sign_sigma, solve_linear_bvp_direct, solve_linear_bvp_green};
use dfrac::GreenParams;

pub fn run() -> dfrac::Result<()> {
    let (alpha, b) = (1.5, 4);
    let h = [1.0, 0.5, 0.0, 2.0, 1.0];

    let direct = solve_linear_bvp_direct(alpha, b, &h)?;
    let green = solve_linear_bvp_green(GreenParams::new(alpha, b)?, &h)?;

    println!("sign constant sigma = {}", sign_sigma());
    println!("{:>10} {:>20} {:>20}", "t", "direct", "green");
    for k in 0..direct.len() {
        println!("{:>10} {:>20.12e} {:>20.12e}", direct.abscissa(k).label(), direct.values()[k], green.values()[k]);
    }
    let gap = direct.combine(1.0, &green, -1.0)?.sup_norm();
    println!("sup-norm difference {gap:.3e}");

    // α = 2 is the classical second-order problem, which is singular here
    match solve_linear_bvp_direct(2.0, b, &h) {
        Err(e) => println!("alpha = 2: {e}"),
        Ok(y) => println!("alpha = 2: {:?}", y.values()),
    }
    Ok(())
}

fn main() -> dfrac::Result<()> {
    run()
}
