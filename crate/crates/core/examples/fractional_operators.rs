// Fractional sums and differences of grid functions, and the composition
// `Δ^{-α}Δ^α y = y + c1·t^(α-1) + c2·t^(α-2)`.

use dfrac::calculus::fractional_sum_exact;
use dfrac::green::solution_lattice;
use dfrac::{composition_residual, fractional_difference, fractional_sum, Abscissa, GridFunction, GridValue, Order};

pub fn run() -> dfrac::Result<()> {
    let f = GridFunction::sample(Abscissa::Real(0.0), 8, |t| (0.4 * t).sin() + 1.0)?;

    let half = fractional_sum(&f, 0.5)?;
    let twice = fractional_sum(&half, 0.5)?;
    let once = fractional_sum(&f, 1.0)?;
    let gap = twice.values().iter().zip(once.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("half-sum applied twice vs full sum: sup gap {gap:.3e}");
    println!("base after Δ^(-1/2): {}", half.base().label());

    // on a lattice base the shift is tracked exactly
    let alpha = Order::new(1.5)?;
    let ones = GridFunction::new(Abscissa::lattice(GridValue::ZERO, alpha), vec![1.0; 6])?;
    let shifted = fractional_sum_exact(&ones, GridValue::alpha_plus(0))?;
    println!("Δ^(-a) 1 lives on {}: {:?}", shifted.base().label(), shifted.values());

    let y = GridFunction::sample(solution_lattice(alpha), 10, |t| t * t - 3.0 * t)?;
    let d = fractional_difference(&y, 1.5)?;
    println!("Δ^1.5 of t^2 - 3t on {}: {} samples", d.base().label(), d.len());

    let fit = composition_residual(&y, 1.5)?;
    println!(
        "composition: c1 = {:.6}, c2 = {:.6}, raw {:.3e}, projected residual {:.3e}",
        fit.c1, fit.c2, fit.raw_norm, fit.residual_norm
    );
    Ok(())
}

fn main() -> dfrac::Result<()> {
    run()
}
