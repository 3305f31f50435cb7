// Falling-factorial powers on the lattice `m·α + n`.
//
// ```bash
// cargo run --example falling_factorial
// ```

use dfrac::{falling_factorial, falling_factorial_real, GridValue, Order};

pub fn run() -> dfrac::Result<()> {
    let alpha = Order::new(1.5)?;

    // integer powers reduce to ordinary falling factorials
    println!("5^(1)       = {}", falling_factorial(GridValue::int(5), GridValue::int(1), alpha)?);
    println!("(a-2)^(a-1) = {}", falling_factorial(GridValue::alpha_plus(-2), GridValue::alpha_plus(-1), alpha)?);

    // Γ(t+1-ν) = Γ(-1) is a pole, so the power is 0
    println!("0^(2)       = {}", falling_factorial(GridValue::ZERO, GridValue::int(2), alpha)?);
    println!("0^(a)       = {:.12e}", falling_factorial(GridValue::ZERO, GridValue::alpha_plus(0), alpha)?);

    println!("t^(a-1) for t = a-1, a, ..., a+4:");
    for n in -1..=4 {
        let t = GridValue::alpha_plus(n);
        let v = falling_factorial(t, GridValue::alpha_plus(-1), alpha)?;
        println!("  t = {:<8} {v:.12e}", t.label());
    }

    // arbitrary real arguments go through the tolerance-based variant
    println!("2.5^(1.5)   = {:.12e}", falling_factorial_real(2.5, 1.5)?);

    // a pole in the numerator is a domain error, not a silent NaN
    match falling_factorial(GridValue::int(-1), GridValue::int(1), alpha) {
        Err(e) => println!("(-1)^(1)    -> {e}"),
        Ok(v) => println!("(-1)^(1)    = {v}"),
    }
    Ok(())
}

fn main() -> dfrac::Result<()> {
    run()
}
