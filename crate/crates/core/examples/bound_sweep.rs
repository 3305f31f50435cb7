// Sweep `(α, b)` with `h ≡ 1` and compare `λ*(b+1)` with `C(α, b)`.

use dfrac::lyapunov::{bound_sweep, SweepStatus};

pub fn run() -> dfrac::Result<()> {
    let alphas = [1.1, 1.25, 1.5, 1.75, 1.9];
    let bs: Vec<u32> = (1..=10).collect();
    println!("{:>6} {:>4} {:>14} {:>14} {:>12} {:>6}", "alpha", "b", "C", "lambda*(b+1)", "margin", "holds");
    for row in bound_sweep(&alphas, &bs) {
        match &row.status {
            SweepStatus::Ok => println!(
                "{:>6} {:>4} {:>14.6e} {:>14.6e} {:>12.3e} {:>6}",
                row.alpha, row.b, row.bound_c, row.lambda_sum, row.margin, row.holds
            ),
            SweepStatus::Degenerate(msg) | SweepStatus::Error(msg) => println!("{:>6} {:>4} {msg}", row.alpha, row.b),
        }
    }
    Ok(())
}

fn main() -> dfrac::Result<()> {
    run()
}
