// Tabulate the Green's function of the right-focal problem and compare its
// diagonal with the closed-form maximum.

use dfrac::green::{green_diag_max_exhaustive, green_kernel, green_max_closed_form, row_abscissa};
use dfrac::GreenParams;

pub fn run() -> dfrac::Result<()> {
    let p = GreenParams::new(1.5, 3)?;
    let kernel = green_kernel(p);

    print!("{:>9}", "t \\ s");
    for s in 0..p.cols() {
        print!("{s:>14}");
    }
    println!();
    for k in 0..p.rows() {
        print!("{:>9}", row_abscissa(k).label());
        for s in 0..p.cols() {
            print!("{:>14.6e}", kernel.get(k, s));
        }
        println!();
    }

    let scan = green_diag_max_exhaustive(p);
    println!("diagonal max G(s+a-2, s): s* = {}, value {:.12e}", scan.s_star, scan.value);
    println!("closed form:                          {:.12e}", green_max_closed_form(p));

    for s in 0..p.cols() {
        println!("column {s}: largest entry at t = {}", row_abscissa(kernel.column_argmax(s, 1e-12)).label());
    }
    Ok(())
}

fn main() -> dfrac::Result<()> {
    run()
}
