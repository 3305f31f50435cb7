use crate::error::{domain, Error, Result};
use crate::gamma::{falling_factorial, ln_gamma, GridValue, Order};
use crate::linalg::Matrix;

/// Validated `(α, b)` for the closed-form kernel: 1 < α < 2, b ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenParams {
    alpha: Order,
    b: u32,
}

impl GreenParams {
    pub fn new(alpha: f64, b: u32) -> Result<Self> {
        if b == 0 {
            return Err(domain("b must be at least 1 (Gamma(b) is a pole at b = 0)"));
        }
        let order = Order::bvp(alpha)?;
        if order.is_degenerate() {
            return Err(Error::Degenerate(
                "alpha = 2: Gamma(alpha-1) - (alpha+b-1)^(alpha-2) vanishes, the closed forms are undefined".into(),
            ));
        }
        Ok(GreenParams { alpha: order, b })
    }

    pub fn alpha(self) -> Order {
        self.alpha
    }

    pub fn b(self) -> u32 {
        self.b
    }

    /// Number of kernel rows, `b + 3`.
    pub fn rows(self) -> usize {
        self.b as usize + 3
    }

    /// Number of kernel columns, `b + 1`.
    pub fn cols(self) -> usize {
        self.b as usize + 1
    }
}

/// Row abscissa `α - 2 + k`.
pub fn row_abscissa(k: usize) -> GridValue {
    GridValue::new(1, k as i64 - 2)
}

fn ff(t: GridValue, nu: GridValue, order: Order) -> f64 {
    // every call site below has a finite numerator argument on 1 < α < 2
    falling_factorial(t, nu, order).expect("kernel falling factorial has a pole-free numerator")
}

/// `Γ(α-1) - (α+b-1)^(α-2)`, positive on the admissible range.
pub fn denominator(p: GreenParams) -> f64 {
    let b = p.b as i64;
    let alpha = p.alpha.value();
    ln_gamma(alpha - 1.0).exp() - ff(GridValue::alpha_plus(b - 1), GridValue::new(1, -2), p.alpha)
}

fn check_index(p: GreenParams, k: usize, s: usize) -> Result<()> {
    if k >= p.rows() || s >= p.cols() {
        return Err(domain(format!(
            "kernel index (k = {k}, s = {s}) outside 0..={} x 0..={}",
            p.rows() - 1,
            p.cols() - 1
        )));
    }
    Ok(())
}

fn value_with_denominator(p: GreenParams, denom: f64, k: usize, s: usize) -> f64 {
    let order = p.alpha;
    let (b, k, s) = (p.b as i64, k as i64, s as i64);
    let t = GridValue::new(1, k - 2);
    let smooth = ff(t, GridValue::new(1, -1), order) * ff(GridValue::new(1, b - s - 2), GridValue::new(1, -2), order) / denom;
    // s ≤ t - α, i.e. s ≤ k - 2: the kernel of the fractional sum is active
    if s <= k - 2 {
        smooth + ff(GridValue::new(1, k - s - 3), GridValue::new(1, -1), order)
    } else {
        smooth
    }
}

/// `G(α-2+k, s)`.
///
/// The first branch (with the extra `(t-s-1)^(α-1)` term) is taken for
/// `s ≤ t-α`, the boundary case included; that is the assignment under which
/// the kernel reproduces the direct solver.
pub fn green_value(p: GreenParams, k: usize, s: usize) -> Result<f64> {
    check_index(p, k, s)?;
    Ok(value_with_denominator(p, denominator(p), k, s))
}

/// The full `(b+3) × (b+1)` table of `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenKernel {
    pub params: GreenParams,
    pub denom: f64,
    pub g: Matrix,
}

impl GreenKernel {
    pub fn get(&self, k: usize, s: usize) -> f64 {
        self.g[(k, s)]
    }

    /// Row index of the column maximum; ties within `tie_tol` resolve to the
    /// smallest `k` attaining it.
    pub fn column_argmax(&self, s: usize, tie_tol: f64) -> usize {
        let max = (0..self.g.rows()).map(|k| self.g[(k, s)]).fold(f64::MIN, f64::max);
        (0..self.g.rows()).find(|&k| self.g[(k, s)] >= max - tie_tol * max.abs()).unwrap_or(0)
    }
}

pub fn green_kernel(p: GreenParams) -> GreenKernel {
    let denom = denominator(p);
    let g = Matrix::from_fn(p.rows(), p.cols(), |k, s| value_with_denominator(p, denom, k, s));
    GreenKernel { params: p, denom, g }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalMax {
    pub s_star: usize,
    pub value: f64,
}

/// Scan `G(s+α-2, s)` over `s = 0..=b`; ties go to the larger `s`.
pub fn green_diag_max_exhaustive(p: GreenParams) -> DiagonalMax {
    let denom = denominator(p);
    (0..p.cols())
        .map(|s| DiagonalMax { s_star: s, value: value_with_denominator(p, denom, s, s) })
        .fold(DiagonalMax { s_star: 0, value: f64::MIN }, |best, cur| if cur.value >= best.value { cur } else { best })
}

/// `Γ(b+α-1) Γ(α-1) Γ(b+2) / (Γ(b) [Γ(α-1) Γ(b+2) - Γ(α+b)])`, evaluated as
/// `Γ(b+α-1) Γ(α-1) / (Γ(b) · denominator)` in log space.
pub fn green_max_closed_form(p: GreenParams) -> f64 {
    let alpha = p.alpha.value();
    let b = p.b as f64;
    (ln_gamma(b + alpha - 1.0) + ln_gamma(alpha - 1.0) - ln_gamma(b) - denominator(p).ln()).exp()
}

/// `q(s) = b(α-1) + s(3-2α)`, the sign-carrying factor of `ΔG(s+α-2, s)`.
pub fn diag_increment_factor(alpha: f64, b: u32, s: u32) -> f64 {
    b as f64 * (alpha - 1.0) + s as f64 * (3.0 - 2.0 * alpha)
}

/// `ΔG(s+α-2, s) = q(s) Γ(b+2) Γ(s+α-1) Γ(α+b-s-2) / ([Γ(α-1)Γ(b+2) - Γ(α+b)] Γ(s+1) Γ(b-s+1))`
/// for `s = 0..b-1`.
pub fn diag_increment_closed_form(p: GreenParams, s: u32) -> Result<f64> {
    if s >= p.b {
        return Err(domain(format!("diagonal increment needs s < b = {}, got {s}", p.b)));
    }
    let alpha = p.alpha.value();
    let (b, sf) = (p.b as f64, s as f64);
    // Γ(α-1)Γ(b+2) - Γ(α+b) = Γ(b+2) · denominator
    let log_rest = ln_gamma(sf + alpha - 1.0) + ln_gamma(alpha + b - sf - 2.0)
        - ln_gamma(sf + 1.0)
        - ln_gamma(b - sf + 1.0)
        - denominator(p).ln();
    Ok(diag_increment_factor(alpha, p.b, s) * log_rest.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;

    fn p(alpha: f64, b: u32) -> GreenParams {
        GreenParams::new(alpha, b).unwrap()
    }

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / y.abs()
    }

    // Γ(3.5)Γ(0.5)Γ(5) / (Γ(3) [Γ(0.5)Γ(5) - Γ(4.5)])
    fn oracle_max_15_3() -> f64 {
        let sp = std::f64::consts::PI.sqrt();
        let g35 = 15.0 * sp / 8.0;
        let g45 = 105.0 * sp / 16.0;
        g35 * sp * 24.0 / (2.0 * (sp * 24.0 - g45))
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(GreenParams::new(2.0, 3), Err(Error::Degenerate(_))));
        assert!(matches!(GreenParams::new(1.5, 0), Err(Error::Domain(_))));
        assert!(matches!(GreenParams::new(1.0, 3), Err(Error::Domain(_))));
        assert!(matches!(GreenParams::new(2.5, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn first_row_vanishes() {
        let q = p(1.5, 4);
        for s in 0..=4 {
            assert_eq!(green_value(q, 0, s).unwrap(), 0.0);
        }
    }

    #[test]
    fn diagonal_at_b_matches_gamma_oracle() {
        let v = green_value(p(1.5, 3), 3, 3).unwrap();
        assert!(rel(v, oracle_max_15_3()) < 1e-13);
        assert!((v - 2.28703).abs() < 1e-5);
    }

    #[test]
    fn denominator_value() {
        let d = denominator(p(1.5, 3));
        let sp = std::f64::consts::PI.sqrt();
        assert!(rel(d, sp - 105.0 * sp / 16.0 / 24.0) < 1e-14);
        assert!((d - 1.287_798_6).abs() < 1e-7);
    }

    #[test]
    fn branch_difference_is_sum_kernel() {
        let q = p(1.3, 5);
        let denom = denominator(q);
        for k in 2..q.rows() {
            for s in 0..=(k - 2).min(5) {
                let first = value_with_denominator(q, denom, k, s);
                let t = GridValue::new(1, k as i64 - 2);
                let smooth = ff(t, GridValue::new(1, -1), q.alpha)
                    * ff(GridValue::new(1, 5 - s as i64 - 2), GridValue::new(1, -2), q.alpha)
                    / denom;
                let extra = ff(t - GridValue::int(s as i64 + 1), GridValue::new(1, -1), q.alpha);
                assert!(rel(smooth + extra, first) < 1e-12);
            }
        }
    }

    #[test]
    fn index_range_checked() {
        assert!(matches!(green_value(p(1.5, 2), 5, 0), Err(Error::Domain(_))));
        assert!(matches!(green_value(p(1.5, 2), 0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn kernel_shape() {
        let k = green_kernel(p(1.5, 1));
        assert_eq!((k.g.rows(), k.g.cols()), (4, 2));
        assert!(k.g.row(0).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn closed_form_and_scan() {
        let q = p(1.5, 3);
        assert!(rel(green_max_closed_form(q), oracle_max_15_3()) < 1e-13);
        let d = green_diag_max_exhaustive(q);
        assert_eq!(d.s_star, 3);
        assert!(rel(d.value, oracle_max_15_3()) < 1e-13);
        assert_eq!(green_diag_max_exhaustive(p(1.7, 1)).s_star, 1);
    }

    #[test]
    fn increment_factor() {
        assert_eq!(diag_increment_factor(1.25, 4, 0), 1.0);
        assert!((diag_increment_factor(1.8, 5, 5) - 5.0 * 0.2).abs() < 1e-15);
        for s in 0..7 {
            assert_eq!(diag_increment_factor(1.5, 6, s), 3.0);
        }
    }

    #[test]
    fn increment_matches_diagonal_difference() {
        for alpha in [1.1, 1.5, 1.85] {
            for b in 1..8u32 {
                let q = p(alpha, b);
                let k = green_kernel(q);
                for s in 0..b {
                    let direct = k.get(s as usize + 1, s as usize + 1) - k.get(s as usize, s as usize);
                    let closed = diag_increment_closed_form(q, s).unwrap();
                    assert!(rel(closed, direct) < 1e-11, "alpha {alpha} b {b} s {s}: {closed} vs {direct}");
                }
            }
        }
    }

    #[test]
    fn closed_form_uses_positive_bracket() {
        for alpha in [1.01, 1.5, 1.99] {
            for b in 1..30u32 {
                let bracket = gamma(alpha - 1.0) * gamma(b as f64 + 2.0) - gamma(alpha + b as f64);
                assert!(bracket > 0.0);
                assert!(denominator(p(alpha, b)) > 0.0);
            }
        }
    }
}
