//! The Lyapunov-type necessary condition
//!
//! ```text
//! Σ_s |h(s+α-1)| ≥ C(α,b) · η / f(η),
//! C(α,b) = Γ(α)Γ(b)[Γ(α-1)Γ(b+2) - Γ(α+b)] / (Γ(α-1)Γ(b+2)Γ(b+α-1)),
//! ```
//!
//! with `η` the maximum of a nontrivial solution over `[α-1, α+b]`, plus the
//! Perron eigenvalue scan that produces nontrivial solutions for `f(y) = y`.

use crate::calculus::GridFunction;
use crate::error::{domain, Error, Result};
use crate::gamma::{gamma, ln_gamma};
use crate::green::{
    certify, denominator, green_kernel, green_max_closed_form, solution_lattice, BvpProblem, GreenParams,
};
use crate::linalg::{determinant, Matrix};

/// Below this sup-norm a candidate solution counts as trivial.
pub const TRIVIAL_NORM: f64 = 1e-8;
/// Largest representation residual accepted by [`check_inequality`].
pub const CERTIFY_TOL: f64 = 1e-8;
/// One-sided slack on the verdict: holds iff `margin ≥ -HOLD_SLACK·max(1, rhs)`.
pub const HOLD_SLACK: f64 = 1e-9;

/// `C(α,b)`; equals `Γ(α) / max_s G(s+α-2, s)`.
pub fn lyapunov_bound(p: GreenParams) -> f64 {
    let alpha = p.alpha().value();
    let b = p.b() as f64;
    // Γ(α-1)Γ(b+2) - Γ(α+b) = Γ(b+2) · denominator
    (ln_gamma(alpha) + ln_gamma(b) + denominator(p).ln() - ln_gamma(alpha - 1.0) - ln_gamma(b + alpha - 1.0)).exp()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovReport {
    pub bound_c: f64,
    /// `Σ_s |λ h[s]|`, the weight the λ-scaled problem actually carries.
    pub h_sum: f64,
    pub eta: f64,
    pub f_eta: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub margin: f64,
    /// Representation residual of the candidate.
    pub residual: f64,
}

/// Evaluate both sides of the inequality for a certified nontrivial `y`.
pub fn check_inequality(problem: &BvpProblem, y: &GridFunction) -> Result<LyapunovReport> {
    let p = problem.params;
    if y.len() != p.rows() {
        return Err(domain(format!("solution needs b+3 = {} samples, got {}", p.rows(), y.len())));
    }
    let norm = y.sup_norm();
    if norm <= TRIVIAL_NORM {
        return Err(Error::TrivialSolution { norm });
    }
    let residual = certify(problem, y.values())?;
    if !(residual <= CERTIFY_TOL) {
        return Err(Error::NotASolution { residual, tolerance: CERTIFY_TOL });
    }
    // the clamped point α-2 is not part of [α-1, α+b]
    let eta = y.values()[1..].iter().copied().fold(f64::MIN, f64::max);
    let f_eta = problem.f.eval(eta);
    if !(f_eta > 0.0) {
        return Err(domain(format!("f(eta) = {f_eta} at eta = {eta}: the bound's quotient is undefined")));
    }
    let bound_c = lyapunov_bound(p);
    let h_sum: f64 = problem.h.iter().map(|h| (problem.lambda * h).abs()).sum();
    let rhs = bound_c * eta / f_eta;
    let margin = h_sum - rhs;
    Ok(LyapunovReport {
        bound_c,
        h_sum,
        eta,
        f_eta,
        lhs: h_sum,
        rhs,
        holds: margin >= -HOLD_SLACK * rhs.max(1.0),
        margin,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub lambda_star: f64,
    /// Nonnegative, sup-norm 1, on all `b+3` lattice points.
    pub y_star: GridFunction,
    pub iterations: usize,
    /// `‖K x - ρ x‖∞` on the square block, `x` with sup-norm 1.
    pub residual: f64,
}

pub const POWER_DRIFT_TOL: f64 = 1e-12;
pub const POWER_MAX_ITER: usize = 100_000;

/// `K[i][s] = G(α-1+i, s) h[s] / Γ(α)`: row `i` is the abscissa `s+α-1` that
/// column `s` reads, so `y = λ K y` is the linear problem on `[α-1, α+b-1]`.
pub fn perron_matrix(p: GreenParams, h: &[f64]) -> Result<Matrix> {
    if h.len() != p.cols() {
        return Err(domain(format!("h needs b+1 = {} samples, got {}", p.cols(), h.len())));
    }
    if h.iter().any(|&v| !(v >= 0.0)) {
        return Err(domain("h must be nonnegative"));
    }
    let kernel = green_kernel(p);
    let inv_gamma = 1.0 / gamma(p.alpha().value());
    Ok(Matrix::from_fn(p.cols(), p.cols(), |i, s| kernel.get(i + 1, s) * h[s] * inv_gamma))
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Smallest λ > 0 for which `y = λ/Γ(α) Σ G h y` has a nontrivial solution,
/// by power iteration on the nonnegative kernel matrix.
pub fn perron_smallest_lambda(p: GreenParams, h: &[f64]) -> Result<EigenResult> {
    let k = perron_matrix(p, h)?;
    if k.max_abs() == 0.0 {
        return Err(Error::ZeroKernel);
    }
    let n = k.rows();
    let mut x = vec![1.0; n];
    let mut rho = f64::NAN;
    let mut drift = f64::INFINITY;
    let mut iterations = 0;
    while iterations < POWER_MAX_ITER {
        iterations += 1;
        let z = k.mul_vec(&x);
        let estimate = x.iter().zip(&z).map(|(a, b)| a * b).sum::<f64>() / x.iter().map(|a| a * a).sum::<f64>();
        let scale = sup(&z);
        x = z.into_iter().map(|v| v / scale).collect();
        drift = (estimate - rho).abs();
        rho = estimate;
        if drift < POWER_DRIFT_TOL * rho.abs() {
            break;
        }
    }
    if !(drift < POWER_DRIFT_TOL * rho.abs()) {
        return Err(Error::NoConvergence { iterations, residual: drift });
    }
    let kx = k.mul_vec(&x);
    let residual = kx.iter().zip(&x).fold(0.0f64, |m, (a, b)| m.max((a - rho * b).abs()));

    // extend to every lattice point through the full kernel: y = λ* W x
    let lambda_star = 1.0 / rho;
    let kernel = green_kernel(p);
    let inv_gamma = 1.0 / gamma(p.alpha().value());
    let mut y: Vec<f64> = (0..p.rows())
        .map(|row| lambda_star * (0..n).map(|s| kernel.get(row, s) * h[s] * inv_gamma * x[s]).sum::<f64>())
        .collect();
    let top = sup(&y);
    y.iter_mut().for_each(|v| *v /= top);
    Ok(EigenResult { lambda_star, y_star: GridFunction::new(solution_lattice(p.alpha()), y)?, iterations, residual })
}

pub const BISECTION_SCAN: usize = 4096;

/// Smallest positive root of `det(I - λK)`, bracketed by the row-sum bounds
/// on the Perron root and refined by bisection. Independent of the power
/// iteration.
pub fn smallest_lambda_bisection(p: GreenParams, h: &[f64]) -> Result<f64> {
    let k = perron_matrix(p, h)?;
    let n = k.rows();
    let row_sums: Vec<f64> = (0..n).map(|i| k.row(i).iter().sum()).collect();
    let (lo_rho, hi_rho) = row_sums.iter().fold((f64::MAX, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    if hi_rho == 0.0 {
        return Err(Error::ZeroKernel);
    }
    let charpoly = |lambda: f64| determinant(&Matrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } - lambda * k[(i, j)]));

    let start = (1.0 - 1e-9) / hi_rho;
    let end = if lo_rho > 0.0 { (1.0 + 1e-9) / lo_rho } else { 1e3 / hi_rho };
    let mut a = start;
    let mut da = charpoly(a);
    let mut bracket = None;
    for i in 1..=BISECTION_SCAN {
        let b = start + (end - start) * i as f64 / BISECTION_SCAN as f64;
        let db = charpoly(b);
        if db == 0.0 {
            return Ok(b);
        }
        if da.signum() != db.signum() {
            bracket = Some((a, b, da));
            break;
        }
        a = b;
        da = db;
    }
    let (mut a, mut b, da) = bracket.ok_or(Error::NoConvergence { iterations: BISECTION_SCAN, residual: f64::NAN })?;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let dm = charpoly(mid);
        if dm == 0.0 {
            return Ok(mid);
        }
        if dm.signum() == da.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepStatus {
    Ok,
    Degenerate(String),
    Error(String),
}

/// One `(α, b)` cell of [`bound_sweep`], with `h ≡ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub b: u32,
    pub bound_c: f64,
    pub g_max: f64,
    pub lambda_star: f64,
    pub lambda_bisection: f64,
    /// `λ*·Σ|h| = λ*(b+1)`.
    pub lambda_sum: f64,
    pub margin: f64,
    pub holds: bool,
    /// `|C·G_max/Γ(α) - 1|`.
    pub duality_error: f64,
    pub status: SweepStatus,
}

impl SweepRow {
    fn failed(alpha: f64, b: u32, status: SweepStatus) -> Self {
        SweepRow {
            alpha,
            b,
            bound_c: f64::NAN,
            g_max: f64::NAN,
            lambda_star: f64::NAN,
            lambda_bisection: f64::NAN,
            lambda_sum: f64::NAN,
            margin: f64::NAN,
            holds: false,
            duality_error: f64::NAN,
            status,
        }
    }
}

fn sweep_cell(alpha: f64, b: u32) -> SweepRow {
    let p = match GreenParams::new(alpha, b) {
        Ok(p) => p,
        Err(e @ Error::Degenerate(_)) => return SweepRow::failed(alpha, b, SweepStatus::Degenerate(e.to_string())),
        Err(e) => return SweepRow::failed(alpha, b, SweepStatus::Error(e.to_string())),
    };
    let h = vec![1.0; p.cols()];
    let bound_c = lyapunov_bound(p);
    let g_max = green_max_closed_form(p);
    let duality_error = (bound_c * g_max / gamma(alpha) - 1.0).abs();
    let (eigen, bisect) = match (perron_smallest_lambda(p, &h), smallest_lambda_bisection(p, &h)) {
        (Ok(e), Ok(l)) => (e, l),
        (Err(e), _) | (_, Err(e)) => {
            let mut row = SweepRow::failed(alpha, b, SweepStatus::Error(e.to_string()));
            row.bound_c = bound_c;
            row.g_max = g_max;
            row.duality_error = duality_error;
            return row;
        }
    };
    let lambda_sum = eigen.lambda_star * (b + 1) as f64;
    let margin = lambda_sum - bound_c;
    SweepRow {
        alpha,
        b,
        bound_c,
        g_max,
        lambda_star: eigen.lambda_star,
        lambda_bisection: bisect,
        lambda_sum,
        margin,
        holds: margin >= -HOLD_SLACK * bound_c.max(1.0),
        duality_error,
        status: SweepStatus::Ok,
    }
}

/// Evaluate the bound pipeline over a grid; per-cell failures are recorded
/// in the row and the sweep continues. Rows come out in `alpha`-major order.
pub fn bound_sweep(alphas: &[f64], bs: &[u32]) -> Vec<SweepRow> {
    alphas.iter().flat_map(|&a| bs.iter().map(move |&b| sweep_cell(a, b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::Nonlinearity;

    fn p(alpha: f64, b: u32) -> GreenParams {
        GreenParams::new(alpha, b).unwrap()
    }

    #[test]
    fn bound_value() {
        let c = lyapunov_bound(p(1.5, 3));
        assert!((c - 0.3875).abs() < 1e-12, "{c}");
    }

    #[test]
    fn bound_is_gamma_over_max() {
        for alpha in [1.05, 1.5, 1.95] {
            for b in [1, 4, 40] {
                let q = p(alpha, b);
                let r = lyapunov_bound(q) * green_max_closed_form(q) / gamma(alpha);
                assert!((r - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn trivial_solution_rejected() {
        let q = p(1.5, 3);
        let prob = BvpProblem::new(q, vec![1.0; 4], 1.0, Nonlinearity::Linear).unwrap();
        let y = GridFunction::new(solution_lattice(q.alpha()), vec![0.0; 6]).unwrap();
        assert!(matches!(check_inequality(&prob, &y), Err(Error::TrivialSolution { .. })));
    }

    #[test]
    fn non_solution_rejected() {
        let q = p(1.5, 3);
        let prob = BvpProblem::new(q, vec![1.0; 4], 1.0, Nonlinearity::Linear).unwrap();
        let y = GridFunction::new(solution_lattice(q.alpha()), vec![1.0; 6]).unwrap();
        assert!(matches!(check_inequality(&prob, &y), Err(Error::NotASolution { .. })));
    }

    #[test]
    fn perron_solution_checks_out() {
        let q = p(1.5, 3);
        let h = vec![1.0; 4];
        let e = perron_smallest_lambda(q, &h).unwrap();
        assert!(e.residual <= 1e-10);
        assert!(e.y_star.values().iter().all(|&v| v >= 0.0));
        assert!((e.y_star.sup_norm() - 1.0).abs() < 1e-15);
        let prob = BvpProblem::new(q, h, e.lambda_star, Nonlinearity::Linear).unwrap();
        let report = check_inequality(&prob, &e.y_star).unwrap();
        assert!(report.holds);
        assert!((report.lhs - 4.0 * e.lambda_star).abs() < 1e-14);
    }

    #[test]
    fn zero_forcing_is_zero_kernel() {
        assert_eq!(perron_smallest_lambda(p(1.5, 2), &[0.0; 3]).unwrap_err(), Error::ZeroKernel);
        assert!(perron_smallest_lambda(p(1.5, 2), &[1.0, -1.0, 1.0]).is_err());
    }

    #[test]
    fn sweep_marks_degenerate() {
        let rows = bound_sweep(&[1.5, 2.0], &[0, 2]);
        assert_eq!(rows.len(), 4);
        assert!(matches!(rows[0].status, SweepStatus::Error(_)));
        assert_eq!(rows[1].status, SweepStatus::Ok);
        assert!(matches!(rows[2].status, SweepStatus::Error(_)));
        assert!(matches!(rows[3].status, SweepStatus::Degenerate(_)));
    }
}
