use super::direct::solution_lattice;
use super::kernel::{green_kernel, GreenParams};
use crate::calculus::GridFunction;
use crate::error::{domain, Error, Result};
use crate::gamma::gamma;
use crate::linalg::Matrix;

/// A nondecreasing nonlinearity `f: [0, ∞) → [0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Nonlinearity {
    Linear,
    /// `max(y, 0)^p`, p ≥ 0.
    Power(f64),
    Exp,
    /// Piecewise-linear through the knots, constant beyond the ends.
    Table(Vec<(f64, f64)>),
}

impl Nonlinearity {
    pub fn power(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 0.0 {
            Ok(Nonlinearity::Power(p))
        } else {
            Err(domain(format!("power nonlinearity needs p >= 0, got {p}")))
        }
    }

    /// Validated table: at least two knots, strictly increasing abscissae,
    /// nondecreasing nonnegative values.
    pub fn table(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(domain("nonlinearity table needs at least two knots"));
        }
        if knots.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite() || y < 0.0) {
            return Err(domain("nonlinearity table values must be finite and nonnegative"));
        }
        for w in knots.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(domain("nonlinearity table abscissae must increase strictly"));
            }
            if w[1].1 < w[0].1 {
                return Err(domain(format!("nonlinearity table decreases between {} and {}", w[0].0, w[1].0)));
            }
        }
        Ok(Nonlinearity::Table(knots))
    }

    /// `linear`, `exp` or `pow:p`.
    pub fn parse(spec: &str) -> Result<Self> {
        match spec {
            "linear" => Ok(Nonlinearity::Linear),
            "exp" => Ok(Nonlinearity::Exp),
            s => match s.strip_prefix("pow:") {
                Some(p) => Nonlinearity::power(p.parse().map_err(|_| domain(format!("bad power exponent {p:?}")))?),
                None => Err(domain(format!("unknown nonlinearity {s:?} (expected linear, pow:p, exp or a table)"))),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            Nonlinearity::Linear => "linear".into(),
            Nonlinearity::Power(p) => format!("pow:{p}"),
            Nonlinearity::Exp => "exp".into(),
            Nonlinearity::Table(k) => format!("table({} knots)", k.len()),
        }
    }

    pub fn eval(&self, y: f64) -> f64 {
        match self {
            Nonlinearity::Linear => y,
            Nonlinearity::Power(p) => y.max(0.0).powf(*p),
            Nonlinearity::Exp => y.exp(),
            Nonlinearity::Table(knots) => {
                let (first, last) = (knots[0], knots[knots.len() - 1]);
                if y <= first.0 {
                    return first.1;
                }
                if y >= last.0 {
                    return last.1;
                }
                let i = knots.partition_point(|&(x, _)| x <= y);
                let ((x0, y0), (x1, y1)) = (knots[i - 1], knots[i]);
                y0 + (y1 - y0) * (y - x0) / (x1 - x0)
            }
        }
    }
}

/// `(α, b, h, λ, f)` for `y = λ/Γ(α) Σ_s G(t,s) h[s] f(y(s+α-1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct BvpProblem {
    pub params: GreenParams,
    pub h: Vec<f64>,
    pub lambda: f64,
    pub f: Nonlinearity,
}

impl BvpProblem {
    pub fn new(params: GreenParams, h: Vec<f64>, lambda: f64, f: Nonlinearity) -> Result<Self> {
        if h.len() != params.cols() {
            return Err(domain(format!("h needs b+1 = {} samples, got {}", params.cols(), h.len())));
        }
        if h.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(domain("h must be finite and nonnegative"));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(domain(format!("lambda must be positive, got {lambda}")));
        }
        Ok(BvpProblem { params, h, lambda, f })
    }

    /// `W[k][s] = G(α-2+k, s) h[s] / Γ(α)`, without λ.
    pub fn weights(&self) -> Matrix {
        let kernel = green_kernel(self.params);
        let inv_gamma = 1.0 / gamma(self.params.alpha().value());
        Matrix::from_fn(self.params.rows(), self.params.cols(), |k, s| kernel.get(k, s) * self.h[s] * inv_gamma)
    }
}

fn apply(problem: &BvpProblem, weights: &Matrix, y: &[f64]) -> Vec<f64> {
    // column s reads y at α-1+s, which is row s+1
    let fy: Vec<f64> = (0..problem.params.cols()).map(|s| problem.f.eval(y[s + 1])).collect();
    weights.mul_vec(&fy).into_iter().map(|v| problem.lambda * v).collect()
}

/// The fixed-point map `T(y)(t) = λ/Γ(α) Σ_s G(t,s) h[s] f(y(s+α-1))` on all
/// `b+3` lattice points.
///
/// With σ = -1 this is the Green representation of `Δ^α y = λ h f(y)`; it is
/// the orientation that keeps iterates in the nonnegative cone.
pub fn fixed_point_map(problem: &BvpProblem, y: &[f64]) -> Result<Vec<f64>> {
    if y.len() != problem.params.rows() {
        return Err(domain(format!("y needs b+3 = {} samples, got {}", problem.params.rows(), y.len())));
    }
    Ok(apply(problem, &problem.weights(), y))
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn relative_residual(y: &[f64], ty: &[f64]) -> f64 {
    let diff = y.iter().zip(ty).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    diff / sup(y).max(1.0)
}

/// `‖y - T(y)‖∞ / max(1, ‖y‖∞)`.
pub fn certify(problem: &BvpProblem, y: &[f64]) -> Result<f64> {
    let ty = fixed_point_map(problem, y)?;
    Ok(relative_residual(y, &ty))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub omega: f64,
    pub initial: Option<Vec<f64>>,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        FixedPointOptions { tol: 1e-10, max_iter: 10_000, omega: 0.5, initial: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FixedPointOutcome {
    /// Certified: `residual < 10·tol`.
    Converged { y: GridFunction, iterations: usize, residual: f64 },
    NoConvergence { last: GridFunction, iterations: usize, residual: f64 },
}

impl FixedPointOutcome {
    pub fn converged(&self) -> Option<&GridFunction> {
        match self {
            FixedPointOutcome::Converged { y, .. } => Some(y),
            FixedPointOutcome::NoConvergence { .. } => None,
        }
    }

    pub fn residual(&self) -> f64 {
        match self {
            FixedPointOutcome::Converged { residual, .. } | FixedPointOutcome::NoConvergence { residual, .. } => *residual,
        }
    }

    pub fn iterations(&self) -> usize {
        match self {
            FixedPointOutcome::Converged { iterations, .. } | FixedPointOutcome::NoConvergence { iterations, .. } => {
                *iterations
            }
        }
    }

    pub fn into_result(self) -> Result<GridFunction> {
        match self {
            FixedPointOutcome::Converged { y, .. } => Ok(y),
            FixedPointOutcome::NoConvergence { iterations, residual, .. } => {
                Err(Error::NoConvergence { iterations, residual })
            }
        }
    }
}

fn check_options(opts: &FixedPointOptions, len: usize) -> Result<Vec<f64>> {
    if !(opts.omega > 0.0 && opts.omega <= 1.0) {
        return Err(domain(format!("damping must lie in (0, 1], got {}", opts.omega)));
    }
    if !(opts.tol > 0.0) {
        return Err(domain(format!("tolerance must be positive, got {}", opts.tol)));
    }
    match &opts.initial {
        Some(v) if v.len() != len => Err(domain(format!("initial iterate needs {len} samples, got {}", v.len()))),
        Some(v) => Ok(v.clone()),
        None => Ok(vec![0.0; len]),
    }
}

/// Damped Picard iteration `y ← (1-ω) y + ω T(y)`, stopping when the
/// relative step drops below `tol`.
pub fn solve_nonlinear_fixed_point(problem: &BvpProblem, opts: &FixedPointOptions) -> Result<FixedPointOutcome> {
    let lattice = solution_lattice(problem.params.alpha());
    let mut y = check_options(opts, problem.params.rows())?;
    let weights = problem.weights();
    let mut residual = f64::INFINITY;
    for iter in 1..=opts.max_iter {
        let ty = apply(problem, &weights, &y);
        let next: Vec<f64> = y.iter().zip(&ty).map(|(a, b)| (1.0 - opts.omega) * a + opts.omega * b).collect();
        let step = relative_residual(&next, &y);
        y = next;
        if !step.is_finite() {
            residual = f64::INFINITY;
            return Ok(FixedPointOutcome::NoConvergence { last: GridFunction::new(lattice, y)?, iterations: iter, residual });
        }
        if step < opts.tol {
            residual = relative_residual(&y, &apply(problem, &weights, &y));
            if residual < 10.0 * opts.tol {
                return Ok(FixedPointOutcome::Converged { y: GridFunction::new(lattice, y)?, iterations: iter, residual });
            }
        }
    }
    if residual.is_infinite() {
        residual = relative_residual(&y, &apply(problem, &weights, &y));
    }
    Ok(FixedPointOutcome::NoConvergence { last: GridFunction::new(lattice, y)?, iterations: opts.max_iter, residual })
}

/// Fixed point for `f = pow:p`, p ≠ 1, found through homogeneity.
///
/// The nontrivial fixed point of `y = λ W y^p` repels plain Picard iteration
/// for p > 1 (multiplier p along the solution ray, `1 + ω(p-1)` damped). The
/// map is homogeneous of degree p, so the direction is found by damped Picard
/// on the normalized map `u ← N(W u^p)` and the scale is then exact:
/// with `W u^p = μ u`, `y = (λμ)^{1/(1-p)} u`. The result is certified against
/// the unnormalized map like any other fixed point.
pub fn solve_homogeneous_fixed_point(problem: &BvpProblem, opts: &FixedPointOptions) -> Result<FixedPointOutcome> {
    let p = match problem.f {
        Nonlinearity::Power(p) if p > 0.0 && p != 1.0 => p,
        ref f => return Err(domain(format!("homogeneous solver needs pow:p with p > 0, p != 1; got {}", f.label()))),
    };
    let rows = problem.params.rows();
    let cols = problem.params.cols();
    let lattice = solution_lattice(problem.params.alpha());
    let weights = problem.weights();
    if weights.max_abs() == 0.0 {
        return Err(Error::ZeroKernel);
    }
    let start = check_options(opts, rows)?;
    let mut u: Vec<f64> = match &opts.initial {
        Some(_) => start[1..=cols].to_vec(),
        None => vec![1.0; cols],
    };
    // F(u)_i = Σ_s W[i+1][s] u_s^p over the square block
    let image = |u: &[f64]| -> Vec<f64> {
        let up: Vec<f64> = u.iter().map(|v| v.max(0.0).powf(p)).collect();
        (0..cols).map(|i| weights.row(i + 1).iter().zip(&up).map(|(w, x)| w * x).sum()).collect()
    };

    let mut iterations = 0;
    let mut converged = false;
    for iter in 1..=opts.max_iter {
        iterations = iter;
        let v = image(&u);
        let mu = sup(&v);
        if !(mu > 0.0) || !mu.is_finite() {
            break;
        }
        let next: Vec<f64> = u.iter().zip(&v).map(|(a, b)| (1.0 - opts.omega) * a + opts.omega * b / mu).collect();
        let step = relative_residual(&next, &u);
        u = next;
        if step < opts.tol {
            converged = true;
            break;
        }
    }

    let mu = sup(&image(&u));
    let scale = (problem.lambda * mu).powf(1.0 / (1.0 - p));
    let inner: Vec<f64> = u.iter().map(|v| scale * v / sup(&u)).collect();
    // one exact application of T extends the inner samples to the full lattice
    let mut seed = vec![0.0; rows];
    seed[1..=cols].copy_from_slice(&inner);
    let y = apply(problem, &weights, &seed);
    let residual = relative_residual(&y, &apply(problem, &weights, &y));
    let y = GridFunction::new(lattice, y)?;
    if converged && residual < 10.0 * opts.tol {
        Ok(FixedPointOutcome::Converged { y, iterations, residual })
    } else {
        Ok(FixedPointOutcome::NoConvergence { last: y, iterations, residual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::solve_linear_bvp_direct;

    fn problem(alpha: f64, b: u32, lambda: f64, f: Nonlinearity) -> BvpProblem {
        BvpProblem::new(GreenParams::new(alpha, b).unwrap(), vec![1.0; b as usize + 1], lambda, f).unwrap()
    }

    #[test]
    fn nonlinearity_parsing_and_eval() {
        assert_eq!(Nonlinearity::parse("linear").unwrap(), Nonlinearity::Linear);
        assert_eq!(Nonlinearity::parse("pow:2").unwrap(), Nonlinearity::Power(2.0));
        assert!(Nonlinearity::parse("pow:-1").is_err());
        assert!(Nonlinearity::parse("cubic").is_err());
        assert_eq!(Nonlinearity::Power(2.0).eval(-3.0), 0.0);
        assert_eq!(Nonlinearity::Power(0.0).eval(0.0), 1.0);
        let t = Nonlinearity::table(vec![(0.0, 0.0), (1.0, 2.0), (3.0, 2.5)]).unwrap();
        assert_eq!(t.eval(0.5), 1.0);
        assert_eq!(t.eval(2.0), 2.25);
        assert_eq!(t.eval(9.0), 2.5);
        assert_eq!(t.eval(-1.0), 0.0);
    }

    #[test]
    fn table_validation() {
        assert!(Nonlinearity::table(vec![(0.0, 1.0)]).is_err());
        assert!(Nonlinearity::table(vec![(0.0, 1.0), (1.0, 0.5)]).is_err());
        assert!(Nonlinearity::table(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(Nonlinearity::table(vec![(0.0, -1.0), (1.0, 2.0)]).is_err());
    }

    #[test]
    fn problem_validation() {
        let p = GreenParams::new(1.5, 2).unwrap();
        assert!(BvpProblem::new(p, vec![1.0; 2], 1.0, Nonlinearity::Linear).is_err());
        assert!(BvpProblem::new(p, vec![1.0, -1.0, 1.0], 1.0, Nonlinearity::Linear).is_err());
        assert!(BvpProblem::new(p, vec![1.0; 3], 0.0, Nonlinearity::Linear).is_err());
    }

    #[test]
    fn linear_below_threshold_goes_to_zero() {
        let prob = problem(1.5, 4, 0.01, Nonlinearity::Linear);
        let opts = FixedPointOptions { initial: Some(vec![1.0; 7]), ..Default::default() };
        let out = solve_nonlinear_fixed_point(&prob, &opts).unwrap();
        let y = out.converged().expect("contraction converges");
        assert!(y.sup_norm() < 1e-9);
    }

    #[test]
    fn constant_nonlinearity_is_one_linear_solve() {
        let lambda = 0.7;
        let prob = problem(1.4, 5, lambda, Nonlinearity::Power(0.0));
        let out = solve_nonlinear_fixed_point(&prob, &FixedPointOptions::default()).unwrap();
        let y = out.converged().unwrap();
        // T is constant, its value solves Δ^α y = λh, i.e. -Δ^α y = -λh
        let direct = solve_linear_bvp_direct(1.4, 5, &[-lambda; 6]).unwrap();
        for (a, b) in y.values().iter().zip(direct.values()) {
            assert!((a - b).abs() <= 1e-9 * direct.sup_norm());
        }
    }

    #[test]
    fn homogeneous_requires_power() {
        let prob = problem(1.5, 3, 1.0, Nonlinearity::Linear);
        assert!(solve_homogeneous_fixed_point(&prob, &FixedPointOptions::default()).is_err());
    }

    #[test]
    fn plain_picard_collapses_for_square() {
        let prob = problem(1.5, 3, 0.5, Nonlinearity::Power(2.0));
        let out = solve_nonlinear_fixed_point(&prob, &FixedPointOptions::default()).unwrap();
        assert_eq!(out.converged().unwrap().sup_norm(), 0.0);
    }

    #[test]
    fn homogeneous_square_is_certified() {
        let prob = problem(1.5, 3, 0.5, Nonlinearity::Power(2.0));
        let out = solve_homogeneous_fixed_point(&prob, &FixedPointOptions::default()).unwrap();
        let y = out.converged().expect("normalized iteration converges").clone();
        assert!(y.sup_norm() > 1e-3);
        assert!(certify(&prob, y.values()).unwrap() < 1e-9);
        assert_eq!(y.values()[0], 0.0);
    }
}
