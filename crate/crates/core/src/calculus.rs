//! Grid functions on shifted integer lattices and the discrete operators
//! acting on them: forward differences, fractional sums and fractional
//! differences of order 1 < α ≤ 2.

use crate::error::{domain, Error, Result};
use crate::gamma::{falling_factorial, gamma, GridValue, Order};

/// The base point `a` of a lattice `N_a = {a, a+1, ...}`.
///
/// `Lattice` keeps the exact `m·α + n` form relative to an order; `Real` is
/// what remains after shifting by an order that is not expressible that way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Abscissa {
    Lattice { point: GridValue, order: Order },
    Real(f64),
}

impl Abscissa {
    pub fn lattice(point: GridValue, order: Order) -> Self {
        Abscissa::Lattice { point, order }
    }

    pub fn value(self) -> f64 {
        match self {
            Abscissa::Lattice { point, order } => point.value(order),
            Abscissa::Real(x) => x,
        }
    }

    pub fn shift_int(self, k: i64) -> Self {
        match self {
            Abscissa::Lattice { point, order } => Abscissa::Lattice { point: point.shift(k), order },
            Abscissa::Real(x) => Abscissa::Real(x + k as f64),
        }
    }

    fn shift_real(self, nu: f64) -> Self {
        Abscissa::Real(self.value() + nu)
    }

    pub fn label(self) -> String {
        match self {
            Abscissa::Lattice { point, .. } => point.label(),
            Abscissa::Real(x) => format!("{x}"),
        }
    }
}

/// Samples `v_0, ..., v_N` at `a, a+1, ..., a+N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    base: Abscissa,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(base: Abscissa, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Length { need: 1, got: 0 });
        }
        Ok(GridFunction { base, values })
    }

    /// Samples of `f` at `a + k`, k = 0..len.
    pub fn sample(base: Abscissa, len: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let a = base.value();
        GridFunction::new(base, (0..len).map(|k| f(a + k as f64)).collect())
    }

    pub fn base(&self) -> Abscissa {
        self.base
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn abscissa(&self, k: usize) -> Abscissa {
        self.base.shift_int(k as i64)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Pointwise linear combination `a·self + b·other` on a common lattice.
    pub fn combine(&self, a: f64, other: &GridFunction, b: f64) -> Result<GridFunction> {
        if self.len() != other.len() || (self.base.value() - other.base.value()).abs() > 1e-12 {
            return Err(domain("grid functions live on different lattices"));
        }
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        Ok(GridFunction { base: self.base, values })
    }
}

/// `Δⁿ f`, with `(Δf)(t) = f(t+1) - f(t)`. The base is unchanged.
pub fn forward_difference(f: &GridFunction, n: usize) -> Result<GridFunction> {
    if f.len() < n + 1 {
        return Err(Error::Length { need: n + 1, got: f.len() });
    }
    let mut v = f.values.clone();
    for _ in 0..n {
        v = v.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Ok(GridFunction { base: f.base, values: v })
}

/// Kernel weights `w_i = (ν+i-1)^(ν-1) / Γ(ν)`, i = 0..len.
///
/// In `Δ^{-ν}f(a+ν+k) = Σ_j w_{k-j} f(a+j)` the kernel argument `t-s-1` is
/// always `ν + (k-j-1)`, so it is evaluated on the lattice of ν itself where
/// neither gamma argument can be a pole.
fn sum_weights(nu: Order, len: usize) -> Result<Vec<f64>> {
    let g = gamma(nu.value());
    (0..len as i64)
        .map(|i| falling_factorial(GridValue::alpha_plus(i - 1), GridValue::alpha_plus(-1), nu).map(|w| w / g))
        .collect()
}

fn convolve(weights: &[f64], f: &[f64]) -> Vec<f64> {
    (0..f.len()).map(|k| (0..=k).map(|j| weights[k - j] * f[j]).sum()).collect()
}

/// Fractional sum `Δ_a^{-ν} f` of real order ν > 0.
///
/// The output lives on `N_{a+ν}` and has as many samples as `f`: the value at
/// `a+ν+k` uses `f(a), ..., f(a+k)`.
pub fn fractional_sum(f: &GridFunction, nu: f64) -> Result<GridFunction> {
    let order = Order::new(nu)?;
    let w = sum_weights(order, f.len())?;
    let base = if nu.fract() == 0.0 { f.base.shift_int(nu as i64) } else { f.base.shift_real(nu) };
    Ok(GridFunction { base, values: convolve(&w, &f.values) })
}

/// Fractional sum whose order `nu` is an exact abscissa relative to the
/// order of `f`'s lattice, so the output base stays exact.
pub fn fractional_sum_exact(f: &GridFunction, nu: GridValue) -> Result<GridFunction> {
    let Abscissa::Lattice { point, order } = f.base else {
        return Err(domain("exact fractional sum needs a lattice base"));
    };
    let nu_value = nu.value(order);
    let w = sum_weights(Order::new(nu_value)?, f.len())?;
    Ok(GridFunction { base: Abscissa::Lattice { point: point + nu, order }, values: convolve(&w, &f.values) })
}

/// `Δ^α f = Δ² Δ^{-(2-α)} f` for 1 < α ≤ 2, with `Δ^{-0}` taken as the
/// identity so α = 2 is the classical second difference. Output lives on
/// `N_{a+2-α}` and has `len(f) - 2` samples.
pub fn fractional_difference(f: &GridFunction, alpha: f64) -> Result<GridFunction> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(domain(format!("fractional difference needs 1 < alpha <= 2, got {alpha}")));
    }
    if f.len() < 3 {
        return Err(Error::Length { need: 3, got: f.len() });
    }
    if alpha == 2.0 {
        return forward_difference(f, 2);
    }
    let summed = match f.base {
        Abscissa::Lattice { order, .. } if order.value() == alpha => fractional_sum_exact(f, GridValue::new(-1, 2))?,
        _ => fractional_sum(f, 2.0 - alpha)?,
    };
    forward_difference(&summed, 2)
}

/// Least-squares fit of `Δ^{-α}Δ^α y - y` onto `span{t^(α-1), t^(α-2)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositionFit {
    pub c1: f64,
    pub c2: f64,
    pub residual_norm: f64,
    /// Sup-norm of the unprojected difference.
    pub raw_norm: f64,
}

/// For `y` on `N_{α-2}` and 1 < α < 2, form `r = Δ^{-α}(Δ^α y) - y` on the
/// common lattice `N_α` and project it onto the two power functions the
/// composition can leave behind.
pub fn composition_residual(y: &GridFunction, alpha: f64) -> Result<CompositionFit> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(domain(format!("composition residual needs 1 < alpha < 2, got {alpha}")));
    }
    if y.len() < 5 {
        return Err(Error::Length { need: 5, got: y.len() });
    }
    let order = Order::new(alpha)?;
    let start = GridValue::new(1, -2);
    if y.base != Abscissa::lattice(start, order) {
        return Err(domain("composition residual expects y on the lattice alpha-2"));
    }
    let diff = fractional_difference(y, alpha)?;
    let back = fractional_sum_exact(&diff, GridValue::new(1, 0))?;
    debug_assert_eq!(back.base, Abscissa::lattice(GridValue::new(1, 0), order));

    // back[j] sits at α + j, which is y's index j + 2
    let r: Vec<f64> = back.values.iter().enumerate().map(|(j, z)| z - y.values[j + 2]).collect();
    let mut p1 = Vec::with_capacity(r.len());
    let mut p2 = Vec::with_capacity(r.len());
    for j in 0..r.len() as i64 {
        let t = GridValue::alpha_plus(j);
        p1.push(falling_factorial(t, GridValue::new(1, -1), order)?);
        p2.push(falling_factorial(t, GridValue::new(1, -2), order)?);
    }

    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let (a11, a12, a22) = (dot(&p1, &p1), dot(&p1, &p2), dot(&p2, &p2));
    let (b1, b2) = (dot(&p1, &r), dot(&p2, &r));
    let det = a11 * a22 - a12 * a12;
    if det.abs() <= 1e-14 * a11 * a22 {
        return Err(domain("power-function basis is numerically dependent"));
    }
    let c1 = (b1 * a22 - b2 * a12) / det;
    let c2 = (a11 * b2 - a12 * b1) / det;
    let residual_norm = r
        .iter()
        .zip(p1.iter().zip(&p2))
        .fold(0.0f64, |m, (ri, (x, y))| m.max((ri - c1 * x - c2 * y).abs()));
    let raw_norm = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(CompositionFit { c1, c2, residual_norm, raw_norm })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n0(values: Vec<f64>) -> GridFunction {
        GridFunction::new(Abscissa::lattice(GridValue::ZERO, Order::new(1.5).unwrap()), values).unwrap()
    }

    #[test]
    fn second_difference_of_squares() {
        let d = forward_difference(&n0(vec![0.0, 1.0, 4.0, 9.0]), 2).unwrap();
        assert_eq!(d.values(), &[2.0, 2.0]);
        assert_eq!(d.base(), n0(vec![0.0]).base());
    }

    #[test]
    fn difference_of_constant() {
        let d = forward_difference(&n0(vec![3.5; 6]), 1).unwrap();
        assert!(d.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn difference_too_short() {
        let err = forward_difference(&n0(vec![1.0, 2.0]), 2).unwrap_err();
        assert_eq!(err, Error::Length { need: 3, got: 2 });
    }

    #[test]
    fn difference_of_power_function() {
        let o = Order::new(1.5).unwrap();
        let base = GridValue::new(1, -2);
        let f: Vec<f64> = (0..10)
            .map(|k| falling_factorial(base.shift(k), GridValue::new(1, -1), o).unwrap())
            .collect();
        let d = forward_difference(&GridFunction::new(Abscissa::lattice(base, o), f).unwrap(), 1).unwrap();
        for (k, v) in d.values().iter().enumerate() {
            let expect = 0.5 * falling_factorial(base.shift(k as i64), GridValue::new(1, -2), o).unwrap();
            assert!((v - expect).abs() < 1e-10, "k = {k}: {v} vs {expect}");
        }
    }

    #[test]
    fn unit_order_sum_is_running_sum() {
        let s = fractional_sum(&n0(vec![1.0; 8]), 1.0).unwrap();
        let expect: Vec<f64> = (1..=8).map(|k| k as f64).collect();
        assert_eq!(s.values(), expect.as_slice());
        assert_eq!(s.base().value(), 1.0);
    }

    #[test]
    fn sum_of_impulse_is_kernel() {
        for nu in [0.3, 0.8, 1.4, 2.5] {
            let mut f = vec![0.0; 9];
            f[0] = 1.0;
            let s = fractional_sum(&n0(f), nu).unwrap();
            for (k, v) in s.values().iter().enumerate() {
                // t - a - 1 = ν + k - 1
                let x = nu + k as f64 - 1.0;
                let expect = gamma(x + 1.0) / gamma(x + 2.0 - nu) / gamma(nu);
                assert!((v - expect).abs() <= 1e-13 * expect.abs().max(1.0), "nu {nu} k {k}");
            }
        }
    }

    #[test]
    fn sum_rejects_nonpositive_order() {
        assert!(matches!(fractional_sum(&n0(vec![1.0]), 0.0), Err(Error::Domain(_))));
        assert!(matches!(fractional_sum(&n0(vec![1.0]), -0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn exact_sum_tracks_base() {
        let o = Order::new(1.5).unwrap();
        let f = GridFunction::new(Abscissa::lattice(GridValue::new(1, -2), o), vec![1.0; 4]).unwrap();
        let s = fractional_sum_exact(&f, GridValue::new(-1, 2)).unwrap();
        assert_eq!(s.base(), Abscissa::lattice(GridValue::ZERO, o));
    }

    #[test]
    fn order_two_difference_is_classical() {
        let d = fractional_difference(&n0(vec![0.0, 1.0, 4.0, 9.0]), 2.0).unwrap();
        assert_eq!(d.values(), &[2.0, 2.0]);
    }

    #[test]
    fn difference_annihilates_leading_power() {
        let o = Order::new(1.5).unwrap();
        let base = GridValue::new(1, -2);
        let f: Vec<f64> = (0..8)
            .map(|k| falling_factorial(base.shift(k), GridValue::new(1, -1), o).unwrap())
            .collect();
        let d = fractional_difference(&GridFunction::new(Abscissa::lattice(base, o), f).unwrap(), 1.5).unwrap();
        assert_eq!(d.len(), 6);
        assert_eq!(d.base(), Abscissa::lattice(GridValue::ZERO, o));
        assert!(d.values().iter().all(|v| v.abs() <= 1e-9), "{:?}", d.values());
    }

    #[test]
    fn difference_of_zero() {
        let d = fractional_difference(&n0(vec![0.0; 7]), 1.5).unwrap();
        assert!(d.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn difference_errors() {
        assert!(matches!(fractional_difference(&n0(vec![1.0; 5]), 1.0), Err(Error::Domain(_))));
        assert!(matches!(fractional_difference(&n0(vec![1.0; 5]), 2.5), Err(Error::Domain(_))));
        assert_eq!(fractional_difference(&n0(vec![1.0; 2]), 1.5).unwrap_err(), Error::Length { need: 3, got: 2 });
    }

    #[test]
    fn composition_of_zero() {
        let o = Order::new(1.5).unwrap();
        let y = GridFunction::new(Abscissa::lattice(GridValue::new(1, -2), o), vec![0.0; 8]).unwrap();
        let fit = composition_residual(&y, 1.5).unwrap();
        assert_eq!((fit.c1, fit.c2, fit.residual_norm), (0.0, 0.0, 0.0));
    }

    #[test]
    fn composition_needs_lattice_and_length() {
        let o = Order::new(1.5).unwrap();
        let short = GridFunction::new(Abscissa::lattice(GridValue::new(1, -2), o), vec![0.0; 4]).unwrap();
        assert!(matches!(composition_residual(&short, 1.5), Err(Error::Length { .. })));
        assert!(matches!(composition_residual(&n0(vec![0.0; 8]), 1.5), Err(Error::Domain(_))));
    }
}
