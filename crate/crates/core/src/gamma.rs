//! Signed log-gamma and falling-factorial powers on exact lattice abscissae.
//!
//! Every abscissa and exponent in this crate has the form `m·α + n`. Keeping
//! the integer pair around lets the pole convention for `t^(ν)` be decided by
//! integer arithmetic instead of by comparing rounded floats.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{domain, Error, Result};

/// Integrality tolerance for the real-valued (best-effort) gamma path.
pub const POLE_TOL: f64 = 1e-12;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// (n-1)! for n = 1..=21, exact in f64 up to 18!; used for integer arguments.
const FACTORIAL: [f64; 21] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
];

/// A fractional order α. Operator-level APIs accept any α > 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 {
            Ok(Order(alpha))
        } else {
            Err(domain(format!("order must be a finite positive real, got {alpha}")))
        }
    }

    /// An order admissible for the boundary value problem, 1 < α ≤ 2.
    pub fn bvp(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 1.0 && alpha <= 2.0 {
            Ok(Order(alpha))
        } else {
            Err(domain(format!("boundary value problems need 1 < alpha <= 2, got {alpha}")))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// α = 2, where the Green's function denominator vanishes.
    pub fn is_degenerate(self) -> bool {
        self.0 == 2.0
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The abscissa `m·α + n`, realized against an [`Order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridValue {
    pub m: i32,
    pub n: i64,
}

impl GridValue {
    pub const ZERO: GridValue = GridValue { m: 0, n: 0 };

    pub const fn new(m: i32, n: i64) -> Self {
        GridValue { m, n }
    }

    pub const fn int(n: i64) -> Self {
        GridValue { m: 0, n }
    }

    /// `α + n`.
    pub const fn alpha_plus(n: i64) -> Self {
        GridValue { m: 1, n }
    }

    pub fn value(self, order: Order) -> f64 {
        self.m as f64 * order.0 + self.n as f64
    }

    /// Pole test for Γ at this abscissa.
    ///
    /// With `m = 0` this is `n ≤ 0`. With `m ≠ 0` the realized value can only
    /// be an integer when `m·α` is, which is decided on the order itself; for
    /// 1 < α < 2 and `|m| = 1` it never is.
    pub fn is_gamma_pole(self, order: Order) -> bool {
        if self.m == 0 {
            return self.n <= 0;
        }
        let scaled = self.m as f64 * order.0;
        if scaled.fract() != 0.0 {
            return false;
        }
        scaled as i64 + self.n <= 0
    }

    pub fn shift(self, k: i64) -> Self {
        GridValue { m: self.m, n: self.n + k }
    }

    /// Render as `alpha+n`, `2alpha-1`, `3`, ...
    pub fn label(self) -> String {
        let head = match self.m {
            0 => return self.n.to_string(),
            1 => "alpha".to_string(),
            -1 => "-alpha".to_string(),
            m => format!("{m}alpha"),
        };
        if self.n >= 0 {
            format!("{head}+{}", self.n)
        } else {
            format!("{head}{}", self.n)
        }
    }
}

impl Add for GridValue {
    type Output = GridValue;
    fn add(self, rhs: GridValue) -> GridValue {
        GridValue { m: self.m + rhs.m, n: self.n + rhs.n }
    }
}

impl Sub for GridValue {
    type Output = GridValue;
    fn sub(self, rhs: GridValue) -> GridValue {
        GridValue { m: self.m - rhs.m, n: self.n - rhs.n }
    }
}

impl Neg for GridValue {
    type Output = GridValue;
    fn neg(self) -> GridValue {
        GridValue { m: -self.m, n: -self.n }
    }
}

/// Γ(x) as a sign and `ln|Γ(x)|`. Sign 0 marks a pole, whose reciprocal is 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogGamma {
    pub sign: i8,
    pub log_abs: f64,
}

impl SignedLogGamma {
    pub const POLE: SignedLogGamma = SignedLogGamma { sign: 0, log_abs: f64::INFINITY };

    pub fn is_pole(self) -> bool {
        self.sign == 0
    }

    /// Γ(x) itself; ±∞ is never produced for a pole, NaN is.
    pub fn value(self) -> f64 {
        if self.is_pole() {
            f64::NAN
        } else {
            self.sign as f64 * self.log_abs.exp()
        }
    }

    /// 1/Γ(x), which is 0 at a pole.
    pub fn reciprocal(self) -> f64 {
        if self.is_pole() {
            0.0
        } else {
            self.sign as f64 * (-self.log_abs).exp()
        }
    }
}

fn sin_pi(x: f64) -> f64 {
    // reduce to [-1, 1) first so large arguments keep their accuracy
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    (PI * r).sin()
}

// ln Γ(x) for x >= 0.5.
fn lanczos_ln_gamma(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Signed log-gamma of a real argument.
///
/// Nonpositive integers within [`POLE_TOL`] are reported as poles. Negative
/// non-integers go through the reflection formula.
pub fn signed_log_gamma(x: f64) -> SignedLogGamma {
    if x.is_nan() {
        return SignedLogGamma { sign: 1, log_abs: f64::NAN };
    }
    let nearest = x.round();
    if x <= 0.5 && nearest <= 0.0 && (x - nearest).abs() <= POLE_TOL {
        return SignedLogGamma::POLE;
    }
    if x == nearest && x >= 1.0 && x <= FACTORIAL.len() as f64 {
        return SignedLogGamma { sign: 1, log_abs: FACTORIAL[x as usize - 1].ln() };
    }
    if x >= 0.5 {
        return SignedLogGamma { sign: 1, log_abs: lanczos_ln_gamma(x) };
    }
    // Γ(x) Γ(1-x) = π / sin(πx), and Γ(1-x) > 0 here.
    let s = sin_pi(x);
    SignedLogGamma {
        sign: if s > 0.0 { 1 } else { -1 },
        log_abs: PI.ln() - s.abs().ln() - lanczos_ln_gamma(1.0 - x),
    }
}

/// Signed log-gamma at an exact abscissa; pole detection is integer-exact.
pub fn signed_log_gamma_at(x: GridValue, order: Order) -> SignedLogGamma {
    if x.is_gamma_pole(order) {
        return SignedLogGamma::POLE;
    }
    let v = x.value(order);
    let g = signed_log_gamma(v);
    if g.is_pole() {
        // realized value rounds onto a pole the lattice says is not there;
        // evaluate just off it rather than report a false pole
        return signed_log_gamma(v + v.abs().max(1.0) * 4.0 * f64::EPSILON);
    }
    g
}

/// Γ(x) for real x; NaN at poles.
pub fn gamma(x: f64) -> f64 {
    signed_log_gamma(x).value()
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    signed_log_gamma(x).log_abs
}

fn small_factorial(x: f64) -> Option<f64> {
    (x == x.round() && x >= 1.0 && x <= FACTORIAL.len() as f64).then(|| FACTORIAL[x as usize - 1])
}

// Γ(top)/Γ(bottom) for non-pole arguments; integer pairs stay exact.
fn ratio(top: f64, bottom: f64, num: SignedLogGamma, den: SignedLogGamma) -> f64 {
    if let (Some(a), Some(b)) = (small_factorial(top), small_factorial(bottom)) {
        return a / b;
    }
    (num.sign * den.sign) as f64 * (num.log_abs - den.log_abs).exp()
}

/// The falling-factorial power `t^(ν) = Γ(t+1) / Γ(t+1-ν)`.
///
/// Returns exactly 0 when `t+1-ν` is a pole and `t+1` is not. A pole in the
/// numerator argument is rejected, whether or not the denominator is also a
/// pole.
pub fn falling_factorial(t: GridValue, nu: GridValue, order: Order) -> Result<f64> {
    let top = t.shift(1);
    let bottom = top - nu;
    if top == bottom && !top.is_gamma_pole(order) {
        return Ok(1.0);
    }
    let num = signed_log_gamma_at(top, order);
    let den = signed_log_gamma_at(bottom, order);
    match (num.is_pole(), den.is_pole()) {
        (false, true) => Ok(0.0),
        (true, _) => Err(Error::Domain(format!(
            "falling factorial undefined: Gamma({}) is a pole at alpha = {order}",
            top.label()
        ))),
        (false, false) => Ok(ratio(top.value(order), bottom.value(order), num, den)),
    }
}

/// Real-argument falling factorial with tolerance-based pole detection.
pub fn falling_factorial_real(t: f64, nu: f64) -> Result<f64> {
    if nu == 0.0 {
        if signed_log_gamma(t + 1.0).is_pole() {
            return Err(domain(format!("falling factorial undefined: Gamma({}) is a pole", t + 1.0)));
        }
        return Ok(1.0);
    }
    let num = signed_log_gamma(t + 1.0);
    let den = signed_log_gamma(t + 1.0 - nu);
    match (num.is_pole(), den.is_pole()) {
        (false, true) => Ok(0.0),
        (true, _) => Err(domain(format!("falling factorial undefined: Gamma({}) is a pole", t + 1.0))),
        (false, false) => Ok(ratio(t + 1.0, t + 1.0 - nu, num, den)),
    }
}
