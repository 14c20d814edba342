//! Special means used by the bound catalog.
//!
//! Every mean here is either a symmetric mean of two points or a symmetric
//! difference quotient, so each is evaluated on the canonically ordered pair
//! `(lo, hi)` — symmetry then holds to the last bit. Near the diagonal the
//! textbook formulas lose roughly half the significand to cancellation, so
//! below `delta_switch = 1e-7 * (1 + max(|x|,|y|))` each mean switches to its
//! analytic limit anchored at the lower argument (a three-term series of the
//! difference quotient for the p-logarithmic family), so values stay fully
//! accurate across the diagonal instead of losing digits to cancellation.

use core::fmt;

use crate::math;
use serde::{Deserialize, Serialize};

/// Mean selector for [`evaluate_mean`].
///
/// The p-logarithmic family excludes `p ∈ {-1, 0}`: those parameters are the
/// classical limits (logarithmic and identric mean respectively) and carry
/// their own variants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MeanKind {
    Arithmetic,
    Logarithmic,
    PLogarithmic(f64),
    Identric,
    Exponential,
    CosMean,
    SinMean,
    Geometric,
}

impl MeanKind {
    /// Validated constructor for the p-logarithmic mean.
    pub fn p_logarithmic(p: f64) -> Result<MeanKind, MeansError> {
        if !p.is_finite() || p == 0.0 || p == -1.0 {
            Err(MeansError::InvalidP { p })
        } else {
            Ok(MeanKind::PLogarithmic(p))
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanKind::Arithmetic => write!(f, "A"),
            MeanKind::Logarithmic => write!(f, "L"),
            MeanKind::PLogarithmic(p) => write!(f, "L_{p}"),
            MeanKind::Identric => write!(f, "I"),
            MeanKind::Exponential => write!(f, "E"),
            MeanKind::CosMean => write!(f, "C"),
            MeanKind::SinMean => write!(f, "S"),
            MeanKind::Geometric => write!(f, "G"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeansError {
    /// The mean requires strictly positive arguments.
    NonPositiveInput { x: f64, y: f64 },
    /// p-logarithmic parameter at a removed point (or not finite).
    InvalidP { p: f64 },
}

impl fmt::Display for MeansError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeansError::NonPositiveInput { x, y } => {
                write!(f, "mean requires positive arguments, got ({x}, {y})")
            }
            MeansError::InvalidP { p } => {
                write!(f, "invalid p-logarithmic parameter p = {p}")
            }
        }
    }
}

impl core::error::Error for MeansError {}

#[inline]
fn ordered(x: f64, y: f64) -> (f64, f64) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

#[inline]
fn delta_switch(lo: f64, hi: f64) -> f64 {
    1e-7 * (1.0 + math::abs(lo).max(math::abs(hi)))
}

fn require_positive(x: f64, y: f64) -> Result<(), MeansError> {
    if x > 0.0 && y > 0.0 {
        Ok(())
    } else {
        Err(MeansError::NonPositiveInput { x, y })
    }
}

/// Evaluate `kind` at `(x, y)`. Symmetric in its arguments; at the diagonal
/// it returns the analytic limit value.
pub fn evaluate_mean(kind: MeanKind, x: f64, y: f64) -> Result<f64, MeansError> {
    match kind {
        MeanKind::Arithmetic => Ok(arithmetic(x, y)),
        MeanKind::Logarithmic => {
            require_positive(x, y)?;
            Ok(logarithmic(x, y))
        }
        MeanKind::PLogarithmic(p) => {
            if !p.is_finite() || p == 0.0 || p == -1.0 {
                return Err(MeansError::InvalidP { p });
            }
            require_positive(x, y)?;
            Ok(p_logarithmic(p, x, y))
        }
        MeanKind::Identric => {
            require_positive(x, y)?;
            Ok(identric(x, y))
        }
        MeanKind::Exponential => Ok(exp_mean(x, y)),
        MeanKind::CosMean => Ok(cos_mean(x, y)),
        MeanKind::SinMean => Ok(sin_mean(x, y)),
        MeanKind::Geometric => {
            require_positive(x, y)?;
            Ok(geometric(x, y))
        }
    }
}

/// p-logarithmic mean by a limit-stable route, continuous across the
/// removable parameters: at `p = 0` it returns the identric mean, at
/// `p = -1` the logarithmic mean, and elsewhere the p-logarithmic formula
/// evaluated in log space so `p → 0` and `p → -1` stay finite-precision
/// stable.
pub fn mean_limit_check(p: f64, x: f64, y: f64) -> Result<f64, MeansError> {
    require_positive(x, y)?;
    if p == 0.0 {
        Ok(identric(x, y))
    } else if p == -1.0 {
        Ok(logarithmic(x, y))
    } else {
        Ok(p_logarithmic(p, x, y))
    }
}

pub(crate) fn arithmetic(x: f64, y: f64) -> f64 {
    0.5 * (x + y)
}

/// (hi - lo) / (ln hi - ln lo), the mean value of the identity against ln.
pub(crate) fn logarithmic(x: f64, y: f64) -> f64 {
    let (lo, hi) = ordered(x, y);
    let h = hi - lo;
    if h <= delta_switch(lo, hi) {
        lo
    } else {
        h / math::log1p(h / lo)
    }
}

/// [(hi^(p+1) - lo^(p+1)) / ((p+1)(hi-lo))]^(1/p) in log space.
///
/// The 1/p in the exponent amplifies rounding of the log-space numerator by
/// 1/|p|, so below |p| = 1e-6 the removable limit (the identric mean) is
/// returned instead; the true deviation there is O(|p|), far below what the
/// direct formula could resolve.
pub(crate) fn p_logarithmic(p: f64, x: f64, y: f64) -> f64 {
    let (lo, hi) = ordered(x, y);
    let h = hi - lo;
    if h <= delta_switch(lo, hi) {
        let a = arithmetic(lo, hi);
        let u = h / (lo + hi);
        let u2 = u * u;
        let series = 1.0
            + p * (p - 1.0) * u2 / 6.0
            + p * (p - 1.0) * (p - 2.0) * (p - 3.0) * u2 * u2 / 120.0;
        a * math::pow(series, 1.0 / p)
    } else if math::abs(p) < 1e-6 {
        identric(lo, hi)
    } else {
        // expm1(q λ)/q stays well conditioned as q -> 0 (p near -1)
        let q = p + 1.0;
        let lambda = math::log1p(h / lo);
        let ln_lp =
            (q * math::ln(lo) + math::ln(math::abs(math::expm1(q * lambda) / q)) - math::ln(h)) / p;
        math::exp(ln_lp)
    }
}

/// Mean value of t^p over [x ∧ y, x ∨ y], i.e. (1/(hi-lo)) ∫ t^p dt.
///
/// This is the p-th power of the p-logarithmic mean for p ∉ {-1, 0}, the
/// reciprocal of the logarithmic mean at p = -1, and 1 at p = 0 — the single
/// quantity the power-kernel bounds are built from.
pub(crate) fn power_mean_integral(p: f64, x: f64, y: f64) -> Result<f64, MeansError> {
    require_positive(x, y)?;
    let (lo, hi) = ordered(x, y);
    let h = hi - lo;
    if h <= delta_switch(lo, hi) {
        let a = arithmetic(lo, hi);
        let u = h / (lo + hi);
        let u2 = u * u;
        let series = 1.0
            + p * (p - 1.0) * u2 / 6.0
            + p * (p - 1.0) * (p - 2.0) * (p - 3.0) * u2 * u2 / 120.0;
        return Ok(math::pow(a, p) * series);
    }
    if p == 0.0 {
        Ok(1.0)
    } else if p == -1.0 {
        Ok(math::log1p(h / lo) / h)
    } else {
        let q = p + 1.0;
        let lambda = math::log1p(h / lo);
        Ok(math::pow(lo, q) * math::expm1(q * lambda) / (q * h))
    }
}

/// ln of the identric mean, evaluated from the midpoint so it stays accurate
/// uniformly in hi - lo.
pub(crate) fn ln_identric(x: f64, y: f64) -> f64 {
    let (lo, hi) = ordered(x, y);
    let h = hi - lo;
    let a = arithmetic(lo, hi);
    if h <= delta_switch(lo, hi) {
        return math::ln(lo);
    }
    let u = h / (lo + hi);
    let phi = if u < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 - u2 * u2 / 20.0
    } else {
        ((1.0 + u) * math::log1p(u) - (1.0 - u) * math::log1p(-u)) / (2.0 * u)
    };
    math::ln(a) + phi - 1.0
}

pub(crate) fn identric(x: f64, y: f64) -> f64 {
    let (lo, hi) = ordered(x, y);
    if hi - lo <= delta_switch(lo, hi) {
        lo
    } else {
        math::exp(ln_identric(lo, hi))
    }
}

/// (e^x - e^y)/(x - y); e^x at the diagonal.
pub(crate) fn exp_mean(x: f64, y: f64) -> f64 {
    let (lo, hi) = ordered(x, y);
    let h = hi - lo;
    let m = 0.5 * (lo + hi);
    if h <= delta_switch(lo, hi) {
        math::exp(lo)
    } else {
        let d = 0.5 * h;
        if d <= 1.0 {
            math::exp(m) * math::sinh(d) / d
        } else {
            (math::exp(hi) - math::exp(lo)) / h
        }
    }
}

/// (cos x - cos y)/(x - y); -sin x at the diagonal.
pub(crate) fn cos_mean(x: f64, y: f64) -> f64 {
    let (lo, hi) = ordered(x, y);
    let h = hi - lo;
    let m = 0.5 * (lo + hi);
    if h <= delta_switch(lo, hi) {
        -math::sin(lo)
    } else {
        let d = 0.5 * h;
        -math::sin(m) * (math::sin(d) / d)
    }
}

/// (sin x - sin y)/(x - y); cos x at the diagonal.
pub(crate) fn sin_mean(x: f64, y: f64) -> f64 {
    let (lo, hi) = ordered(x, y);
    let h = hi - lo;
    let m = 0.5 * (lo + hi);
    if h <= delta_switch(lo, hi) {
        math::cos(lo)
    } else {
        let d = 0.5 * h;
        math::cos(m) * (math::sin(d) / d)
    }
}

pub(crate) fn geometric(x: f64, y: f64) -> f64 {
    let (lo, hi) = ordered(x, y);
    if hi - lo <= delta_switch(lo, hi) {
        lo
    } else {
        math::sqrt(lo) * math::sqrt(hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{E, FRAC_PI_2, LN_2, PI};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn arithmetic_and_trivial_values() {
        assert_eq!(evaluate_mean(MeanKind::Arithmetic, 2.0, 4.0).unwrap(), 3.0);
        assert!(
            rel(
                evaluate_mean(MeanKind::Logarithmic, 1.0, E).unwrap(),
                E - 1.0
            ) < 1e-14
        );
        let lp1 = MeanKind::p_logarithmic(1.0).unwrap();
        assert!(rel(evaluate_mean(lp1, 1.0, 2.0).unwrap(), 1.5) < 1e-14);
        assert!(
            rel(
                evaluate_mean(MeanKind::SinMean, 0.0, FRAC_PI_2).unwrap(),
                2.0 / PI
            ) < 1e-15
        );
        assert!(
            rel(
                evaluate_mean(MeanKind::Exponential, 0.0, 1.0).unwrap(),
                E - 1.0
            ) < 1e-15
        );
        assert!(rel(evaluate_mean(MeanKind::Geometric, 2.0, 8.0).unwrap(), 4.0) < 1e-15);
    }

    #[test]
    fn identric_closed_form() {
        // I(1, e) = exp(1/(e-1)); the quadrature cross-check lives in the
        // integration tests.
        let i = evaluate_mean(MeanKind::Identric, 1.0, E).unwrap();
        assert!(rel(i, math::exp(1.0 / (E - 1.0))) < 1e-14);
    }

    #[test]
    fn p_logarithmic_rejects_removed_parameters() {
        assert!(MeanKind::p_logarithmic(0.0).is_err());
        assert!(MeanKind::p_logarithmic(-1.0).is_err());
        assert!(MeanKind::p_logarithmic(f64::NAN).is_err());
        assert!(evaluate_mean(MeanKind::PLogarithmic(0.0), 1.0, 2.0).is_err());
    }

    #[test]
    fn positivity_domains() {
        assert!(evaluate_mean(MeanKind::Logarithmic, -1.0, 2.0).is_err());
        assert!(evaluate_mean(MeanKind::Identric, 0.0, 2.0).is_err());
        assert!(evaluate_mean(MeanKind::Geometric, 1.0, -2.0).is_err());
        // difference-quotient means accept any reals
        assert!(evaluate_mean(MeanKind::Exponential, -3.0, -1.0).is_ok());
        assert!(evaluate_mean(MeanKind::CosMean, -0.5, 0.5).is_ok());
    }

    #[test]
    fn limit_check_continuity_in_p() {
        let i = evaluate_mean(MeanKind::Identric, 1.0, 2.0).unwrap();
        let l = evaluate_mean(MeanKind::Logarithmic, 1.0, 2.0).unwrap();
        assert!(rel(l, 1.0 / LN_2) < 1e-14);
        assert!((mean_limit_check(1e-9, 1.0, 2.0).unwrap() - i).abs() < 1e-6);
        assert!((mean_limit_check(-1.0 + 1e-9, 1.0, 2.0).unwrap() - l).abs() < 1e-6);
        assert_eq!(mean_limit_check(2.0, 3.0, 3.0).unwrap(), 3.0);
        assert_eq!(mean_limit_check(0.0, 1.0, 2.0).unwrap(), i);
        assert_eq!(mean_limit_check(-1.0, 1.0, 2.0).unwrap(), l);
    }

    #[test]
    fn diagonal_continuity() {
        let delta = 1e-9;
        let kinds = [
            MeanKind::Arithmetic,
            MeanKind::Logarithmic,
            MeanKind::PLogarithmic(2.0),
            MeanKind::PLogarithmic(-0.5),
            MeanKind::Identric,
            MeanKind::Exponential,
            MeanKind::CosMean,
            MeanKind::SinMean,
            MeanKind::Geometric,
        ];
        for &x in &[0.3, 1.0, 7.5, 42.0] {
            for &kind in &kinds {
                let near = evaluate_mean(kind, x, x + delta).unwrap();
                let limit = match kind {
                    MeanKind::Exponential => math::exp(x),
                    MeanKind::CosMean => -math::sin(x),
                    MeanKind::SinMean => math::cos(x),
                    _ => x,
                };
                assert!(
                    (near - limit).abs() <= 1e-8,
                    "{kind} at x={x}: {near} vs {limit}"
                );
            }
        }
    }

    #[test]
    fn symmetry_is_bit_exact() {
        let kinds = [
            MeanKind::Arithmetic,
            MeanKind::Logarithmic,
            MeanKind::PLogarithmic(2.5),
            MeanKind::PLogarithmic(-3.0),
            MeanKind::Identric,
            MeanKind::Exponential,
            MeanKind::CosMean,
            MeanKind::SinMean,
            MeanKind::Geometric,
        ];
        for &(x, y) in &[(0.17, 3.91), (1.0, 1.0000001), (2.5, 40.0)] {
            for &kind in &kinds {
                let xy = evaluate_mean(kind, x, y).unwrap();
                let yx = evaluate_mean(kind, y, x).unwrap();
                assert_eq!(xy.to_bits(), yx.to_bits(), "{kind} at ({x},{y})");
            }
        }
    }

    #[test]
    fn power_mean_integral_matches_known_values() {
        // p = 1 over [1,2]: mean of t is 1.5
        assert!(rel(power_mean_integral(1.0, 1.0, 2.0).unwrap(), 1.5) < 1e-14);
        // p = -1 over [1,2]: mean of 1/t is ln 2
        assert!(rel(power_mean_integral(-1.0, 1.0, 2.0).unwrap(), LN_2) < 1e-14);
        // p = 2 over [1,2]: (8-1)/3 / 1 = 7/3
        assert!(rel(power_mean_integral(2.0, 1.0, 2.0).unwrap(), 7.0 / 3.0) < 1e-14);
        // p = 0: identically 1
        assert_eq!(power_mean_integral(0.0, 0.3, 5.0).unwrap(), 1.0);
        // degenerate interval: t^p at the point
        assert!(rel(power_mean_integral(3.0, 2.0, 2.0).unwrap(), 8.0) < 1e-14);
    }

    #[test]
    fn classical_ordering_spot_check() {
        for &(a, b) in &[(0.5, 0.9), (1.0, 2.0), (3.0, 17.0)] {
            let l = evaluate_mean(MeanKind::Logarithmic, a, b).unwrap();
            let i = evaluate_mean(MeanKind::Identric, a, b).unwrap();
            let m = evaluate_mean(MeanKind::Arithmetic, a, b).unwrap();
            assert!(l < i && i < m, "ordering failed on ({a},{b}): {l} {i} {m}");
        }
    }
}
