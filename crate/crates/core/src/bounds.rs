//! The bound catalog: every closed-form right-hand side, keyed by [`BoundId`].
//!
//! Each entry bounds `|f(x) - (1/(b-a)) ∫_a^b f(t) dt|` (or its weighted
//! analogue) by `norm * (1/(b-a)) ∫_a^b |g(x) - g(t)| dt` for a specific
//! comparison kernel `g`, with the integral written out in special means.
//! The generic forms take `g` directly and use quadrature; the specialized
//! forms are pure closed forms.
//!
//! # Catalog conventions
//!
//! The traditional ways of writing several of these bounds can go negative
//! for decreasing kernels or disagree between overlapping special cases;
//! the conventions below normalize the catalog so every right-hand side is
//! nonnegative and mutually consistent, and the verification harness checks
//! each entry against the brute-force integral oracle.
//!
//! * Every bracket is wrapped in an absolute value. For decreasing kernels
//!   (`1/t`, `-cos t`) the raw bracket is negative; the absolute value folds
//!   the two monotonicity cases into one formula.
//! * id `2.7` (exponential kernel): the hypothesis envelope is
//!   `|f'(t)| <= Γ e^t` (matching the kernel `e^t`), and the left-hand side
//!   uses the free evaluation point `x`, with `x = (a+b)/2` as the midpoint
//!   special case.
//! * id `2.13` (sin kernel): the hypothesis constant is `Γ₂` throughout.
//! * id `2.21`/`2.23` (local power kernel): the right-hand side carries a
//!   `1/(b-a)` normalization — the unique choice under which the symmetric
//!   case reproduces id `1.4` — and the midpoint form correspondingly scales
//!   as `(b-a)^p`.
//! * id `3.1`/`3.3` (power kernels at the midpoint): the hypothesis
//!   envelopes are `|f'(t)| <= M_i t^(p-1)` and `|f'(t)| <= N_i` (constant),
//!   the envelopes under which the constants `1/(2p)` and `1/8` are correct;
//!   the prefactor uses `|p|` so negative exponents keep the bound
//!   nonnegative.
//! * id `3.7` is written as the log of a geometric mean, the reading under
//!   which it coincides with the split-midpoint bound for the `ln` kernel
//!   (asserted by the harness).
//!
//! Hypothesis envelopes (`|f'| <= Γ e^t` and friends) are the caller's
//! assertion; [`envelope_margin`] samples them and the harness reports
//! violations as warnings, never hard failures.

use core::fmt;

use alloc::string::String;
use serde::{de, Deserialize, Serialize};

use crate::expr::{EvalError, FunctionSpec};
use crate::math;
use crate::means;
use crate::quadrature::{self, QuadError};
use crate::supnorm::SupEstimate;

/// A closed interval [a, b] with a < b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Interval, BoundsError> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Interval { a, b })
        } else {
            Err(BoundsError::InvalidInterval { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    /// Interval lies in (0, ∞).
    pub fn is_positive(&self) -> bool {
        self.a > 0.0
    }

    /// Interval lies in (0, π/2), required by the trigonometric kernels.
    pub fn in_half_pi(&self) -> bool {
        self.a > 0.0 && self.b < core::f64::consts::FRAC_PI_2
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    pub fn contains_interior(&self, x: f64) -> bool {
        self.a < x && x < self.b
    }
}

/// Identifier of a catalog entry. The textual ids are the wire format used
/// by the CLI and the case files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundId {
    /// "1.1" — constant-derivative bound with the sharp 1/4 constant.
    Classic,
    /// "1.2" — power kernel t^p, constant K_p, three p-branches.
    Power,
    /// "1.3" — logarithmic kernel, identric means.
    Log,
    /// "1.4" — symmetric local power envelope around x.
    LocalPowerSym,
    /// "2.2" — generic comparison kernel g.
    General,
    /// "2.5" — generic kernel at the midpoint.
    GeneralMidpoint,
    /// "2.7" — exponential kernel, E means.
    ExpKernel,
    /// "2.10" — kernel sin t, C means.
    CosKernel,
    /// "2.13" — kernel -cos t, S means.
    SinKernel,
    /// "2.15" — split seminorms on (a,x) and (x,b).
    Split,
    /// "2.19" — split seminorms around the midpoint.
    SplitMidpoint,
    /// "2.21" — local power envelope with split constants.
    LocalPower,
    /// "2.23" — local power envelope at the midpoint.
    LocalPowerMidpoint,
    /// "3.1" — power kernel at the midpoint.
    MidpointPower,
    /// "3.3" — constant envelope at the midpoint (p = 1 case).
    MidpointLinear,
    /// "3.5" — reciprocal kernel at the midpoint.
    MidpointReciprocal,
    /// "3.7" — log kernel at the midpoint, geometric-mean form.
    MidpointLog,
    /// "4.2" — weighted generic kernel.
    Weighted,
    /// "4.6" — weighted bound at the weight median.
    WeightedMedian,
    /// "4.7" — weighted split bound.
    WeightedSplit,
}

impl BoundId {
    pub const ALL: [BoundId; 20] = [
        BoundId::Classic,
        BoundId::Power,
        BoundId::Log,
        BoundId::LocalPowerSym,
        BoundId::General,
        BoundId::GeneralMidpoint,
        BoundId::ExpKernel,
        BoundId::CosKernel,
        BoundId::SinKernel,
        BoundId::Split,
        BoundId::SplitMidpoint,
        BoundId::LocalPower,
        BoundId::LocalPowerMidpoint,
        BoundId::MidpointPower,
        BoundId::MidpointLinear,
        BoundId::MidpointReciprocal,
        BoundId::MidpointLog,
        BoundId::Weighted,
        BoundId::WeightedMedian,
        BoundId::WeightedSplit,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundId::Classic => "1.1",
            BoundId::Power => "1.2",
            BoundId::Log => "1.3",
            BoundId::LocalPowerSym => "1.4",
            BoundId::General => "2.2",
            BoundId::GeneralMidpoint => "2.5",
            BoundId::ExpKernel => "2.7",
            BoundId::CosKernel => "2.10",
            BoundId::SinKernel => "2.13",
            BoundId::Split => "2.15",
            BoundId::SplitMidpoint => "2.19",
            BoundId::LocalPower => "2.21",
            BoundId::LocalPowerMidpoint => "2.23",
            BoundId::MidpointPower => "3.1",
            BoundId::MidpointLinear => "3.3",
            BoundId::MidpointReciprocal => "3.5",
            BoundId::MidpointLog => "3.7",
            BoundId::Weighted => "4.2",
            BoundId::WeightedMedian => "4.6",
            BoundId::WeightedSplit => "4.7",
        }
    }

    /// The bound is evaluated at the interval midpoint, not at a free x.
    pub fn is_midpoint_form(&self) -> bool {
        matches!(
            self,
            BoundId::GeneralMidpoint
                | BoundId::SplitMidpoint
                | BoundId::LocalPowerMidpoint
                | BoundId::MidpointPower
                | BoundId::MidpointLinear
                | BoundId::MidpointReciprocal
                | BoundId::MidpointLog
        )
    }

    /// Needs an exponent parameter p.
    pub fn needs_p(&self) -> bool {
        matches!(
            self,
            BoundId::Power
                | BoundId::LocalPowerSym
                | BoundId::LocalPower
                | BoundId::LocalPowerMidpoint
                | BoundId::MidpointPower
        )
    }

    /// Uses a pair of half-interval seminorms.
    pub fn needs_split_norms(&self) -> bool {
        matches!(
            self,
            BoundId::Split
                | BoundId::SplitMidpoint
                | BoundId::LocalPower
                | BoundId::LocalPowerMidpoint
                | BoundId::MidpointPower
                | BoundId::MidpointLinear
                | BoundId::MidpointReciprocal
                | BoundId::MidpointLog
                | BoundId::WeightedSplit
        )
    }

    /// Takes an explicit comparison function g.
    pub fn needs_g(&self) -> bool {
        matches!(
            self,
            BoundId::General
                | BoundId::GeneralMidpoint
                | BoundId::Split
                | BoundId::SplitMidpoint
                | BoundId::Weighted
                | BoundId::WeightedMedian
                | BoundId::WeightedSplit
        )
    }

    /// Takes a weight function.
    pub fn is_weighted(&self) -> bool {
        matches!(
            self,
            BoundId::Weighted | BoundId::WeightedMedian | BoundId::WeightedSplit
        )
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for BoundId {
    type Err = BoundsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| BoundsError::UnknownBoundId {
                id: String::from(s),
            })
    }
}

impl Serialize for BoundId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for BoundId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|_| {
            de::Error::unknown_variant(
                &s,
                &[
                    "1.1", "1.2", "1.3", "1.4", "2.2", "2.5", "2.7", "2.10", "2.13", "2.15",
                    "2.19", "2.21", "2.23", "3.1", "3.3", "3.5", "3.7", "4.2", "4.6", "4.7",
                ],
            )
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundsError {
    InvalidInterval { a: f64, b: f64 },
    XOutside { x: f64, a: f64, b: f64 },
    XNotInterior { x: f64 },
    NonPositiveInterval { a: f64, b: f64 },
    IntervalNotInHalfPi { a: f64, b: f64 },
    InvalidP { p: f64 },
    NegativeSeminorm { value: f64 },
    UnknownBoundId { id: String },
    Quad(QuadError),
    Eval(EvalError),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::InvalidInterval { a, b } => write!(f, "invalid interval [{a}, {b}]"),
            BoundsError::XOutside { x, a, b } => {
                write!(f, "x = {x} lies outside [{a}, {b}]")
            }
            BoundsError::XNotInterior { x } => write!(f, "x = {x} must be interior"),
            BoundsError::NonPositiveInterval { a, b } => {
                write!(f, "interval [{a}, {b}] must lie in (0, ∞)")
            }
            BoundsError::IntervalNotInHalfPi { a, b } => {
                write!(f, "interval [{a}, {b}] must lie in (0, π/2)")
            }
            BoundsError::InvalidP { p } => write!(f, "invalid exponent p = {p}"),
            BoundsError::NegativeSeminorm { value } => {
                write!(f, "seminorm value {value} must be nonnegative")
            }
            BoundsError::UnknownBoundId { id } => write!(f, "unknown bound id `{id}`"),
            BoundsError::Quad(e) => write!(f, "{e}"),
            BoundsError::Eval(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for BoundsError {}

impl From<QuadError> for BoundsError {
    fn from(e: QuadError) -> Self {
        BoundsError::Quad(e)
    }
}

impl From<EvalError> for BoundsError {
    fn from(e: EvalError) -> Self {
        BoundsError::Eval(e)
    }
}

impl From<means::MeansError> for BoundsError {
    fn from(e: means::MeansError) -> Self {
        match e {
            means::MeansError::NonPositiveInput { x, y } => {
                BoundsError::NonPositiveInterval { a: x, b: y }
            }
            means::MeansError::InvalidP { p } => BoundsError::InvalidP { p },
        }
    }
}

/// Left-hand side / right-hand side pairing for one bound evaluation — the
/// unit of verification. `ratio` is 0 when both sides vanish and +∞ when a
/// zero right-hand side faces a positive left-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub ratio: f64,
    pub seminorm: SupEstimate,
    pub x: f64,
    pub a: f64,
    pub b: f64,
}

impl BoundReport {
    pub fn new(
        bound_id: BoundId,
        lhs: f64,
        rhs: f64,
        seminorm: SupEstimate,
        x: f64,
        interval: Interval,
    ) -> BoundReport {
        let ratio = if rhs == 0.0 {
            if lhs == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            lhs / rhs
        };
        BoundReport {
            bound_id,
            lhs,
            rhs,
            slack: rhs - lhs,
            ratio,
            seminorm,
            x,
            a: interval.a(),
            b: interval.b(),
        }
    }

    /// One-sided pass rule: the left side may exceed the right only within
    /// tolerance; arbitrary slack the other way is fine.
    pub fn passes(&self, tol_rel: f64, tol_abs: f64) -> bool {
        self.lhs <= self.rhs * (1.0 + tol_rel) + tol_abs
    }

    /// How far the pass rule is exceeded (0 when passing).
    pub fn violation(&self, tol_rel: f64, tol_abs: f64) -> f64 {
        (self.lhs - self.rhs * (1.0 + tol_rel) - tol_abs).max(0.0)
    }
}

/// |f(x) - (1/(b-a)) ∫_a^b f| — the unweighted left-hand side.
pub fn lhs_value(
    f: &FunctionSpec,
    interval: Interval,
    x: f64,
    rel_tol: f64,
) -> Result<f64, BoundsError> {
    if !interval.contains(x) {
        return Err(BoundsError::XOutside {
            x,
            a: interval.a(),
            b: interval.b(),
        });
    }
    let fx = f.eval(x)?;
    let integral = quadrature::integrate(f, interval.a(), interval.b(), rel_tol)?;
    Ok(math::abs(fx - integral.value / interval.length()))
}

fn check_norm(value: f64) -> Result<(), BoundsError> {
    if value >= 0.0 {
        Ok(())
    } else {
        Err(BoundsError::NegativeSeminorm { value })
    }
}

fn require_positive(interval: Interval) -> Result<(), BoundsError> {
    if interval.is_positive() {
        Ok(())
    } else {
        Err(BoundsError::NonPositiveInterval {
            a: interval.a(),
            b: interval.b(),
        })
    }
}

fn require_half_pi(interval: Interval) -> Result<(), BoundsError> {
    if interval.in_half_pi() {
        Ok(())
    } else {
        Err(BoundsError::IntervalNotInHalfPi {
            a: interval.a(),
            b: interval.b(),
        })
    }
}

fn require_contains(interval: Interval, x: f64) -> Result<(), BoundsError> {
    if interval.contains(x) {
        Ok(())
    } else {
        Err(BoundsError::XOutside {
            x,
            a: interval.a(),
            b: interval.b(),
        })
    }
}

fn require_interior(interval: Interval, x: f64) -> Result<(), BoundsError> {
    if interval.contains_interior(x) {
        Ok(())
    } else {
        Err(BoundsError::XNotInterior { x })
    }
}

/// id 1.1: `[1/4 + ((x - (a+b)/2)/(b-a))^2] (b-a) M`. The 1/4 cannot be
/// improved: f(t) = t at x ∈ {a, b} attains equality.
pub fn classic_ostrowski(m: f64, interval: Interval, x: f64) -> Result<f64, BoundsError> {
    check_norm(m)?;
    require_contains(interval, x)?;
    let len = interval.length();
    let centered = (x - interval.midpoint()) / len;
    Ok((0.25 + centered * centered) * len * m)
}

/// id 2.2: `|2 ((x-A)/(b-a)) g(x) + (∫_x^b g - ∫_a^x g)/(b-a)| * norm`.
pub fn general_bound(
    g: &FunctionSpec,
    interval: Interval,
    x: f64,
    norm: &SupEstimate,
    rel_tol: f64,
) -> Result<f64, BoundsError> {
    check_norm(norm.value)?;
    require_contains(interval, x)?;
    let (a, b) = (interval.a(), interval.b());
    let gx = g.eval(x)?;
    let upper = if x < b {
        quadrature::integrate(g, x, b, rel_tol)?.value
    } else {
        0.0
    };
    let lower = if x > a {
        quadrature::integrate(g, a, x, rel_tol)?.value
    } else {
        0.0
    };
    let len = interval.length();
    let bracket = 2.0 * ((x - interval.midpoint()) / len) * gx + (upper - lower) / len;
    Ok(math::abs(bracket) * norm.value)
}

/// id 2.5: the general bound at x = (a+b)/2, where the g(x) term vanishes.
pub fn midpoint_bound(
    g: &FunctionSpec,
    interval: Interval,
    norm: &SupEstimate,
    rel_tol: f64,
) -> Result<f64, BoundsError> {
    check_norm(norm.value)?;
    let mid = interval.midpoint();
    let upper = quadrature::integrate(g, mid, interval.b(), rel_tol)?.value;
    let lower = quadrature::integrate(g, interval.a(), mid, rel_tol)?.value;
    Ok(math::abs(upper - lower) / interval.length() * norm.value)
}

/// id 1.2: power kernel `t^p` on a positive interval, written in the p-mean
/// of the kernel over each side of x; the three printed p-branches.
pub fn power_bound(
    interval: Interval,
    x: f64,
    p: f64,
    kp: &SupEstimate,
) -> Result<f64, BoundsError> {
    check_norm(kp.value)?;
    require_positive(interval)?;
    require_contains(interval, x)?;
    if p == 0.0 || !p.is_finite() {
        return Err(BoundsError::InvalidP { p });
    }
    let (a, b) = (interval.a(), interval.b());
    let mid = interval.midpoint();
    // mean value of t^p over each side (the p-logarithmic mean to the p-th
    // power; the reciprocal logarithmic mean at p = -1)
    let q_upper = means::power_mean_integral(p, x, b)?;
    let q_lower = means::power_mean_integral(p, a, x)?;
    let bracket = if p > 0.0 {
        2.0 * math::pow(x, p) * (x - mid) + (b - x) * q_upper - (x - a) * q_lower
    } else if p == -1.0 {
        (x - a) * q_lower - (b - x) * q_upper - 2.0 / x * (x - mid)
    } else {
        (x - a) * q_lower - (b - x) * q_upper - 2.0 * math::pow(x, p) * (x - mid)
    };
    Ok(kp.value / (math::abs(p) * interval.length()) * math::abs(bracket))
}

/// id 1.3: log kernel on a positive interval, written in identric means.
pub fn log_bound(interval: Interval, x: f64, p_norm: &SupEstimate) -> Result<f64, BoundsError> {
    check_norm(p_norm.value)?;
    require_positive(interval)?;
    require_contains(interval, x)?;
    let (a, b) = (interval.a(), interval.b());
    let upper = if x < b {
        (b - x) * means::ln_identric(x, b)
    } else {
        0.0
    };
    let lower = if x > a {
        (x - a) * means::ln_identric(a, x)
    } else {
        0.0
    };
    let bracket = upper - lower + 2.0 * (x - interval.midpoint()) * math::ln(x);
    Ok(p_norm.value / interval.length() * math::abs(bracket))
}

/// id 2.7: exponential kernel, `|f'| <= Γ e^t` hypothesis.
pub fn exp_bound(interval: Interval, x: f64, gamma: f64) -> Result<f64, BoundsError> {
    check_norm(gamma)?;
    require_contains(interval, x)?;
    let (a, b) = (interval.a(), interval.b());
    let len = interval.length();
    let bracket = 2.0 * ((x - interval.midpoint()) / len) * math::exp(x)
        + ((b - x) * means::exp_mean(x, b) - (x - a) * means::exp_mean(a, x)) / len;
    Ok(gamma * math::abs(bracket))
}

/// id 2.10: kernel `sin t` on (0, π/2), `|f'| <= Γ₁ cos t` hypothesis.
pub fn cos_bound(interval: Interval, x: f64, gamma1: f64) -> Result<f64, BoundsError> {
    check_norm(gamma1)?;
    require_half_pi(interval)?;
    require_contains(interval, x)?;
    let (a, b) = (interval.a(), interval.b());
    let len = interval.length();
    let bracket = 2.0 * ((x - interval.midpoint()) / len) * math::sin(x)
        + ((x - a) * means::cos_mean(a, x) - (b - x) * means::cos_mean(x, b)) / len;
    Ok(gamma1 * math::abs(bracket))
}

/// id 2.13: kernel `-cos t` on (0, π/2), `|f'| <= Γ₂ sin t` hypothesis.
pub fn sin_bound(interval: Interval, x: f64, gamma2: f64) -> Result<f64, BoundsError> {
    check_norm(gamma2)?;
    require_half_pi(interval)?;
    require_contains(interval, x)?;
    let (a, b) = (interval.a(), interval.b());
    let len = interval.length();
    let bracket = 2.0 * ((x - interval.midpoint()) / len) * math::cos(x)
        + ((b - x) * means::sin_mean(x, b) - (x - a) * means::sin_mean(a, x)) / len;
    Ok(gamma2 * math::abs(bracket))
}

/// id 2.15: split form with independent seminorms on (a,x) and (x,b); g only
/// needs a nonvanishing derivative on each half separately.
pub fn split_bound(
    g: &FunctionSpec,
    interval: Interval,
    x: f64,
    norm_left: &SupEstimate,
    norm_right: &SupEstimate,
    rel_tol: f64,
) -> Result<f64, BoundsError> {
    check_norm(norm_left.value)?;
    check_norm(norm_right.value)?;
    require_interior(interval, x)?;
    let (a, b) = (interval.a(), interval.b());
    let gx = g.eval(x)?;
    let lower = quadrature::integrate(g, a, x, rel_tol)?.value;
    let upper = quadrature::integrate(g, x, b, rel_tol)?.value;
    let len = interval.length();
    Ok((math::abs(gx * (x - a) - lower) * norm_left.value
        + math::abs(gx * (b - x) - upper) * norm_right.value)
        / len)
}

/// id 2.19: split form at the midpoint.
pub fn split_midpoint_bound(
    g: &FunctionSpec,
    interval: Interval,
    norm_left: &SupEstimate,
    norm_right: &SupEstimate,
    rel_tol: f64,
) -> Result<f64, BoundsError> {
    check_norm(norm_left.value)?;
    check_norm(norm_right.value)?;
    let (a, b) = (interval.a(), interval.b());
    let mid = interval.midpoint();
    let g_mid = g.eval(mid)?;
    let two_over_len = 2.0 / interval.length();
    let lower = quadrature::integrate(g, a, mid, rel_tol)?.value;
    let upper = quadrature::integrate(g, mid, b, rel_tol)?.value;
    Ok(0.5
        * (math::abs(g_mid - two_over_len * lower) * norm_left.value
            + math::abs(g_mid - two_over_len * upper) * norm_right.value))
}

/// ids 2.21 / 1.4: local power envelope around x with split constants:
/// `[M1 (x-a)^(p+1) + M2 (b-x)^(p+1)] / (p (p+1) (b-a))`.
pub fn local_power_bound(
    interval: Interval,
    x: f64,
    p: f64,
    m1: &SupEstimate,
    m2: &SupEstimate,
) -> Result<f64, BoundsError> {
    check_norm(m1.value)?;
    check_norm(m2.value)?;
    require_interior(interval, x)?;
    if !(p > 0.0) || !p.is_finite() {
        return Err(BoundsError::InvalidP { p });
    }
    let (a, b) = (interval.a(), interval.b());
    Ok(
        (m1.value * math::pow(x - a, p + 1.0) + m2.value * math::pow(b - x, p + 1.0))
            / (p * (p + 1.0) * interval.length()),
    )
}

/// id 2.23: local power envelope at the midpoint:
/// `(b-a)^p (M1 + M2) / (2^(p+1) p (p+1))`.
pub fn local_power_midpoint_bound(
    interval: Interval,
    p: f64,
    m1: &SupEstimate,
    m2: &SupEstimate,
) -> Result<f64, BoundsError> {
    check_norm(m1.value)?;
    check_norm(m2.value)?;
    if !(p > 0.0) || !p.is_finite() {
        return Err(BoundsError::InvalidP { p });
    }
    let len = interval.length();
    Ok(math::pow(len, p) * (m1.value + m2.value) / (math::pow(2.0, p + 1.0) * p * (p + 1.0)))
}

/// id 3.1: power kernel at the midpoint, envelopes `|f'| <= M_i t^(p-1)`:
/// `(1/(2|p|)) [M1 |A^p - Q(a,A)| + M2 |Q(A,b) - A^p|]` where Q is the mean
/// value of t^p over the half.
pub fn midpoint_power_bound(
    interval: Interval,
    p: f64,
    m1: &SupEstimate,
    m2: &SupEstimate,
) -> Result<f64, BoundsError> {
    check_norm(m1.value)?;
    check_norm(m2.value)?;
    require_positive(interval)?;
    if p == 0.0 || p == -1.0 || !p.is_finite() {
        return Err(BoundsError::InvalidP { p });
    }
    let mid = interval.midpoint();
    let a_pow = math::pow(mid, p);
    let q_lower = means::power_mean_integral(p, interval.a(), mid)?;
    let q_upper = means::power_mean_integral(p, mid, interval.b())?;
    Ok(
        (m1.value * math::abs(a_pow - q_lower) + m2.value * math::abs(q_upper - a_pow))
            / (2.0 * math::abs(p)),
    )
}

/// id 3.3: constant envelopes `|f'| <= N_i` at the midpoint:
/// `(1/8) (N1 + N2) (b-a)`.
pub fn midpoint_linear_bound(
    interval: Interval,
    n1: &SupEstimate,
    n2: &SupEstimate,
) -> Result<f64, BoundsError> {
    check_norm(n1.value)?;
    check_norm(n2.value)?;
    require_positive(interval)?;
    Ok(0.125 * (n1.value + n2.value) * interval.length())
}

/// id 3.5: reciprocal kernel at the midpoint, envelopes `|f'| <= M_i t^-2`:
/// `(1/2) [M1 (A - L(a,A)) / (L(a,A) A) + M2 (L(A,b) - A) / (L(A,b) A)]`.
pub fn midpoint_reciprocal_bound(
    interval: Interval,
    m1: &SupEstimate,
    m2: &SupEstimate,
) -> Result<f64, BoundsError> {
    check_norm(m1.value)?;
    check_norm(m2.value)?;
    require_positive(interval)?;
    let mid = interval.midpoint();
    let l_lower = means::logarithmic(interval.a(), mid);
    let l_upper = means::logarithmic(mid, interval.b());
    Ok(0.5
        * (m1.value * math::abs(mid - l_lower) / (l_lower * mid)
            + m2.value * math::abs(l_upper - mid) / (l_upper * mid)))
}

/// id 3.7: log kernel at the midpoint, envelopes `|f'| <= M_i / t`, written
/// as the log of a geometric mean:
/// `(1/2) [M1 ln(A / I(a,A)) + M2 ln(I(A,b) / A)]`.
pub fn midpoint_log_bound(
    interval: Interval,
    m1: &SupEstimate,
    m2: &SupEstimate,
) -> Result<f64, BoundsError> {
    check_norm(m1.value)?;
    check_norm(m2.value)?;
    require_positive(interval)?;
    let mid = interval.midpoint();
    let ln_mid = math::ln(mid);
    Ok(0.5
        * (m1.value * math::abs(ln_mid - means::ln_identric(interval.a(), mid))
            + m2.value * math::abs(means::ln_identric(mid, interval.b()) - ln_mid)))
}

/// Sample `|f'(t)| <= gamma * envelope(t)` over the interval; returns the
/// largest relative excess found (0 when the envelope holds everywhere it
/// could be sampled). Envelope hypotheses are the caller's assertion, so
/// violations are reported as warnings upstream, never hard failures.
pub fn envelope_margin<E>(
    f: &FunctionSpec,
    interval: Interval,
    gamma: f64,
    envelope: E,
    samples: u32,
) -> Result<f64, BoundsError>
where
    E: Fn(f64) -> f64,
{
    let n = samples.max(2) as usize;
    let (a, b) = (interval.a(), interval.b());
    let step = (b - a) / n as f64;
    let mut worst = 0.0f64;
    for i in 0..=n {
        let t = if i == n { b } else { a + step * i as f64 };
        let fd = match f.eval_dual(t) {
            Ok(fd) => fd,
            // hypotheses live on the open interval; kinks and endpoints may
            // legitimately fail to differentiate
            Err(_) => continue,
        };
        let allowed = gamma * envelope(t);
        let excess = math::abs(fd.deriv) - allowed;
        if excess > 0.0 {
            worst = worst.max(excess / (1.0 + math::abs(allowed)));
        }
    }
    Ok(worst)
}
