//! Weighted-integral bound variants and the weight-median point.
//!
//! A [`WeightSpec`] freezes a nonnegative weight over an interval: the total
//! mass and a panel-cached cumulative integral are computed at construction
//! and immutable afterwards, so a spec can be shared across threads. The
//! weight hypothesis is enforced by sampling at construction — any sample
//! below `-1e-12` is a hard error, while values in `[-1e-12, 0)` are treated
//! as quadrature noise and clamped to zero (the same clamp applies wherever
//! the weight is evaluated later).

use alloc::vec::Vec;
use core::fmt;

use crate::bounds::{BoundsError, Interval};
use crate::expr::{EvalError, FunctionSpec};
use crate::math;
use crate::quadrature::{self, QuadError};
use crate::supnorm::SupEstimate;

const NEGATIVE_WEIGHT_TOL: f64 = 1e-12;
const CONSTRUCTION_SAMPLES: usize = 4096;
const CUMULATIVE_PANELS: usize = 1024;
const MEDIAN_BISECT_ITERS: usize = 96;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightError {
    /// Weight sampled below the negativity tolerance.
    NegativeWeight {
        at: f64,
        value: f64,
    },
    /// Total mass is not strictly positive.
    ZeroMass,
    /// x must be interior to the interval.
    XNotInterior {
        x: f64,
    },
    NegativeSeminorm {
        value: f64,
    },
    Eval(EvalError),
    Quad(QuadError),
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::NegativeWeight { at, value } => {
                write!(f, "weight is negative at t = {at}: w = {value}")
            }
            WeightError::ZeroMass => write!(f, "weight has no mass on the interval"),
            WeightError::XNotInterior { x } => write!(f, "x = {x} must be interior"),
            WeightError::NegativeSeminorm { value } => {
                write!(f, "seminorm value {value} must be nonnegative")
            }
            WeightError::Eval(e) => write!(f, "{e}"),
            WeightError::Quad(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for WeightError {}

impl From<EvalError> for WeightError {
    fn from(e: EvalError) -> Self {
        WeightError::Eval(e)
    }
}

impl From<QuadError> for WeightError {
    fn from(e: QuadError) -> Self {
        WeightError::Quad(e)
    }
}

impl From<BoundsError> for WeightError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Eval(e) => WeightError::Eval(e),
            BoundsError::Quad(e) => WeightError::Quad(e),
            BoundsError::NegativeSeminorm { value } => WeightError::NegativeSeminorm { value },
            BoundsError::XOutside { x, .. } | BoundsError::XNotInterior { x } => {
                WeightError::XNotInterior { x }
            }
            other => WeightError::Eval(EvalError::Domain {
                expr: alloc::string::ToString::to_string(&other),
                arg: f64::NAN,
                rule: "bound precondition",
            }),
        }
    }
}

/// A validated nonnegative weight with cached total mass and cumulative
/// integral.
#[derive(Debug, Clone)]
pub struct WeightSpec {
    w: FunctionSpec,
    interval: Interval,
    total_mass: f64,
    /// prefix[k] = ∫_a^{node k} w, over `CUMULATIVE_PANELS` uniform panels
    prefix: Vec<f64>,
    /// interior kink points of w, seeded into every integral involving it
    kinks: Vec<f64>,
    rel_tol: f64,
}

impl WeightSpec {
    /// Validate `w` on the interval and freeze its mass caches.
    pub fn new(
        w: FunctionSpec,
        interval: Interval,
        rel_tol: f64,
    ) -> Result<WeightSpec, WeightError> {
        let (a, b) = (interval.a(), interval.b());
        let step = (b - a) / CONSTRUCTION_SAMPLES as f64;
        for i in 0..=CONSTRUCTION_SAMPLES {
            let t = if i == CONSTRUCTION_SAMPLES {
                b
            } else {
                a + step * i as f64
            };
            let v = w.eval(t)?;
            if v < -NEGATIVE_WEIGHT_TOL {
                return Err(WeightError::NegativeWeight { at: t, value: v });
            }
        }

        let kinks = quadrature::expression_kink_hints(&w, a, b);
        let eval_clamped = |t: f64| -> Result<f64, EvalError> { Ok(w.eval(t)?.max(0.0)) };
        let panel = (b - a) / CUMULATIVE_PANELS as f64;
        let mut prefix = Vec::with_capacity(CUMULATIVE_PANELS + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for k in 0..CUMULATIVE_PANELS {
            let lo = a + panel * k as f64;
            let hi = if k + 1 == CUMULATIVE_PANELS {
                b
            } else {
                a + panel * (k + 1) as f64
            };
            acc += quadrature::integrate_fn(&eval_clamped, lo, hi, rel_tol, &kinks)?.value;
            prefix.push(acc);
        }
        let total_mass = acc;
        if !(total_mass > 0.0) {
            return Err(WeightError::ZeroMass);
        }
        Ok(WeightSpec {
            w,
            interval,
            total_mass,
            prefix,
            kinks,
            rel_tol,
        })
    }

    pub fn weight(&self) -> &FunctionSpec {
        &self.w
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    fn eval_clamped(&self, t: f64) -> Result<f64, EvalError> {
        Ok(self.w.eval(t)?.max(0.0))
    }

    /// F(x) = ∫_a^x w, nondecreasing with F(a) = 0 and F(b) = total mass.
    pub fn cumulative(&self, x: f64) -> Result<f64, WeightError> {
        let (a, b) = (self.interval.a(), self.interval.b());
        if x <= a {
            return Ok(0.0);
        }
        if x >= b {
            return Ok(self.total_mass);
        }
        let panel = (b - a) / CUMULATIVE_PANELS as f64;
        let mut k = (((x - a) / panel) as usize).min(CUMULATIVE_PANELS - 1);
        let mut node = a + panel * k as f64;
        // rounding can push the panel start a few ulps past x
        while node > x && k > 0 {
            k -= 1;
            node = a + panel * k as f64;
        }
        let node = node.min(x);
        let tail = quadrature::integrate_fn(
            &|t| self.eval_clamped(t),
            node,
            x,
            self.rel_tol,
            &self.kinks,
        )?
        .value;
        Ok(self.prefix[k] + tail)
    }

    /// ∫_lo^hi w(t) g(t) dt.
    pub fn integral_against(
        &self,
        g: &FunctionSpec,
        lo: f64,
        hi: f64,
        rel_tol: f64,
    ) -> Result<f64, WeightError> {
        let integrand =
            |t: f64| -> Result<f64, EvalError> { Ok(self.eval_clamped(t)? * g.eval(t)?) };
        let mut hints = quadrature::expression_kink_hints(g, lo, hi);
        hints.extend_from_slice(&self.kinks);
        Ok(quadrature::integrate_fn(&integrand, lo, hi, rel_tol, &hints)?.value)
    }

    /// ∫_a^b w(t) |g(x) - g(t)| dt — the brute-force side of every weighted
    /// bound.
    pub fn abs_diff_integral(
        &self,
        g: &FunctionSpec,
        x: f64,
        rel_tol: f64,
    ) -> Result<f64, WeightError> {
        let r = quadrature::integrate_abs_diff_weighted(
            g,
            &|t| self.eval_clamped(t),
            &self.kinks,
            x,
            self.interval.a(),
            self.interval.b(),
            rel_tol,
        )?;
        Ok(r.value)
    }
}

fn check_norm(value: f64) -> Result<(), WeightError> {
    if value >= 0.0 {
        Ok(())
    } else {
        Err(WeightError::NegativeSeminorm { value })
    }
}

/// Weighted left-hand side `|f(x) - (1/M) ∫ w f|`.
pub fn weighted_lhs(
    f: &FunctionSpec,
    weight: &WeightSpec,
    x: f64,
    rel_tol: f64,
) -> Result<f64, WeightError> {
    let fx = f.eval(x)?;
    let wf = weight.integral_against(f, weight.interval().a(), weight.interval().b(), rel_tol)?;
    Ok(math::abs(fx - wf / weight.total_mass()))
}

/// id 4.2: `|g(x) (F(x) - (M - F(x)))/M + (∫_x^b wg - ∫_a^x wg)/M| * norm`.
pub fn weighted_bound(
    g: &FunctionSpec,
    weight: &WeightSpec,
    x: f64,
    norm: &SupEstimate,
    rel_tol: f64,
) -> Result<f64, WeightError> {
    check_norm(norm.value)?;
    let interval = weight.interval();
    if !interval.contains_interior(x) {
        return Err(WeightError::XNotInterior { x });
    }
    let m = weight.total_mass();
    let cum = weight.cumulative(x)?;
    let gx = g.eval(x)?;
    let wg_lower = weight.integral_against(g, interval.a(), x, rel_tol)?;
    let wg_upper = weight.integral_against(g, x, interval.b(), rel_tol)?;
    let bracket = gx * (cum - (m - cum)) / m + (wg_upper - wg_lower) / m;
    Ok(math::abs(bracket) * norm.value)
}

/// The point splitting the weight's mass in half: the leftmost x₀ with
/// `F(x₀) >= M/2 - tol*M`, located by bisection on the monotone cumulative.
/// When the weight vanishes on a plateau around the median this converges to
/// the plateau's left edge (up to the tolerance and quadrature noise), which
/// makes the choice deterministic.
pub fn find_weight_median(weight: &WeightSpec, tol: f64) -> Result<f64, WeightError> {
    let interval = weight.interval();
    let target = 0.5 * weight.total_mass() - tol.max(0.0) * weight.total_mass();
    let (mut lo, mut hi) = (interval.a(), interval.b());
    // F(a) = 0 < target <= F(b); invariant: F(lo) < target <= F(hi)
    for _ in 0..MEDIAN_BISECT_ITERS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if weight.cumulative(mid)? >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// id 4.6: the weighted bound at the weight median, where the g(x₀) term
/// cancels: `|∫_x0^b wg - ∫_a^x0 wg| / M * norm`. Returns `(rhs, x0)`.
pub fn weighted_median_bound(
    g: &FunctionSpec,
    weight: &WeightSpec,
    norm: &SupEstimate,
    median_tol: f64,
    rel_tol: f64,
) -> Result<(f64, f64), WeightError> {
    check_norm(norm.value)?;
    let x0 = find_weight_median(weight, median_tol)?;
    let interval = weight.interval();
    let wg_lower = weight.integral_against(g, interval.a(), x0, rel_tol)?;
    let wg_upper = weight.integral_against(g, x0, interval.b(), rel_tol)?;
    Ok((
        math::abs(wg_upper - wg_lower) / weight.total_mass() * norm.value,
        x0,
    ))
}

/// id 4.7: weighted split form with independent half-interval seminorms:
/// `|g(x) F(x)/M - (∫_a^x wg)/M| nl + |g(x)(M-F(x))/M - (∫_x^b wg)/M| nr`.
pub fn weighted_split_bound(
    g: &FunctionSpec,
    weight: &WeightSpec,
    x: f64,
    norm_left: &SupEstimate,
    norm_right: &SupEstimate,
    rel_tol: f64,
) -> Result<f64, WeightError> {
    check_norm(norm_left.value)?;
    check_norm(norm_right.value)?;
    let interval = weight.interval();
    if !interval.contains_interior(x) {
        return Err(WeightError::XNotInterior { x });
    }
    let m = weight.total_mass();
    let cum = weight.cumulative(x)?;
    let gx = g.eval(x)?;
    let wg_lower = weight.integral_against(g, interval.a(), x, rel_tol)?;
    let wg_upper = weight.integral_against(g, x, interval.b(), rel_tol)?;
    Ok(math::abs(gx * cum / m - wg_lower / m) * norm_left.value
        + math::abs(gx * (m - cum) / m - wg_upper / m) * norm_right.value)
}
