//! Derivative-ratio seminorms: the multiplier in every bound.
//!
//! Sampled estimates scan a uniform grid (endpoints included where the
//! integrand is evaluable there) and refine around the best cell by
//! golden-section search. A sampled value is a certified *lower* estimate of
//! the true supremum, so every estimate carries its provenance and the
//! verification harness prefers analytic constants where it has them.

use core::fmt;

use serde::Serialize;

use crate::bounds::Interval;
use crate::expr::{EvalError, FunctionSpec};
use crate::math;
use crate::search;

/// Treat |g'| below this as a zero of g'.
pub const GPRIME_EPS: f64 = 1e-12;

const REFINE_ITERS: usize = 80;

/// Where a seminorm value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// Asserted by the caller (e.g. a closed-form supremum).
    Analytic,
    /// Grid scan plus golden-section refinement; a lower estimate.
    Sampled,
}

/// A seminorm estimate over an interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupEstimate {
    pub value: f64,
    /// Location of the sampled maximum; absent for analytic assertions.
    pub argmax: Option<f64>,
    pub provenance: Provenance,
    #[serde(skip)]
    pub interval: Interval,
}

impl SupEstimate {
    /// A caller-asserted value.
    pub fn analytic(value: f64, interval: Interval) -> SupEstimate {
        SupEstimate {
            value,
            argmax: None,
            provenance: Provenance::Analytic,
            interval,
        }
    }

    /// A grid-derived lower estimate with its argmax.
    pub fn sampled(value: f64, argmax: f64, interval: Interval) -> SupEstimate {
        SupEstimate {
            value,
            argmax: Some(argmax),
            provenance: Provenance::Sampled,
            interval,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SupError {
    /// |g'(t)| < [`GPRIME_EPS`] at a sampled point.
    GPrimeVanishes {
        at: f64,
    },
    /// g' changes sign over the sampled grid.
    GPrimeChangesSign {
        at: f64,
    },
    /// The expression failed at an interior sample.
    Eval(EvalError),
    /// Operation requires an interval inside (0, ∞).
    NonPositiveInterval {
        a: f64,
        b: f64,
    },
    InvalidP {
        p: f64,
    },
    /// Split seminorms need x strictly inside the interval.
    BoundaryX {
        x: f64,
    },
    /// Grids below 64 points are rejected.
    GridTooSmall {
        grid: u32,
    },
    /// No sample point could be evaluated.
    NoSamples,
}

impl fmt::Display for SupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupError::GPrimeVanishes { at } => {
                write!(f, "g' vanishes (|g'| < {GPRIME_EPS:e}) at t = {at}")
            }
            SupError::GPrimeChangesSign { at } => write!(f, "g' changes sign at t = {at}"),
            SupError::Eval(e) => write!(f, "{e}"),
            SupError::NonPositiveInterval { a, b } => {
                write!(f, "interval [{a}, {b}] must lie in (0, ∞)")
            }
            SupError::InvalidP { p } => write!(f, "invalid exponent p = {p}"),
            SupError::BoundaryX { x } => write!(f, "x = {x} must be interior to the interval"),
            SupError::GridTooSmall { grid } => write!(f, "grid {grid} is below the minimum of 64"),
            SupError::NoSamples => write!(f, "no sample point could be evaluated"),
        }
    }
}

impl core::error::Error for SupError {}

impl From<EvalError> for SupError {
    fn from(e: EvalError) -> Self {
        SupError::Eval(e)
    }
}

/// Scan `h` on a uniform grid over [lo, hi] and golden-refine around the best
/// cell. Points where `h` returns None are skipped if they are the grid
/// endpoints (hypotheses live on the open interval); interior failures abort.
fn scan_and_refine<H>(h: &H, lo: f64, hi: f64, grid: u32) -> Result<(f64, f64), SupError>
where
    H: Fn(f64) -> Result<f64, EvalError>,
{
    let n = grid as usize;
    let step = (hi - lo) / n as f64;
    let mut best: Option<(f64, f64)> = None; // (value, t)
    let mut first_err: Option<EvalError> = None;
    for i in 0..=n {
        let t = if i == n { hi } else { lo + step * i as f64 };
        match h(t) {
            Ok(v) => {
                if best.is_none_or(|(bv, _)| v > bv) {
                    best = Some((v, t));
                }
            }
            Err(e) => {
                if i == 0 || i == n {
                    first_err.get_or_insert(e);
                } else {
                    return Err(SupError::Eval(e));
                }
            }
        }
    }
    let (grid_val, grid_arg) = match best {
        Some(b) => (b.0, b.1),
        None => {
            return Err(first_err.map_or(SupError::NoSamples, SupError::Eval));
        }
    };

    let bracket_lo = (grid_arg - step).max(lo);
    let bracket_hi = (grid_arg + step).min(hi);
    let (ref_arg, ref_val) = search::golden_max(
        |t| h(t).unwrap_or(f64::NEG_INFINITY),
        bracket_lo,
        bracket_hi,
        REFINE_ITERS,
    );
    if ref_val > grid_val {
        Ok((ref_val, ref_arg))
    } else {
        Ok((grid_val, grid_arg))
    }
}

/// Grid-scan + refine an arbitrary nonnegative objective; shared with the
/// harness for seminorm shapes that have no dedicated operation.
pub(crate) fn sampled_sup_fn<H>(h: &H, lo: f64, hi: f64, grid: u32) -> Result<(f64, f64), SupError>
where
    H: Fn(f64) -> Result<f64, EvalError>,
{
    scan_and_refine(h, lo, hi, grid)
}

fn check_grid(grid: u32) -> Result<(), SupError> {
    if grid < 64 {
        Err(SupError::GridTooSmall { grid })
    } else {
        Ok(())
    }
}

/// Sampled estimate of `sup |f'(t)/g'(t)|` over the interval.
///
/// The same grid pass checks the hypothesis on g': any sample with
/// |g'| < [`GPRIME_EPS`] or a sign change across samples is a precondition
/// violation naming the offending point.
pub fn sup_ratio(
    f: &FunctionSpec,
    g: &FunctionSpec,
    interval: Interval,
    grid: u32,
) -> Result<SupEstimate, SupError> {
    check_grid(grid)?;
    let (a, b) = (interval.a(), interval.b());
    let n = grid as usize;
    let step = (b - a) / n as f64;

    struct Node {
        t: f64,
        ratio: f64,
    }
    let mut nodes: alloc::vec::Vec<Node> = alloc::vec::Vec::with_capacity(n + 1);
    let mut sign = 0.0f64;
    for i in 0..=n {
        let t = if i == n { b } else { a + step * i as f64 };
        let fd = f.eval_dual(t);
        let gd = g.eval_dual(t);
        let (fd, gd) = match (fd, gd) {
            (Ok(fd), Ok(gd)) => (fd, gd),
            (Err(e), _) | (_, Err(e)) => {
                if i == 0 || i == n {
                    continue;
                }
                return Err(SupError::Eval(e));
            }
        };
        if math::abs(gd.deriv) < GPRIME_EPS {
            return Err(SupError::GPrimeVanishes { at: t });
        }
        let s = if gd.deriv > 0.0 { 1.0 } else { -1.0 };
        if sign == 0.0 {
            sign = s;
        } else if s != sign {
            return Err(SupError::GPrimeChangesSign { at: t });
        }
        nodes.push(Node {
            t,
            ratio: math::abs(fd.deriv / gd.deriv),
        });
    }
    if nodes.is_empty() {
        return Err(SupError::NoSamples);
    }

    let mut best = 0usize;
    for (i, node) in nodes.iter().enumerate() {
        if node.ratio > nodes[best].ratio {
            best = i;
        }
    }
    let bracket_lo = (nodes[best].t - step).max(a);
    let bracket_hi = (nodes[best].t + step).min(b);
    let h = |t: f64| -> f64 {
        match (f.eval_dual(t), g.eval_dual(t)) {
            (Ok(fd), Ok(gd)) if math::abs(gd.deriv) >= GPRIME_EPS => math::abs(fd.deriv / gd.deriv),
            _ => f64::NEG_INFINITY,
        }
    };
    let (ref_arg, ref_val) = search::golden_max(h, bracket_lo, bracket_hi, REFINE_ITERS);
    let (value, argmax) = if ref_val > nodes[best].ratio {
        (ref_val, ref_arg)
    } else {
        (nodes[best].ratio, nodes[best].t)
    };
    Ok(SupEstimate::sampled(value, argmax, interval))
}

/// Sampled `sup u^(1-p) |f'(u)|` over an interval inside (0, ∞), p ≠ 0 —
/// the constant for the power-kernel bound.
pub fn seminorm_kp(
    f: &FunctionSpec,
    interval: Interval,
    p: f64,
    grid: u32,
) -> Result<SupEstimate, SupError> {
    check_grid(grid)?;
    if !interval.is_positive() {
        return Err(SupError::NonPositiveInterval {
            a: interval.a(),
            b: interval.b(),
        });
    }
    if p == 0.0 || !p.is_finite() {
        return Err(SupError::InvalidP { p });
    }
    let h = |u: f64| -> Result<f64, EvalError> {
        let fd = f.eval_dual(u)?;
        Ok(math::pow(u, 1.0 - p) * math::abs(fd.deriv))
    };
    let (value, argmax) = scan_and_refine(&h, interval.a(), interval.b(), grid)?;
    Ok(SupEstimate::sampled(value, argmax, interval))
}

/// Sampled `sup |u f'(u)|` over an interval inside (0, ∞) — the constant for
/// the logarithmic-kernel bound.
pub fn seminorm_p(
    f: &FunctionSpec,
    interval: Interval,
    grid: u32,
) -> Result<SupEstimate, SupError> {
    check_grid(grid)?;
    if !interval.is_positive() {
        return Err(SupError::NonPositiveInterval {
            a: interval.a(),
            b: interval.b(),
        });
    }
    let h = |u: f64| -> Result<f64, EvalError> {
        let fd = f.eval_dual(u)?;
        Ok(math::abs(u * fd.deriv))
    };
    let (value, argmax) = scan_and_refine(&h, interval.a(), interval.b(), grid)?;
    Ok(SupEstimate::sampled(value, argmax, interval))
}

/// Split local-power constants around an interior point x, p > 0:
/// left `sup |f'(t)| (x-t)^(p-1)` on (a, x), right `sup |f'(t)| (t-x)^(p-1)`
/// on (x, b) — the smallest constants for the stated local envelopes.
///
/// For p < 1 the factor blows up toward x, so the sampled value is a (large
/// but finite) lower estimate whenever f' does not vanish at x.
pub fn seminorm_mp_split(
    f: &FunctionSpec,
    interval: Interval,
    x: f64,
    p: f64,
    grid: u32,
) -> Result<(SupEstimate, SupEstimate), SupError> {
    check_grid(grid)?;
    if !(x > interval.a() && x < interval.b()) {
        return Err(SupError::BoundaryX { x });
    }
    if !(p > 0.0) || !p.is_finite() {
        return Err(SupError::InvalidP { p });
    }

    // left: sample [a, x) excluding x itself
    let left_hi = x - (x - interval.a()) * 1e-9;
    let h_left = |t: f64| -> Result<f64, EvalError> {
        let fd = f.eval_dual(t)?;
        Ok(math::abs(fd.deriv) * math::pow(x - t, p - 1.0))
    };
    let (lv, la) = scan_and_refine(&h_left, interval.a(), left_hi, grid)?;

    let right_lo = x + (interval.b() - x) * 1e-9;
    let h_right = |t: f64| -> Result<f64, EvalError> {
        let fd = f.eval_dual(t)?;
        Ok(math::abs(fd.deriv) * math::pow(t - x, p - 1.0))
    };
    let (rv, ra) = scan_and_refine(&h_right, right_lo, interval.b(), grid)?;

    let left_iv = Interval::new(interval.a(), x).expect("x interior");
    let right_iv = Interval::new(x, interval.b()).expect("x interior");
    Ok((
        SupEstimate::sampled(lv, la, left_iv),
        SupEstimate::sampled(rv, ra, right_iv),
    ))
}
