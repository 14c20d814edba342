//! Adaptive integration oracle.
//!
//! Each cell is evaluated with an embedded 7-point Gauss / 15-point Kronrod
//! pair; the difference between the two rules (rescaled the usual QUADPACK
//! way) is the local error estimate. Cells live in a max-heap keyed by that
//! estimate and the worst cell is bisected until the global estimate meets
//! `max(rel_tol * |value|, 1e-14)` or the cell cap is hit. Integrands that
//! are only piecewise smooth can seed cell boundaries at their kink points,
//! which keeps the pair's error model honest.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;

use crate::expr::{self, EvalError, FunctionSpec};
use crate::math;

/// Absolute floor under the convergence target.
pub const ABS_FLOOR: f64 = 1e-14;

/// Maximum number of cells the adaptive scheme may create.
pub const SUBDIVISION_CAP: usize = 1_000_000;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Absolute error estimate from the embedded pair.
    pub err_estimate: f64,
    /// Number of bisections performed.
    pub subdivisions: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuadError {
    /// Integration requires a < b.
    InvalidInterval { a: f64, b: f64 },
    /// The integrand failed inside the interval.
    Eval(EvalError),
    /// Subdivision cap reached; carries the worst remaining cell.
    NonConvergence {
        cell_a: f64,
        cell_b: f64,
        err_estimate: f64,
    },
}

impl core::fmt::Display for QuadError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            QuadError::InvalidInterval { a, b } => {
                write!(f, "invalid integration interval [{a}, {b}]")
            }
            QuadError::Eval(e) => write!(f, "integrand evaluation failed: {e}"),
            QuadError::NonConvergence {
                cell_a,
                cell_b,
                err_estimate,
            } => write!(
                f,
                "no convergence after {SUBDIVISION_CAP} cells; worst cell [{cell_a}, {cell_b}] \
                 with error {err_estimate:e}"
            ),
        }
    }
}

impl core::error::Error for QuadError {}

impl From<EvalError> for QuadError {
    fn from(e: EvalError) -> Self {
        QuadError::Eval(e)
    }
}

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = math::abs(err);
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = math::pow(200.0 * scaled / res_asc, 1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    /// integral of |f| over the cell, for the roundoff floor
    res_abs: f64,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// One Gauss–Kronrod pass over [a, b].
fn gk15<F>(f: &F, a: f64, b: f64) -> Result<Cell, EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    let center = 0.5 * (a + b);
    let hlen = 0.5 * (b - a);

    let fc = f(center)?;
    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];

    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = math::abs(fc) * WGK[7];

    for (j, &wg) in WG.iter().take(3).enumerate() {
        let idx = 2 * j + 1;
        let dx = hlen * XGK[idx];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[idx] = f1;
        fv2[idx] = f2;
        res_g += wg * (f1 + f2);
        res_k += WGK[idx] * (f1 + f2);
        res_abs += WGK[idx] * (math::abs(f1) + math::abs(f2));
    }
    for j in 0..4 {
        let idx = 2 * j;
        let dx = hlen * XGK[idx];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[idx] = f1;
        fv2[idx] = f2;
        res_k += WGK[idx] * (f1 + f2);
        res_abs += WGK[idx] * (math::abs(f1) + math::abs(f2));
    }

    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * math::abs(fc - mean);
    for idx in 0..7 {
        res_asc += WGK[idx] * (math::abs(fv1[idx] - mean) + math::abs(fv2[idx] - mean));
    }

    let value = res_k * hlen;
    let err = rescale_error((res_k - res_g) * hlen, res_abs * hlen, res_asc * hlen);
    Ok(Cell {
        a,
        b,
        value,
        err,
        res_abs: res_abs * hlen,
    })
}

/// Adaptive integration of a raw integrand closure. `a == b` integrates to
/// zero; interior `hints` become initial cell boundaries.
pub(crate) fn integrate_fn<F>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    hints: &[f64],
) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            err_estimate: 0.0,
            subdivisions: 0,
        });
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadError::InvalidInterval { a, b });
    }

    let mut boundaries: Vec<f64> = Vec::with_capacity(hints.len() + 2);
    boundaries.push(a);
    for &h in hints {
        if h > a && h < b {
            boundaries.push(h);
        }
    }
    boundaries.push(b);
    boundaries.sort_by(f64::total_cmp);
    boundaries.dedup();

    let mut heap: BinaryHeap<Cell> = BinaryHeap::new();
    let mut frozen: Vec<Cell> = Vec::new();
    let mut value_sum = 0.0;
    let mut err_sum = 0.0;
    let mut abs_sum = 0.0;
    for w in boundaries.windows(2) {
        let cell = gk15(f, w[0], w[1])?;
        value_sum += cell.value;
        err_sum += cell.err;
        abs_sum += cell.res_abs;
        heap.push(cell);
    }

    let mut splits = 0usize;
    loop {
        // subdividing cannot push the estimate below the roundoff floor of
        // the total |f| mass, so stop once the target is under it
        let roundoff_floor = 50.0 * f64::EPSILON * abs_sum;
        let tol = ABS_FLOOR
            .max(rel_tol * math::abs(value_sum))
            .max(roundoff_floor);
        if err_sum <= tol || heap.is_empty() {
            break;
        }
        if heap.len() + frozen.len() + 1 >= SUBDIVISION_CAP {
            let worst = heap.peek().expect("non-empty heap");
            return Err(QuadError::NonConvergence {
                cell_a: worst.a,
                cell_b: worst.b,
                err_estimate: worst.err,
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let min_width = f64::EPSILON * math::abs(worst.a).max(math::abs(worst.b)).max(1e-3);
        if worst.b - worst.a <= min_width {
            // cannot be resolved further in double precision; keep its
            // contribution and stop touching it
            frozen.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(f, worst.a, mid)?;
        let right = gk15(f, mid, worst.b)?;
        value_sum += left.value + right.value - worst.value;
        err_sum += left.err + right.err - worst.err;
        abs_sum += left.res_abs + right.res_abs - worst.res_abs;
        heap.push(left);
        heap.push(right);
        splits += 1;
    }

    // recompute the sums in one pass to shed accumulated drift
    let mut value = 0.0;
    let mut err = 0.0;
    for cell in heap.iter().chain(frozen.iter()) {
        value += cell.value;
        err += cell.err;
    }
    Ok(QuadResult {
        value,
        err_estimate: err,
        subdivisions: splits,
    })
}

/// Interior points where `f` is continuous but loses smoothness: the roots
/// of every `abs`/`sqrt` argument in the tree, located by scan + bisection.
/// Seeding these as cell boundaries keeps the embedded pair's error model
/// honest — a kink in a cell's interior can fool the Gauss/Kronrod
/// difference into a spuriously small estimate.
pub(crate) fn expression_kink_hints(f: &FunctionSpec, a: f64, b: f64) -> Vec<f64> {
    fn collect<'e>(node: &'e expr::Expr, out: &mut Vec<&'e expr::Expr>) {
        match node {
            expr::Expr::Const(_) | expr::Expr::Var => {}
            expr::Expr::Neg(inner) => collect(inner, out),
            expr::Expr::Binary(_, l, r) => {
                collect(l, out);
                collect(r, out);
            }
            expr::Expr::Call(func, arg) => {
                if matches!(func, expr::Func::Abs | expr::Func::Sqrt) {
                    out.push(arg);
                }
                collect(arg, out);
            }
        }
    }
    let mut args = Vec::new();
    collect(f.root(), &mut args);
    let mut hints = Vec::new();
    for sub in args {
        // a sub-expression that fails to evaluate will surface during the
        // integration proper; no hints for it
        if let Ok(mut found) = sign_change_hints(&|t| expr::eval_node(sub, t), a, b) {
            hints.append(&mut found);
        }
    }
    hints
}

/// Integrate a parsed function over [a, b] (requires a < b). Kinks from
/// `abs`/`sqrt` sub-expressions are detected and seeded automatically.
pub fn integrate(f: &FunctionSpec, a: f64, b: f64, rel_tol: f64) -> Result<QuadResult, QuadError> {
    integrate_with_hints(f, a, b, rel_tol, &[])
}

/// Like [`integrate`], with additional caller-supplied interior kink points.
pub fn integrate_with_hints(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    rel_tol: f64,
    hints: &[f64],
) -> Result<QuadResult, QuadError> {
    if !(a < b) {
        return Err(QuadError::InvalidInterval { a, b });
    }
    let mut all = expression_kink_hints(f, a, b);
    all.extend_from_slice(hints);
    integrate_fn(&|t| f.eval(t), a, b, rel_tol, &all)
}

/// Locate roots of `d` on [a, b] by scanning a uniform grid and bisecting
/// every sign change. Used to seed kinks of |g(x) - g(t)|.
fn sign_change_hints<D>(d: &D, a: f64, b: f64) -> Result<Vec<f64>, EvalError>
where
    D: Fn(f64) -> Result<f64, EvalError>,
{
    const SCAN: usize = 128;
    let mut hints = Vec::new();
    let step = (b - a) / SCAN as f64;
    let mut prev_t = a;
    let mut prev_d = d(a)?;
    for i in 1..=SCAN {
        let t = if i == SCAN { b } else { a + step * i as f64 };
        let cur = d(t)?;
        if prev_d == 0.0 {
            hints.push(prev_t);
        } else if prev_d * cur < 0.0 {
            let (mut lo, mut hi) = (prev_t, t);
            let (mut dlo, _) = (prev_d, cur);
            for _ in 0..90 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let dm = d(mid)?;
                if dm == 0.0 {
                    lo = mid;
                    break;
                }
                if dlo * dm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    dlo = dm;
                }
            }
            hints.push(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_d = cur;
    }
    Ok(hints)
}

/// Integrate |g(x) - g(t)| dt over [a, b] with a ≤ x ≤ b.
///
/// The integrand is continuous but generally not differentiable at `t = x`
/// and wherever `g(t)` crosses `g(x)`, so a boundary is seeded at `x` and at
/// every sign change of `g(x) - g(t)` found by bisection.
pub fn integrate_abs_diff(
    g: &FunctionSpec,
    x: f64,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<QuadResult, QuadError> {
    if !(a < b) || !(a <= x && x <= b) {
        return Err(QuadError::InvalidInterval { a, b });
    }
    let gx = g.eval(x)?;
    let diff = |t: f64| Ok(gx - g.eval(t)?);
    let mut hints = sign_change_hints(&diff, a, b)?;
    hints.push(x);
    hints.append(&mut expression_kink_hints(g, a, b));
    integrate_fn(&|t| Ok(math::abs(gx - g.eval(t)?)), a, b, rel_tol, &hints)
}

/// Weighted variant: integrate w(t) |g(x) - g(t)| dt with w supplied as a
/// closure (already clamped to be nonnegative by the caller) plus the
/// weight's own kink points.
pub(crate) fn integrate_abs_diff_weighted<W>(
    g: &FunctionSpec,
    w: &W,
    w_hints: &[f64],
    x: f64,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<QuadResult, QuadError>
where
    W: Fn(f64) -> Result<f64, EvalError>,
{
    if !(a < b) || !(a <= x && x <= b) {
        return Err(QuadError::InvalidInterval { a, b });
    }
    let gx = g.eval(x)?;
    let diff = |t: f64| Ok(gx - g.eval(t)?);
    let mut hints = sign_change_hints(&diff, a, b)?;
    hints.push(x);
    hints.append(&mut expression_kink_hints(g, a, b));
    hints.extend_from_slice(w_hints);
    integrate_fn(
        &|t| Ok(w(t)? * math::abs(gx - g.eval(t)?)),
        a,
        b,
        rel_tol,
        &hints,
    )
}
