//! Batch verification: case records, suite running, sharpness scans,
//! closed-form-vs-oracle consistency checks, and bound-minimizing node
//! search.
//!
//! A [`CaseSpec`] names a bound id, the functions involved, an interval, an
//! evaluation point (a number, `"midpoint"`, `"median"`, or `"sweep:n"`),
//! and how to obtain the seminorm (a caller-asserted analytic value or a
//! sampled grid estimate). [`check_case`] resolves it to one [`BoundReport`]
//! with a pass/fail status; [`run_suite`] folds a whole list into a
//! [`SuiteSummary`]. Everything is deterministic for a fixed seed: cases are
//! evaluated sequentially and the only randomness is the explicitly seeded
//! corpus.

pub mod corpus;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{de, Deserialize, Serialize};

use crate::bounds::{self, BoundId, BoundReport, Interval};
use crate::expr::FunctionSpec;
use crate::math;
use crate::search;
use crate::supnorm::{self, Provenance, SupEstimate};
use crate::weighted::{self, WeightSpec};

/// Numeric knobs shared by every evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunParams {
    /// Relative tolerance handed to the adaptive integrator.
    pub quad_rel_tol: f64,
    /// Grid size for sampled seminorms.
    pub sup_grid: u32,
    /// Samples used to spot-check hypothesis envelopes.
    pub envelope_samples: u32,
    /// Mass tolerance for the weight-median bisection.
    pub median_tol: f64,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            quad_rel_tol: 1e-12,
            sup_grid: 4096,
            envelope_samples: 4096,
            median_tol: 1e-12,
        }
    }
}

/// Where a case evaluates its bound: a concrete point, the interval
/// midpoint, the weight median, or a sweep of n interior points. Midpoint
/// forms always evaluate at the midpoint and the weighted-median form at
/// the median, whatever this field says.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum XSpec {
    Point(f64),
    #[default]
    Midpoint,
    Median,
    Sweep(u32),
}

impl Serialize for XSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            XSpec::Point(v) => s.serialize_f64(*v),
            XSpec::Midpoint => s.serialize_str("midpoint"),
            XSpec::Median => s.serialize_str("median"),
            XSpec::Sweep(n) => s.serialize_str(&format!("sweep:{n}")),
        }
    }
}

impl<'de> Deserialize<'de> for XSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> de::Visitor<'de> for V {
            type Value = XSpec;
            fn expecting(&self, f: &mut core::fmt::Formatter) -> core::fmt::Result {
                f.write_str("a number, \"midpoint\", \"median\", or \"sweep:n\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<XSpec, E> {
                Ok(XSpec::Point(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<XSpec, E> {
                Ok(XSpec::Point(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<XSpec, E> {
                Ok(XSpec::Point(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<XSpec, E> {
                match v {
                    "midpoint" => Ok(XSpec::Midpoint),
                    "median" => Ok(XSpec::Median),
                    _ => {
                        if let Some(n) = v.strip_prefix("sweep:") {
                            n.parse::<u32>()
                                .map(XSpec::Sweep)
                                .map_err(|_| E::custom(format!("bad sweep count `{n}`")))
                        } else {
                            Err(E::custom(format!("unknown x spec `{v}`")))
                        }
                    }
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// How the seminorm is obtained: asserted analytically (one value, or a
/// left/right pair for split bounds) or sampled on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeminormMode {
    AnalyticSplit {
        analytic_left: f64,
        analytic_right: f64,
    },
    Analytic {
        analytic: f64,
    },
    Sampled {
        grid: u32,
    },
}

impl Default for SeminormMode {
    fn default() -> Self {
        SeminormMode::Sampled { grid: 4096 }
    }
}

fn default_tol_rel() -> f64 {
    1e-9
}

fn default_tol_abs() -> f64 {
    1e-12
}

/// One verifiable record: everything needed to produce a [`BoundReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub bound_id: BoundId,
    pub f: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    pub a: f64,
    pub b: f64,
    #[serde(default)]
    pub x: XSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default)]
    pub seminorm: SeminormMode,
    #[serde(default = "default_tol_rel")]
    pub tol_rel: f64,
    #[serde(default = "default_tol_abs")]
    pub tol_abs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    /// Evaluation failed before a report could be produced; distinct from a
    /// verification failure.
    Error,
}

/// Result of checking one case.
#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub index: usize,
    pub status: CaseStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

/// Worst case of a suite by left/right ratio (or by relative deviation for
/// consistency runs).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WorstCase {
    pub index: usize,
    pub bound_id: BoundId,
    pub x: f64,
    pub ratio: f64,
}

/// Suite-level aggregate. `failed` counts verification failures and
/// evaluation errors; the per-case outcomes keep them distinct.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_ratio: Option<WorstCase>,
    pub max_violation: f64,
}

struct ResolvedCase {
    id: BoundId,
    f: FunctionSpec,
    g: Option<FunctionSpec>,
    weight: Option<WeightSpec>,
    interval: Interval,
    p: Option<f64>,
    seminorm: SeminormMode,
}

fn resolve(case: &CaseSpec, params: &RunParams) -> Result<ResolvedCase, String> {
    let interval = Interval::new(case.a, case.b).map_err(|e| format!("interval: {e}"))?;
    let f = FunctionSpec::parse(&case.f).map_err(|e| format!("f: {e}"))?;
    let g = match &case.g {
        Some(text) => Some(FunctionSpec::parse(text).map_err(|e| format!("g: {e}"))?),
        None => None,
    };
    let id = case.bound_id;
    if id.needs_g() && g.is_none() {
        return Err(format!("bound {id} requires a comparison function g"));
    }
    if id.needs_p() && case.p.is_none() {
        return Err(format!("bound {id} requires the exponent p"));
    }
    let weight = if id.is_weighted() {
        let text = case
            .w
            .as_ref()
            .ok_or_else(|| format!("bound {id} requires a weight function"))?;
        let w = FunctionSpec::parse(text).map_err(|e| format!("w: {e}"))?;
        Some(
            WeightSpec::new(w, interval, params.quad_rel_tol)
                .map_err(|e| format!("weight: {e}"))?,
        )
    } else {
        None
    };
    Ok(ResolvedCase {
        id,
        f,
        g,
        weight,
        interval,
        p: case.p,
        seminorm: case.seminorm,
    })
}

fn resolve_x(rc: &ResolvedCase, x: &XSpec, params: &RunParams) -> Result<f64, String> {
    if rc.id == BoundId::WeightedMedian {
        let w = rc.weight.as_ref().expect("weighted id carries a weight");
        return weighted::find_weight_median(w, params.median_tol).map_err(|e| e.to_string());
    }
    if rc.id.is_midpoint_form() {
        return Ok(rc.interval.midpoint());
    }
    match x {
        XSpec::Point(v) => Ok(*v),
        XSpec::Midpoint => Ok(rc.interval.midpoint()),
        XSpec::Median => match &rc.weight {
            Some(w) => {
                weighted::find_weight_median(w, params.median_tol).map_err(|e| e.to_string())
            }
            None => Err("x = median requires a weighted bound".to_string()),
        },
        XSpec::Sweep(_) => Err("sweep cases must be expanded before checking".to_string()),
    }
}

fn half_intervals(rc: &ResolvedCase, x: f64) -> (Interval, Interval) {
    let left = Interval::new(rc.interval.a(), x).unwrap_or(rc.interval);
    let right = Interval::new(x, rc.interval.b()).unwrap_or(rc.interval);
    (left, right)
}

fn kernel(text: &str) -> FunctionSpec {
    FunctionSpec::parse(text).expect("static kernel text")
}

struct Norms {
    left: SupEstimate,
    right: Option<SupEstimate>,
}

impl Norms {
    /// The seminorm echoed into the report: the binding (larger) one.
    fn primary(&self) -> SupEstimate {
        match self.right {
            Some(r) if r.value > self.left.value => r,
            _ => self.left,
        }
    }
}

fn sampled_norms(rc: &ResolvedCase, x: f64, grid: u32) -> Result<Norms, String> {
    let iv = rc.interval;
    let err = |e: supnorm::SupError| e.to_string();
    let single = |est: SupEstimate| Norms {
        left: est,
        right: None,
    };
    let norms = match rc.id {
        BoundId::Classic => single(supnorm::sup_ratio(&rc.f, &kernel("t"), iv, grid).map_err(err)?),
        BoundId::Power => {
            let p = rc.p.expect("checked in resolve");
            single(supnorm::seminorm_kp(&rc.f, iv, p, grid).map_err(err)?)
        }
        BoundId::Log => single(supnorm::seminorm_p(&rc.f, iv, grid).map_err(err)?),
        BoundId::LocalPowerSym => {
            // symmetric constant: sup |f'(u)| |x-u|^(1-p) over both sides
            let p = rc.p.expect("checked in resolve");
            let h = |t: f64| -> Result<f64, crate::expr::EvalError> {
                let fd = rc.f.eval_dual(t)?;
                Ok(math::abs(fd.deriv) * math::pow(math::abs(x - t), 1.0 - p))
            };
            let (a, b) = (iv.a(), iv.b());
            let l = supnorm::sampled_sup_fn(&h, a, x - (x - a) * 1e-9, grid).map_err(err)?;
            let r = supnorm::sampled_sup_fn(&h, x + (b - x) * 1e-9, b, grid).map_err(err)?;
            let (value, argmax) = if l.0 >= r.0 { l } else { r };
            single(SupEstimate::sampled(value, argmax, iv))
        }
        BoundId::General
        | BoundId::GeneralMidpoint
        | BoundId::Weighted
        | BoundId::WeightedMedian => {
            let g = rc.g.as_ref().expect("checked in resolve");
            single(supnorm::sup_ratio(&rc.f, g, iv, grid).map_err(err)?)
        }
        BoundId::ExpKernel => {
            single(supnorm::sup_ratio(&rc.f, &kernel("exp(t)"), iv, grid).map_err(err)?)
        }
        BoundId::CosKernel => {
            single(supnorm::sup_ratio(&rc.f, &kernel("sin(t)"), iv, grid).map_err(err)?)
        }
        BoundId::SinKernel => {
            single(supnorm::sup_ratio(&rc.f, &kernel("-cos(t)"), iv, grid).map_err(err)?)
        }
        BoundId::Split | BoundId::SplitMidpoint | BoundId::WeightedSplit => {
            let g = rc.g.as_ref().expect("checked in resolve");
            let (li, ri) = half_intervals(rc, x);
            Norms {
                left: supnorm::sup_ratio(&rc.f, g, li, grid).map_err(err)?,
                right: Some(supnorm::sup_ratio(&rc.f, g, ri, grid).map_err(err)?),
            }
        }
        BoundId::LocalPower | BoundId::LocalPowerMidpoint => {
            let p = rc.p.expect("checked in resolve");
            let (l, r) = supnorm::seminorm_mp_split(&rc.f, iv, x, p, grid).map_err(err)?;
            Norms {
                left: l,
                right: Some(r),
            }
        }
        BoundId::MidpointPower => {
            let p = rc.p.expect("checked in resolve");
            let (li, ri) = half_intervals(rc, x);
            Norms {
                left: supnorm::seminorm_kp(&rc.f, li, p, grid).map_err(err)?,
                right: Some(supnorm::seminorm_kp(&rc.f, ri, p, grid).map_err(err)?),
            }
        }
        BoundId::MidpointLinear => {
            let (li, ri) = half_intervals(rc, x);
            let t = kernel("t");
            Norms {
                left: supnorm::sup_ratio(&rc.f, &t, li, grid).map_err(err)?,
                right: Some(supnorm::sup_ratio(&rc.f, &t, ri, grid).map_err(err)?),
            }
        }
        BoundId::MidpointReciprocal => {
            let (li, ri) = half_intervals(rc, x);
            Norms {
                left: supnorm::seminorm_kp(&rc.f, li, -1.0, grid).map_err(err)?,
                right: Some(supnorm::seminorm_kp(&rc.f, ri, -1.0, grid).map_err(err)?),
            }
        }
        BoundId::MidpointLog => {
            let (li, ri) = half_intervals(rc, x);
            Norms {
                left: supnorm::seminorm_p(&rc.f, li, grid).map_err(err)?,
                right: Some(supnorm::seminorm_p(&rc.f, ri, grid).map_err(err)?),
            }
        }
    };
    Ok(norms)
}

fn seminorms(rc: &ResolvedCase, x: f64) -> Result<Norms, String> {
    match rc.seminorm {
        SeminormMode::Analytic { analytic } => {
            if rc.id.needs_split_norms() {
                let (li, ri) = half_intervals(rc, x);
                Ok(Norms {
                    left: SupEstimate::analytic(analytic, li),
                    right: Some(SupEstimate::analytic(analytic, ri)),
                })
            } else {
                Ok(Norms {
                    left: SupEstimate::analytic(analytic, rc.interval),
                    right: None,
                })
            }
        }
        SeminormMode::AnalyticSplit {
            analytic_left,
            analytic_right,
        } => {
            if !rc.id.needs_split_norms() {
                return Err(format!("bound {} takes a single seminorm", rc.id));
            }
            let (li, ri) = half_intervals(rc, x);
            Ok(Norms {
                left: SupEstimate::analytic(analytic_left, li),
                right: Some(SupEstimate::analytic(analytic_right, ri)),
            })
        }
        SeminormMode::Sampled { grid } => {
            sampled_norms(rc, x, grid.max(64))
        }
    }
}

fn rhs_at(rc: &ResolvedCase, x: f64, norms: &Norms, params: &RunParams) -> Result<f64, String> {
    let rel = params.quad_rel_tol;
    let iv = rc.interval;
    let left = &norms.left;
    let right = norms.right.as_ref().unwrap_or(&norms.left);
    let g = rc.g.as_ref();
    let value = match rc.id {
        BoundId::Classic => bounds::classic_ostrowski(left.value, iv, x),
        BoundId::Power => bounds::power_bound(iv, x, rc.p.expect("resolved"), left),
        BoundId::Log => bounds::log_bound(iv, x, left),
        BoundId::LocalPowerSym => {
            bounds::local_power_bound(iv, x, rc.p.expect("resolved"), left, left)
        }
        BoundId::General => bounds::general_bound(g.expect("resolved"), iv, x, left, rel),
        BoundId::GeneralMidpoint => bounds::midpoint_bound(g.expect("resolved"), iv, left, rel),
        BoundId::ExpKernel => bounds::exp_bound(iv, x, left.value),
        BoundId::CosKernel => bounds::cos_bound(iv, x, left.value),
        BoundId::SinKernel => bounds::sin_bound(iv, x, left.value),
        BoundId::Split => bounds::split_bound(g.expect("resolved"), iv, x, left, right, rel),
        BoundId::SplitMidpoint => {
            bounds::split_midpoint_bound(g.expect("resolved"), iv, left, right, rel)
        }
        BoundId::LocalPower => {
            bounds::local_power_bound(iv, x, rc.p.expect("resolved"), left, right)
        }
        BoundId::LocalPowerMidpoint => {
            bounds::local_power_midpoint_bound(iv, rc.p.expect("resolved"), left, right)
        }
        BoundId::MidpointPower => {
            bounds::midpoint_power_bound(iv, rc.p.expect("resolved"), left, right)
        }
        BoundId::MidpointLinear => bounds::midpoint_linear_bound(iv, left, right),
        BoundId::MidpointReciprocal => bounds::midpoint_reciprocal_bound(iv, left, right),
        BoundId::MidpointLog => bounds::midpoint_log_bound(iv, left, right),
        BoundId::Weighted => {
            let w = rc.weight.as_ref().expect("resolved");
            return weighted::weighted_bound(g.expect("resolved"), w, x, left, rel)
                .map_err(|e| e.to_string());
        }
        BoundId::WeightedMedian => {
            // x is already the median; the g(x) mass terms cancel there
            let w = rc.weight.as_ref().expect("resolved");
            let gf = g.expect("resolved");
            let lower = w
                .integral_against(gf, iv.a(), x, rel)
                .map_err(|e| e.to_string())?;
            let upper = w
                .integral_against(gf, x, iv.b(), rel)
                .map_err(|e| e.to_string())?;
            return Ok(math::abs(upper - lower) / w.total_mass() * left.value);
        }
        BoundId::WeightedSplit => {
            let w = rc.weight.as_ref().expect("resolved");
            return weighted::weighted_split_bound(g.expect("resolved"), w, x, left, right, rel)
                .map_err(|e| e.to_string());
        }
    };
    value.map_err(|e| e.to_string())
}

fn lhs_at(rc: &ResolvedCase, x: f64, params: &RunParams) -> Result<f64, String> {
    match &rc.weight {
        Some(w) => {
            weighted::weighted_lhs(&rc.f, w, x, params.quad_rel_tol).map_err(|e| e.to_string())
        }
        None => {
            bounds::lhs_value(&rc.f, rc.interval, x, params.quad_rel_tol).map_err(|e| e.to_string())
        }
    }
}

/// Sample the hypothesis envelope behind an analytic seminorm assertion.
/// Returns human-readable warnings; never fails the case.
fn envelope_warnings(rc: &ResolvedCase, x: f64, norms: &Norms, params: &RunParams) -> Vec<String> {
    let analytic = norms.left.provenance == Provenance::Analytic;
    if !analytic {
        return Vec::new();
    }
    let samples = params.envelope_samples;
    let mut warnings = Vec::new();
    let mut check = |label: &str, interval: Interval, gamma: f64, env: &dyn Fn(f64) -> f64| {
        let margin = bounds::envelope_margin(&rc.f, interval, gamma, env, samples);
        if let Ok(margin) = margin {
            if margin > 1e-9 {
                warnings.push(format!(
                    "hypothesis envelope for {label} exceeded by {margin:.3e} on [{}, {}]",
                    interval.a(),
                    interval.b()
                ));
            }
        }
    };
    let gl = norms.left.value;
    let gr = norms.right.map_or(gl, |r| r.value);
    let (li, ri) = half_intervals(rc, x);
    let iv = rc.interval;
    let p = rc.p.unwrap_or(1.0);
    match rc.id {
        BoundId::Classic => check("|f'| <= M", iv, gl, &|_| 1.0),
        BoundId::Power => check("|f'| <= K_p t^(p-1)", iv, gl, &|u| math::pow(u, p - 1.0)),
        BoundId::Log => check("|f'| <= P/u", iv, gl, &|u| 1.0 / u),
        BoundId::LocalPowerSym => check("|f'| <= M_p |x-t|^(p-1)", iv, gl, &|t| {
            math::pow(math::abs(x - t), p - 1.0)
        }),
        BoundId::ExpKernel => check("|f'| <= Γ e^t", iv, gl, &math::exp),
        BoundId::CosKernel => check("|f'| <= Γ1 cos t", iv, gl, &math::cos),
        BoundId::SinKernel => check("|f'| <= Γ2 sin t", iv, gl, &math::sin),
        BoundId::General
        | BoundId::GeneralMidpoint
        | BoundId::Weighted
        | BoundId::WeightedMedian => {
            let g = rc.g.as_ref().expect("resolved").clone();
            check("|f'| <= norm |g'|", iv, gl, &move |t| {
                g.eval_dual(t).map_or(f64::INFINITY, |d| math::abs(d.deriv))
            });
        }
        BoundId::Split | BoundId::SplitMidpoint | BoundId::WeightedSplit => {
            let g = rc.g.as_ref().expect("resolved").clone();
            let env = move |t: f64| g.eval_dual(t).map_or(f64::INFINITY, |d| math::abs(d.deriv));
            check("left |f'| <= norm |g'|", li, gl, &env);
            check("right |f'| <= norm |g'|", ri, gr, &env);
        }
        BoundId::LocalPower | BoundId::LocalPowerMidpoint => {
            // the envelope the inequality's derivation actually consumes;
            // it matches the split-constant operation's envelope only at
            // p = 1
            check("left |f'| <= M1 (x-t)^(p-1)", li, gl, &|t| {
                math::pow(math::abs(x - t), p - 1.0)
            });
            check("right |f'| <= M2 (t-x)^(p-1)", ri, gr, &|t| {
                math::pow(math::abs(t - x), p - 1.0)
            });
        }
        BoundId::MidpointPower => {
            check("left |f'| <= M1 t^(p-1)", li, gl, &|u| {
                math::pow(u, p - 1.0)
            });
            check("right |f'| <= M2 t^(p-1)", ri, gr, &|u| {
                math::pow(u, p - 1.0)
            });
        }
        BoundId::MidpointLinear => {
            check("left |f'| <= N1", li, gl, &|_| 1.0);
            check("right |f'| <= N2", ri, gr, &|_| 1.0);
        }
        BoundId::MidpointReciprocal => {
            check("left |f'| <= M1 t^-2", li, gl, &|u| 1.0 / (u * u));
            check("right |f'| <= M2 t^-2", ri, gr, &|u| 1.0 / (u * u));
        }
        BoundId::MidpointLog => {
            check("left |f'| <= M1 / t", li, gl, &|u| 1.0 / u);
            check("right |f'| <= M2 / t", ri, gr, &|u| 1.0 / u);
        }
    }
    warnings
}

fn evaluate(
    case: &CaseSpec,
    params: &RunParams,
    rhs_scale: f64,
) -> Result<(BoundReport, Vec<String>), String> {
    let rc = resolve(case, params)?;
    let x = resolve_x(&rc, &case.x, params)?;
    let norms = seminorms(&rc, x)?;
    let rhs = rhs_at(&rc, x, &norms, params)? * rhs_scale;
    let lhs = lhs_at(&rc, x, params)?;
    let warnings = envelope_warnings(&rc, x, &norms, params);
    Ok((
        BoundReport::new(rc.id, lhs, rhs, norms.primary(), x, rc.interval),
        warnings,
    ))
}

/// Check one case (sweeps must be expanded first; see [`expand_sweep`]).
pub fn check_case(case: &CaseSpec, params: &RunParams) -> CaseOutcome {
    check_case_with_scale(case, params, 1.0)
}

/// [`check_case`] with the right-hand side multiplied by `rhs_scale` before
/// the comparison — the falsification control: scaling an equality case by
/// anything below 1 must flip it to a failure.
pub fn check_case_with_scale(case: &CaseSpec, params: &RunParams, rhs_scale: f64) -> CaseOutcome {
    match evaluate(case, params, rhs_scale) {
        Ok((report, warnings)) => {
            let status = if report.passes(case.tol_rel, case.tol_abs) {
                CaseStatus::Pass
            } else {
                CaseStatus::Fail
            };
            CaseOutcome {
                index: 0,
                status,
                report: Some(report),
                error: None,
                warnings,
            }
        }
        Err(message) => CaseOutcome {
            index: 0,
            status: CaseStatus::Error,
            report: None,
            error: Some(message),
            warnings: Vec::new(),
        },
    }
}

/// Expand `sweep:n` into n concrete interior points; other specs pass
/// through unchanged.
pub fn expand_sweep(case: &CaseSpec) -> Vec<CaseSpec> {
    match case.x {
        XSpec::Sweep(n) => (1..=n)
            .map(|k| {
                let mut c = case.clone();
                let frac = k as f64 / (n as f64 + 1.0);
                c.x = XSpec::Point(case.a + (case.b - case.a) * frac);
                c
            })
            .collect(),
        _ => alloc::vec![case.clone()],
    }
}

/// Run a list of cases sequentially (deterministic order) and fold the
/// summary.
pub fn run_suite(cases: &[CaseSpec], params: &RunParams) -> (SuiteSummary, Vec<CaseOutcome>) {
    let mut outcomes = Vec::new();
    let mut index = 0usize;
    for case in cases {
        for concrete in expand_sweep(case) {
            let mut outcome = check_case(&concrete, params);
            outcome.index = index;
            index += 1;
            outcomes.push(outcome);
        }
    }
    let summary = summarize(&outcomes);
    (summary, outcomes)
}

fn summarize(outcomes: &[CaseOutcome]) -> SuiteSummary {
    let mut passed = 0;
    let mut failed = 0;
    let mut worst: Option<WorstCase> = None;
    let mut max_violation = 0.0f64;
    for outcome in outcomes {
        match outcome.status {
            CaseStatus::Pass => passed += 1,
            CaseStatus::Fail | CaseStatus::Error => failed += 1,
        }
        if let Some(report) = &outcome.report {
            if report.ratio.is_finite() && worst.is_none_or(|w| report.ratio > w.ratio) {
                worst = Some(WorstCase {
                    index: outcome.index,
                    bound_id: report.bound_id,
                    x: report.x,
                    ratio: report.ratio,
                });
            }
            max_violation = max_violation.max(report.violation(1e-9, 1e-12));
        }
    }
    SuiteSummary {
        total: outcomes.len(),
        passed,
        failed,
        worst_ratio: worst,
        max_violation,
    }
}

fn trig_interval(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let lo: f64 = rng.gen_range(0.05..0.6);
    let hi: f64 = lo + rng.gen_range(0.2..(1.45 - lo));
    (lo, hi)
}

fn endpoint_x(rng: &mut ChaCha8Rng, a: f64, b: f64) -> f64 {
    if rng.gen_bool(0.5) {
        a
    } else {
        b
    }
}

const SHARPNESS_P: [f64; 4] = [0.5, 1.0, 2.0, 3.0];
const POWER_P: [f64; 7] = [0.5, 1.0, 2.0, 3.0, -0.5, -2.0, -1.0];
const WEIGHT_WHEEL: [&str; 4] = ["1", "t", "1 + t^2", "2 + sin(t)"];

/// Generate one case from the built-in witness family for `id`. Families
/// are chosen so the Cauchy ratio is constant (equality witnesses) wherever
/// the catalog admits one; the remaining ids get valid generic cases whose
/// max ratio is simply reported.
pub fn sharpness_family_case(id: BoundId, rng: &mut ChaCha8Rng) -> CaseSpec {
    let interval = corpus::sample_interval(rng);
    let (a, b) = (interval.a(), interval.b());
    let mid = interval.midpoint();
    let base = |f: &str| CaseSpec {
        bound_id: id,
        f: f.to_string(),
        g: None,
        w: None,
        a,
        b,
        x: XSpec::Midpoint,
        p: None,
        seminorm: SeminormMode::Analytic { analytic: 1.0 },
        tol_rel: default_tol_rel(),
        tol_abs: default_tol_abs(),
    };
    match id {
        BoundId::Classic => {
            let mut c = base("t");
            c.x = XSpec::Point(endpoint_x(rng, a, b));
            c
        }
        BoundId::Power => {
            let p = POWER_P[rng.gen_range(0..POWER_P.len())];
            let mut c = base(&format!("t^{p} / {p}"));
            c.p = Some(p);
            c.x = XSpec::Point(endpoint_x(rng, a, b));
            c
        }
        BoundId::Log => {
            let mut c = base("ln(t)");
            c.x = XSpec::Point(endpoint_x(rng, a, b));
            c
        }
        BoundId::LocalPowerSym => {
            let p = SHARPNESS_P[rng.gen_range(0..SHARPNESS_P.len())];
            let x = a + (b - a) * rng.gen_range(0.2..0.8);
            let mut c = base(&format!("abs(t - {x})^{p} / {p}"));
            c.p = Some(p);
            c.x = XSpec::Point(x);
            c
        }
        BoundId::General | BoundId::GeneralMidpoint => {
            let g = if rng.gen_bool(0.5) { "exp(t)" } else { "ln(t)" };
            let mut c = base(g);
            c.g = Some(g.to_string());
            if id == BoundId::General {
                c.x = XSpec::Point(endpoint_x(rng, a, b));
            }
            c
        }
        BoundId::ExpKernel => {
            let mut c = base("exp(t)");
            c.x = XSpec::Point(endpoint_x(rng, a, b));
            c
        }
        BoundId::CosKernel | BoundId::SinKernel => {
            let (lo, hi) = trig_interval(rng);
            let f = if id == BoundId::CosKernel {
                "sin(t)"
            } else {
                "-cos(t)"
            };
            let mut c = base(f);
            c.a = lo;
            c.b = hi;
            c.x = XSpec::Point(endpoint_x(rng, lo, hi));
            c
        }
        BoundId::Split | BoundId::SplitMidpoint | BoundId::WeightedSplit => {
            let mut c = base("exp(t)");
            c.g = Some("exp(t)".to_string());
            c.seminorm = SeminormMode::AnalyticSplit {
                analytic_left: 1.0,
                analytic_right: 1.0,
            };
            if id == BoundId::Split || id == BoundId::WeightedSplit {
                c.x = XSpec::Point(a + (b - a) * rng.gen_range(0.2..0.8));
            }
            if id == BoundId::WeightedSplit {
                c.w = Some(WEIGHT_WHEEL[rng.gen_range(0..WEIGHT_WHEEL.len())].to_string());
            }
            c
        }
        BoundId::LocalPower | BoundId::LocalPowerMidpoint => {
            let p = SHARPNESS_P[rng.gen_range(0..SHARPNESS_P.len())];
            let x = if id == BoundId::LocalPower {
                a + (b - a) * rng.gen_range(0.2..0.8)
            } else {
                mid
            };
            let mut c = base(&format!("abs(t - {x})^{p} / {p}"));
            c.p = Some(p);
            c.seminorm = SeminormMode::AnalyticSplit {
                analytic_left: 1.0,
                analytic_right: 1.0,
            };
            if id == BoundId::LocalPower {
                c.x = XSpec::Point(x);
            }
            c
        }
        BoundId::MidpointPower => {
            let p = POWER_P[rng.gen_range(0..POWER_P.len() - 1)]; // excludes -1
            let mut c = base(&format!("t^{p} / {p}"));
            c.p = Some(p);
            c.seminorm = SeminormMode::AnalyticSplit {
                analytic_left: 1.0,
                analytic_right: 1.0,
            };
            c
        }
        BoundId::MidpointLinear => {
            let mut c = base("t^2 / 2");
            // |f'| = t, so the tight constant envelopes per half are sup t
            c.seminorm = SeminormMode::AnalyticSplit {
                analytic_left: mid,
                analytic_right: b,
            };
            c
        }
        BoundId::MidpointReciprocal => {
            let mut c = base("-1/t");
            c.seminorm = SeminormMode::AnalyticSplit {
                analytic_left: 1.0,
                analytic_right: 1.0,
            };
            c
        }
        BoundId::MidpointLog => {
            let mut c = base("ln(t)");
            c.seminorm = SeminormMode::AnalyticSplit {
                analytic_left: 1.0,
                analytic_right: 1.0,
            };
            c
        }
        BoundId::Weighted => {
            // equality needs all the weight's mass on one side of x: give w
            // support [a, c] and evaluate right of c with f = g monotone
            let c_point = a + (b - a) * rng.gen_range(0.3..0.5);
            let x = a + (b - a) * rng.gen_range(0.6..0.9);
            let mut c = base("exp(t)");
            c.g = Some("exp(t)".to_string());
            c.w = Some(format!("abs(t - {c_point}) - (t - {c_point})"));
            c.x = XSpec::Point(x);
            c
        }
        BoundId::WeightedMedian => {
            // no equality family exists: the median splits the mass, so the
            // integrand always changes sign; the scan just reports the ratio
            let mut c = base("exp(t)");
            c.g = Some("exp(t)".to_string());
            c.w = Some(WEIGHT_WHEEL[rng.gen_range(0..WEIGHT_WHEEL.len())].to_string());
            c.x = XSpec::Median;
            c
        }
    }
}

/// Scan `n` family cases for `id` and report the summary plus the maximum
/// lhs/rhs ratio observed.
pub fn sharpness_scan(
    id: BoundId,
    n: usize,
    seed: u64,
    params: &RunParams,
) -> (SuiteSummary, f64, Vec<CaseOutcome>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<CaseSpec> = (0..n)
        .map(|_| sharpness_family_case(id, &mut rng))
        .collect();
    let (summary, outcomes) = run_suite(&cases, params);
    let max_ratio = outcomes
        .iter()
        .filter_map(|o| o.report.as_ref())
        .map(|r| r.ratio)
        .filter(|r| r.is_finite())
        .fold(0.0f64, f64::max);
    (summary, max_ratio, outcomes)
}

/// Fixed grids for the closed-form vs. brute-force consistency run.
const CONSISTENCY_P: [f64; 7] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0];
const POSITIVE_IVS: [(f64, f64); 4] = [
    (0.5, 1.5),
    (1.0, core::f64::consts::E),
    (0.1, 2.1),
    (2.0, 5.0),
];
const ANY_IVS: [(f64, f64); 3] = [(0.0, 1.0), (-1.0, 1.5), (0.5, 3.0)];
const TRIG_IVS: [(f64, f64); 3] = [(0.2, 1.2), (0.05, 1.5), (0.4, 0.9)];
const X_FRACS: [f64; 5] = [0.0, 0.3, 0.5, 0.8, 1.0];
const INTERIOR_FRACS: [f64; 3] = [0.25, 0.5, 0.75];

/// Check every specialized closed form against
/// `norm * (1/M) ∫ w |g(x) - g(t)| dt` (w ≡ 1 for the unweighted ids) on the
/// fixed grid. In the returned summary `worst_ratio.ratio` and
/// `max_violation` carry relative deviations rather than lhs/rhs ratios.
pub fn consistency_suite(params: &RunParams) -> Result<SuiteSummary, String> {
    const REL_LIMIT: f64 = 1e-8;
    let rel_tol = params.quad_rel_tol;
    let mut total = 0usize;
    let mut passed = 0usize;
    let mut worst: Option<WorstCase> = None;
    let mut max_dev = 0.0f64;

    let mut record = |id: BoundId, x: f64, closed: f64, oracle: f64| {
        let dev = math::abs(closed - oracle) / math::abs(oracle).max(1e-300);
        total += 1;
        if dev <= REL_LIMIT {
            passed += 1;
        }
        if worst.is_none_or(|w| dev > w.ratio) {
            worst = Some(WorstCase {
                index: total - 1,
                bound_id: id,
                x,
                ratio: dev,
            });
        }
        if dev > max_dev {
            max_dev = dev;
        }
    };

    let err = |e: &dyn core::fmt::Display| e.to_string();

    // power kernel (three p-branches)
    for &(a, b) in &POSITIVE_IVS {
        let iv = Interval::new(a, b).map_err(|e| err(&e))?;
        let unit = SupEstimate::analytic(1.0, iv);
        for &p in &CONSISTENCY_P {
            let g = FunctionSpec::parse(&format!("t^{p}")).map_err(|e| err(&e))?;
            for &frac in &X_FRACS {
                let x = a + (b - a) * frac;
                let closed = bounds::power_bound(iv, x, p, &unit).map_err(|e| err(&e))?;
                let oracle = crate::quadrature::integrate_abs_diff(&g, x, a, b, rel_tol)
                    .map_err(|e| err(&e))?
                    .value
                    / (math::abs(p) * (b - a));
                record(BoundId::Power, x, closed, oracle);
            }
        }
    }

    // log kernel
    for &(a, b) in &POSITIVE_IVS {
        let iv = Interval::new(a, b).map_err(|e| err(&e))?;
        let unit = SupEstimate::analytic(1.0, iv);
        let g = kernel("ln(t)");
        for &frac in &X_FRACS {
            let x = a + (b - a) * frac;
            let closed = bounds::log_bound(iv, x, &unit).map_err(|e| err(&e))?;
            let oracle = crate::quadrature::integrate_abs_diff(&g, x, a, b, rel_tol)
                .map_err(|e| err(&e))?
                .value
                / (b - a);
            record(BoundId::Log, x, closed, oracle);
        }
    }

    // exponential kernel
    for &(a, b) in &ANY_IVS {
        let iv = Interval::new(a, b).map_err(|e| err(&e))?;
        let g = kernel("exp(t)");
        for &frac in &X_FRACS {
            let x = a + (b - a) * frac;
            let closed = bounds::exp_bound(iv, x, 1.0).map_err(|e| err(&e))?;
            let oracle = crate::quadrature::integrate_abs_diff(&g, x, a, b, rel_tol)
                .map_err(|e| err(&e))?
                .value
                / (b - a);
            record(BoundId::ExpKernel, x, closed, oracle);
        }
    }

    // trigonometric kernels
    for &(a, b) in &TRIG_IVS {
        let iv = Interval::new(a, b).map_err(|e| err(&e))?;
        let sin_g = kernel("sin(t)");
        let cos_g = kernel("cos(t)");
        for &frac in &X_FRACS {
            let x = a + (b - a) * frac;
            let closed = bounds::cos_bound(iv, x, 1.0).map_err(|e| err(&e))?;
            let oracle = crate::quadrature::integrate_abs_diff(&sin_g, x, a, b, rel_tol)
                .map_err(|e| err(&e))?
                .value
                / (b - a);
            record(BoundId::CosKernel, x, closed, oracle);

            let closed = bounds::sin_bound(iv, x, 1.0).map_err(|e| err(&e))?;
            let oracle = crate::quadrature::integrate_abs_diff(&cos_g, x, a, b, rel_tol)
                .map_err(|e| err(&e))?
                .value
                / (b - a);
            record(BoundId::SinKernel, x, closed, oracle);
        }
    }

    // midpoint power / reciprocal / log kernels
    for &(a, b) in &POSITIVE_IVS {
        let iv = Interval::new(a, b).map_err(|e| err(&e))?;
        let unit = SupEstimate::analytic(1.0, iv);
        let mid = iv.midpoint();
        for &p in &CONSISTENCY_P {
            if p == -1.0 {
                continue;
            }
            let g = FunctionSpec::parse(&format!("t^{p}")).map_err(|e| err(&e))?;
            let closed = bounds::midpoint_power_bound(iv, p, &unit, &unit).map_err(|e| err(&e))?;
            let oracle = crate::quadrature::integrate_abs_diff(&g, mid, a, b, rel_tol)
                .map_err(|e| err(&e))?
                .value
                / (math::abs(p) * (b - a));
            record(BoundId::MidpointPower, mid, closed, oracle);
        }
        let closed = bounds::midpoint_reciprocal_bound(iv, &unit, &unit).map_err(|e| err(&e))?;
        let oracle = crate::quadrature::integrate_abs_diff(&kernel("1/t"), mid, a, b, rel_tol)
            .map_err(|e| err(&e))?
            .value
            / (b - a);
        record(BoundId::MidpointReciprocal, mid, closed, oracle);

        let closed = bounds::midpoint_log_bound(iv, &unit, &unit).map_err(|e| err(&e))?;
        let oracle = crate::quadrature::integrate_abs_diff(&kernel("ln(t)"), mid, a, b, rel_tol)
            .map_err(|e| err(&e))?
            .value
            / (b - a);
        record(BoundId::MidpointLog, mid, closed, oracle);
    }

    // weighted forms
    for &(a, b) in &POSITIVE_IVS {
        let iv = Interval::new(a, b).map_err(|e| err(&e))?;
        let unit = SupEstimate::analytic(1.0, iv);
        for w_text in ["1", "t", "1 + t^2"] {
            let w = WeightSpec::new(kernel(w_text), iv, rel_tol).map_err(|e| err(&e))?;
            let m = w.total_mass();
            for g_text in ["t", "exp(t)"] {
                let g = kernel(g_text);
                for &frac in &INTERIOR_FRACS {
                    let x = a + (b - a) * frac;
                    let closed =
                        weighted::weighted_bound(&g, &w, x, &unit, rel_tol).map_err(|e| err(&e))?;
                    let oracle = w.abs_diff_integral(&g, x, rel_tol).map_err(|e| err(&e))? / m;
                    record(BoundId::Weighted, x, closed, oracle);

                    let closed = weighted::weighted_split_bound(&g, &w, x, &unit, &unit, rel_tol)
                        .map_err(|e| err(&e))?;
                    record(BoundId::WeightedSplit, x, closed, oracle);
                }
                let (closed, x0) =
                    weighted::weighted_median_bound(&g, &w, &unit, params.median_tol, rel_tol)
                        .map_err(|e| err(&e))?;
                let oracle = w.abs_diff_integral(&g, x0, rel_tol).map_err(|e| err(&e))? / m;
                record(BoundId::WeightedMedian, x0, closed, oracle);
            }
        }
    }

    Ok(SuiteSummary {
        total,
        passed,
        failed: total - passed,
        worst_ratio: worst,
        max_violation: max_dev,
    })
}

/// Minimize an x-dependent right-hand side over the interval: grid scan plus
/// golden-section refinement around the best cell. Points where the
/// evaluator fails (e.g. boundary x for interior-only bounds) are skipped.
pub fn best_node<F>(rhs: F, interval: Interval, grid: u32) -> Result<(f64, f64), String>
where
    F: Fn(f64) -> Result<f64, String>,
{
    let n = grid.max(8) as usize;
    let (a, b) = (interval.a(), interval.b());
    let step = (b - a) / n as f64;
    let mut best: Option<(f64, f64)> = None; // (value, x)
    for i in 0..=n {
        let x = if i == n { b } else { a + step * i as f64 };
        if let Ok(v) = rhs(x) {
            if best.is_none_or(|(bv, _)| v < bv) {
                best = Some((v, x));
            }
        }
    }
    let (grid_val, grid_x) = best.ok_or("right-hand side failed at every grid point")?;
    let lo = (grid_x - step).max(a);
    let hi = (grid_x + step).min(b);
    let (ref_x, ref_val) = search::golden_min(|x| rhs(x).unwrap_or(f64::INFINITY), lo, hi, 80);
    if ref_val < grid_val {
        Ok((ref_x, ref_val))
    } else {
        Ok((grid_x, grid_val))
    }
}

/// [`best_node`] for a case record: the case's x spec is ignored and its
/// right-hand side is minimized over the evaluation point.
pub fn best_node_for_case(
    case: &CaseSpec,
    grid: u32,
    params: &RunParams,
) -> Result<(f64, f64), String> {
    if case.bound_id.is_midpoint_form() || case.bound_id == BoundId::WeightedMedian {
        return Err(format!(
            "bound {} has no free evaluation point",
            case.bound_id
        ));
    }
    let rc = resolve(case, params)?;
    let eval = |x: f64| -> Result<f64, String> {
        let norms = seminorms(&rc, x)?;
        rhs_at(&rc, x, &norms, params)
    };
    best_node(eval, rc.interval, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn params() -> RunParams {
        RunParams::default()
    }

    fn make_case(id: BoundId, f: &str, a: f64, b: f64) -> CaseSpec {
        CaseSpec {
            bound_id: id,
            f: f.to_string(),
            g: None,
            w: None,
            a,
            b,
            x: XSpec::Midpoint,
            p: None,
            seminorm: SeminormMode::Analytic { analytic: 1.0 },
            tol_rel: 1e-9,
            tol_abs: 1e-12,
        }
    }

    #[test]
    fn classic_equality_case_passes_with_ratio_one() {
        let mut c = make_case(BoundId::Classic, "t", 0.0, 1.0);
        c.x = XSpec::Point(0.0);
        let outcome = check_case(&c, &params());
        assert_eq!(outcome.status, CaseStatus::Pass);
        let r = outcome.report.unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-12, "{}", r.ratio);
    }

    #[test]
    fn general_sine_case_matches_expected_ratio() {
        let mut c = make_case(BoundId::General, "sin(t)", 0.0, PI);
        c.g = Some("t".to_string());
        c.x = XSpec::Point(FRAC_PI_2);
        let outcome = check_case(&c, &params());
        assert_eq!(outcome.status, CaseStatus::Pass);
        let r = outcome.report.unwrap();
        let expect = (1.0 - 2.0 / PI) / (PI / 4.0);
        assert!((r.ratio - expect).abs() < 1e-9, "{} vs {expect}", r.ratio);
    }

    #[test]
    fn falsification_control_flips_equality_to_failure() {
        let mut c = make_case(BoundId::Classic, "t", 0.0, 1.0);
        c.x = XSpec::Point(0.0);
        let outcome = check_case_with_scale(&c, &params(), 0.9);
        assert_eq!(outcome.status, CaseStatus::Fail);
        assert!(outcome.report.unwrap().violation(1e-9, 1e-12) > 0.01);
    }

    #[test]
    fn evaluation_error_is_not_a_failure() {
        let mut c = make_case(BoundId::Log, "ln(t)", -1.0, 1.0);
        c.x = XSpec::Point(0.5);
        let outcome = check_case(&c, &params());
        assert_eq!(outcome.status, CaseStatus::Error);
        assert!(outcome.error.is_some());
        assert!(outcome.report.is_none());
    }

    #[test]
    fn sampled_seminorm_case() {
        let mut c = make_case(BoundId::Classic, "sin(t)", 0.0, 2.0);
        c.seminorm = SeminormMode::Sampled { grid: 256 };
        c.x = XSpec::Point(0.3);
        let outcome = check_case(&c, &params());
        assert_eq!(outcome.status, CaseStatus::Pass);
        let r = outcome.report.unwrap();
        assert_eq!(r.seminorm.provenance, Provenance::Sampled);
        assert!((r.seminorm.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn envelope_violation_warns_but_does_not_fail() {
        // assert gamma = 0.25 while |f'| = 1: bound fails AND warns
        let mut c = make_case(BoundId::ExpKernel, "t", 0.0, 1.0);
        c.seminorm = SeminormMode::Analytic { analytic: 0.25 };
        c.x = XSpec::Point(0.1);
        let outcome = check_case(&c, &params());
        assert!(!outcome.warnings.is_empty());
    }

    #[test]
    fn sweep_expansion() {
        let mut c = make_case(BoundId::Classic, "t^2/2", 0.0, 1.0);
        c.x = XSpec::Sweep(5);
        let expanded = expand_sweep(&c);
        assert_eq!(expanded.len(), 5);
        assert!(matches!(expanded[2].x, XSpec::Point(v) if (v - 0.5).abs() < 1e-15));
        let (summary, outcomes) = run_suite(&[c], &params());
        assert_eq!(summary.total, 5);
        assert_eq!(summary.passed, 5);
        assert_eq!(outcomes.len(), 5);
    }

    #[test]
    fn suite_summary_counts_and_worst_ratio() {
        let mut eq = make_case(BoundId::Classic, "t", 0.0, 1.0);
        eq.x = XSpec::Point(1.0);
        let mid = make_case(BoundId::Classic, "t", 0.0, 1.0); // lhs = 0 at midpoint
        let mut bad = make_case(BoundId::Log, "ln(t)", -1.0, 1.0);
        bad.x = XSpec::Point(0.5);
        let (summary, _) = run_suite(&[eq, mid, bad], &params());
        assert_eq!(summary.total, 3);
        assert_eq!(summary.passed, 2);
        assert_eq!(summary.failed, 1);
        let worst = summary.worst_ratio.unwrap();
        assert_eq!(worst.index, 0);
        assert!((worst.ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_median_case_evaluates_at_the_median() {
        let mut c = make_case(BoundId::WeightedMedian, "exp(t)", 0.0, 1.0);
        c.g = Some("exp(t)".to_string());
        c.w = Some("t".to_string());
        let outcome = check_case(&c, &params());
        assert_eq!(outcome.status, CaseStatus::Pass);
        let r = outcome.report.unwrap();
        assert!((r.x - 1.0 / SQRT_2).abs() < 1e-9);
        assert!(r.ratio > 0.0 && r.ratio < 1.0, "{}", r.ratio);
    }

    #[test]
    fn sharpness_families_reach_equality_where_claimed() {
        let p = params();
        for id in [
            BoundId::Classic,
            BoundId::Power,
            BoundId::Log,
            BoundId::LocalPowerSym,
            BoundId::General,
            BoundId::ExpKernel,
            BoundId::CosKernel,
            BoundId::SinKernel,
            BoundId::LocalPower,
            BoundId::LocalPowerMidpoint,
            BoundId::Weighted,
        ] {
            let (summary, max_ratio, _) = sharpness_scan(id, 12, 42, &p);
            assert_eq!(summary.failed, 0, "{id}: {summary:?}");
            assert!(
                (max_ratio - 1.0).abs() < 1e-6,
                "{id}: max ratio {max_ratio}"
            );
        }
        // classic family with n = 20 pins the sharp constant tightly
        let (_, max_ratio, _) = sharpness_scan(BoundId::Classic, 20, 7, &p);
        assert!((max_ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sharpness_families_cover_remaining_ids() {
        let p = params();
        for id in [
            BoundId::GeneralMidpoint,
            BoundId::Split,
            BoundId::SplitMidpoint,
            BoundId::MidpointPower,
            BoundId::MidpointLinear,
            BoundId::MidpointReciprocal,
            BoundId::MidpointLog,
            BoundId::WeightedSplit,
            BoundId::WeightedMedian,
        ] {
            let (summary, max_ratio, _) = sharpness_scan(id, 8, 11, &p);
            assert_eq!(summary.failed, 0, "{id}: {summary:?}");
            assert!(max_ratio <= 1.0 + 1e-9, "{id}: {max_ratio}");
        }
    }

    #[test]
    fn shared_types_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::FunctionSpec>();
        assert_send_sync::<crate::WeightSpec>();
        assert_send_sync::<crate::BoundReport>();
        assert_send_sync::<CaseSpec>();
    }

    #[test]
    fn determinism_of_suite_runs() {
        let (s1, max1, o1) = sharpness_scan(BoundId::Weighted, 6, 99, &params());
        let (s2, max2, o2) = sharpness_scan(BoundId::Weighted, 6, 99, &params());
        assert_eq!(max1.to_bits(), max2.to_bits());
        assert_eq!(s1.passed, s2.passed);
        for (a, b) in o1.iter().zip(&o2) {
            let (ra, rb) = (a.report.as_ref().unwrap(), b.report.as_ref().unwrap());
            assert_eq!(ra.lhs.to_bits(), rb.lhs.to_bits());
            assert_eq!(ra.rhs.to_bits(), rb.rhs.to_bits());
        }
    }

    #[test]
    fn best_node_examples() {
        let p = params();
        // classic bracket is minimized at the midpoint
        let mut c = make_case(BoundId::Classic, "t", 0.0, 1.0);
        c.x = XSpec::Point(0.0);
        let (x_star, rhs_star) = best_node_for_case(&c, 1000, &p).unwrap();
        assert!((x_star - 0.5).abs() < 1e-6);
        assert!((rhs_star - 0.25).abs() < 1e-9);

        // weighted identity kernel: the weight median minimizes the bound
        let mut c = make_case(BoundId::Weighted, "t", 0.0, 1.0);
        c.g = Some("t".to_string());
        c.w = Some("t".to_string());
        let (x_star, _) = best_node_for_case(&c, 400, &p).unwrap();
        assert!((x_star - 1.0 / SQRT_2).abs() < 1e-6, "{x_star}");

        // exponential kernel skews the minimizer strictly left of center
        let mut c = make_case(BoundId::ExpKernel, "exp(t)", 0.0, 1.0);
        c.x = XSpec::Point(0.0);
        let (x_star, _) = best_node_for_case(&c, 800, &p).unwrap();
        assert!(x_star < 0.5, "{x_star}");
    }

    #[test]
    fn best_node_grid_stability() {
        let p = params();
        let mut c = make_case(BoundId::ExpKernel, "exp(t)", 0.0, 1.0);
        c.x = XSpec::Point(0.0);
        let coarse_step = 1.0 / 200.0;
        let (x_coarse, _) = best_node_for_case(&c, 200, &p).unwrap();
        let (x_fine, _) = best_node_for_case(&c, 400, &p).unwrap();
        assert!((x_coarse - x_fine).abs() <= coarse_step + 1e-12);
    }

    #[test]
    fn consistency_suite_is_clean() {
        let summary = consistency_suite(&params()).unwrap();
        assert_eq!(summary.failed, 0, "{summary:?}");
        assert!(summary.total > 300);
        assert!(summary.max_violation <= 1e-8);
    }
}
