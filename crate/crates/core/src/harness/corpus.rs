//! Random test corpus with analytic derivative suprema.
//!
//! Functions are drawn from four families — polynomials of degree ≤ 4 with
//! coefficients in [-2, 2], `a e^(bt)`, `a sin(bt + c)`, and `a ln t + b` —
//! because each has a closed-form supremum of |f'| over an interval. That is
//! what lets the inequality suite run with analytic seminorms instead of
//! sampled lower estimates. Intervals live inside [0.1, 5] so every family
//! (including the log one and the positive-interval bounds) applies.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::Interval;
use crate::expr::FunctionSpec;
use crate::math;

#[derive(Debug, Clone)]
enum Kind {
    Poly([f64; 5]),
    Exp { amp: f64, rate: f64 },
    Sin { amp: f64, freq: f64, phase: f64 },
    Log { amp: f64 },
}

/// A corpus member: expression text plus the analytic machinery for
/// `sup |f'|` over any subinterval.
#[derive(Debug, Clone)]
pub struct CorpusFunction {
    text: String,
    kind: Kind,
}

impl CorpusFunction {
    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn spec(&self) -> FunctionSpec {
        FunctionSpec::parse(&self.text).expect("corpus text is grammatical")
    }

    /// Closed-form `sup_{t in [lo, hi]} |f'(t)|`.
    pub fn sup_abs_deriv(&self, lo: f64, hi: f64) -> f64 {
        match &self.kind {
            Kind::Poly(c) => poly_sup_abs_deriv(c, lo, hi),
            Kind::Exp { amp, rate } => {
                let t = if *rate >= 0.0 { hi } else { lo };
                math::abs(amp * rate) * math::exp(rate * t)
            }
            Kind::Sin { amp, freq, phase } => {
                let u1 = freq * lo + phase;
                let u2 = freq * hi + phase;
                math::abs(amp * freq) * max_abs_cos(u1.min(u2), u1.max(u2))
            }
            Kind::Log { amp, .. } => math::abs(*amp) / lo,
        }
    }
}

/// max |cos u| over [u1, u2]: 1 when the range straddles a multiple of π.
fn max_abs_cos(u1: f64, u2: f64) -> f64 {
    let pi = core::f64::consts::PI;
    let k_lo = math::floor(u1 / pi) + 1.0;
    if k_lo * pi <= u2 {
        1.0
    } else {
        math::abs(math::cos(u1)).max(math::abs(math::cos(u2)))
    }
}

fn poly_sup_abs_deriv(c: &[f64; 5], lo: f64, hi: f64) -> f64 {
    // f' coefficients and f'' coefficients
    let d = [c[1], 2.0 * c[2], 3.0 * c[3], 4.0 * c[4]];
    let dd = [d[1], 2.0 * d[2], 3.0 * d[3]];
    let eval_d = |t: f64| d[0] + t * (d[1] + t * (d[2] + t * d[3]));
    let mut best = math::abs(eval_d(lo)).max(math::abs(eval_d(hi)));
    let mut consider = |t: f64| {
        if t > lo && t < hi {
            best = best.max(math::abs(eval_d(t)));
        }
    };
    if math::abs(dd[2]) > 1e-300 {
        let disc = dd[1] * dd[1] - 4.0 * dd[2] * dd[0];
        if disc >= 0.0 {
            let sq = math::sqrt(disc);
            consider((-dd[1] + sq) / (2.0 * dd[2]));
            consider((-dd[1] - sq) / (2.0 * dd[2]));
        }
    } else if math::abs(dd[1]) > 1e-300 {
        consider(-dd[0] / dd[1]);
    }
    best
}

fn nonzero(rng: &mut ChaCha8Rng, lo: f64, hi: f64, min_abs: f64) -> f64 {
    loop {
        let v: f64 = rng.gen_range(lo..hi);
        if math::abs(v) >= min_abs {
            return v;
        }
    }
}

pub fn sample_function(rng: &mut ChaCha8Rng) -> CorpusFunction {
    match rng.gen_range(0u32..4) {
        0 => {
            let mut c = [0.0f64; 5];
            for coeff in c.iter_mut() {
                *coeff = rng.gen_range(-2.0..2.0);
            }
            let text = format!(
                "{} + {}*t + {}*t^2 + {}*t^3 + {}*t^4",
                c[0], c[1], c[2], c[3], c[4]
            );
            CorpusFunction {
                text,
                kind: Kind::Poly(c),
            }
        }
        1 => {
            let amp = nonzero(rng, -2.0, 2.0, 0.05);
            let rate = nonzero(rng, -1.5, 1.5, 0.1);
            CorpusFunction {
                text: format!("{amp}*exp({rate}*t)"),
                kind: Kind::Exp { amp, rate },
            }
        }
        2 => {
            let amp = nonzero(rng, -2.0, 2.0, 0.05);
            let freq = rng.gen_range(0.4..2.5);
            let phase = rng.gen_range(0.0..core::f64::consts::TAU);
            CorpusFunction {
                text: format!("{amp}*sin({freq}*t + {phase})"),
                kind: Kind::Sin { amp, freq, phase },
            }
        }
        _ => {
            let amp = nonzero(rng, -2.0, 2.0, 0.05);
            let offset: f64 = rng.gen_range(-2.0..2.0);
            CorpusFunction {
                text: format!("{amp}*ln(t) + {offset}"),
                kind: Kind::Log { amp },
            }
        }
    }
}

/// Interval inside [0.1, 5] with width in [0.3, 1.8].
pub fn sample_interval(rng: &mut ChaCha8Rng) -> Interval {
    let lo: f64 = rng.gen_range(0.1..3.2);
    let width: f64 = rng.gen_range(0.3..1.8);
    Interval::new(lo, lo + width).expect("positive width")
}

/// Deterministic corpus of `n` (function, interval) pairs.
pub fn sample_corpus(seed: u64, n: usize) -> Vec<(CorpusFunction, Interval)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let f = sample_function(&mut rng);
            let interval = sample_interval(&mut rng);
            (f, interval)
        })
        .collect()
}
