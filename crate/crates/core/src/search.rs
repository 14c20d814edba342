//! One-dimensional golden-section refinement shared by the seminorm
//! estimators and the bound-minimizing node search.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of `f` on [a, b]. Returns `(x_min, f_min)`
/// among all probed points; deterministic for a fixed iteration budget.
pub(crate) fn golden_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, iters: usize) -> (f64, f64) {
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };

    for _ in 0..iters {
        if hi - lo <= f64::EPSILON * (lo.abs().max(hi.abs()) + 1.0) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        let cand = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
        if cand.1 <= best.1 {
            best = cand;
        }
    }
    best
}

/// Golden-section maximization; mirror of [`golden_min`].
pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, iters: usize) -> (f64, f64) {
    let (x, neg) = golden_min(|t| -f(t), a, b, iters);
    (x, -neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_minimum() {
        let (x, v) = golden_min(|t| (t - 1.25) * (t - 1.25) + 3.0, 0.0, 4.0, 100);
        // localization is limited by the rounding plateau of f near its
        // minimum, about sqrt(eps) * scale
        assert!((x - 1.25).abs() < 1e-7);
        assert!((v - 3.0).abs() < 1e-12);
    }

    #[test]
    fn max_mirrors_min() {
        let (x, v) = golden_max(|t| -(t - 0.3) * (t - 0.3), -1.0, 1.0, 100);
        assert!((x - 0.3).abs() < 1e-9);
        assert!(v.abs() < 1e-15);
    }
}
