//! Property tests for the crate-wide invariants: parse/serialize round
//! trips, dual-number vs. finite-difference agreement, mean symmetry and
//! ordering, quadrature additivity, seminorm refinement monotonicity, and
//! the reduction of the generic bound to the classic one.

use proptest::prelude::*;

use ostrowski_core::bounds::{classic_ostrowski, general_bound, Interval};
use ostrowski_core::expr::{BinOp, Expr, Func, FunctionSpec};
use ostrowski_core::harness::corpus;
use ostrowski_core::means::{evaluate_mean, MeanKind};
use ostrowski_core::quadrature::integrate;
use ostrowski_core::supnorm::{sup_ratio, SupEstimate};

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(-3.0..3.0f64).prop_map(Expr::Const), Just(Expr::Var),];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Binary(
                BinOp::Add,
                Box::new(l),
                Box::new(r)
            )),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Binary(
                BinOp::Sub,
                Box::new(l),
                Box::new(r)
            )),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Binary(
                BinOp::Mul,
                Box::new(l),
                Box::new(r)
            )),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Binary(
                BinOp::Div,
                Box::new(l),
                Box::new(r)
            )),
            (inner.clone(), 0u32..4).prop_map(|(b, k)| Expr::Binary(
                BinOp::Pow,
                Box::new(b),
                Box::new(Expr::Const(k as f64))
            )),
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            inner
                .clone()
                .prop_map(|e| Expr::Call(Func::Sin, Box::new(e))),
            inner
                .clone()
                .prop_map(|e| Expr::Call(Func::Cos, Box::new(e))),
            inner
                .clone()
                .prop_map(|e| Expr::Call(Func::Exp, Box::new(e))),
            inner
                .clone()
                .prop_map(|e| Expr::Call(Func::Abs, Box::new(e))),
            inner
                .clone()
                .prop_map(|e| Expr::Call(Func::Ln, Box::new(e))),
            inner.prop_map(|e| Expr::Call(Func::Sqrt, Box::new(e))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_reparse_is_evaluation_equivalent(root in arb_expr()) {
        let f = FunctionSpec::from_expr(root);
        let g = FunctionSpec::parse(&f.to_string()).expect("canonical text reparses");
        for k in 0..100 {
            let t = -2.0 + 0.04 * k as f64;
            match (f.eval(t), g.eval(t)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.to_bits(), b.to_bits()),
                (Err(_), Err(_)) => {}
                other => prop_assert!(false, "round-trip divergence at t={}: {:?}", t, other),
            }
        }
    }

    #[test]
    fn dual_matches_central_difference(seed in 0u64..1000, frac in 0.0f64..1.0) {
        let h = 1e-6;
        for (func, interval) in corpus::sample_corpus(seed, 5) {
            let spec = func.spec();
            let (lo, hi) = (interval.a(), interval.b());
            // stay a safe distance from the interval ends (and hence from
            // the log family's singularity at 0)
            let t = (lo + 1e-3) + (hi - lo - 2e-3) * frac;
            let dual = spec.eval_dual(t).unwrap();
            let cd = (spec.eval(t + h).unwrap() - spec.eval(t - h).unwrap()) / (2.0 * h);
            prop_assert!(
                (dual.deriv - cd).abs() <= 1e-5 * (1.0 + dual.deriv.abs()),
                "{} at t={}: dual {} vs cd {}", func.text(), t, dual.deriv, cd
            );
        }
    }

    #[test]
    fn means_are_symmetric_to_the_bit(x in 0.01f64..50.0, y in 0.01f64..50.0) {
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
        for kind in kinds {
            let xy = evaluate_mean(kind, x, y).unwrap();
            let yx = evaluate_mean(kind, y, x).unwrap();
            prop_assert_eq!(xy.to_bits(), yx.to_bits());
        }
    }

    #[test]
    fn classical_mean_ordering(a in 0.01f64..50.0, delta in 1e-6f64..30.0) {
        let b = a + delta;
        let l = evaluate_mean(MeanKind::Logarithmic, a, b).unwrap();
        let i = evaluate_mean(MeanKind::Identric, a, b).unwrap();
        let m = evaluate_mean(MeanKind::Arithmetic, a, b).unwrap();
        prop_assert!(l <= i && i <= m, "ordering violated: {} {} {}", l, i, m);
        if delta > 1e-4 {
            prop_assert!(l < i && i < m, "gaps must be strict: {} {} {}", l, i, m);
        }
    }

    #[test]
    fn difference_quotient_means_live_in_derivative_range(
        x in -3.0f64..3.0,
        delta in 1e-3f64..4.0,
    ) {
        let y = x + delta;
        type DerivFn = fn(f64) -> f64;
        let cases: [(MeanKind, DerivFn); 3] = [
            (MeanKind::Exponential, |t| t.exp()),
            (MeanKind::CosMean, |t| -t.sin()),
            (MeanKind::SinMean, |t| t.cos()),
        ];
        for (kind, deriv) in cases {
            let value = evaluate_mean(kind, x, y).unwrap();
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for k in 0..=1000 {
                let t = x + delta * k as f64 / 1000.0;
                let d = deriv(t);
                lo = lo.min(d);
                hi = hi.max(d);
            }
            let slack = 1e-9 * (1.0 + hi.abs().max(lo.abs()));
            prop_assert!(
                value >= lo - slack && value <= hi + slack,
                "{:?}: {} outside [{}, {}]", kind, value, lo, hi
            );
        }
    }

    #[test]
    fn quadrature_is_additive(seed in 0u64..500, frac in 0.05f64..0.95) {
        let (func, interval) = &corpus::sample_corpus(seed, 1)[0];
        let spec = func.spec();
        let (a, b) = (interval.a(), interval.b());
        let c = a + (b - a) * frac;
        let whole = integrate(&spec, a, b, 1e-12).unwrap();
        let left = integrate(&spec, a, c, 1e-12).unwrap();
        let right = integrate(&spec, c, b, 1e-12).unwrap();
        let budget =
            2.0 * (whole.err_estimate + left.err_estimate + right.err_estimate) + 1e-13;
        prop_assert!(
            (whole.value - left.value - right.value).abs() <= budget,
            "additivity: {} vs {} + {}", whole.value, left.value, right.value
        );
    }

    #[test]
    fn sampled_sup_agrees_with_analytic_sup(seed in 0u64..400) {
        // grid 4096 localizes the true supremum of |f'| to 1e-6 relative on
        // corpus functions, whose suprema have closed forms
        let t_kernel = FunctionSpec::parse("t").unwrap();
        for (func, interval) in corpus::sample_corpus(seed, 3) {
            let spec = func.spec();
            let analytic = func.sup_abs_deriv(interval.a(), interval.b());
            let sampled = sup_ratio(&spec, &t_kernel, interval, 4096).unwrap().value;
            prop_assert!(
                (sampled - analytic).abs() <= 1e-6 * (1.0 + analytic),
                "{}: sampled {} vs analytic {}", func.text(), sampled, analytic
            );
            prop_assert!(sampled <= analytic * (1.0 + 1e-12) + 1e-12);
        }
    }

    #[test]
    fn sup_refinement_is_monotone_under_grid_doubling(
        k in 0.5f64..4.0,
        m in -1.0f64..1.0,
    ) {
        let f = FunctionSpec::parse(&format!("sin({k}*t) + {m}*t")).unwrap();
        let g = FunctionSpec::parse("t").unwrap();
        let interval = Interval::new(0.0, 2.5).unwrap();
        let mut prev = 0.0;
        for grid in [64u32, 128, 256, 512] {
            let v = sup_ratio(&f, &g, interval, grid).unwrap().value;
            prop_assert!(v >= prev - 1e-15, "grid {}: {} < {}", grid, v, prev);
            prev = v;
        }
    }

    #[test]
    fn general_bound_with_identity_kernel_reduces_to_classic(
        a in -2.0f64..2.0,
        width in 0.1f64..3.0,
        frac in 0.0f64..1.0,
        m in 0.0f64..5.0,
    ) {
        let interval = Interval::new(a, a + width).unwrap();
        let x = a + width * frac;
        let g = FunctionSpec::parse("t").unwrap();
        let norm = SupEstimate::analytic(m, interval);
        let general = general_bound(&g, interval, x, &norm, 1e-12).unwrap();
        let classic = classic_ostrowski(m, interval, x).unwrap();
        prop_assert!(
            (general - classic).abs() <= 1e-12 * classic.abs().max(1e-300),
            "{} vs {}", general, classic
        );
    }
}
