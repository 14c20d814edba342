//! Independent integral oracles for the special means: every difference
//! quotient mean equals the quadrature mean of its derivative, and the
//! identric/logarithmic/p-logarithmic means are integral transforms of
//! ln t and t^p. These cross-checks never touch the means module's own
//! formulas.

use core::f64::consts::E;

use ostrowski_core::expr::FunctionSpec;
use ostrowski_core::means::{evaluate_mean, MeanKind};
use ostrowski_core::quadrature::integrate;

const TOL: f64 = 1e-12;

fn parse(text: &str) -> FunctionSpec {
    FunctionSpec::parse(text).unwrap()
}

fn quad_mean(f: &FunctionSpec, a: f64, b: f64) -> f64 {
    integrate(f, a, b, TOL).unwrap().value / (b - a)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn identric_is_exp_of_log_mean_value() {
    let ln = parse("ln(t)");
    for &(a, b) in &[(1.0, E), (0.5, 3.0), (0.1, 0.7), (2.0, 17.0)] {
        let oracle = quad_mean(&ln, a, b).exp();
        let value = evaluate_mean(MeanKind::Identric, a, b).unwrap();
        assert!(rel(value, oracle) < 1e-11, "I({a},{b}): {value} vs {oracle}");
    }
    // the worked value: I(1, e) = exp(1/(e-1))
    let value = evaluate_mean(MeanKind::Identric, 1.0, E).unwrap();
    assert!(rel(value, (1.0 / (E - 1.0)).exp()) < 1e-14);
}

#[test]
fn logarithmic_mean_is_reciprocal_of_mean_reciprocal() {
    let inv = parse("1/t");
    for &(a, b) in &[(1.0, 2.0), (0.3, 5.0), (4.0, 4.5)] {
        let oracle = 1.0 / quad_mean(&inv, a, b);
        let value = evaluate_mean(MeanKind::Logarithmic, a, b).unwrap();
        assert!(rel(value, oracle) < 1e-11, "L({a},{b}): {value} vs {oracle}");
    }
}

#[test]
fn p_logarithmic_mean_matches_power_integral() {
    for &p in &[-2.0, -0.5, 0.5, 1.0, 2.0, 3.0] {
        let kernel = FunctionSpec::parse(&format!("t^{p}")).unwrap();
        for &(a, b) in &[(0.5, 1.5), (1.0, 4.0)] {
            let oracle = quad_mean(&kernel, a, b).powf(1.0 / p);
            let value = evaluate_mean(MeanKind::PLogarithmic(p), a, b).unwrap();
            assert!(
                rel(value, oracle) < 1e-11,
                "L_{p}({a},{b}): {value} vs {oracle}"
            );
        }
    }
}

#[test]
fn difference_quotient_means_are_integral_means_of_derivatives() {
    let cases = [
        (MeanKind::Exponential, "exp(t)"),
        (MeanKind::CosMean, "-sin(t)"),
        (MeanKind::SinMean, "cos(t)"),
    ];
    for (kind, deriv) in cases {
        let d = parse(deriv);
        // (-1, 1) makes some of these integrals vanish by symmetry, so the
        // comparison carries an absolute term
        for &(a, b) in &[(-1.0, 1.0), (0.2, 2.7), (0.0, 0.001)] {
            let oracle = quad_mean(&d, a, b);
            let value = evaluate_mean(kind, a, b).unwrap();
            assert!(
                (value - oracle).abs() < 1e-10 * (1.0 + oracle.abs()),
                "{kind:?}({a},{b}): {value} vs {oracle}"
            );
        }
    }
}
