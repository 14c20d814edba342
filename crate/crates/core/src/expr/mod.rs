//! Expression front-end: parsing and forward-mode (dual number) evaluation.
//!
//! Functions of one variable `t` are described by a small grammar:
//! numbers (decimal or scientific), the variable `t`, the constants `pi` and
//! `e`, binary `+ - * / ^` with the usual precedence (`^` right-associative,
//! binding tighter than unary minus), unary minus, parentheses, and the calls
//! `sin cos exp ln abs sqrt`. The parsed tree is immutable and pure to
//! evaluate, so a [`FunctionSpec`] can be shared across threads freely.

mod parser;

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::fmt;

use crate::math;

pub use parser::{ParseError, ParseErrorKind};

/// Binary operators of the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// Unary function calls of the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Abs,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Abs => "abs",
            Func::Sqrt => "sqrt",
        }
    }
}

/// Expression tree node.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl fmt::Display for Expr {
    /// Canonical serialization: fully parenthesized, so re-parsing rebuilds
    /// the identical tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // negative literals must parenthesize: `^` binds tighter than
            // unary minus, so a bare `-c ^ e` would re-parse as `-(c ^ e)`
            Expr::Const(c) if c.is_sign_negative() => write!(f, "(-{})", -c),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "t"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

/// Value and first derivative of an expression at a point, propagated by the
/// forward-mode chain rule. The variable node has `deriv == 1` exactly and
/// every constant node has `deriv == 0` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualValue {
    pub value: f64,
    pub deriv: f64,
}

impl DualValue {
    pub fn constant(value: f64) -> Self {
        DualValue { value, deriv: 0.0 }
    }

    pub fn variable(value: f64) -> Self {
        DualValue { value, deriv: 1.0 }
    }
}

impl core::ops::Add for DualValue {
    type Output = DualValue;
    fn add(self, rhs: DualValue) -> DualValue {
        DualValue {
            value: self.value + rhs.value,
            deriv: self.deriv + rhs.deriv,
        }
    }
}

impl core::ops::Sub for DualValue {
    type Output = DualValue;
    fn sub(self, rhs: DualValue) -> DualValue {
        DualValue {
            value: self.value - rhs.value,
            deriv: self.deriv - rhs.deriv,
        }
    }
}

impl core::ops::Mul for DualValue {
    type Output = DualValue;
    fn mul(self, rhs: DualValue) -> DualValue {
        DualValue {
            value: self.value * rhs.value,
            deriv: self.deriv * rhs.value + self.value * rhs.deriv,
        }
    }
}

impl core::ops::Neg for DualValue {
    type Output = DualValue;
    fn neg(self) -> DualValue {
        DualValue {
            value: -self.value,
            deriv: -self.deriv,
        }
    }
}

/// Evaluation failure. Domain violations and non-differentiable points are
/// distinct cases; both carry the offending subexpression.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    /// The argument left the mathematical domain of a subexpression.
    Domain {
        expr: String,
        arg: f64,
        rule: &'static str,
    },
    /// The expression is not differentiable at this point (e.g. `abs` at 0).
    NonDifferentiable { expr: String, arg: f64 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Domain { expr, arg, rule } => {
                write!(f, "domain violation in `{expr}`: {rule} (argument {arg})")
            }
            EvalError::NonDifferentiable { expr, arg } => {
                write!(f, "`{expr}` is not differentiable at argument {arg}")
            }
        }
    }
}

impl core::error::Error for EvalError {}

fn domain_err(node: &Expr, arg: f64, rule: &'static str) -> EvalError {
    EvalError::Domain {
        expr: node.to_string(),
        arg,
        rule,
    }
}

/// A parsed, evaluable real function of one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    root: Expr,
    source_text: String,
}

impl FunctionSpec {
    /// Parse `text` against the grammar. Errors carry the byte offset of the
    /// failure.
    pub fn parse(text: &str) -> Result<FunctionSpec, ParseError> {
        let root = parser::parse_str(text)?;
        Ok(FunctionSpec {
            root,
            source_text: text.to_owned(),
        })
    }

    pub fn from_expr(root: Expr) -> FunctionSpec {
        let source_text = root.to_string();
        FunctionSpec { root, source_text }
    }

    pub fn source_text(&self) -> &str {
        &self.source_text
    }

    pub fn root(&self) -> &Expr {
        &self.root
    }

    /// IEEE double value of the function at `t`.
    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        eval_node(&self.root, t)
    }

    /// Value and exact (up to rounding) first derivative at `t`.
    pub fn eval_dual(&self, t: f64) -> Result<DualValue, EvalError> {
        eval_dual_node(&self.root, t)
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

/// `base^expo` with explicit domain rules: negative bases require integer
/// exponents, zero bases require nonnegative exponents. Never returns NaN.
fn pow_value(node: &Expr, base: f64, expo: f64, at: f64) -> Result<f64, EvalError> {
    if base > 0.0 {
        Ok(math::pow(base, expo))
    } else if base == 0.0 {
        if expo > 0.0 {
            Ok(0.0)
        } else if expo == 0.0 {
            Ok(1.0)
        } else {
            Err(domain_err(node, at, "zero base with negative exponent"))
        }
    } else if math::is_integer(expo) {
        Ok(math::pow(base, expo))
    } else {
        Err(domain_err(
            node,
            at,
            "negative base with non-integer exponent",
        ))
    }
}

pub(crate) fn eval_node(node: &Expr, t: f64) -> Result<f64, EvalError> {
    match node {
        Expr::Const(c) => Ok(*c),
        Expr::Var => Ok(t),
        Expr::Neg(e) => Ok(-eval_node(e, t)?),
        Expr::Binary(op, l, r) => {
            let lv = eval_node(l, t)?;
            let rv = eval_node(r, t)?;
            match op {
                BinOp::Add => Ok(lv + rv),
                BinOp::Sub => Ok(lv - rv),
                BinOp::Mul => Ok(lv * rv),
                BinOp::Div => {
                    if rv == 0.0 {
                        Err(domain_err(node, t, "division by zero"))
                    } else {
                        Ok(lv / rv)
                    }
                }
                BinOp::Pow => pow_value(node, lv, rv, t),
            }
        }
        Expr::Call(func, a) => {
            let v = eval_node(a, t)?;
            match func {
                Func::Sin => Ok(math::sin(v)),
                Func::Cos => Ok(math::cos(v)),
                Func::Exp => Ok(math::exp(v)),
                Func::Ln => {
                    if v > 0.0 {
                        Ok(math::ln(v))
                    } else {
                        Err(domain_err(node, t, "ln of non-positive value"))
                    }
                }
                Func::Abs => Ok(math::abs(v)),
                Func::Sqrt => {
                    if v >= 0.0 {
                        Ok(math::sqrt(v))
                    } else {
                        Err(domain_err(node, t, "sqrt of negative value"))
                    }
                }
            }
        }
    }
}

fn eval_dual_node(node: &Expr, t: f64) -> Result<DualValue, EvalError> {
    match node {
        Expr::Const(c) => Ok(DualValue::constant(*c)),
        Expr::Var => Ok(DualValue::variable(t)),
        Expr::Neg(e) => Ok(-eval_dual_node(e, t)?),
        Expr::Binary(op, l, r) => {
            let lv = eval_dual_node(l, t)?;
            let rv = eval_dual_node(r, t)?;
            match op {
                BinOp::Add => Ok(lv + rv),
                BinOp::Sub => Ok(lv - rv),
                BinOp::Mul => Ok(lv * rv),
                BinOp::Div => {
                    if rv.value == 0.0 {
                        Err(domain_err(node, t, "division by zero"))
                    } else {
                        Ok(DualValue {
                            value: lv.value / rv.value,
                            deriv: (lv.deriv * rv.value - lv.value * rv.deriv)
                                / (rv.value * rv.value),
                        })
                    }
                }
                BinOp::Pow => pow_dual(node, lv, rv, t),
            }
        }
        Expr::Call(func, a) => {
            let av = eval_dual_node(a, t)?;
            let (v, d) = (av.value, av.deriv);
            match func {
                Func::Sin => Ok(DualValue {
                    value: math::sin(v),
                    deriv: math::cos(v) * d,
                }),
                Func::Cos => Ok(DualValue {
                    value: math::cos(v),
                    deriv: -math::sin(v) * d,
                }),
                Func::Exp => {
                    let e = math::exp(v);
                    Ok(DualValue {
                        value: e,
                        deriv: e * d,
                    })
                }
                Func::Ln => {
                    if v > 0.0 {
                        Ok(DualValue {
                            value: math::ln(v),
                            deriv: d / v,
                        })
                    } else {
                        Err(domain_err(node, t, "ln of non-positive value"))
                    }
                }
                Func::Abs => {
                    if v > 0.0 {
                        Ok(av)
                    } else if v < 0.0 {
                        Ok(-av)
                    } else if d == 0.0 {
                        // locally constant: |const| has derivative 0
                        Ok(DualValue::constant(0.0))
                    } else {
                        Err(EvalError::NonDifferentiable {
                            expr: node.to_string(),
                            arg: t,
                        })
                    }
                }
                Func::Sqrt => {
                    if v > 0.0 {
                        let s = math::sqrt(v);
                        Ok(DualValue {
                            value: s,
                            deriv: d / (2.0 * s),
                        })
                    } else if v == 0.0 {
                        if d == 0.0 {
                            Ok(DualValue::constant(0.0))
                        } else {
                            Err(EvalError::NonDifferentiable {
                                expr: node.to_string(),
                                arg: t,
                            })
                        }
                    } else {
                        Err(domain_err(node, t, "sqrt of negative value"))
                    }
                }
            }
        }
    }
}

fn pow_dual(node: &Expr, base: DualValue, expo: DualValue, t: f64) -> Result<DualValue, EvalError> {
    if expo.deriv == 0.0 {
        // constant exponent: d/dt u^c = c u^(c-1) u'
        let c = expo.value;
        let value = pow_value(node, base.value, c, t)?;
        let deriv = if base.deriv == 0.0 || c == 0.0 {
            0.0
        } else if base.value == 0.0 {
            if c > 1.0 {
                0.0
            } else if c == 1.0 {
                base.deriv
            } else {
                // 0 < c < 1: infinite one-sided slope; c <= 0 already rejected
                f64::INFINITY * base.deriv
            }
        } else {
            c * math::pow(base.value, c - 1.0) * base.deriv
        };
        Ok(DualValue { value, deriv })
    } else {
        // variable exponent: u^v = exp(v ln u), needs u > 0
        if base.value <= 0.0 {
            return Err(domain_err(
                node,
                t,
                "variable exponent requires positive base",
            ));
        }
        let value = math::pow(base.value, expo.value);
        let deriv =
            value * (expo.deriv * math::ln(base.value) + expo.value * base.deriv / base.value);
        Ok(DualValue { value, deriv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{E, PI};

    fn parse(text: &str) -> FunctionSpec {
        FunctionSpec::parse(text).unwrap()
    }

    /// Independent derivative oracle: central difference with h = 1e-6.
    fn central_diff(f: &FunctionSpec, t: f64) -> f64 {
        let h = 1e-6;
        (f.eval(t + h).unwrap() - f.eval(t - h).unwrap()) / (2.0 * h)
    }

    #[test]
    fn parse_variable_is_single_node() {
        assert_eq!(*parse("t").root(), Expr::Var);
    }

    #[test]
    fn parse_sum_of_power_and_sine() {
        let f = parse("t^2 + sin(t)");
        assert_eq!(f.eval(0.0).unwrap(), 0.0);
        match f.root() {
            Expr::Binary(BinOp::Add, l, r) => {
                assert!(matches!(**l, Expr::Binary(BinOp::Pow, _, _)));
                assert!(matches!(**r, Expr::Call(Func::Sin, _)));
            }
            other => panic!("unexpected tree {other:?}"),
        }
    }

    #[test]
    fn unterminated_call_reports_offset() {
        let err = FunctionSpec::parse("ln(").unwrap_err();
        assert_eq!(err.offset, 3);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(FunctionSpec::parse("").is_err());
        assert!(FunctionSpec::parse("   ").is_err());
    }

    #[test]
    fn unknown_identifier_reports_name_and_offset() {
        let err = FunctionSpec::parse("foo(t)").unwrap_err();
        assert_eq!(err.offset, 0);
        assert!(matches!(err.kind, ParseErrorKind::UnknownIdentifier(_)));
    }

    #[test]
    fn eval_basics() {
        assert_eq!(parse("t^2").eval(3.0).unwrap(), 9.0);
        assert!((parse("exp(t)").eval(1.0).unwrap() - E).abs() < 1e-15);
        assert_eq!(parse("pi").eval(0.0).unwrap(), PI);
        assert_eq!(parse("2e3").eval(0.0).unwrap(), 2000.0);
        assert_eq!(parse("1.5e-3").eval(0.0).unwrap(), 1.5e-3);
    }

    #[test]
    fn log_singularity_is_domain_error() {
        let err = parse("ln(t)").eval(0.0).unwrap_err();
        assert!(matches!(err, EvalError::Domain { .. }));
    }

    #[test]
    fn division_by_zero_names_subexpression() {
        let err = parse("1/(t-1)").eval(1.0).unwrap_err();
        match err {
            EvalError::Domain { expr, .. } => assert!(expr.contains('/')),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        // ^ binds tighter than unary minus and is right-associative
        assert_eq!(parse("-t^2").eval(3.0).unwrap(), -9.0);
        assert_eq!(parse("2^3^2").eval(0.0).unwrap(), 512.0);
        assert_eq!(parse("t^-2").eval(2.0).unwrap(), 0.25);
        assert_eq!(parse("2+3*4").eval(0.0).unwrap(), 14.0);
        assert_eq!(parse("2-3-4").eval(0.0).unwrap(), -5.0);
    }

    #[test]
    fn dual_exact_cases() {
        let d = parse("t^2").eval_dual(3.0).unwrap();
        assert_eq!((d.value, d.deriv), (9.0, 6.0));

        let d = parse("exp(t)").eval_dual(1.0).unwrap();
        assert!((d.value - E).abs() < 1e-15);
        assert_eq!(d.deriv, d.value);

        assert_eq!(parse("t").eval_dual(7.5).unwrap().deriv, 1.0);
        assert_eq!(parse("4.25").eval_dual(7.5).unwrap().deriv, 0.0);
        assert_eq!(parse("pi").eval_dual(0.3).unwrap().deriv, 0.0);
    }

    #[test]
    fn dual_vs_central_difference() {
        let f = parse("t*ln(t)");
        let d = f.eval_dual(2.0).unwrap();
        let expect = core::f64::consts::LN_2 + 1.0;
        assert!((d.deriv - expect).abs() < 1e-14);
        let cd = central_diff(&f, 2.0);
        assert!((d.deriv - cd).abs() <= 1e-5 * (1.0 + d.deriv.abs()));
    }

    #[test]
    fn abs_at_zero_is_nondifferentiable_not_domain() {
        let f = parse("abs(t-1)");
        let err = f.eval_dual(1.0).unwrap_err();
        assert!(matches!(err, EvalError::NonDifferentiable { .. }));
        // plain evaluation is fine there
        assert_eq!(f.eval(1.0).unwrap(), 0.0);
        // and |constant| stays differentiable
        assert_eq!(parse("abs(0)").eval_dual(0.0).unwrap().deriv, 0.0);
    }

    #[test]
    fn pow_domain_rules() {
        assert!(parse("(-2)^0.5").eval(0.0).is_err());
        assert_eq!(parse("(-2)^3").eval(0.0).unwrap(), -8.0);
        assert!(parse("t^-1").eval(0.0).is_err());
        assert_eq!(parse("t^t").eval(2.0).unwrap(), 4.0);
        // integer exponent keeps a negative base legal for plain evaluation
        assert_eq!(parse("t^t").eval(-1.0).unwrap(), -1.0);
        assert!(parse("t^t").eval(-1.5).is_err());
        // but the variable-exponent derivative needs a positive base
        assert!(parse("t^t").eval_dual(-1.0).is_err());
    }

    #[test]
    fn serialize_reparse_evaluates_identically() {
        for text in [
            "t^2 + sin(t)",
            "-t^3/(1+t^2)",
            "exp(-t)*cos(2*t + 0.5)",
            "sqrt(abs(t - 0.5))^3",
            "ln(t+2)^-2",
            "pi*e - t",
        ] {
            let f = parse(text);
            let g = parse(&f.to_string());
            for k in 0..100 {
                let t = -1.0 + 0.03 * k as f64;
                match (f.eval(t), g.eval(t)) {
                    (Ok(a), Ok(b)) => assert_eq!(a.to_bits(), b.to_bits(), "at t={t} for {text}"),
                    (Err(_), Err(_)) => {}
                    other => panic!("round-trip divergence at t={t}: {other:?}"),
                }
            }
        }
    }
}
