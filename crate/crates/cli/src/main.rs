//! Command line front-end: evaluate special means, seminorms, and the full
//! bound catalog; verify case suites; scan sharpness families; and search
//! for the bound-minimizing evaluation point.
//!
//! Exit codes: 0 on success (and all-pass verification), 1 on verification
//! failure, 2 on usage or domain errors.

mod output;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ostrowski_core::bounds::{BoundId, Interval};
use ostrowski_core::expr::FunctionSpec;
use ostrowski_core::harness::{
    self, CaseSpec, CaseStatus, RunParams, SeminormMode, SuiteSummary, XSpec,
};
use ostrowski_core::means::{self, MeanKind};
use ostrowski_core::supnorm;
use ostrowski_core::weighted::{self, WeightSpec};

const GRAMMAR_HELP: &str = "\
Expression grammar (used by --f, --g, --weight and case files):
  numbers      decimal or scientific: 1.5, .25, 2e-3
  variable     t
  constants    pi, e
  operators    + - * / ^   (usual precedence; ^ is right-associative and
               binds tighter than unary minus: -t^2 = -(t^2))
  calls        sin(u) cos(u) exp(u) ln(u) abs(u) sqrt(u)
  grouping     ( ... )";

#[derive(Parser)]
#[command(
    name = "ostrowski",
    about = "Certified error bounds for one-point quadrature rules",
    after_long_help = GRAMMAR_HELP,
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// 64-bit seed for anything randomized (sharpness families). Overrides
    /// the OSTROWSKI_SEED environment variable; default 42.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Relative tolerance for the adaptive integrator.
    #[arg(long, global = true, default_value_t = 1e-12)]
    rel_tol: f64,

    /// Grid size for sampled seminorms.
    #[arg(long, global = true, default_value_t = 4096)]
    grid: u32,

    /// Output format; defaults to json for report-producing commands and
    /// text for scalar ones (mean, median).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a special mean at two points.
    Mean(MeanArgs),
    /// Estimate a derivative-ratio seminorm.
    Sup(SupArgs),
    /// Evaluate one bound: left-hand side, right-hand side, and report.
    Bound(BoundArgs),
    /// Locate the point splitting a weight's mass in half.
    Median(MedianArgs),
    /// Run a JSONL suite of cases; exit 0 only if every case passes.
    Verify(VerifyArgs),
    /// Scan a bound's witness family and report the maximum lhs/rhs ratio.
    Sharpness(SharpnessArgs),
    /// Minimize a bound's right-hand side over the evaluation point.
    OptimalNode(BoundArgs),
}

#[derive(Args)]
struct MeanArgs {
    /// One of A, L, Lp, I, E, C, S, G.
    #[arg(long)]
    kind: String,
    /// Exponent for the Lp family (p outside {-1, 0}).
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    #[arg(long, allow_negative_numbers = true)]
    y: f64,
}

#[derive(Args)]
struct SupArgs {
    /// One of: ratio, kp, p, mp-split.
    operation: String,
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
}

#[derive(Args)]
struct BoundArgs {
    /// Catalog id: 1.1, 1.2, 1.3, 1.4, 2.2, 2.5, 2.7, 2.10, 2.13, 2.15,
    /// 2.19, 2.21, 2.23, 3.1, 3.3, 3.5, 3.7, 4.2, 4.6 or 4.7.
    #[arg(long)]
    id: String,
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// Comparison function (required by the generic and split forms).
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Weight expression (required by the 4.x forms).
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    /// Evaluation point: a number, "midpoint", "median", or "sweep:n".
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    /// Analytic seminorm override (a.k.a. M or gamma); omit to sample.
    #[arg(long, alias = "M", alias = "gamma")]
    norm: Option<f64>,
    /// Analytic left-half seminorm for split forms.
    #[arg(long)]
    norm_left: Option<f64>,
    /// Analytic right-half seminorm for split forms.
    #[arg(long)]
    norm_right: Option<f64>,
    #[arg(long, default_value_t = 1e-9)]
    tol_rel: f64,
    #[arg(long, default_value_t = 1e-12)]
    tol_abs: f64,
}

#[derive(Args)]
struct MedianArgs {
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    /// Mass tolerance relative to the total mass.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Line-delimited JSON file: one case per line.
    #[arg(long)]
    suite: String,
    /// Write every report to this path; .json or .csv by extension.
    #[arg(long)]
    report: Option<String>,
}

#[derive(Args)]
struct SharpnessArgs {
    #[arg(long)]
    id: String,
    #[arg(long, default_value_t = 100)]
    n: usize,
}

/// Run configuration echoed into report headers.
#[derive(Serialize, Clone)]
struct RunConfig {
    seed: u64,
    quad_rel_tol: f64,
    sup_grid: u32,
    format: &'static str,
}

impl RunConfig {
    fn params(&self) -> RunParams {
        RunParams {
            quad_rel_tol: self.quad_rel_tol,
            sup_grid: self.sup_grid,
            ..RunParams::default()
        }
    }
}

/// Usage/domain failure (exit 2) or verification failure (exit 1).
enum CliError {
    Usage(String),
    VerificationFailed,
}

impl From<String> for CliError {
    fn from(message: String) -> Self {
        CliError::Usage(message)
    }
}

impl From<&str> for CliError {
    fn from(message: &str) -> Self {
        CliError::Usage(message.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli
        .seed
        .or_else(|| {
            std::env::var("OSTROWSKI_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(42);
    let format = cli.format.unwrap_or(match cli.command {
        Command::Mean(_) | Command::Median(_) => Format::Text,
        _ => Format::Json,
    });
    let config = RunConfig {
        seed,
        quad_rel_tol: cli.rel_tol,
        sup_grid: cli.grid,
        format: match format {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        },
    };
    let result = match cli.command {
        Command::Mean(args) => cmd_mean(&args, &config, format),
        Command::Sup(args) => cmd_sup(&args, &config, format),
        Command::Bound(args) => cmd_bound(&args, &config, format),
        Command::Median(args) => cmd_median(&args, &config, format),
        Command::Verify(args) => cmd_verify(&args, &config, format),
        Command::Sharpness(args) => cmd_sharpness(&args, &config, format),
        Command::OptimalNode(args) => cmd_optimal_node(&args, &config, format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::VerificationFailed) => ExitCode::from(1),
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            eprintln!("run with --help for the flag table and expression grammar");
            ExitCode::from(2)
        }
    }
}

fn parse_mean_kind(name: &str, p: Option<f64>) -> Result<MeanKind, String> {
    match name {
        "A" => Ok(MeanKind::Arithmetic),
        "L" => Ok(MeanKind::Logarithmic),
        "Lp" => {
            let p = p.ok_or("--kind Lp requires --p")?;
            MeanKind::p_logarithmic(p).map_err(|e| e.to_string())
        }
        "I" => Ok(MeanKind::Identric),
        "E" => Ok(MeanKind::Exponential),
        "C" => Ok(MeanKind::CosMean),
        "S" => Ok(MeanKind::SinMean),
        "G" => Ok(MeanKind::Geometric),
        other => Err(format!(
            "unknown mean kind `{other}` (expected A, L, Lp, I, E, C, S or G)"
        )),
    }
}

fn cmd_mean(args: &MeanArgs, config: &RunConfig, format: Format) -> Result<(), CliError> {
    let kind = parse_mean_kind(&args.kind, args.p)?;
    let value = means::evaluate_mean(kind, args.x, args.y).map_err(|e| e.to_string())?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct MeanReport<'c> {
                config: &'c RunConfig,
                kind: String,
                x: f64,
                y: f64,
                value: f64,
            }
            print_json(&MeanReport {
                config,
                kind: kind.to_string(),
                x: args.x,
                y: args.y,
                value,
            });
        }
        _ => println!("{value:.16e}"),
    }
    Ok(())
}

fn parse_fn(label: &str, text: &str) -> Result<FunctionSpec, String> {
    FunctionSpec::parse(text).map_err(|e| format!("{label}: {e}"))
}

fn cmd_sup(args: &SupArgs, config: &RunConfig, format: Format) -> Result<(), CliError> {
    let f = parse_fn("f", &args.f)?;
    let interval = Interval::new(args.a, args.b).map_err(|e| e.to_string())?;
    let grid = config.sup_grid;

    #[derive(Serialize)]
    struct SupReport<'c> {
        config: &'c RunConfig,
        operation: String,
        a: f64,
        b: f64,
        estimates: Vec<supnorm::SupEstimate>,
    }
    let estimates = match args.operation.as_str() {
        "ratio" => {
            let g_text = args.g.as_deref().ok_or("sup ratio requires --g")?;
            let g = parse_fn("g", g_text)?;
            vec![supnorm::sup_ratio(&f, &g, interval, grid).map_err(|e| e.to_string())?]
        }
        "kp" => {
            let p = args.p.ok_or("sup kp requires --p")?;
            vec![supnorm::seminorm_kp(&f, interval, p, grid).map_err(|e| e.to_string())?]
        }
        "p" => vec![supnorm::seminorm_p(&f, interval, grid).map_err(|e| e.to_string())?],
        "mp-split" => {
            let p = args.p.ok_or("sup mp-split requires --p")?;
            let x = args.x.ok_or("sup mp-split requires --x")?;
            let (l, r) =
                supnorm::seminorm_mp_split(&f, interval, x, p, grid).map_err(|e| e.to_string())?;
            vec![l, r]
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown sup operation `{other}` (expected ratio, kp, p or mp-split)"
            )))
        }
    };
    match format {
        Format::Text | Format::Csv => {
            for estimate in &estimates {
                println!("{}", output::sup_line(estimate));
            }
        }
        Format::Json => print_json(&SupReport {
            config,
            operation: args.operation.clone(),
            a: args.a,
            b: args.b,
            estimates,
        }),
    }
    Ok(())
}

fn parse_xspec(text: &str) -> Result<XSpec, String> {
    if let Ok(v) = text.parse::<f64>() {
        return Ok(XSpec::Point(v));
    }
    match text {
        "midpoint" => Ok(XSpec::Midpoint),
        "median" => Ok(XSpec::Median),
        _ => text
            .strip_prefix("sweep:")
            .and_then(|n| n.parse::<u32>().ok())
            .map(XSpec::Sweep)
            .ok_or_else(|| format!("bad x spec `{text}`")),
    }
}

fn case_from_args(args: &BoundArgs, config: &RunConfig) -> Result<CaseSpec, String> {
    let bound_id: BoundId = args.id.parse().map_err(|_| {
        format!(
            "unknown bound id `{}`; known ids: {}",
            args.id,
            BoundId::ALL
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    })?;
    let seminorm = match (args.norm, args.norm_left, args.norm_right) {
        (Some(v), None, None) => SeminormMode::Analytic { analytic: v },
        (None, Some(l), Some(r)) => SeminormMode::AnalyticSplit {
            analytic_left: l,
            analytic_right: r,
        },
        (None, None, None) => SeminormMode::Sampled {
            grid: config.sup_grid,
        },
        _ => {
            return Err(
                "give either --norm, or both --norm-left and --norm-right, or neither".to_string(),
            )
        }
    };
    let x = match &args.x {
        Some(text) => parse_xspec(text)?,
        None => XSpec::Midpoint,
    };
    Ok(CaseSpec {
        bound_id,
        f: args.f.clone(),
        g: args.g.clone(),
        w: args.weight.clone(),
        a: args.a,
        b: args.b,
        x,
        p: args.p,
        seminorm,
        tol_rel: args.tol_rel,
        tol_abs: args.tol_abs,
    })
}

fn cmd_bound(args: &BoundArgs, config: &RunConfig, format: Format) -> Result<(), CliError> {
    let case = case_from_args(args, config)?;
    let params = config.params();
    let outcome = harness::check_case(&case, &params);
    for warning in &outcome.warnings {
        eprintln!("warning: {warning}");
    }
    match outcome.status {
        CaseStatus::Error => Err(CliError::Usage(
            outcome
                .error
                .unwrap_or_else(|| "evaluation failed".to_string()),
        )),
        status => {
            let report = outcome.report.expect("non-error outcome has a report");
            match format {
                Format::Json => print_json(&report),
                Format::Csv => print!(
                    "{}",
                    output::report_csv(&[&report]).map_err(|e| e.to_string())?
                ),
                Format::Text => {
                    eprintln!("# config: {}", config_line(config));
                    println!("{}", output::outcome_text_line(&outcome));
                }
            }
            if status == CaseStatus::Pass {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            }
        }
    }
}

fn cmd_median(args: &MedianArgs, config: &RunConfig, format: Format) -> Result<(), CliError> {
    let interval = Interval::new(args.a, args.b).map_err(|e| e.to_string())?;
    let w = parse_fn("weight", &args.weight)?;
    let weight = WeightSpec::new(w, interval, config.quad_rel_tol).map_err(|e| e.to_string())?;
    let x0 = weighted::find_weight_median(&weight, args.tol).map_err(|e| e.to_string())?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct MedianReport<'c> {
                config: &'c RunConfig,
                a: f64,
                b: f64,
                total_mass: f64,
                x0: f64,
            }
            print_json(&MedianReport {
                config,
                a: args.a,
                b: args.b,
                total_mass: weight.total_mass(),
                x0,
            });
        }
        _ => println!("{x0:.16e}"),
    }
    Ok(())
}

fn read_suite(path: &str) -> Result<Vec<CaseSpec>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))?;
    let mut cases = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let case: CaseSpec =
            serde_json::from_str(line).map_err(|e| format!("{path}:{}: {e}", lineno + 1))?;
        cases.push(case);
    }
    if cases.is_empty() {
        return Err(format!("`{path}` contains no cases"));
    }
    Ok(cases)
}

#[derive(Serialize)]
struct VerifyReport<'c> {
    config: &'c RunConfig,
    summary: SuiteSummary,
    outcomes: Vec<harness::CaseOutcome>,
}

fn cmd_verify(args: &VerifyArgs, config: &RunConfig, format: Format) -> Result<(), CliError> {
    let cases = read_suite(&args.suite)?;
    let params = config.params();
    let (summary, outcomes) = harness::run_suite(&cases, &params);
    for outcome in &outcomes {
        for warning in &outcome.warnings {
            eprintln!("warning: case {}: {warning}", outcome.index);
        }
    }

    if let Some(path) = &args.report {
        let body = if path.ends_with(".csv") {
            let reports: Vec<_> = outcomes.iter().filter_map(|o| o.report.as_ref()).collect();
            output::report_csv(&reports).map_err(|e| e.to_string())?
        } else {
            let report = VerifyReport {
                config,
                summary: summary.clone(),
                outcomes: outcomes.clone(),
            };
            serde_json::to_string_pretty(&report).expect("serializable report") + "\n"
        };
        fs::write(path, body).map_err(|e| format!("cannot write `{path}`: {e}"))?;
    }

    match format {
        Format::Json => print_json(&VerifyReport {
            config,
            summary: summary.clone(),
            outcomes,
        }),
        Format::Csv => {
            let reports: Vec<_> = outcomes.iter().filter_map(|o| o.report.as_ref()).collect();
            print!(
                "{}",
                output::report_csv(&reports).map_err(|e| e.to_string())?
            );
            eprintln!("{}", output::summary_text(&summary));
        }
        Format::Text => {
            println!("# config: {}", config_line(config));
            for outcome in &outcomes {
                println!("{}", output::outcome_text_line(outcome));
            }
            println!("{}", output::summary_text(&summary));
        }
    }
    if summary.failed == 0 {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn cmd_sharpness(args: &SharpnessArgs, config: &RunConfig, format: Format) -> Result<(), CliError> {
    let id: BoundId = args
        .id
        .parse()
        .map_err(|_| format!("unknown bound id `{}`", args.id))?;
    let params = config.params();
    let (summary, max_ratio, outcomes) = harness::sharpness_scan(id, args.n, config.seed, &params);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct SharpnessReport<'c> {
                config: &'c RunConfig,
                bound_id: BoundId,
                n: usize,
                max_ratio: f64,
                summary: SuiteSummary,
            }
            print_json(&SharpnessReport {
                config,
                bound_id: id,
                n: args.n,
                max_ratio,
                summary: summary.clone(),
            });
        }
        Format::Csv => {
            let reports: Vec<_> = outcomes.iter().filter_map(|o| o.report.as_ref()).collect();
            print!(
                "{}",
                output::report_csv(&reports).map_err(|e| e.to_string())?
            );
            eprintln!("max_ratio={max_ratio:.16e}");
        }
        Format::Text => {
            println!("# config: {}", config_line(config));
            println!("bound {id}: n={} max_ratio={max_ratio:.16e}", args.n);
            println!("{}", output::summary_text(&summary));
        }
    }
    if summary.failed == 0 {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn cmd_optimal_node(args: &BoundArgs, config: &RunConfig, format: Format) -> Result<(), CliError> {
    let case = case_from_args(args, config)?;
    let params = config.params();
    let (x_star, rhs_star) = harness::best_node_for_case(&case, config.sup_grid.max(256), &params)
        .map_err(CliError::Usage)?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct NodeReport<'c> {
                config: &'c RunConfig,
                bound_id: String,
                a: f64,
                b: f64,
                x_star: f64,
                rhs_star: f64,
            }
            print_json(&NodeReport {
                config,
                bound_id: case.bound_id.to_string(),
                a: case.a,
                b: case.b,
                x_star,
                rhs_star,
            });
        }
        _ => println!("x_star = {x_star:.16e}  rhs_star = {rhs_star:.16e}"),
    }
    Ok(())
}

fn config_line(config: &RunConfig) -> String {
    format!(
        "seed={} rel_tol={:e} sup_grid={} format={}",
        config.seed, config.quad_rel_tol, config.sup_grid, config.format
    )
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}
