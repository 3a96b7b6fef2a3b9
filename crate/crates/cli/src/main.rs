//! `visang`: evaluate metrics, run verification suites and sweeps.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain or point error,
//! 3 a suite reported violations.

mod domain_file;
mod output;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use visang::verify::{
    conjecture_constant, equality_suite, extremal_config_suite, ordering_suite, punctured_suite,
    sharpness_sweep, suite_bounds, t_a_report, triangle_suite, SweepFamily, TriangleMetric,
};
use visang::{evaluate, Domain, Error, MetricKind, Point, VerificationReport};

use domain_file::parse_domain_arg;
use output::{report_csv, sweep_csv};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::InvalidGrid(_)
            | Error::OutOfInterval { .. }
            | Error::KindMismatch { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "visang", version, about = "Visual angle metric toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one metric at a pair of points.
    Dist {
        /// v, vbar, s, r, j, k, rho, rho_star, v_star, vbar_star
        #[arg(long)]
        metric: String,
        /// ball, halfspace, punctured, a domain JSON document or a path to one
        #[arg(long)]
        domain: String,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Dimension; inferred from the points when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// Boundary samples for sampled metrics.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Run a verification suite and print its report.
    Verify {
        /// bounds-ball, bounds-halfspace, lipschitz-ball, equality-ball,
        /// equality-halfspace, extremal-ball, extremal-halfspace, triangle,
        /// ordering, punctured, conjecture-ball, conjecture-halfspace,
        /// conjecture-punctured
        suite: String,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// |a| for lipschitz-ball.
        #[arg(long, default_value_t = 0.999)]
        a: f64,
        /// Metric for the triangle suite.
        #[arg(long, default_value = "v")]
        metric: String,
        /// Domain for the triangle and ordering suites.
        #[arg(long)]
        domain: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate a sharpness family on a parameter grid.
    Sweep {
        /// thm1_3_upper, thm1_3_lower, thm1_4_case2, thm1_1_ball
        sweep: String,
        /// start:stop:count
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Estimate sup v/j (informational; always exits 0 on success).
    Constant {
        /// ball, halfspace or punctured
        domain: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Serialize)]
struct DistOutput {
    metric: &'static str,
    value: f64,
    method: visang::Method,
    pseudometric_warning: bool,
}

#[derive(Serialize)]
struct ErrorOutput<'a> {
    error: &'static str,
    message: &'a str,
}

fn parse_point(s: &str) -> Result<Point, CliError> {
    let coords: Result<Vec<f64>, _> = s.split(',').map(|c| c.trim().parse::<f64>()).collect();
    let coords = coords.map_err(|_| CliError::Usage(format!("cannot parse point `{s}`")))?;
    Point::new(&coords).map_err(|e| CliError::Usage(e.to_string()))
}

/// `start:stop:count`, evenly spaced and inclusive.
fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("grid `{s}` is not start:stop:count"));
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(bad());
    };
    let start: f64 = start.parse().map_err(|_| bad())?;
    let stop: f64 = stop.parse().map_err(|_| bad())?;
    let count: usize = count.parse().map_err(|_| bad())?;
    if count == 0 {
        return Err(CliError::Usage("grid count must be positive".into()));
    }
    if count > 1 && start == stop {
        return Err(CliError::Usage("grid start and stop coincide".into()));
    }
    Ok(visang::verify::linear_grid(start, stop, count))
}

fn print_report(report: &VerificationReport, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("report serializes")),
        Format::Csv => print!("{}", report_csv(report)),
    }
}

fn cmd_dist(
    metric: &str,
    domain: &str,
    x: &str,
    y: &str,
    n: Option<usize>,
    samples: Option<usize>,
) -> Result<ExitCode, CliError> {
    let kind: MetricKind = metric.parse()?;
    let (x, y) = (parse_point(x)?, parse_point(y)?);
    if x.dim() != y.dim() {
        return Err(CliError::Usage(format!(
            "points have dimensions {} and {}",
            x.dim(),
            y.dim()
        )));
    }
    let domain = parse_domain_arg(domain, n.unwrap_or(x.dim()))?;
    if let Some(n) = n {
        if n != domain.dim() {
            return Err(CliError::Usage(format!("--n {n} but the domain has n = {}", domain.dim())));
        }
    }
    if x.dim() != domain.dim() {
        return Err(CliError::Domain(format!(
            "points have dimension {} but the domain has n = {}",
            x.dim(),
            domain.dim()
        )));
    }
    let e = evaluate(kind, &domain, &x, &y, samples)?;
    let out = DistOutput {
        metric: kind.id(),
        value: e.value.value,
        method: e.method,
        pseudometric_warning: e.pseudometric_warning,
    };
    println!("{}", serde_json::to_string(&out).expect("output serializes"));
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    trials: Option<u64>,
    seed: u64,
    n: usize,
    a: f64,
    metric: &str,
    domain: Option<&str>,
    format: Format,
) -> Result<ExitCode, CliError> {
    let trials = |default: u64| trials.unwrap_or(default);
    let dom = |default: &str| parse_domain_arg(domain.unwrap_or(default), 2);
    let mut informational = false;
    let report = match suite {
        "bounds-ball" => suite_bounds(&Domain::unit_ball(n)?, trials(10_000), seed)?,
        "bounds-halfspace" => suite_bounds(&Domain::half_space(n)?, trials(10_000), seed)?,
        "lipschitz-ball" => {
            if a.is_nan() || a.abs() >= 1.0 {
                return Err(CliError::Usage(format!("--a must satisfy |a| < 1, got {a}")));
            }
            t_a_report(a, trials(10_000), seed)?
        }
        "equality-ball" => equality_suite(&Domain::unit_ball(2)?, trials(1000), seed)?,
        "equality-halfspace" => equality_suite(&Domain::half_space(2)?, trials(1000), seed)?,
        "extremal-ball" => extremal_config_suite(&Domain::unit_ball(2)?, trials(1000), seed)?,
        "extremal-halfspace" => extremal_config_suite(&Domain::half_space(2)?, trials(1000), seed)?,
        "triangle" => {
            let m: TriangleMetric = metric.parse()?;
            triangle_suite(&dom("ball")?, m, trials(1000), seed)?
        }
        "ordering" => ordering_suite(&dom("halfspace")?, trials(1000), seed)?,
        "punctured" => punctured_suite(&Domain::punctured(n)?, trials(10_000), seed)?,
        "conjecture-ball" | "conjecture-halfspace" | "conjecture-punctured" => {
            informational = true;
            let d = match suite {
                "conjecture-ball" => Domain::unit_ball(2)?,
                "conjecture-halfspace" => Domain::half_space(2)?,
                _ => Domain::punctured(2)?,
            };
            conjecture_constant(&d, trials(100_000), seed)?
        }
        other => return Err(CliError::Usage(format!("unknown suite `{other}`"))),
    };
    print_report(&report, format);
    Ok(if report.passed() || informational {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_sweep(sweep: &str, grid: &str, format: Format) -> Result<ExitCode, CliError> {
    let family: SweepFamily = sweep
        .parse()
        .map_err(|_| CliError::Usage(format!("unknown sweep `{sweep}`")))?;
    let grid = parse_grid(grid)?;
    let report = sharpness_sweep(family, &grid)?;
    match format {
        Format::Csv => print!("{}", sweep_csv(&report)),
        Format::Json => print_report(&report, Format::Json),
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn cmd_constant(domain: &str, trials: u64, seed: u64, format: Format) -> Result<ExitCode, CliError> {
    let d = match domain {
        "ball" => Domain::unit_ball(2)?,
        "halfspace" => Domain::half_space(2)?,
        "punctured" => Domain::punctured(2)?,
        other => return Err(CliError::Usage(format!("no estimator for domain `{other}`"))),
    };
    let report = conjecture_constant(&d, trials, seed)?;
    print_report(&report, format);
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Dist { metric, domain, x, y, n, samples } => cmd_dist(&metric, &domain, &x, &y, n, samples),
        Command::Verify { suite, trials, seed, n, a, metric, domain, format } => {
            cmd_verify(&suite, trials, seed, n, a, &metric, domain.as_deref(), format)
        }
        Command::Sweep { sweep, grid, format } => cmd_sweep(&sweep, &grid, format),
        Command::Constant { domain, trials, seed, format } => cmd_constant(&domain, trials, seed, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let msg = e.to_string();
            let out = ErrorOutput { error: e.kind(), message: &msg };
            println!("{}", serde_json::to_string(&out).expect("error serializes"));
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0.5:1:3").unwrap(), vec![0.5, 0.75, 1.0]);
        assert!(parse_grid("0.5:1:0").is_err());
        assert!(parse_grid("0.5:1").is_err());
        assert!(parse_grid("a:1:2").is_err());
        assert_eq!(parse_grid("0.3:0.3:1").unwrap(), vec![0.3]);
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("-0.5, 0.25").unwrap(), Point::xy(-0.5, 0.25));
        assert!(parse_point("1,,2").is_err());
        assert!(parse_point("nan,0").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
