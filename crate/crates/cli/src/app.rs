//! Command-line surface: argument parsing, dispatch, output shaping.
//!
//! Exit codes: 0 = success, 1 = computation error or failed verification,
//! 2 = usage or configuration error.

use crate::config::Config;
use crate::context::Context;
use crate::report::{ValueOutput, VerifyOutput, SCHEMA};
use crate::suites::{run_suite, SUITE_NAMES};
use clap::{Parser, Subcommand, ValueEnum};
use esms::eisenstein::{
    extract_classical_coefficient, extract_star_coefficient, kloosterman_chi, kloosterman_star,
    phi_classical, phi_star, phi_star_constant, ClassicalRoute, EisensteinFamily,
};
use esms::lfun::{lambda_twist, lambda_twist_quadrature};
use num_complex::Complex64;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "esms",
    version,
    about = "Eisenstein series with modular symbols: twisted L-values, \
             Kloosterman sums, Fourier coefficients, shifted convolutions, \
             and cross-checked verification suites (level 11, weight 2)."
)]
struct Cli {
    /// Path to a key=value configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Character selector: χ(2) = e(index/10) on the group mod 11.
    /// Even characters only: 2, 4, 6, or 8. Overrides the config file.
    #[arg(long, global = true, value_name = "INDEX")]
    char_index: Option<u32>,

    /// Target absolute accuracy for truncations. Overrides the config file.
    #[arg(long, global = true, value_name = "EPS")]
    epsilon: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print Fourier coefficients of the level-11 weight-2 cusp form.
    Coeffs {
        /// Largest index to print.
        #[arg(long, default_value_t = 100)]
        upto: usize,
        /// Output format.
        #[arg(long, value_enum, default_value_t = CoeffFormat::Csv)]
        format: CoeffFormat,
        /// Write to a file instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Evaluate the completed twisted L-value Λ(f, t, -d/c).
    LambdaTwist {
        /// Spectral argument t, as "RE" or "RE,IM".
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        t: Complex64,
        /// Modulus of the additive twist; must be a multiple of 11.
        #[arg(long)]
        c: u32,
        /// Numerator of the twist -d/c; must be coprime to c.
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        /// Evaluation route.
        #[arg(long, value_enum, default_value_t = TwistRoute::Continuation)]
        route: TwistRoute,
    },
    /// Twisted Kloosterman sum S(n, m, χ; c), plainly or symbol-weighted (S*).
    Kloosterman {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        /// Modulus; must be a positive multiple of 11.
        #[arg(long)]
        c: u32,
        /// Weight each term by the modular symbol (the S* sum).
        #[arg(long)]
        star: bool,
    },
    /// Fourier coefficient of an Eisenstein series (classical or symbol-weighted).
    EisCoeff {
        /// Which series the coefficient belongs to.
        #[arg(long, value_enum, default_value_t = SeriesKind::Classical)]
        kind: SeriesKind,
        /// Coefficient index (0 = constant term).
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Spectral parameter s, as "RE" or "RE,IM".
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        /// Computation route.
        #[arg(long, value_enum, default_value_t = CoeffRoute::Csum)]
        route: CoeffRoute,
        /// Truncation of the sum over moduli c.
        #[arg(long, default_value_t = 550)]
        c_max: u32,
        /// Height of the extraction line (route=extract only).
        #[arg(long, default_value_t = 0.5)]
        y: f64,
        /// Fourier nodes along the extraction line (route=extract only).
        #[arg(long, default_value_t = 64)]
        q: usize,
    },
    /// Shifted convolution sum D(n; s, t) = Σ a(l) σ^χ_{2s-1}(|l-n|) |l-n|^{1-2s} l^{-t}.
    ShiftedSum {
        /// Shift n ≠ 0.
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Spectral parameter s, as "RE" or "RE,IM".
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        /// Weight parameter t, as "RE" or "RE,IM".
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        t: Complex64,
        /// Computation route.
        #[arg(long, value_enum, default_value_t = SumRoute::Csum)]
        route: SumRoute,
        /// Series truncation (route=direct; default from config q_max).
        #[arg(long)]
        upto: Option<usize>,
        /// Modulus-sum truncation (route=csum).
        #[arg(long, default_value_t = 550)]
        c_max: u32,
    },
    /// Run the cross-checking verification suites.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Print per-suite wall-clock times on stderr.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum CoeffFormat {
    Csv,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum TwistRoute {
    /// Two-sided incomplete-gamma series (entire continuation).
    Continuation,
    /// Direct vertical-line integral (requires 0 < Re t, convergent region).
    Quadrature,
}

#[derive(Copy, Clone, ValueEnum)]
enum SeriesKind {
    Classical,
    Star,
}

#[derive(Copy, Clone, ValueEnum)]
enum CoeffRoute {
    /// Kloosterman-type sum over moduli.
    Csum,
    /// Divisor-sum / L-function closed form (classical kind only).
    Closed,
    /// Numerical Fourier extraction from the series itself.
    Extract,
}

#[derive(Copy, Clone, ValueEnum)]
enum SumRoute {
    /// Term-by-term summation of the defining series.
    Direct,
    /// Continuation through the sum over moduli of twisted L-values.
    Csum,
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').collect();
    match parts.as_slice() {
        [re] => re
            .trim()
            .parse::<f64>()
            .map(|r| Complex64::new(r, 0.0))
            .map_err(|e| format!("bad real part {re:?}: {e}")),
        [re, im] => {
            let r = re
                .trim()
                .parse::<f64>()
                .map_err(|e| format!("bad real part {re:?}: {e}"))?;
            let i = im
                .trim()
                .parse::<f64>()
                .map_err(|e| format!("bad imaginary part {im:?}: {e}"))?;
            Ok(Complex64::new(r, i))
        }
        _ => Err("expected \"RE\" or \"RE,IM\"".into()),
    }
}

/// Parse arguments, build the context, dispatch. Returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };

    let mut config = match &cli.config {
        Some(path) => match Config::from_file(path) {
            Ok(config) => config,
            Err(err) => {
                eprintln!("config error: {err}");
                return 2;
            }
        },
        None => Config::default(),
    };
    if let Some(index) = cli.char_index {
        config.char_index = index;
    }
    if let Some(eps) = cli.epsilon {
        config.epsilon = eps;
    }
    match config.finalise() {
        Ok(warnings) => {
            for w in warnings {
                eprintln!("warning: {w}");
            }
        }
        Err(err) => {
            eprintln!("config error: {err}");
            return 2;
        }
    }

    let ctx = match Context::new(config) {
        Ok(ctx) => ctx,
        Err(err) => {
            eprintln!("config error: {err}");
            return 2;
        }
    };

    match dispatch(&cli.command, &ctx) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn dispatch(command: &Command, ctx: &Context) -> Result<i32, esms::Error> {
    match command {
        Command::Coeffs { upto, format, out } => coeffs(ctx, *upto, *format, out.as_deref()),
        Command::LambdaTwist { t, c, d, route } => lambda_twist_cmd(ctx, *t, *c, *d, *route),
        Command::Kloosterman { n, m, c, star } => kloosterman_cmd(ctx, *n, *m, *c, *star),
        Command::EisCoeff {
            kind,
            n,
            s,
            route,
            c_max,
            y,
            q,
        } => eis_coeff_cmd(ctx, *kind, *n, *s, *route, *c_max, *y, *q),
        Command::ShiftedSum {
            n,
            s,
            t,
            route,
            upto,
            c_max,
        } => shifted_sum_cmd(ctx, *n, *s, *t, *route, *upto, *c_max),
        Command::Verify { suite, timings } => verify_cmd(ctx, suite, *timings),
    }
}

fn emit(json: String, out: Option<&std::path::Path>) -> Result<(), esms::Error> {
    match out {
        Some(path) => std::fs::write(path, json)
            .map_err(|e| esms::Error::InvalidInput(format!("cannot write {path:?}: {e}"))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn coeffs(
    ctx: &Context,
    upto: usize,
    format: CoeffFormat,
    out: Option<&std::path::Path>,
) -> Result<i32, esms::Error> {
    if upto == 0 {
        return Err(esms::Error::InvalidInput("need upto >= 1".into()));
    }
    let form = if upto <= crate::context::BASE_COEFFS {
        // Slice the shared cache rather than rebuilding.
        ctx.form()
    } else {
        ctx.form_with(upto)
    };
    let text = match format {
        CoeffFormat::Csv => {
            let mut text = String::with_capacity(upto * 8);
            text.push_str("n,a_n\n");
            for (n, &a) in form.coefficients().iter().enumerate().skip(1).take(upto) {
                text.push_str(&format!("{n},{a}\n"));
            }
            text
        }
        CoeffFormat::Json => {
            let rows: Vec<(usize, i64)> = form
                .coefficients()
                .iter()
                .enumerate()
                .skip(1)
                .take(upto)
                .map(|(n, &a)| (n, a))
                .collect();
            let value = serde_json::json!({
                "schema": SCHEMA,
                "command": "coeffs",
                "level": form.level(),
                "weight": 2,
                "coefficients": rows,
            });
            serde_json::to_string_pretty(&value)
                .map_err(|e| esms::Error::InvalidInput(e.to_string()))?
        }
    };
    emit(text, out)?;
    Ok(0)
}

fn lambda_twist_cmd(
    ctx: &Context,
    t: Complex64,
    c: u32,
    d: i64,
    route: TwistRoute,
) -> Result<i32, esms::Error> {
    let (value, route_name) = match route {
        TwistRoute::Continuation => (
            lambda_twist(&ctx.form(), t, c, d, &ctx.policy)?,
            "continuation",
        ),
        TwistRoute::Quadrature => {
            // The direct integral probes low heights, so it may need a longer
            // coefficient table than the shared base form provides.
            let form = ctx.form_with(esms::lfun::lambda_twist_quadrature_terms(c));
            (
                lambda_twist_quadrature(&form, t, c, d, &ctx.policy)?,
                "quadrature",
            )
        }
    };
    let output = ValueOutput::new("lambda-twist", value.value)
        .input("t", format!("{t}"))
        .input("c", c)
        .input("d", d)
        .input("route", route_name)
        .with_err(value.err_est);
    println!("{}", output.to_json());
    Ok(0)
}

fn kloosterman_cmd(
    ctx: &Context,
    n: i64,
    m: i64,
    c: u32,
    star: bool,
) -> Result<i32, esms::Error> {
    let value = if star {
        kloosterman_star(ctx.symbols(), &ctx.chi, n, m, c)?
    } else {
        kloosterman_chi(&ctx.chi, n, m, c)?
    };
    let output = ValueOutput::new(if star { "kloosterman-star" } else { "kloosterman" }, value)
        .input("n", n)
        .input("m", m)
        .input("c", c)
        .input("character", ctx.chi.label().to_string());
    println!("{}", output.to_json());
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn eis_coeff_cmd(
    ctx: &Context,
    kind: SeriesKind,
    n: i64,
    s: Complex64,
    route: CoeffRoute,
    c_max: u32,
    y: f64,
    q: usize,
) -> Result<i32, esms::Error> {
    let chi = &ctx.chi;
    let mut output = match (kind, route) {
        (SeriesKind::Classical, CoeffRoute::Closed) => {
            let v = phi_classical(chi, n, s, ClassicalRoute::ClosedForm, 0, &ctx.policy)?;
            ValueOutput::new("eis-coeff", v.value).with_err(v.tail_est)
        }
        (SeriesKind::Classical, CoeffRoute::Csum) => {
            let v = phi_classical(chi, n, s, ClassicalRoute::KloostermanSum, c_max, &ctx.policy)?;
            ValueOutput::new("eis-coeff", v.value).with_err(v.tail_est)
        }
        (SeriesKind::Classical, CoeffRoute::Extract) => {
            let v = extract_classical_coefficient(chi, n, y, s, q, c_max, &ctx.policy)?;
            ValueOutput::new("eis-coeff", v)
                .input("y", y)
                .input("q", q as u64)
        }
        (SeriesKind::Star, CoeffRoute::Closed) => {
            return Err(esms::Error::InvalidInput(
                "no closed form is implemented for the symbol-weighted coefficients; \
                 use route=csum or route=extract"
                    .into(),
            ));
        }
        (SeriesKind::Star, CoeffRoute::Csum) => {
            let family = EisensteinFamily::new(chi, ctx.symbols())?;
            let v = if n == 0 {
                phi_star_constant(&family, s, c_max)?
            } else {
                phi_star(&family, n, s, c_max)?
            };
            ValueOutput::new("eis-coeff", v.value).with_err(v.tail_est)
        }
        (SeriesKind::Star, CoeffRoute::Extract) => {
            let family = EisensteinFamily::new(chi, ctx.symbols())?;
            let v = extract_star_coefficient(&family, n, y, s, q, c_max)?;
            ValueOutput::new("eis-coeff", v)
                .input("y", y)
                .input("q", q as u64)
        }
    };
    output = output
        .input(
            "kind",
            match kind {
                SeriesKind::Classical => "classical",
                SeriesKind::Star => "star",
            },
        )
        .input("n", n)
        .input("s", format!("{s}"))
        .input(
            "route",
            match route {
                CoeffRoute::Csum => "csum",
                CoeffRoute::Closed => "closed",
                CoeffRoute::Extract => "extract",
            },
        )
        .input("c_max", c_max)
        .input("character", chi.label().to_string());
    println!("{}", output.to_json());
    Ok(0)
}

fn shifted_sum_cmd(
    ctx: &Context,
    n: i64,
    s: Complex64,
    t: Complex64,
    route: SumRoute,
    upto: Option<usize>,
    c_max: u32,
) -> Result<i32, esms::Error> {
    use esms::convolution::{dds_csum, dds_direct};
    let output = match route {
        SumRoute::Direct => {
            let upto = upto.unwrap_or(ctx.config.q_max);
            let form = ctx.form_with(upto + n.unsigned_abs() as usize + 1);
            let v = dds_direct(&form, &ctx.chi, n, s, t, upto)?;
            ValueOutput::new("shifted-sum", v.value)
                .input("route", "direct")
                .input("upto", upto as u64)
                .with_err(v.err_est)
        }
        SumRoute::Csum => {
            let form = ctx.form();
            let v = dds_csum(&form, &ctx.chi, n, s, t, c_max, &ctx.policy)?;
            ValueOutput::new("shifted-sum", v.value)
                .input("route", "csum")
                .input("c_max", c_max)
                .with_err(v.tail_est)
        }
    };
    let output = output
        .input("n", n)
        .input("s", format!("{s}"))
        .input("t", format!("{t}"))
        .input("character", ctx.chi.label().to_string());
    println!("{}", output.to_json());
    Ok(0)
}

fn verify_cmd(ctx: &Context, suite: &str, timings: bool) -> Result<i32, esms::Error> {
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else if SUITE_NAMES.contains(&suite) {
        vec![suite]
    } else {
        eprintln!(
            "error: unknown suite {suite:?}; available: all, {}",
            SUITE_NAMES.join(", ")
        );
        return Ok(2);
    };

    let mut reports = Vec::new();
    for name in names {
        let report = run_suite(ctx, name)?;
        let verdict = if report.passed { "PASS" } else { "FAIL" };
        if timings {
            eprintln!(
                "{verdict} {name} ({} checks, {} ms)",
                report.checks.len(),
                report.runtime_ms
            );
        } else {
            eprintln!("{verdict} {name} ({} checks)", report.checks.len());
        }
        for check in report.checks.iter().filter(|c| !c.passed()) {
            eprintln!(
                "  FAIL {}: |a-b| = {:.3e}, rel = {:.3e}, tol({}) = {:.3e}",
                check.id, check.abs_diff, check.rel_diff, check.tolerance_kind, check.tolerance
            );
        }
        reports.push(report);
    }

    let all_passed = reports.iter().all(|r| r.passed);
    let output = VerifyOutput::new(ctx.chi.label(), reports);
    println!(
        "{}",
        serde_json::to_string_pretty(&output).map_err(|e| esms::Error::InvalidInput(e.to_string()))?
    );
    Ok(if all_passed { 0 } else { 1 })
}
