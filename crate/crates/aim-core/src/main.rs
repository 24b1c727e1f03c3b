//! The `aim` command line tool.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use aim_core::cli::{
    cmd_scan, cmd_second, cmd_solve, cmd_verify, render_scan_text, render_solve_text,
    render_verify_text, CliError, ScanConfig,
};
use aim_core::report::{BindEntry, ProductCheckOptions, SolveConfig};

#[derive(Parser)]
#[command(
    name = "aim",
    about = "Exact solver for second-order difference and q-difference equations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline: iterate, find termination, extract and verify
    /// a polynomial solution.
    Solve(SolveArgs),
    /// Sweep the hypergeometric family over a range of n, tabulating the
    /// eigenvalue k(n) and the termination index.
    Scan(ScanArgs),
    /// Solve and additionally construct the second solution on a grid.
    Second(SolveArgs),
    /// Back-substitute explicit polynomial coefficients and print the
    /// exact residual.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Named example equation (euler, hypergeometric, meixner,
    /// hermite-difference, q-laguerre, al-salam-carlitz, stieltjes-wigert)
    #[arg(long)]
    preset: Option<String>,
    /// Operator: delta or dq
    #[arg(long)]
    operator: Option<String>,
    /// Coefficient of D y as an expression in x (and q, parameters)
    #[arg(long)]
    lambda0: Option<String>,
    /// Coefficient of y
    #[arg(long)]
    s0: Option<String>,
    /// Bind a parameter, e.g. --bind a=4 or --bind k=n*(1-mu) (repeatable)
    #[arg(long = "bind", value_name = "NAME=VALUE")]
    bind: Vec<String>,
    /// q mode: "symbolic" or an exact rational in (0,1), e.g. 1/2
    #[arg(long)]
    q: Option<String>,
    /// Iteration bound for the terminating condition
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Read the configuration from a JSON file; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the machine-readable report to this path
    #[arg(long)]
    json: Option<PathBuf>,
    /// Include full delta_n expressions in the trace section
    #[arg(long = "trace-deltas")]
    trace_deltas: bool,
    /// Base point for the second solution (default: first pole-free n0 >= 1)
    #[arg(long)]
    n0: Option<i64>,
    /// Free integer m of the second-solution construction (default: n)
    #[arg(long)]
    m: Option<i64>,
    /// Grid for second-solution sampling, e.g. 1..12
    #[arg(long, value_name = "A..B")]
    grid: Option<String>,
    /// Evaluation point for the numeric product cross-check (dq, numeric q)
    #[arg(long)]
    x: Option<String>,
    /// Truncation tolerance for the product cross-check
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value = "0")]
    a2: String,
    #[arg(long, default_value = "0")]
    a1: String,
    #[arg(long, default_value = "1")]
    a0: String,
    #[arg(long, default_value = "1")]
    b1: String,
    #[arg(long, default_value = "0")]
    b0: String,
    /// Range of solution degrees to scan, e.g. 0..4 (inclusive)
    #[arg(long = "n-range", value_name = "A..B", default_value = "0..4")]
    n_range: String,
    #[arg(long = "n-max", default_value_t = 24)]
    n_max: usize,
    /// Write the machine-readable report to this path
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    solve: SolveArgs,
    /// Comma-separated coefficients c0, c1, ... as expressions
    #[arg(long)]
    coeffs: String,
}

fn parse_range(text: &str) -> Result<(i64, i64), CliError> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| CliError::Usage(format!("invalid range `{text}`, expected A..B")))?;
    let lo = a
        .trim()
        .parse::<i64>()
        .map_err(|_| CliError::Usage(format!("invalid range start `{a}`")))?;
    let hi = b
        .trim()
        .parse::<i64>()
        .map_err(|_| CliError::Usage(format!("invalid range end `{b}`")))?;
    Ok((lo, hi))
}

fn build_config(args: &SolveArgs, force_second: bool) -> Result<SolveConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<SolveConfig>(&text)
                .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))?
        }
        None => SolveConfig::default(),
    };
    if args.preset.is_some() {
        cfg.preset = args.preset.clone();
    }
    if args.operator.is_some() {
        cfg.operator = args.operator.clone();
    }
    if args.lambda0.is_some() {
        cfg.lambda0 = args.lambda0.clone();
    }
    if args.s0.is_some() {
        cfg.s0 = args.s0.clone();
    }
    if args.q.is_some() {
        cfg.q = args.q.clone();
    }
    if let Some(n) = args.n_max {
        cfg.n_max = n;
    }
    if args.trace_deltas {
        cfg.trace_deltas = true;
    }
    for b in &args.bind {
        let (name, value) = b.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("invalid binding `{b}`, expected name=value"))
        })?;
        cfg.bind.push(BindEntry {
            name: name.trim().to_string(),
            value: value.trim().to_string(),
        });
    }
    let wants_second =
        force_second || args.n0.is_some() || args.m.is_some() || args.grid.is_some();
    if wants_second {
        let mut second = cfg.second.take().unwrap_or_default();
        if let Some(n0) = args.n0 {
            second.n0 = Some(n0);
        }
        if let Some(m) = args.m {
            second.m = Some(m);
        }
        if let Some(grid) = &args.grid {
            let (a, b) = parse_range(grid)?;
            if second.n0.is_none() {
                second.n0 = Some(a);
            }
            second.grid_end = Some(b);
        }
        cfg.second = Some(second);
    }
    if let Some(x) = &args.x {
        let mut pc = cfg.product_check.take().unwrap_or(ProductCheckOptions {
            x: x.clone(),
            tol: 1e-12,
        });
        pc.x = x.clone();
        if let Some(tol) = args.tol {
            pc.tol = tol;
        }
        cfg.product_check = Some(pc);
    } else if let (Some(tol), Some(pc)) = (args.tol, cfg.product_check.as_mut()) {
        pc.tol = tol;
    }
    Ok(cfg)
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Pipeline(format!("serialization: {e}")))?;
    std::fs::write(path, text)
        .map_err(|e| CliError::Pipeline(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Solve(args) => {
            let cfg = build_config(&args, false)?;
            let out = cmd_solve(&cfg)?;
            print!("{}", render_solve_text(&out));
            if let Some(path) = &args.json {
                write_json(path, &out.report)?;
            }
            Ok(out.exit_code())
        }
        Command::Second(args) => {
            let cfg = build_config(&args, true)?;
            let out = cmd_second(&cfg)?;
            print!("{}", render_solve_text(&out));
            if let Some(path) = &args.json {
                write_json(path, &out.report)?;
            }
            Ok(out.exit_code())
        }
        Command::Scan(args) => {
            let (lo, hi) = parse_range(&args.n_range)?;
            if lo < 0 || hi < lo {
                return Err(CliError::Usage(format!(
                    "invalid n range {lo}..{hi}"
                )));
            }
            let cfg = ScanConfig {
                a2: args.a2.clone(),
                a1: args.a1.clone(),
                a0: args.a0.clone(),
                b1: args.b1.clone(),
                b0: args.b0.clone(),
                n_from: lo as usize,
                n_to: hi as usize,
                n_max: args.n_max,
            };
            let report = cmd_scan(&cfg)?;
            print!("{}", render_scan_text(&report));
            if let Some(path) = &args.json {
                write_json(path, &report)?;
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let cfg = build_config(&args.solve, false)?;
            let report = cmd_verify(&cfg, &args.coeffs)?;
            print!("{}", render_verify_text(&report));
            if let Some(path) = &args.solve.json {
                write_json(path, &report)?;
            }
            Ok(if report.zero { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    // clap's default error exit code is 2, which this tool reserves for
    // pipeline errors; remap argument problems to the usage code 1
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::from(0);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
