use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mlein_core::series::FunctionId;
use num_complex::Complex64;

use mlein_cli::curves::{self, CurveSource};
use mlein_cli::report::{evaluate, EvalReport, EvalRequest, Method};
use mlein_cli::tables::{self, TableId, TableOptions, TableSpec};
use mlein_cli::{parse_real, resolve_digits, selftest, HarnessError};

#[derive(Parser)]
#[command(name = "mlein", version, about = "Generalized exponential, sine and cosine integrals: series, asymptotics, error tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Reproduce an error table (T1, T2 or T3).
    Table(TableArgs),
    /// Write curve data, one CSV per alpha.
    Curve(CurveArgs),
    /// Run the identity suite.
    Selftest(SelftestArgs),
}

fn real(s: &str) -> Result<f64, String> {
    parse_real(s).map_err(|e| e.to_string())
}

#[derive(Args)]
struct EvalArgs {
    /// ein, sin, cin or f
    function: FunctionId,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    beta: f64,
    /// γ of F (ignored otherwise)
    #[arg(long, value_parser = real, default_value = "1")]
    gamma: f64,
    /// Real argument.
    #[arg(long, value_parser = real, allow_hyphen_values = true, conflicts_with = "z", required_unless_present = "z")]
    x: Option<f64>,
    /// Complex argument as modulus and arg in radians.
    #[arg(long, num_args = 2, value_names = ["MODULUS", "ARG"], allow_hyphen_values = true)]
    z: Option<Vec<String>>,
    #[arg(long, default_value = "both")]
    method: Method,
    /// Include exponentially small terms below the Stokes threshold (ein).
    #[arg(long)]
    stokes: bool,
    #[arg(long)]
    json: bool,
    /// Oracle working digits (overrides MLEIN_PRECISION_DIGITS).
    #[arg(long)]
    digits: Option<u32>,
}

#[derive(Args)]
struct TableArgs {
    table: TableId,
    /// CSV path; T3 writes <stem>_sin and <stem>_cin files.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    stokes: bool,
    #[arg(long)]
    json: bool,
    /// Evaluate cells one after another.
    #[arg(long)]
    serial: bool,
    #[arg(long)]
    digits: Option<u32>,
}

#[derive(Args)]
struct CurveArgs {
    /// ein, sin or cin
    function: FunctionId,
    /// Comma-separated alphas, e.g. 0.5,1,3/2
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<String>,
    #[arg(long, value_parser = real, default_value = "1")]
    beta: f64,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    to: f64,
    #[arg(long, value_parser = real)]
    step: f64,
    #[arg(long, default_value = "series")]
    source: CurveSource,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long)]
    digits: Option<u32>,
}

fn point(args: &EvalArgs) -> Result<Complex64, HarnessError> {
    match (&args.x, &args.z) {
        (Some(x), None) => Ok(Complex64::new(*x, 0.0)),
        (None, Some(z)) => {
            let r = parse_real(&z[0])?;
            let t = parse_real(&z[1])?;
            if r < 0.0 {
                return Err(HarnessError::Usage(format!("modulus must be non-negative, got {r}")));
            }
            Ok(Complex64::from_polar(r, t))
        }
        _ => Err(HarnessError::Usage("give exactly one of --x or --z".into())),
    }
}

fn print_report(rep: &EvalReport, json: bool) -> Result<(), HarnessError> {
    if json {
        println!("{}", serde_json::to_string(rep).map_err(|e| HarnessError::Usage(e.to_string()))?);
    } else {
        print!("{}", rep.to_text());
    }
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, HarnessError> {
    let req = EvalRequest {
        function: args.function,
        alpha: args.alpha,
        beta: args.beta,
        gamma: args.gamma,
        z: point(&args)?,
        method: args.method,
        stokes: args.stokes,
        digits: resolve_digits(args.digits),
    };
    print_report(&evaluate(&req)?, args.json)?;
    Ok(ExitCode::SUCCESS)
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(name)
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, HarnessError> {
    let spec = TableSpec::new(args.table);
    let opts = TableOptions {
        stokes: args.stokes,
        digits: resolve_digits(args.digits),
        parallel: !args.serial,
    };
    let results = tables::evaluate_table(&spec, opts);
    if args.json {
        for r in &results {
            let rep = r.report.clone().unwrap_or_else(|| EvalReport {
                series_value: None,
                asym_value: None,
                abs_rel_error: None,
                branch: None,
                trunc_indices: Vec::new(),
                warnings: r.warnings.clone(),
                omitted_magnitudes: Vec::new(),
            });
            print_report(&rep, true)?;
        }
    } else {
        print!("{}", tables::to_human(args.table, &results));
    }
    if let Some(path) = args.csv {
        let groups = tables::split_by_function(&results);
        if groups.len() == 1 {
            std::fs::write(&path, tables::to_csv(&results))?;
            eprintln!("wrote {}", path.display());
        } else {
            for (f, block) in groups {
                let p = with_suffix(&path, &f.to_string());
                std::fs::write(&p, tables::to_csv(&block))?;
                eprintln!("wrote {}", p.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_curve(args: CurveArgs) -> Result<ExitCode, HarnessError> {
    let xs = curves::grid(args.from, args.to, args.step)?;
    std::fs::create_dir_all(&args.out_dir)?;
    for label in &args.alpha {
        let alpha = parse_real(label)?;
        let pts = curves::curve(args.function, alpha, args.beta, &xs, args.source)?;
        let path = args.out_dir.join(curves::file_name(args.function, label.trim(), args.source));
        std::fs::write(&path, curves::to_csv(&pts))?;
        println!("{}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(args: SelftestArgs) -> Result<ExitCode, HarnessError> {
    let checks = selftest::run(resolve_digits(args.digits))?;
    let mut ok = true;
    for c in &checks {
        let tag = if c.passed() { "PASS" } else { "FAIL" };
        println!("{tag}  {:<40} worst rel. error {:.3e} (bound {:.0e})", c.name, c.worst, c.bound);
        ok &= c.passed();
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Table(a) => cmd_table(a),
        Command::Curve(a) => cmd_curve(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    match out {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
