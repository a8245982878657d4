//! mpbrent: arbitrary-precision evaluation, convergence tables, and cost
//! benches on top of the mpbrent kernel.
//!
//! Exit codes: 0 success, 2 usage, 3 domain/range, 4 golden-check failure.

mod tables;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mpbrent::bench::{basic_suite, elem_suite, secant_demo, series_suite, BenchRecord};
use mpbrent::complex::{trig, TrigKind};
use mpbrent::elem::{compute_pi, mp_exp, mp_log};
use mpbrent::series::{FloatField, MulPath, PsCtx, Series};
use mpbrent::{Backend, CostMeter, DigitMode, Error, MPFloat};
use std::process::ExitCode;

const LOG2_10: f64 = 3.321928094887362;

#[derive(Parser)]
#[command(
    name = "mpbrent",
    about = "Arbitrary-precision kernel: AGM-based elementary functions, convergence tables, cost benches",
    long_about = "Arbitrary-precision kernel built on the arithmetic-geometric mean.\n\n\
        Digit emission truncates toward zero (never rounds up), matching the kernel's\n\
        truncation contract, so the trailing printed digit may be one unit below the\n\
        correctly rounded value. Table checks compare at each table's printed precision.\n\
        MPBRENT_CALIB points at a key=value file with the multiplication backend\n\
        thresholds (t1_limbs, t2_limbs)."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a constant or function to a digit count
    Eval(EvalArgs),
    /// Reproduce a convergence table (8.1, 9.1 or 12.1)
    Table(TableArgs),
    /// Run a cost-ratio bench suite
    Bench(BenchArgs),
    /// Apply a power-series operation to index-prefixed coefficient text
    Series(SeriesArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// pi | log | exp | sin | cos | artan | agm | sqrt
    target: String,
    /// numeric arguments (decimal literals like 1e6, 0.5 or -3)
    #[arg(allow_negative_numbers = true)]
    args: Vec<String>,
    /// significant digits to print (truncated)
    #[arg(long, conflicts_with = "bits")]
    digits: Option<u32>,
    /// precision override in bits; exactly one of digits/bits governs
    #[arg(long)]
    bits: Option<u32>,
    #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
    backend: BackendArg,
    #[arg(long, value_enum, default_value_t = OutputArg::Plain)]
    output: OutputArg,
}

#[derive(Args)]
struct TableArgs {
    /// 8.1 | 9.1 | 12.1
    id: String,
    /// compare against the embedded golden values, exit 4 on mismatch
    #[arg(long)]
    check: bool,
    #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
    backend: BackendArg,
}

#[derive(Args)]
struct BenchArgs {
    /// basic | elem | series
    suite: String,
    /// comma-separated sizes (bits; truncation orders for the series suite)
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long, value_enum, default_value_t = BackendArg::Ntt)]
    backend: BackendArg,
    #[arg(long, value_enum, default_value_t = OutputArg::Plain)]
    output: OutputArg,
}

#[derive(Args)]
struct SeriesArgs {
    /// mul | recip | log | exp | pow | atan | diff | integrate
    op: String,
    /// input files (stdin when omitted); mul takes two
    files: Vec<String>,
    /// truncation order of the result (defaults to the input order)
    #[arg(long)]
    order: Option<usize>,
    /// exponent for pow
    #[arg(long, default_value_t = 2)]
    pow_m: u64,
    /// coefficient precision in bits
    #[arg(long, default_value_t = 53)]
    coeff_bits: u32,
    /// multiplication path
    #[arg(long, value_enum, default_value_t = PathArg::Classical)]
    path: PathArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Schoolbook,
    Karatsuba,
    Ntt,
    Auto,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Schoolbook => Backend::Schoolbook,
            BackendArg::Karatsuba => Backend::Karatsuba,
            BackendArg::Ntt => Backend::Ntt,
            BackendArg::Auto => Backend::Auto,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutputArg {
    Plain,
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Classical,
    Fft,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Eval(a) => cmd_eval(a),
        Cmd::Table(a) => cmd_table(a),
        Cmd::Bench(a) => cmd_bench(a),
        Cmd::Series(a) => cmd_series(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Domain { .. }
                | Error::Range { .. }
                | Error::DivisionByZero
                | Error::ExponentOverflow { .. }
                | Error::Convergence { .. } => 3,
                Error::Parse(_) => 2,
                _ => 1,
            };
            if code == 2 {
                eprintln!("run `mpbrent --help` for usage");
            }
            ExitCode::from(code)
        }
    }
}

/// Positional decimal rendering of `digits` significant digits at decimal
/// exponent `d10`, truncated.
fn format_positional(sign: i8, digits: &str, d10: i64) -> String {
    let neg = if sign < 0 { "-" } else { "" };
    let n = digits.len() as i64;
    if d10 >= 0 && d10 < n {
        let split = (d10 + 1) as usize;
        if split == digits.len() {
            format!("{neg}{digits}")
        } else {
            format!("{neg}{}.{}", &digits[..split], &digits[split..])
        }
    } else if d10 < 0 && d10 > -7 {
        format!("{neg}0.{}{}", "0".repeat((-d10 - 1) as usize), digits)
    } else {
        let mut s = String::from(neg);
        s.push_str(&digits[..1]);
        if digits.len() > 1 {
            s.push('.');
            s.push_str(&digits[1..]);
        }
        s.push('e');
        s.push_str(&d10.to_string());
        s
    }
}

fn parse_arg(args: &[String], idx: usize, bits: u32) -> Result<MPFloat, Error> {
    let lit = args
        .get(idx)
        .ok_or_else(|| Error::Parse(format!("missing numeric argument {}", idx + 1)))?;
    MPFloat::parse_decimal(lit, bits)
}

fn cmd_eval(a: EvalArgs) -> Result<ExitCode, Error> {
    let digits = match (a.digits, a.bits) {
        (Some(d), None) => d.max(1),
        (None, Some(b)) => ((b.saturating_sub(32) as f64) / LOG2_10).floor().max(1.0) as u32,
        (None, None) => 30,
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    let bits = a.bits.unwrap_or(((digits as f64) * LOG2_10).ceil() as u32 + 32);
    let mut meter = CostMeter::new(a.backend.into());
    let parse_bits = bits + 32;
    let value = match a.target.as_str() {
        "pi" => compute_pi(bits, &mut meter)?,
        "log" => mp_log(&parse_arg(&a.args, 0, parse_bits)?, bits, &mut meter)?,
        "exp" => mp_exp(&parse_arg(&a.args, 0, parse_bits)?, bits, &mut meter)?,
        "sin" => trig(TrigKind::Sin, &parse_arg(&a.args, 0, parse_bits)?, bits, &mut meter)?,
        "cos" => trig(TrigKind::Cos, &parse_arg(&a.args, 0, parse_bits)?, bits, &mut meter)?,
        "artan" => trig(TrigKind::Artan, &parse_arg(&a.args, 0, parse_bits)?, bits, &mut meter)?,
        "sqrt" => mpbrent::basic::sqrt(&parse_arg(&a.args, 0, parse_bits)?, bits, &mut meter)?,
        "agm" => {
            let x = parse_arg(&a.args, 0, parse_bits)?;
            let y = parse_arg(&a.args, 1, parse_bits)?;
            let t = mpbrent::elem::agm(&x, &y, bits, &mut meter)?;
            t.limit().clone()
        }
        other => return Err(Error::Parse(format!("unknown eval target: {other}"))),
    };
    let line = if value.is_zero() {
        "0".to_string()
    } else {
        let (d, e) = value.decimal_digits(digits, DigitMode::Trunc)?;
        format_positional(value.sign(), &d, e)
    };
    match a.output {
        OutputArg::Plain => println!("{line}"),
        OutputArg::Csv => println!("target,value\n{},{line}", a.target),
        OutputArg::Jsonl => println!("{{\"target\":\"{}\",\"value\":\"{line}\"}}", a.target),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(a: TableArgs) -> Result<ExitCode, Error> {
    let backend = a.backend.into();
    let ok = match a.id.as_str() {
        "8.1" => tables::table_8_1(backend, a.check)?,
        "9.1" => tables::table_9_1(backend, a.check)?,
        "12.1" => tables::table_12_1(backend, a.check)?,
        other => return Err(Error::Parse(format!("unknown table id: {other} (use 8.1, 9.1 or 12.1)"))),
    };
    if a.check && !ok {
        eprintln!("golden check failed for table {}", a.id);
        return Ok(ExitCode::from(4));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_sizes(spec: &Option<String>, default: &[u32]) -> Result<Vec<u32>, Error> {
    match spec {
        None => Ok(default.to_vec()),
        Some(s) => s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad size: {part:?}")))
            })
            .collect(),
    }
}

fn emit_records(records: &[BenchRecord], output: OutputArg) {
    match output {
        OutputArg::Csv => {
            println!("{}", BenchRecord::csv_header());
            for r in records {
                println!("{}", r.to_csv());
            }
        }
        OutputArg::Jsonl => {
            for r in records {
                println!("{}", r.to_jsonl());
            }
        }
        OutputArg::Plain => {
            println!("{:<10} {:>10} {:>12} {:>14} {:>14}", "op", "n_bits", "backend", "ratio_to_mul", "wall_ns");
            for r in records {
                println!(
                    "{:<10} {:>10} {:>12} {:>14.3} {:>14}",
                    r.op, r.n_bits, r.backend, r.ratio_to_mul, r.wall_ns
                );
            }
        }
    }
}

fn cmd_bench(a: BenchArgs) -> Result<ExitCode, Error> {
    let backend: Backend = a.backend.into();
    match a.suite.as_str() {
        "basic" => {
            let sizes = parse_sizes(&a.sizes, &[1 << 14, 1 << 16, 1 << 18])?;
            let records = basic_suite(&sizes, backend)?;
            emit_records(&records, a.output);
            if a.output == OutputArg::Plain {
                let (report, alpha) = secant_demo()?;
                println!("\nsecant sqrt(2) evaluation trace (alpha = {alpha}):");
                print!("{}", report.trace(alpha));
            }
        }
        "elem" => {
            let sizes = parse_sizes(&a.sizes, &[1 << 14, 1 << 15, 1 << 16, 1 << 17, 1 << 18, 1 << 19])?;
            let records = elem_suite(&sizes, backend)?;
            emit_records(&records, a.output);
        }
        "series" => {
            let sizes = parse_sizes(&a.sizes, &[1024, 4096])?;
            let orders: Vec<usize> = sizes.iter().map(|&s| s as usize).collect();
            let records = series_suite(&orders)?;
            emit_records(&records, a.output);
        }
        other => return Err(Error::Parse(format!("unknown bench suite: {other}"))),
    }
    Ok(ExitCode::SUCCESS)
}

fn read_series(path: Option<&String>, field: &FloatField) -> Result<Series<FloatField>, Error> {
    let text = match path {
        Some(p) if p != "-" => std::fs::read_to_string(p)?,
        _ => {
            use std::io::Read;
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    Series::parse_text(&text, field)
}

fn cmd_series(a: SeriesArgs) -> Result<ExitCode, Error> {
    let field = FloatField { precision: a.coeff_bits };
    let path = match a.path {
        PathArg::Classical => MulPath::Classical,
        PathArg::Fft => MulPath::Fft,
    };
    let mut ctx = PsCtx::new(field, path);
    let first = read_series(a.files.first(), &field)?;
    let n = a.order.unwrap_or_else(|| first.order().max(1));
    let first = ctx.truncated(&first, n.max(first.order()));
    let result = match a.op.as_str() {
        "mul" => {
            let second = read_series(a.files.get(1), &field)?;
            ctx.mul(&first, &second, n)
        }
        "recip" => ctx.recip(&first, n)?,
        "log" => ctx.log(&first, n)?,
        "exp" => ctx.exp(&first, n)?,
        "pow" => ctx.pow(&first, a.pow_m, n)?,
        "atan" => ctx.atan(&first, n)?,
        "diff" => ctx.diff(&first),
        "integrate" => ctx.integrate(&first),
        other => return Err(Error::Parse(format!("unknown series op: {other}"))),
    };
    print!("{}", result.to_text());
    Ok(ExitCode::SUCCESS)
}
