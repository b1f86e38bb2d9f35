use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quadcf::report::{self, rational_decimal, sig15};
use quadcf::stats::{
    bound_sweep, equidistribution_discrepancy_with, mean_period_sqrt, SampleSet,
    theoretical_kuzmin, theoretical_kuzmin_tail, SweepConfig, DEFAULT_K_CAP, DEFAULT_PRECISION,
    DEFAULT_WEIGHT,
};
use quadcf::{classify, sweep, Classification, Error, ProblemPoint};

/// Periodic continued fractions of x+(p, q) = (sqrt(p^2 + 4q) - p) / 2 and
/// their statistics over integer points in a disc.
#[derive(Debug, Parser)]
#[command(name = "quadcf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze a single point: period, bound, and river cycle.
    Period {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Sweep the disc of radius R and report all statistics.
    Sweep {
        #[arg(long)]
        radius: u64,
        #[arg(long, default_value_t = DEFAULT_WEIGHT)]
        w: f64,
        #[arg(long, default_value_t = DEFAULT_K_CAP)]
        kcap: u64,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Check the period-sum bound at every point of the disc.
    Boundcheck {
        #[arg(long)]
        radius: u64,
    },
    /// Mean period length of sqrt(q) for 1 <= q <= Q.
    Sqrtmean {
        #[arg(long)]
        qmax: u64,
    },
    /// Star discrepancy of the first N radius-ordered fractional parts.
    Equidist {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        /// Also sample points with rational roots.
        #[arg(long)]
        include_rational: bool,
    },
    /// Gauss-Kuzmin probabilities for k = 1..=K.
    Kuzmin {
        #[arg(long)]
        kmax: u64,
    },
}

/// Failures, split by exit code.
enum Failure {
    /// Exit 2.
    Input(String),
    /// Exit 1.
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InputOutOfRange(_)
            | Error::NotAnIrrational { .. }
            | Error::NotNormalized { .. }
            | Error::NonPositiveRoot { .. }
            | Error::InvalidDiscriminant(_)
            | Error::InvalidWeight(_) => Failure::Input(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Period { p, q, format } => {
            let pt = ProblemPoint::new(p, q);
            match classify(pt) {
                Classification::NonReal => {
                    return Err(Failure::Input(format!(
                        "{pt}: non-real roots (p^2 + 4q <= 0)"
                    )))
                }
                Classification::Rational => {
                    return Err(Failure::Input(format!(
                        "{pt}: rational root (p^2 + 4q is a perfect square)"
                    )))
                }
                Classification::QuadraticIrrational => {}
            }
            let analysis = report::analyze_point(pt)?;
            let text = match format {
                Format::Text => report::point_text(&analysis),
                Format::Csv => report::point_csv(&analysis),
            };
            emit(&text, None)
        }
        Command::Sweep {
            radius,
            w,
            kcap,
            threads,
            out,
            format,
        } => {
            if kcap == 0 {
                return Err(Failure::Input("--kcap must be positive".into()));
            }
            let mut cfg = SweepConfig::new(radius).weight(w)?.k_cap(kcap);
            if let Some(n) = threads {
                cfg = cfg.threads(n);
            }
            let rep = sweep(&cfg)?;
            let text = match format {
                Format::Csv => report::sweep_csv(&rep),
                Format::Text => report::sweep_text(&rep),
            };
            emit(&text, out.as_ref())
        }
        Command::Boundcheck { radius } => {
            let b = bound_sweep(radius)?;
            emit(&report::bound_csv(&b), None)?;
            if b.violations.is_empty() {
                Ok(())
            } else {
                Err(Failure::Runtime(format!(
                    "{} violations, first at {}",
                    b.violations.len(),
                    b.violations[0]
                )))
            }
        }
        Command::Sqrtmean { qmax } => {
            let m = mean_period_sqrt(qmax)?;
            let text = format!(
                "qmax,t0_hat_num,t0_hat_den,t0_hat\n{qmax},{},{},{}\n",
                m.numer(),
                m.denom(),
                rational_decimal(&m)
            );
            emit(&text, None)
        }
        Command::Equidist {
            count,
            precision,
            include_rational,
        } => {
            let set = if include_rational {
                SampleSet::RealRoots
            } else {
                SampleSet::Irrational
            };
            let d = equidistribution_discrepancy_with(count, precision, set)?;
            emit(&format!("count,discrepancy\n{count},{}\n", sig15(d)), None)
        }
        Command::Kuzmin { kmax } => {
            if kmax == 0 {
                return Err(Failure::Input("--kmax must be positive".into()));
            }
            let mut text = String::from("k,theoretical\n");
            for k in 1..=kmax {
                text.push_str(&format!("{k},{}\n", sig15(theoretical_kuzmin(k))));
            }
            text.push_str(&format!("overflow,{}\n", sig15(theoretical_kuzmin_tail(kmax))));
            emit(&text, None)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
