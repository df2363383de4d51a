//! `qb`: build charging schemes, audit them and certify entanglement depth.

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qbcharge::entdepth::{exact_depth, pair_product, thm1_bound};
use qbcharge::harness::{conjecture_audit, figure_sweep, report, thm2_check, ReportOptions, Status};
use qbcharge::io::{read_state, to_json, write_state, write_sweep_csv};
use qbcharge::schemes::{
    build_hybrid, build_parallel, build_su2, build_tridiag, build_tridiag3, hybrid_evolved, RealizedScheme,
    HYBRID_EFFECTIVE_FIELD,
};
use qbcharge::{Error, Tolerances};

const EXIT_ERROR: u8 = 1;
const EXIT_FALSIFIED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "qb", version, about = "Fully charging quantum-battery schemes and depth certification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Number of points of the pair-product scan on [0, T].
    #[arg(long, global = true, default_value_t = 4096)]
    grid: usize,
    /// Purity tolerance of the exact depth oracle.
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT.purity)]
    tol: f64,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; csv is available for `sweep` only.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for data-parallel work.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// SU(2) ladder `alpha . J + d|alpha|/2` embedded in N qubits.
    Su2 {
        #[arg(long)]
        d: usize,
        /// Register size (defaults to d).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha1: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha2: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha3: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
    },
    /// Independent qubit drives with frequencies set by the k list.
    Parallel {
        /// Comma-separated non-negative integers, one per qubit.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
        /// Must equal the length of the k list when given.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        alpha_base: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
    },
    /// Zero-diagonal tridiagonal ladder.
    Tridiag {
        /// Comma-separated positive couplings b_1..b_d.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        b: Vec<f64>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Four-level mirror ladder with spectrum {±lambda1, ±lambda2}.
    Tridiag3 {
        #[arg(long)]
        lambda1: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda2: f64,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Block-flip scheme with d blocks.
    Hybrid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        /// Write the register state at time --t to this file.
        #[arg(long)]
        emit_state: Option<PathBuf>,
        /// Time of the emitted state (defaults to T/2).
        #[arg(long, requires = "emit_state")]
        t: Option<f64>,
    },
    /// Four-level ratio sweep.
    Sweep {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        m_max: u32,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
    },
    /// Exact depth and separability of a state file.
    Oracle {
        #[arg(long)]
        state: PathBuf,
    },
    /// Pair lower bound of a state file (z-basis pair).
    Thm1 {
        #[arg(long)]
        state: PathBuf,
    },
    /// Block-flip tightness check.
    Thm2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Points of the oracle scan.
        #[arg(long, default_value_t = 64)]
        oracle_grid: usize,
    },
}

/// Failures mapped to exit codes.
enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

#[derive(Serialize)]
struct OracleOut {
    n_qubits: usize,
    depth: usize,
    separability: usize,
    witness: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct Thm1Out {
    n_qubits: usize,
    #[serde(serialize_with = "qbcharge::io::ser_f64")]
    p0_abs: f64,
    #[serde(serialize_with = "qbcharge::io::ser_f64")]
    pbar_abs: f64,
    #[serde(serialize_with = "qbcharge::io::ser_f64")]
    product: f64,
    bound: usize,
}

struct Output {
    text: String,
    falsified: bool,
}

impl Output {
    fn json<T: Serialize + ?Sized>(value: &T) -> Result<Self, Failure> {
        Ok(Self {
            text: to_json(value)?,
            falsified: false,
        })
    }
}

fn qubits(scheme: RealizedScheme, n: Option<usize>) -> Result<RealizedScheme, Failure> {
    match n {
        Some(n) => Ok(scheme.with_qubits(n)?),
        None => Ok(scheme),
    }
}

fn format_for(common: &Common, allow_csv: bool) -> Result<Format, Failure> {
    let inferred = common
        .out
        .as_deref()
        .and_then(Path::extension)
        .filter(|ext| ext.eq_ignore_ascii_case("csv"))
        .map(|_| Format::Csv);
    let format = common.format.or(if allow_csv { inferred } else { None }).unwrap_or(Format::Json);
    if format == Format::Csv && !allow_csv {
        return Err(Failure::Usage("--format csv is only available for `sweep`".into()));
    }
    Ok(format)
}

fn charge_report(scheme: &RealizedScheme, common: &Common) -> Result<Output, Failure> {
    let opts = ReportOptions {
        grid: common.grid,
        purity_tol: common.tol,
        ..Default::default()
    };
    let r = report(scheme, &opts)?;
    let mut out = Output::json(&r)?;
    out.falsified = r.status == Status::Falsified;
    Ok(out)
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let common = &cli.common;
    let is_sweep = matches!(cli.command, Command::Sweep { .. });
    let format = format_for(common, is_sweep)?;
    if common.grid < 2 {
        return Err(Failure::Usage("--grid must be at least 2".into()));
    }
    match &cli.command {
        Command::Su2 {
            d,
            n,
            alpha1,
            alpha2,
            alpha3,
            theta,
        } => {
            let s = qubits(build_su2(*d, [*alpha1, *alpha2, *alpha3], *theta)?, *n)?;
            charge_report(&s, common)
        }
        Command::Parallel { k, n, alpha_base, theta } => {
            if let Some(n) = n {
                if *n != k.len() {
                    return Err(Failure::Usage(format!("--n {n} does not match {} k values", k.len())));
                }
            }
            charge_report(&build_parallel(k, *alpha_base, *theta)?, common)
        }
        Command::Tridiag { b, n } => {
            let s = build_tridiag(b)?;
            if s.mirror_symmetric == Some(false) {
                return Err(Failure::Run(
                    "couplings are not mirror symmetric; no full charging to report".into(),
                ));
            }
            charge_report(&qubits(s, *n)?, common)
        }
        Command::Tridiag3 { lambda1, lambda2, n } => {
            charge_report(&qubits(build_tridiag3(*lambda1, *lambda2)?, *n)?, common)
        }
        Command::Hybrid {
            n,
            d,
            theta,
            emit_state,
            t,
        } => {
            let s = build_hybrid(*n, *d, *theta)?;
            if let Some(path) = emit_state {
                let time = t.unwrap_or(PI / HYBRID_EFFECTIVE_FIELD / 2.0);
                write_state(path, &hybrid_evolved(*n, *d, *theta, HYBRID_EFFECTIVE_FIELD, time)?)?;
            }
            charge_report(&s, common)
        }
        Command::Sweep { n, m_max, n_max } => {
            let rows = figure_sweep(*n, *m_max, *n_max, common.grid)?;
            for r in rows.iter().filter(|r| !r.closed_form_ok) {
                eprintln!(
                    "warning: case {} m={} n={} k={}/{}: closed-form T = {} but the earliest full charge is at {}",
                    r.case.tag(),
                    r.m,
                    r.n,
                    r.k_num,
                    r.k_den,
                    r.closed_form_time,
                    r.time
                );
            }
            let audit = conjecture_audit(rows.iter().map(|r| r.status));
            let text = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_sweep_csv(&mut buf, &rows)?;
                    String::from_utf8(buf).map_err(|e| Failure::Run(e.to_string()))?
                }
                Format::Json => to_json(&rows)?,
            };
            Ok(Output {
                text,
                falsified: audit.falsified() > 0,
            })
        }
        Command::Oracle { state } => {
            let psi = read_state(state)?;
            let r = exact_depth(&psi, common.tol)?;
            Output::json(&OracleOut {
                n_qubits: psi.dim().trailing_zeros() as usize,
                depth: r.depth,
                separability: r.separability,
                witness: r.witness,
            })
        }
        Command::Thm1 { state } => {
            let psi = read_state(state)?;
            let n = psi.dim().trailing_zeros() as usize;
            let c = pair_product(&psi, None)?;
            Output::json(&Thm1Out {
                n_qubits: n,
                p0_abs: c.p0.norm(),
                pbar_abs: c.pbar.norm(),
                product: c.product,
                bound: thm1_bound(n, c.product),
            })
        }
        Command::Thm2 { n, d, oracle_grid } => {
            let r = thm2_check(*n, *d, (*oracle_grid).max(2), common.tol)?;
            if !r.pass {
                eprintln!("thm2: N={n} d={d} expected {} got exact {} lb {}", r.expected, r.exact_max, r.lb_max);
            }
            let out = Output::json(&r)?;
            if r.pass {
                Ok(out)
            } else {
                Err(Failure::Run(out.text))
            }
        }
    }
}

fn emit(out: &Output, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, &out.text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    if let Some(threads) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    }
    match execute(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&out, cli.common.out.as_deref()) {
                eprintln!("error: {e}");
                return EXIT_ERROR;
            }
            if out.falsified {
                eprintln!("conjecture falsified for at least one scheme");
                EXIT_FALSIFIED
            } else {
                0
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{}", <Cli as clap::CommandFactory>::command().render_usage());
            EXIT_USAGE
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run())
}
