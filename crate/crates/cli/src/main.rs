use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spectral3::bench::{self, BenchConfig};
use spectral3::invariants::PrincipalInvariants;
use spectral3::oracle::{CriticalCase, TransformCase};
use spectral3::{
    decompose, derived_invariants, principal_invariants, verify, AngleMethod, DerivedInvariants,
    Error, InvariantRoute, Mat3f, Multiplicity, Settings,
};

const EXIT_USAGE: u8 = 1;
const EXIT_FAILURE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "spectral3",
    version,
    about = "Closed-form eigendecomposition of 3x3 matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Transform {
    Case1,
    Case2,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues, invariants and eigenprojectors of one matrix.
    Decompose {
        /// Nine comma-separated entries, row-major.
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value = "sop")]
        route: InvariantRoute,
        #[arg(long, default_value = "arctan")]
        angle: AngleMethod,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Error sweep over a critical benchmark family, written as CSV.
    Bench {
        #[arg(long, default_value = "delta")]
        case: CriticalCase,
        #[arg(long, value_enum, default_value = "case1")]
        transform: Transform,
        /// Shape parameter of the case2 transform.
        #[arg(long, default_value_t = 1e-3)]
        gamma: f64,
        #[arg(long, default_value_t = 1e-15)]
        delta_start: f64,
        #[arg(long, default_value_t = 1.0)]
        delta_stop: f64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        points_per_decade: u32,
        #[arg(long, value_delimiter = ',', default_value = "sop,naive")]
        methods: Vec<InvariantRoute>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized property suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_matrix(s: &str) -> Result<Mat3f, String> {
    let v = s
        .split(',')
        .map(|x| {
            let x = x.trim();
            match x.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(format!("`{x}` is not a finite number")),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let e: [f64; 9] = v
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 9 entries, got {}", v.len()))?;
    Ok(Mat3f::from_row_major(e))
}

#[derive(Serialize)]
struct Projector {
    lambda: f64,
    multiplicity: usize,
    matrix: Mat3f,
}

#[derive(Serialize)]
struct Report {
    matrix: Mat3f,
    route: InvariantRoute,
    angle: AngleMethod,
    eigenvalues: [f64; 3],
    multiplicity: Multiplicity,
    phi: f64,
    principal: PrincipalInvariants<f64>,
    invariants: Vec<DerivedInvariants<f64>>,
    projectors: Vec<Projector>,
}

fn print_text(r: &Report, out: &mut impl Write) -> io::Result<()> {
    let [l1, l2, l3] = r.eigenvalues;
    writeln!(out, "eigenvalues: {l1:?} {l2:?} {l3:?}")?;
    writeln!(out, "multiplicity: {:?}", r.multiplicity)?;
    writeln!(out, "phi: {:?}", r.phi)?;
    let p = &r.principal;
    writeln!(out, "I1: {:?}  I2: {:?}  I3: {:?}", p.i1, p.i2, p.i3)?;
    for i in &r.invariants {
        writeln!(
            out,
            "{}: delta_p {:?}  delta_q {:?}  delta {:?}",
            i.method.name(),
            i.delta_p,
            i.delta_q,
            i.delta
        )?;
    }
    for p in &r.projectors {
        writeln!(
            out,
            "projector lambda = {:?} (multiplicity {})",
            p.lambda, p.multiplicity
        )?;
        for row in p.matrix.rows() {
            writeln!(out, "  {:>24?} {:>24?} {:>24?}", row[0], row[1], row[2])?;
        }
    }
    Ok(())
}

fn cmd_decompose(
    matrix: &str,
    route: InvariantRoute,
    angle: AngleMethod,
    format: Format,
) -> ExitCode {
    let a = match parse_matrix(matrix) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: invalid matrix: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let dec = match decompose(&a, &Settings::new(route, angle)) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAILURE);
        }
    };
    let report = Report {
        matrix: a,
        route,
        angle,
        eigenvalues: dec.eigen.lambda.0,
        multiplicity: dec.eigen.multiplicity,
        phi: dec.eigen.phi,
        principal: principal_invariants(&a),
        invariants: [InvariantRoute::Sop, InvariantRoute::Naive]
            .into_iter()
            .map(|route| derived_invariants(&a, route))
            .collect(),
        projectors: dec
            .projectors
            .terms
            .iter()
            .map(|t| Projector {
                lambda: t.lambda,
                multiplicity: t.multiplicity,
                matrix: t.projector,
            })
            .collect(),
    };
    let mut out = io::stdout().lock();
    let res = match format {
        Format::Text => print_text(&report, &mut out),
        Format::Json => serde_json::to_writer_pretty(&mut out, &report)
            .map_err(io::Error::from)
            .and_then(|_| writeln!(out)),
    };
    finish(res)
}

fn finish(res: io::Result<()>) -> ExitCode {
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn cmd_bench(config: BenchConfig, out: Option<PathBuf>) -> ExitCode {
    let records = match bench::run(&config) {
        Ok(r) => r,
        Err(e @ Error::NonRealSpectrum { .. }) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAILURE);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let res = match out {
        Some(path) => File::create(&path)
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))
            .and_then(|f| bench::write_csv(&records, BufWriter::new(f))),
        None => bench::write_csv(&records, io::stdout().lock()),
    };
    finish(res)
}

fn cmd_verify(seed: u64, trials: usize, format: Format) -> ExitCode {
    let report = verify::run(seed, trials);
    let mut out = io::stdout().lock();
    let res = match format {
        Format::Json => serde_json::to_writer_pretty(&mut out, &report)
            .map_err(io::Error::from)
            .and_then(|_| writeln!(out)),
        Format::Text => (|| {
            writeln!(out, "seed {} trials {}", report.seed, report.trials)?;
            for p in &report.properties {
                writeln!(
                    out,
                    "{:<4} {:<16} {:<30} max {:<24e} scaled {:<24e} tol {:e}{}",
                    if p.passed() { "ok" } else { "FAIL" },
                    p.suite.name(),
                    p.name,
                    p.max_violation,
                    p.max_scaled,
                    p.tolerance,
                    if p.errors > 0 {
                        format!(" errors {}", p.errors)
                    } else {
                        String::new()
                    },
                )?;
            }
            writeln!(
                out,
                "{}",
                if report.passed() {
                    "all properties pass"
                } else {
                    "verification failed"
                }
            )
        })(),
    };
    if let Err(e) = res {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Decompose {
            matrix,
            route,
            angle,
            format,
        } => cmd_decompose(&matrix, route, angle, format),
        Command::Bench {
            case,
            transform,
            gamma,
            delta_start,
            delta_stop,
            points_per_decade,
            methods,
            out,
        } => {
            let transform = match transform {
                Transform::Case1 => TransformCase::CaseI,
                Transform::Case2 => TransformCase::CaseII { gamma },
            };
            if let Err(e) = transform.u() {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            let valid = |d: f64| d.is_finite() && d > 0.0;
            if !valid(delta_start) || !valid(delta_stop) || delta_start > delta_stop {
                eprintln!("error: need 0 < --delta-start <= --delta-stop, both finite");
                return ExitCode::from(EXIT_USAGE);
            }
            let config = BenchConfig {
                case,
                transform,
                delta_start,
                delta_stop,
                points_per_decade,
                methods,
            };
            cmd_bench(config, out)
        }
        Command::Verify {
            seed,
            trials,
            format,
        } => cmd_verify(seed, trials, format),
    }
}
