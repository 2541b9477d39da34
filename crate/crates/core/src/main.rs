use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ffmatrix::bench::{self, ExperimentConfig, ExperimentId};
use ffmatrix::domain::Domain;
use ffmatrix::factors::{predict_row_factors, remove_column_factors, remove_row_factors};
use ffmatrix::ldu::{decompose, LduDecomposition, PivotStrategy};
use ffmatrix::matrix::{AnyMatrix, Matrix};
use ffmatrix::qr::{qr_decompose, qr_reduce, QrDecomposition};
use ffmatrix::solver::{build_solver_kit_with, SolverKit};
use ffmatrix::{Integer, QPoly};

#[derive(Parser)]
#[command(name = "ffmatrix", version, about = "Fraction-free matrix decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reduce {
    None,
    Rows,
    #[value(name = "rows+cols")]
    RowsCols,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// LD⁻¹U decomposition of a matrix file, printed as JSON.
    Decompose {
        /// first, smallest, largest, factors, smallest-height, largest-height
        #[arg(long, default_value = "smallest")]
        pivot: PivotStrategy,
        #[arg(long, value_enum, default_value = "none")]
        reduce_factors: Reduce,
        /// Also print the row factor report as CSV.
        #[arg(long)]
        factor_report: bool,
        file: PathBuf,
    },
    /// Fraction-free QR decomposition of a square matrix file.
    Qr {
        #[arg(long)]
        reduced: bool,
        file: PathBuf,
    },
    /// Solve A x = b, or reuse a kit saved with --save-kit.
    Solve {
        #[arg(long)]
        kit: Option<PathBuf>,
        #[arg(long)]
        save_kit: Option<PathBuf>,
        #[arg(long, default_value = "smallest")]
        pivot: PivotStrategy,
        /// A and b, or only b together with --kit.
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// Run a seeded experiment and print CSV or JSON rows.
    Bench {
        /// size-ratio, pivot-int, pivot-poly, detect-rate, gcd-prob,
        /// small-prime-incidence, timing
        experiment: ExperimentId,
        /// a:b:step, inclusive
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "csv")]
        out: OutFormat,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        threads: Option<usize>,
        /// Integer entry bound.
        #[arg(long)]
        bound: Option<u64>,
        /// Skewed (true) or uniform (false) integer entries; the default
        /// depends on the experiment.
        #[arg(long)]
        skew: Option<bool>,
        /// Upper end of the range for gcd-prob and small-prime-incidence.
        #[arg(long)]
        range: Option<u64>,
        /// d:n pairs for small-prime-incidence, comma separated.
        #[arg(long)]
        cases: Option<String>,
        /// Large sizes (up to 125 where applicable).
        #[arg(long)]
        full_scale: bool,
    },
}

type CliResult = Result<(), String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_matrix(path: &Path) -> Result<AnyMatrix, String> {
    AnyMatrix::parse_text(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_decomposition<T: Domain>(a: &Matrix<T>, pivot: PivotStrategy, reduce: Reduce, report: bool) -> CliResult {
    let dec = decompose(a, pivot).map_err(|e| e.to_string())?;
    if report {
        let rep = predict_row_factors(&dec).map_err(|e| e.to_string())?;
        eprint!("{}", rep.to_csv());
    }
    let out: LduDecomposition<T> = match reduce {
        Reduce::None => dec,
        Reduce::Rows => remove_row_factors(&dec, None).map_err(|e| e.to_string())?,
        Reduce::RowsCols => {
            let rows = remove_row_factors(&dec, None).map_err(|e| e.to_string())?;
            remove_column_factors(&rows).map_err(|e| e.to_string())?
        }
    };
    println!("{}", out.to_json());
    Ok(())
}

fn print_qr<T: Domain>(a: &Matrix<T>, reduced: bool) -> CliResult {
    let mut q: QrDecomposition<T> = qr_decompose(a).map_err(|e| e.to_string())?;
    if reduced {
        q = qr_reduce(&q).map_err(|e| e.to_string())?;
    }
    println!("Theta\n{}", q.theta.to_text());
    let d: Vec<String> = q.d.iter().map(ToString::to_string).collect();
    println!("D\n{}\n", d.join(" "));
    println!("R\n{}", q.r.to_text());
    println!("det {}", q.det);
    Ok(())
}

fn solve_with<T: Domain>(kit: &SolverKit<T>, b: &Matrix<T>, save: Option<&Path>) -> CliResult {
    if b.cols() != 1 {
        return Err(format!("right-hand side must have one column, found {}", b.cols()));
    }
    if let Some(path) = save {
        fs::write(path, kit.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let res = kit.solve(&b.column(0)).map_err(|e| e.to_string())?;
    println!("compatible {}", res.compatible);
    let residual: Vec<String> = res.residual.iter().map(ToString::to_string).collect();
    println!("residual {}", residual.join(" "));
    match &res.particular {
        Some(x) => {
            let x: Vec<String> = x.iter().map(ToString::to_string).collect();
            println!("particular {}", x.join(" "));
        }
        None => println!("particular none"),
    }
    println!("nullspace {} {}", res.nullspace.rows(), res.nullspace.cols());
    for j in 0..res.nullspace.cols() {
        let col: Vec<String> = res.nullspace.column(j).iter().map(ToString::to_string).collect();
        println!("{}", col.join(" "));
    }
    Ok(())
}

fn solve_cmd(kit_path: Option<PathBuf>, save: Option<PathBuf>, pivot: PivotStrategy, files: Vec<PathBuf>) -> CliResult {
    let save = save.as_deref();
    match (kit_path, files.as_slice()) {
        (Some(kit_path), [b]) => {
            let text = read(&kit_path)?;
            match read_matrix(b)? {
                AnyMatrix::Int(b) => solve_with(&SolverKit::<Integer>::from_json(&text).map_err(|e| e.to_string())?, &b, save),
                AnyMatrix::Poly(b) => solve_with(&SolverKit::<QPoly>::from_json(&text).map_err(|e| e.to_string())?, &b, save),
            }
        }
        (None, [a, b]) => match (read_matrix(a)?, read_matrix(b)?) {
            (AnyMatrix::Int(a), AnyMatrix::Int(b)) => solve_with(&build_solver_kit_with(&a, pivot).map_err(|e| e.to_string())?, &b, save),
            (AnyMatrix::Poly(a), AnyMatrix::Poly(b)) => solve_with(&build_solver_kit_with(&a, pivot).map_err(|e| e.to_string())?, &b, save),
            _ => Err("A and b must use the same domain".into()),
        },
        (Some(_), _) => Err("with --kit give only the right-hand side file".into()),
        (None, _) => Err("expected a matrix file and a right-hand side file".into()),
    }
}

fn parse_cases(s: &str) -> Result<Vec<(u64, usize)>, String> {
    s.split(',')
        .map(|case| {
            let (d, n) = case.split_once(':').ok_or_else(|| format!("bad case {case:?}, expected d:n"))?;
            let d = d.trim().parse().map_err(|_| format!("bad d in {case:?}"))?;
            let n = n.trim().parse().map_err(|_| format!("bad n in {case:?}"))?;
            Ok((d, n))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn bench_cmd(
    experiment: ExperimentId,
    sizes: Option<String>,
    trials: Option<usize>,
    seed: u64,
    out: OutFormat,
    threads: Option<usize>,
    bound: Option<u64>,
    skew: Option<bool>,
    range: Option<u64>,
    cases: Option<String>,
    full_scale: bool,
) -> CliResult {
    let mut cfg = ExperimentConfig::new(experiment);
    cfg.seed = seed;
    if full_scale {
        match experiment {
            ExperimentId::SizeRatio | ExperimentId::DetectRate => cfg.sizes = (5..=125).step_by(5).collect(),
            ExperimentId::PivotInt => (cfg.sizes, cfg.trials) = ((5..=25).step_by(5).collect(), 300),
            ExperimentId::PivotPoly => (cfg.sizes, cfg.trials) = ((5..=20).step_by(5).collect(), 300),
            ExperimentId::Timing => cfg.sizes = vec![11, 19, 31, 53, 73, 97, 107],
            ExperimentId::GcdProb | ExperimentId::SmallPrimeIncidence => {}
        }
    }
    if let Some(s) = sizes {
        cfg.sizes = bench::parse_sizes(&s).map_err(|e| e.to_string())?;
    }
    if let Some(t) = trials {
        cfg.trials = t;
    }
    if let Some(b) = bound {
        cfg.bound = b;
    }
    if let Some(r) = range {
        cfg.gcd_range = r;
    }
    if let Some(c) = cases {
        cfg.prime_cases = parse_cases(&c)?;
    }
    if let Some(s) = skew {
        cfg.skew = s;
    }
    let rows = match threads {
        Some(t) => bench::run_with_threads(&cfg, t),
        None => bench::run(&cfg),
    }
    .map_err(|e| e.to_string())?;
    match out {
        OutFormat::Csv => print!("{}", bench::to_csv(&rows)),
        OutFormat::Json => println!("{}", bench::to_json(&rows)),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decompose {
            pivot,
            reduce_factors,
            factor_report,
            file,
        } => read_matrix(&file).and_then(|m| match m {
            AnyMatrix::Int(a) => print_decomposition(&a, pivot, reduce_factors, factor_report),
            AnyMatrix::Poly(a) => print_decomposition(&a, pivot, reduce_factors, factor_report),
        }),
        Command::Qr { reduced, file } => read_matrix(&file).and_then(|m| match m {
            AnyMatrix::Int(a) => print_qr(&a, reduced),
            AnyMatrix::Poly(a) => print_qr(&a, reduced),
        }),
        Command::Solve {
            kit,
            save_kit,
            pivot,
            files,
        } => solve_cmd(kit, save_kit, pivot, files),
        Command::Bench {
            experiment,
            sizes,
            trials,
            seed,
            out,
            threads,
            bound,
            skew,
            range,
            cases,
            full_scale,
        } => bench_cmd(experiment, sizes, trials, seed, out, threads, bound, skew, range, cases, full_scale),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
