use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fo52_lab::experiments::{self, Family};
use fo52_lab::{store, ExperimentReport, LabError};

/// Exact experiments with Feigin–Odesskii q(5,2) Poisson brackets on P⁴.
///
/// Exit codes: 0 all assertions pass, 2 assertion failure, 3 genericity
/// anomaly, 4 input or IO error.
#[derive(Parser)]
#[command(name = "fo52", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Write the JSON report here (it is always printed to stdout too).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write per-trial rows as CSV.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check that [Π_W, Π_W] = 0 for a seeded fixture.
    Jacobi {
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Bracket two FO brackets whose subspaces share a K-dimensional part.
    Compat {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=5))]
        k: u8,
        #[command(flatten)]
        common: Common,
    },
    /// Compare ker L with T_W + ker π₅,₂ for a fixture.
    ConjectureD {
        #[arg(long)]
        seed: u64,
        /// Persisted matrix (default: $FO52_CACHE_DIR/pi52.json or ./pi52.json).
        #[arg(long)]
        pi52: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Span and pairwise compatibility of brackets from a U6 or K4 family.
    Span {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Cross-check pointwise rank against the quintic and the zero-locus cubics.
    Stratify {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Linearize Π_W at points of the fixture lines.
    Linearize {
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Tangent line of E_W against the distribution of a W′ sharing four dimensions.
    Tangency {
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Build and persist the π₅,₂ matrix, or re-verify a persisted one.
    Pi52 {
        #[arg(long, default_value_t = 1)]
        grid_seed: u64,
        #[arg(long, default_value_t = fo52_core::fobracket::DEFAULT_SAMPLES)]
        samples: usize,
        /// Matrix file (default: $FO52_CACHE_DIR/pi52.json or ./pi52.json).
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Re-check the persisted matrix instead of building.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: LabError| e.to_string())
}

fn run(cmd: Command) -> Result<(ExperimentReport, Common), LabError> {
    Ok(match cmd {
        Command::Jacobi { seed, common } => (experiments::jacobi(seed)?, common),
        Command::Compat { seed, k, common } => (experiments::compat(seed, k.into())?, common),
        Command::ConjectureD { seed, pi52, common } => {
            let path = pi52.unwrap_or_else(store::default_matrix_path);
            let map = store::load_certified(&path)?;
            (experiments::conjecture_d(seed, &map)?, common)
        }
        Command::Span { seed, family, n, common } => (experiments::span(seed, family, n)?, common),
        Command::Stratify { seed, points, common } => (experiments::stratify(seed, points)?, common),
        Command::Linearize { seed, common } => (experiments::linearize(seed)?, common),
        Command::Tangency { seed, common } => (experiments::tangency(seed)?, common),
        Command::Pi52 { grid_seed, samples, matrix, verify, common } => {
            let path = matrix.unwrap_or_else(store::default_matrix_path);
            if verify {
                (experiments::pi52_verify(&store::load(&path)?)?, common)
            } else {
                let (map, mut report) = experiments::pi52_build(grid_seed, samples)?;
                store::save(&map, &path)?;
                report.param("matrix", path.display().to_string());
                (report, common)
            }
        }
    })
}

fn threads_of(cmd: &Command) -> Option<usize> {
    match cmd {
        Command::Jacobi { common, .. }
        | Command::Compat { common, .. }
        | Command::ConjectureD { common, .. }
        | Command::Span { common, .. }
        | Command::Stratify { common, .. }
        | Command::Linearize { common, .. }
        | Command::Tangency { common, .. }
        | Command::Pi52 { common, .. } => common.threads,
    }
}

fn emit(report: &ExperimentReport, common: &Common) -> Result<(), LabError> {
    let text = report.to_json_string();
    println!("{text}");
    if let Some(p) = &common.out {
        fs::write(p, &text)?;
    }
    if let Some(p) = &common.csv {
        fs::write(p, report.rows_csv()?)?;
    }
    for m in &report.messages {
        eprintln!("{m}");
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which would read as an assertion failure
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = threads_of(&cli.command) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(4);
        }
    }
    let code = match run(cli.command).and_then(|(r, c)| emit(&r, &c).map(|_| r.exit_code())) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
