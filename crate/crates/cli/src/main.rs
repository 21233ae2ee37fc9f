use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qlie_core::QScalar;

mod commands;
mod report;

/// Exact checks for the braided Lie algebra of U_q(sl(2)) and for
/// reflection-equation algebras.
#[derive(Parser, Debug)]
#[command(name = "qlie", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

fn parse_scalar(s: &str) -> Result<QScalar, String> {
    s.parse::<QScalar>().map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The nine brackets [x, y]_q of the adjoint basis u, v, w.
    BracketTable {
        /// Normalization [v, u]_q = M u.
        #[arg(long = "M", alias = "m", default_value = "1", value_parser = parse_scalar)]
        m: QScalar,
    },
    /// Solve for the enveloping-algebra constant tau.
    SolveTau {
        #[arg(long = "M", alias = "m", default_value = "1", value_parser = parse_scalar)]
        m: QScalar,
    },
    /// Check the truncated Jacobi identity on every relation and basis vector.
    VerifyJacobi {
        /// Defaults to the solved tau.
        #[arg(long, value_parser = parse_scalar)]
        tau: Option<QScalar>,
    },
    /// Check whether a map V -> End(U) is an almost representation.
    AlmostRep {
        /// JSON file with {"module": {...}, "rho": {"u": .., "v": .., "w": ..}}.
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Truncated k-th tensor power of the spin-1/2 almost representation.
    TruncatedPower {
        #[arg(long)]
        k: u32,
    },
    /// Relation spaces of the reflection-equation algebra.
    ReRelations {
        #[arg(long)]
        n: usize,
    },
    /// Shifted (quadratic-linear) reflection-equation algebra.
    ReShift {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_scalar)]
        h: QScalar,
    },
    /// Generalized Jacobi identities for the reflection-equation bracket.
    ReJacobi {
        #[arg(long)]
        n: usize,
        /// Work over Q(q) instead of at rational values of q.
        #[arg(long)]
        symbolic: bool,
    },
    /// Graded dimensions of the reflection-equation algebra.
    Hilbert {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dmax: usize,
        #[arg(long)]
        symbolic: bool,
        /// Report filtration dimensions of the shifted algebra instead.
        #[arg(long)]
        filtered: bool,
        /// Shift parameter used with --filtered.
        #[arg(long, default_value = "1", value_parser = parse_scalar)]
        h: QScalar,
    },
    /// Split End(U) for the spin-1/2 module into trace and traceless parts.
    TraceDecomp {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Run all acceptance checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = commands::run(&cli.command);
    let out = if cli.json {
        report.to_json()
    } else {
        report.to_text()
    };
    println!("{out}");
    ExitCode::from(report.exit_code())
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::BracketTable { .. } => "bracket-table",
            Command::SolveTau { .. } => "solve-tau",
            Command::VerifyJacobi { .. } => "verify-jacobi",
            Command::AlmostRep { .. } => "almost-rep",
            Command::TruncatedPower { .. } => "truncated-power",
            Command::ReRelations { .. } => "re-relations",
            Command::ReShift { .. } => "re-shift",
            Command::ReJacobi { .. } => "re-jacobi",
            Command::Hilbert { .. } => "hilbert",
            Command::TraceDecomp { .. } => "trace-decomp",
            Command::Selftest => "selftest",
        }
    }
}
