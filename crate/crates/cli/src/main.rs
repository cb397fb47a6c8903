use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Exact Seifert-matrix computations on JSON inputs.
///
/// Exit status: 0 on success, 1 when a check fails or an obstruction is
/// found, 2 on malformed input or a violated precondition.
#[derive(Debug, Parser)]
#[command(name = "seifert", version)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Side {
    Row,
    Col,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a matrix satisfies V - V^t = J.
    Validate { matrix: PathBuf },
    /// Alexander polynomial det(tV - V^t), normalized to lowest exponent 0.
    Alexander { matrix: PathBuf },
    /// Invariant factors of the Alexander module over Q[t, t^-1].
    Decompose { matrix: PathBuf },
    /// Blanchfield pairing on the generators.
    Blanchfield { matrix: PathBuf },
    /// Scalar form S_ij = chi(phi(b_j, b_i)); exits 1 unless S = J.
    ScalarForm { matrix: PathBuf },
    /// Actions T = V^t V^-1 of t and Z = -VJ of z.
    TAction { matrix: PathBuf },
    /// Reduce to an invertible Seifert matrix, with certificate.
    ReduceInvertible { matrix: PathBuf },
    /// Row or column enlargement.
    Enlarge {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "row")]
        kind: Side,
        /// Corner entry, e.g. 1/2.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Comma-separated entries, one per row of the input.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        rho: String,
    },
    /// Undo an enlargement (row pattern tried first).
    Reduce { matrix: PathBuf },
    /// P V P^t for a symplectic P.
    Congruence { matrix: PathBuf, p: PathBuf },
    /// Replay a certificate.
    ApplyCert {
        matrix: PathBuf,
        certificate: PathBuf,
        /// Override the certificate's flavor.
        #[arg(long)]
        flavor: Option<String>,
    },
    /// Check that a certificate carries the first matrix to the second; exits 1 if not.
    VerifyCert {
        from: PathBuf,
        to: PathBuf,
        certificate: PathBuf,
        #[arg(long)]
        flavor: Option<String>,
    },
    /// Factor a rational symplectic matrix into integral symplectic and Δ_n factors.
    FactorSymplectic { p: PathBuf },
    /// Realize V -> Δ_n V Δ_n by enlargement, congruence and reduction.
    RealizeDelta {
        matrix: PathBuf,
        /// A positive integer or the reciprocal of one.
        #[arg(long)]
        n: String,
        /// Require every intermediate matrix to be integral.
        #[arg(long)]
        integral: bool,
    },
    /// Elementary ideals of an integral Seifert matrix, evaluated at points.
    ElementaryIdeals {
        matrix: PathBuf,
        /// Comma-separated evaluation points.
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        points: String,
    },
    /// Compare invariants of two Seifert matrices; exits 1 on an obstruction.
    Distinguish {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        points: String,
    },
    /// Self-duality and admissibility of a lattice; exits 1 if not self-dual.
    LatticeSelfdual { lattice: PathBuf },
    /// A symplectic basis of a self-dual lattice.
    LatticeSympbasis { lattice: PathBuf },
    /// n-adjacency of two lattices, with symplectic bases; exits 1 if not adjacent.
    LatticeAdjacency { first: PathBuf, second: PathBuf },
    /// Seifert matrix of an admissible lattice in a symplectic basis (computed if omitted).
    LatticeSeifert { lattice: PathBuf, basis: Option<PathBuf> },
    /// Admissibility, adjacency and z-inclusion along a chain; exits 1 if invalid.
    VerifyChain { chain: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let newline = if outcome.text.ends_with('\n') { "" } else { "\n" };
            let _ = write!(out, "{}{newline}", outcome.text).and_then(|()| out.flush());
            if outcome.finding {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
