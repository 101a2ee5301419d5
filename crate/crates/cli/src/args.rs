use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact monodromy classification and L2 Hodge numbers for variations of
/// Hodge structure with all Hodge numbers one over a curve.
///
/// Matrices are JSON objects `{"n": 4, "entries": [["1","1/2",...], ...]}`
/// with rational entries written as strings. A path of `-` reads stdin.
#[derive(Debug, Parser)]
#[command(name = "l2hodge", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a local monodromy matrix (optionally a power of it).
    ///
    /// Prints `{"weight", "kind", "semisimple_order", "blocks", "jordan"}`,
    /// or `{"weight", "rejected": {"reason", "detail"}}` when the matrix
    /// is NotQuasiUnipotent, MixedCase or ExcludedByPolarization. Both are
    /// verdicts and exit 0.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        weight: u8,
        #[arg(long)]
        matrix: PathBuf,
        /// Classify `T^e` instead of `T`.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        power: u64,
    },

    /// Monodromy weight filtration of a nilpotent `N`, or of `log T` for a
    /// unipotent `T`.
    ///
    /// Prints `{"source", "nilpotent", "filtration": {"m", "graded": [{k, dim}],
    /// "levels": [{k, basis}]}}` with basis vectors as rational strings.
    Filtration {
        #[arg(long)]
        matrix: PathBuf,
    },

    /// Local twists of the L2 Higgs complex at a point of the given type.
    ///
    /// Prints `{"weight", "twist0", "twist1"}`, entries listed for
    /// `p = m, ..., 0`.
    Ledger {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        weight: u8,
        /// I, II, III, IV or trivial.
        #[arg(long = "type")]
        kind: String,
    },

    /// Hodge numbers of `H^1(S, j_*V)` from the closed formulas.
    ///
    /// Input: `{"g", "a", "b", "counts": {"I","II","III","IV"},
    /// "theta_nonzero": [..], "irreducible", "num_d"}`; degrees may be
    /// strings or numbers. Prints `{"weight", "components": [{p, q, h}],
    /// "total", "derived"}`.
    Hodge {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        weight: u8,
        #[arg(long)]
        input: PathBuf,
        /// Decomposed weight-3 Higgs bundle (middle arrow zero).
        #[arg(long)]
        decomposed: bool,
    },

    /// Classify every point of a family and compute its degree ledger and
    /// Hodge numbers.
    ///
    /// Input: `{"weight", "genus", "a", "b", "a_prime", "b_prime",
    /// "decomposed", "theta_nonzero", "points": [{"label", "matrix" | "type",
    /// "ramified"}]}`.
    HodgeFamily {
        #[arg(long)]
        family: PathBuf,
    },

    /// Pull a genus-0 family back along `z -> z^e`, ramified at the two
    /// flagged points. Prints the new family; degrees are cleared unless
    /// given with `--a` / `--b`.
    BaseChange {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        e: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
    },

    /// Audit the table of Hodge numbers after base change. Exit 2 if any
    /// row is flagged.
    TableCheck {
        /// Table JSON; defaults to the shipped transcription.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Check symbolic `2k` rows for `k = 1..=kmax`.
        #[arg(long, default_value_t = l2hodge::table::DEFAULT_KMAX)]
        kmax: u32,
    },

    /// Arakelov bound on `deg E^{k,0}` for odd weight `k`.
    Arakelov {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        genus: u32,
        /// Number of points of `D`.
        #[arg(long)]
        num_d: u32,
        /// `h^{k-j,j}` for `j = 0..=(k-1)/2`, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<u32>,
        /// Rank of the kernel of theta on each of those pieces.
        #[arg(long, value_delimiter = ',', required = true)]
        kernels: Vec<u32>,
        /// Degree to test against the bound.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },

    /// Parabolic degree `deg + sum alpha * mult`.
    ParabolicDegree {
        #[arg(long, allow_hyphen_values = true)]
        deg: i64,
        /// Residues at one point as `alpha:mult,...`; repeat per point.
        #[arg(long = "point")]
        points: Vec<String>,
    },
}
