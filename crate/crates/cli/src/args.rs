use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gschow::oracle::DEFAULT_MAX_CELLS;

#[derive(Debug, Parser)]
#[command(name = "gschow", version, about = "Combinatorial Chow rings of products of ordered graphs")]
pub struct Cli {
    /// Print JSON instead of indented text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest basis the lattice computations may build.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CELLS)]
    pub max_cells: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ProductArg {
    /// JSON file with a list of graphs `{"vertices": [...], "edges": [[a, b], ...]}`.
    #[arg(long)]
    pub product: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExprArg {
    /// Polynomial such as `3*C(0,1)*C(1,1)^2 - C(0,0)^3`.
    #[arg(long, conflicts_with = "expr_file", required_unless_present = "expr_file")]
    pub expr: Option<String>,
    /// File holding the polynomial.
    #[arg(long)]
    pub expr_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Total degree of a polynomial of degree d+1.
    Deg {
        #[command(flatten)]
        product: ProductArg,
        #[command(flatten)]
        expr: ExprArg,
    },
    /// Rank and invariant factors of the graded pieces.
    Basis {
        #[command(flatten)]
        product: ProductArg,
        /// Simplex dimension k; the piece has degree k+1. All pieces when omitted.
        #[arg(long)]
        k: Option<usize>,
        /// Also list the basis monomials.
        #[arg(long)]
        list: bool,
    },
    /// Normal form on non-degenerate simplices, with the class coordinates.
    Reduce {
        #[command(flatten)]
        product: ProductArg,
        #[command(flatten)]
        expr: ExprArg,
        /// Include every certificate term.
        #[arg(long)]
        certificate: bool,
    },
    /// Restrictions of a polynomial to every cube, keyed by cube.
    Restrict {
        #[command(flatten)]
        product: ProductArg,
        #[command(flatten)]
        expr: ExprArg,
    },
    /// Glue a tuple of cube polynomials (as printed by `restrict --json`).
    Glue {
        #[command(flatten)]
        product: ProductArg,
        /// JSON file `{"degree": n, "parts": {"0-1,1-2": "poly", ...}}`.
        #[arg(long)]
        tuple: PathBuf,
    },
    /// Degree pairing of d+1 vertex functions.
    Pairing {
        #[command(flatten)]
        product: ProductArg,
        /// JSON file with a list of d+1 objects mapping vertex keys like "0,1" to values.
        #[arg(long)]
        functions: PathBuf,
    },
    /// The character basis on the d-cube.
    Fourier {
        #[command(subcommand)]
        command: FourierCommand,
    },
    /// Run the cross-check suites and report each check.
    Verify {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    C,
    F,
}

#[derive(Debug, Subcommand)]
pub enum FourierCommand {
    /// Change basis; the input uses `C(..)` or `F(..)` with 0/1 coordinates.
    Convert {
        /// Dimension of the cube.
        #[arg(long)]
        d: usize,
        /// Basis of the input.
        #[arg(long, value_enum)]
        from: BasisArg,
        #[command(flatten)]
        expr: ExprArg,
    },
    /// Degree of a product of d+1 characters given as bitstrings.
    Deg {
        #[arg(required = true, num_args = 1..)]
        words: Vec<String>,
    },
    /// Vanishing tests for a product of d+1 characters.
    Vanish {
        #[arg(required = true, num_args = 1..)]
        words: Vec<String>,
    },
    /// Check that every star relation on the d-cube is class-zero.
    CheckRelations {
        #[arg(long)]
        d: usize,
    },
    /// Compare the vertex and character relation lattices after inverting 2.
    CheckIso {
        #[arg(long)]
        d: usize,
        /// Single degree to compare; all degrees 1..=d+1 when omitted.
        #[arg(long)]
        degree: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Degree,
    Structure,
    Localization,
    Rewrite,
    Pairing,
    Fourier,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Degree, Suite::Structure, Suite::Localization, Suite::Rewrite, Suite::Pairing, Suite::Fourier];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Degree => "degree",
            Suite::Structure => "structure",
            Suite::Localization => "localization",
            Suite::Rewrite => "rewrite",
            Suite::Pairing => "pairing",
            Suite::Fourier => "fourier",
        }
    }
}
