use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "vka",
    version,
    about = "Alexander-type invariants of long and closed virtual knots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a Gauss code and print its normalized form.
    Parse {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Presentations, characteristic polynomials, determinant and colorings.
    Invariants(InvariantsArgs),
    /// Build new diagrams from existing ones.
    Construct {
        #[command(subcommand)]
        op: Construct,
        #[command(flatten)]
        out: Output,
        /// Write the diagram here instead of standard output.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Count p-colorings.
    Color {
        input: PathBuf,
        /// Modulus, at least 2; repeatable.
        #[arg(short = 'p', long = "modulus", required = true)]
        moduli: Vec<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Count module maps to Z/p with t acting as multiplication by s.
    Homcount {
        input: PathBuf,
        #[arg(short, long)]
        prime: u64,
        #[arg(short, long)]
        s: i64,
        #[command(flatten)]
        quotient: QuotientArg,
        #[command(flatten)]
        out: Output,
    },
    /// Random Reidemeister walks that must leave the invariants unchanged.
    Fuzz(FuzzArgs),
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Concatenate two long diagrams.
    Concat { a: PathBuf, b: PathBuf },
    /// Join the ends of a long diagram.
    Close { a: PathBuf },
    /// Switch every crossing.
    Switch { a: PathBuf },
    /// Wrap a long diagram in the n-th member of the D_n family.
    Dn { a: PathBuf, n: usize },
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    pub input: PathBuf,
    /// Print the determinant (long diagrams only).
    #[arg(long)]
    pub det: bool,
    /// Characteristic polynomial of the k-th elementary ideal; repeatable.
    #[arg(long = "charpoly", value_name = "K")]
    pub charpoly: Vec<usize>,
    /// Polynomial ring: 2 for Z[u±1, v±1], 1 for Z[t±1] (v = 1).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub variables: u8,
    #[command(flatten)]
    pub quotient: QuotientArg,
    /// Modulus for a coloring count; repeatable.
    #[arg(long = "color", value_name = "P")]
    pub color: Vec<u64>,
    /// Print the group presentation.
    #[arg(long)]
    pub presentation: bool,
    /// Print the presentation after Tietze elimination.
    #[arg(long)]
    pub reduced: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct FuzzArgs {
    pub input: PathBuf,
    /// Seed of the first walk; walk i uses seed + i.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[arg(long, default_value_t = 1)]
    pub walks: u64,
    /// Crossing cap during walks; defaults to four more than the input has.
    #[arg(long)]
    pub max_crossings: Option<usize>,
    /// Compare walk endpoints against this diagram instead of the input.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct QuotientArg {
    /// Quotient before abelianizing: end-minus, end-plus, ends, or a
    /// comma-separated list of generators to kill.
    #[arg(long)]
    pub quotient: Option<String>,
}

#[derive(Args, Debug)]
pub struct BudgetArgs {
    /// Largest number of partial minors one enumeration may visit.
    #[arg(long)]
    pub max_minors: Option<u64>,
    /// Largest coefficient bit length allowed in a minor.
    #[arg(long)]
    pub max_coeff_bits: Option<u64>,
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}
