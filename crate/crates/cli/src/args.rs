use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "nc3",
    version,
    about = "Invariants of smoothings of three-component normal-crossing Calabi-Yau degenerations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a configuration and report its collective normal class.
    Check(CheckArgs),
    /// Compute Euler and Hodge numbers of the smoothing for one divisor.
    Invariants(InvariantsArgs),
    /// Compute the invariants for every partition of a built-in family.
    Table(TableArgs),
    /// Recompute the embedded expected tables and report mismatches.
    Verify(VerifyArgs),
    /// List or export the built-in families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// Where `Y` and the divisor come from.
#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Built-in family id (see `nc3 catalog list`).
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub family: Option<String>,
    /// An ncconfig/1 JSON file.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Partition for a built-in family, e.g. `1,4` or `(1,0),(2,3)`.
    #[arg(long, requires = "family", allow_hyphen_values = true)]
    pub partition: Option<String>,
    /// An ncdivisor/1 JSON file, used with --config.
    #[arg(long, value_name = "FILE", requires = "config", conflicts_with = "partition")]
    pub divisor: Option<PathBuf>,
    /// Blow-up order of the parts; a rearrangement of --partition.
    #[arg(long, requires = "partition")]
    pub order: Option<String>,
    /// Relabel components: new Y1, Y2, Y3 are the given old components, e.g. `2,3,1`.
    #[arg(long)]
    pub components: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Check the blown-up configuration instead of the input.
    #[arg(long)]
    pub after_blowup: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Include the blow-up steps and new kernel classes.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub family: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A family id or `all`.
    #[arg(long, default_value = "all")]
    pub family: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// List the built-in families.
    List {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Export a family as ncconfig/1 JSON, or its expected table as CSV.
    Export {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}
