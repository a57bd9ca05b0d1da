use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;

use input::{ElementArgs, UsageError};

/// Tree pairs in Thompson's groups F and F3, their tangled permutations and
/// the links they describe.
#[derive(Parser, Debug)]
#[command(name = "thompson-links", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Standard,
    Positive,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DrawingFormat {
    Svg,
    Tikz,
}

#[derive(Args, Debug)]
pub struct Out {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct DiagramArgs {
    #[command(flatten)]
    pub element: ElementArgs,
    /// Over/under rule below the axis.
    #[arg(long, value_enum, default_value_t = ConventionArg::Standard)]
    pub convention: ConventionArg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cancel common carets.
    Normalize {
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Tangled permutations, their composition and traversal cycles.
    Perm {
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Number of link components.
    Components {
        #[command(flatten)]
        element: ElementArgs,
        /// Count by tracing the link diagram instead of permutation orbits.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Planar diagram code of the link.
    Pdcode {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Gauss code of the link.
    Gauss {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Draw the link diagram.
    Render {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, value_enum, default_value_t = DrawingFormat::Svg)]
        to: DrawingFormat,
        /// Pixels (SVG) per unit; TikZ uses scale/40 * 0.75 cm.
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        /// Half-width of under-strand breaks, in leaf spacings.
        #[arg(long, default_value_t = 0.12)]
        gap: f64,
        /// Leave out axis point numbers.
        #[arg(long)]
        no_labels: bool,
        /// Write here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Exhaustive statistics over all pairs with 2n+1 leaves.
    Census {
        /// Single caret count; overrides --min-n/--max-n.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Exhaustive checks up to a caret count; exit 0 iff all hold.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Seeded random walks; histogram of component counts.
    Walk {
        /// JSON generator list; defaults to iota of x0, x1 and inverses.
        #[arg(long)]
        generators: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Product of the given elements, left to right.
    Multiply {
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Group inverse.
    Inverse {
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Embed a binary pair into F3.
    Iota {
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Piecewise-linear map of an element.
    Plmap {
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Tangled matching of a tree, or the tree of a matching.
    Matching {
        /// Ternary tree to map to its matching.
        #[arg(long, conflicts_with = "chords", required_unless_present = "chords")]
        tree: Option<String>,
        /// Matching such as "(0,3)(1,5)(2,4)" to validate and invert.
        #[arg(long)]
        chords: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Enumerate, count or sample trees.
    Trees {
        #[arg(long)]
        leaves: usize,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..=3))]
        arity: u32,
        /// Print only the number of trees.
        #[arg(long, conflicts_with = "random")]
        count: bool,
        /// Print one uniformly random tree.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok((text, code)) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
