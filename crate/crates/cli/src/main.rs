mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exact computations with dg-categories, modules and bimodules.
#[derive(Parser)]
#[command(name = "dgforge", version)]
struct Cli {
    /// Field of the bundled examples: `Q` or `GF(p)`.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Search {
    #[arg(long, env = "DGFORGE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    trials: usize,
}

#[derive(Args)]
struct Output {
    /// Write the resulting document here instead of after the report.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of a document.
    Validate { doc: String },
    /// The homotopy category: H^0 of every hom.
    H0 { category: String },
    /// Cohomology of one hom complex.
    Cohomology {
        category: String,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        hom: Vec<String>,
    },
    /// Tensor product of two categories.
    TensorCat {
        left: String,
        right: String,
        #[command(flatten)]
        output: Output,
    },
    /// Opposite category.
    Op {
        category: String,
        #[command(flatten)]
        output: Output,
    },
    /// The bimodule of a functor.
    Phi {
        functor: String,
        #[command(flatten)]
        output: Output,
    },
    /// Restriction of a module along a functor.
    Restrict {
        functor: String,
        module: String,
        #[command(flatten)]
        output: Output,
    },
    /// Induction of a module along a functor.
    Induct {
        functor: String,
        module: String,
        #[command(flatten)]
        output: Output,
    },
    /// Search for a right quasi-representability witness.
    QrTest {
        bimodule: String,
        #[command(flatten)]
        search: Search,
    },
    /// Search for an isomorphism of two objects in H^0.
    Iso {
        category: String,
        x: String,
        y: String,
        #[command(flatten)]
        search: Search,
    },
    /// Derived Hom of two modules or bimodules.
    Rhom {
        source: String,
        target: String,
        #[arg(long, default_value_t = 5)]
        bar_length: usize,
    },
    /// Tensor product of bimodules, strict or derived.
    Tensor {
        left: String,
        right: String,
        #[arg(long, conflicts_with = "derived", required_unless_present = "derived")]
        strict: bool,
        #[arg(long)]
        derived: bool,
        #[arg(long, default_value_t = 5)]
        bar_length: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Hochschild cohomology.
    Hh {
        category: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        min_degree: i32,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        max_degree: i32,
        #[arg(long, default_value_t = 5)]
        bar_length: usize,
    },
    /// Homotopy groups of Map(1, C) at an object.
    MapHomotopy {
        category: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        i: u32,
    },
    /// Homotopy groups of Map(C, C) at the identity.
    MapHomotopyEndo {
        category: String,
        #[arg(long)]
        i: u32,
        #[arg(long, default_value_t = 5)]
        bar_length: usize,
    },
    /// Check that two bimodules over a one-object category are mutually inverse.
    PicardVerify {
        category: String,
        p: String,
        q: String,
        #[arg(long, default_value_t = 5)]
        bar_length: usize,
        #[command(flatten)]
        search: Search,
    },
    /// Drinfeld quotient by a set of objects.
    Quotient {
        category: String,
        #[arg(long, num_args = 1.., required = true)]
        kill: Vec<String>,
        #[arg(long, default_value_t = -4, allow_negative_numbers = true)]
        window: i32,
        #[command(flatten)]
        output: Output,
    },
    /// Localization at closed degree-0 arrows, each given as `X:Y:lincomb`.
    Localize {
        category: String,
        #[arg(long, required = true)]
        invert: Vec<String>,
        #[arg(long, default_value_t = -3, allow_negative_numbers = true)]
        window: i32,
        #[command(flatten)]
        output: Output,
    },
    /// Build the module of a cell plan.
    CellBuild {
        plan: String,
        #[command(flatten)]
        output: Output,
    },
    /// List the bundled examples, optionally writing them to a directory.
    Examples {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match commands::run(&cli, &echo) {
        Ok((text, failed)) => {
            print!("{text}");
            ExitCode::from(if failed { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("dgforge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
