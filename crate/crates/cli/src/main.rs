//! `gcentre`: check laws, compute centres and analyze effect programs.
//!
//! Exit status is 0 when every check passes, 1 when a check fails (the
//! witnesses are printed) and 2 for unreadable or invalid input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "gcentre", version, about = "Graded strong monads on finite sets: laws, centres, reordering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit JSON records instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Fixed test-set bound for centrality, overriding the functor degree.
    #[arg(long, global = true, value_name = "N")]
    pub bound: Option<usize>,
    /// Largest canonical set used when checking laws.
    #[arg(long, global = true, value_name = "K", default_value_t = 3)]
    pub max_set_size: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pomonoid files.
    #[command(subcommand)]
    Pomonoid(PomonoidCmd),
    /// Pomonoids with a second, parallel product.
    #[command(subcommand)]
    Duoid(FileCmd),
    /// Pomonoids with a second, over-approximating product.
    #[command(subcommand)]
    Bimonoid(BimonoidCmd),
    /// Built-in graded monads.
    #[command(subcommand)]
    Monad(MonadCmd),
    /// Duoidal gradations.
    #[command(subcommand)]
    Duoidal(DuoidalCmd),
    /// Reordering verdicts for an effect program.
    Analyze(AnalyzeArgs),
    /// Built-in monads and fixture files.
    #[command(subcommand)]
    Examples(ExamplesCmd),
}

#[derive(Subcommand, Debug)]
pub enum PomonoidCmd {
    /// Validate a pomonoid file.
    Check { file: PathBuf },
    /// Print the centre of a pomonoid.
    Centre { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum FileCmd {
    /// Validate the file exhaustively.
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum BimonoidCmd {
    /// Validate the file exhaustively.
    Check { file: PathBuf },
    /// Build the bimonoid of an absorbing top element and check it.
    FromTop {
        file: PathBuf,
        #[arg(long)]
        top: String,
    },
}

/// Selects and parameterizes a built-in monad.
#[derive(Args, Debug, Clone, Default)]
pub struct MonadArgs {
    /// Built-in name; `centre:NAME` is the computed centre of NAME and
    /// `regrade:NAME` is NAME restricted to the centre of its grading.
    #[arg(long)]
    pub monad: Option<String>,
    /// Grading for `identity`.
    #[arg(long, value_name = "FILE")]
    pub pomonoid: Option<PathBuf>,
    /// Monoid of tags for the writer built-ins.
    #[arg(long, value_name = "FILE")]
    pub monoid: Option<PathBuf>,
    /// Alphabet for `language_writer`.
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Word-length cap for `language_writer`.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Generator language such as `{ab,ba}`; repeatable.
    #[arg(long = "generator", value_name = "LANG")]
    pub generators: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum MonadCmd {
    /// Monad, order, strength and costrength laws.
    Laws(MonadArgs),
    /// Compare the two sequencing composites for every grade pair.
    Commutative(MonadArgs),
    /// Central subsets of the carriers.
    Centre {
        #[command(flatten)]
        monad: MonadArgs,
        #[arg(long)]
        grade: Option<String>,
        #[arg(long)]
        set_size: Option<usize>,
    },
    /// Check the canonical morphism between two monads.
    Morphism {
        #[command(flatten)]
        monad: MonadArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Evaluate both characterisations of a central submonad.
    Centrality {
        #[command(flatten)]
        monad: MonadArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum DuoidalCmd {
    /// Check the duoidal diagrams of a monad's monoidal structure.
    Check(MonadArgs),
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    pub program: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub pomonoid: PathBuf,
    /// Built-in monad to consult; must be graded by the same pomonoid.
    #[arg(long)]
    pub monad: Option<String>,
    /// Monoid of tags for the writer built-ins.
    #[arg(long, value_name = "FILE")]
    pub monoid: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ExamplesCmd {
    /// List built-in monads and fixture files.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli);
    print!("{}", outcome.stdout);
    if let Some(err) = &outcome.error {
        eprintln!("error: {err}");
    }
    ExitCode::from(outcome.code)
}
