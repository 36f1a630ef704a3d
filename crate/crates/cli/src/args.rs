use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "treealg",
    version,
    about = "Decorated-tree Hopf algebras, Bogoliubov recursions and canonical models"
)]
pub struct Cli {
    /// JSON file with `scaling`, `kernels` and `noises` entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the randomised suites.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Cutoff on `|ℓ|_𝔰` for the truncated coproduct and antipode, e.g. `3` or `5/2`.
    #[arg(long, global = true)]
    pub cutoff: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positive coproduct of a tree.
    Coprod {
        #[arg(long)]
        tree: String,
        /// full, hat, bar, reduced, simplified-hat or simplified-bar.
        #[arg(long, default_value = "hat")]
        mode: String,
    },
    /// Positive antipode of a tree.
    Antipode {
        #[arg(long)]
        tree: String,
        /// full, bar, twisted, simplified or simplified-twisted.
        #[arg(long, default_value = "bar")]
        mode: String,
    },
    /// Operations on Gaussian-polynomial functions given as JSON.
    Target {
        #[command(subcommand)]
        op: TargetOp,
    },
    /// Run one Birkhoff-type recursion on a tree.
    Birkhoff(BirkhoffArgs),
    /// Canonical models.
    Model {
        #[command(subcommand)]
        op: ModelOp,
    },
    /// Negative renormalisation side.
    Negative {
        #[command(subcommand)]
        op: NegativeOp,
    },
    /// Run acceptance criteria: `all` or a number from 1 to 11.
    Verify {
        #[arg(default_value = "all")]
        which: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum TargetOp {
    /// Evaluate `f` at a point.
    Eval {
        /// JSON text, or `@path` to read it from a file.
        #[arg(long)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        at: Point,
    },
    /// Exact convolution `f * g`.
    Convolve {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<Point>,
    },
    /// Taylor jet `T_{α,x}f` with the scaling of the configuration.
    Jet {
        #[arg(long)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        x: Point,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RecursionKind {
    Classical,
    Comodule,
    Rs,
    RsSimplified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TargetKind {
    Laurent,
    Gausspoly,
    Osc,
}

#[derive(Args, Debug)]
pub struct BirkhoffArgs {
    #[arg(long, value_enum)]
    pub recursion: RecursionKind,
    /// Defaults to `laurent` for the classical recursion and `gausspoly` otherwise.
    #[arg(long, value_enum)]
    pub target: Option<TargetKind>,
    #[arg(long)]
    pub tree: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<Point>,
    #[arg(long, allow_hyphen_values = true)]
    pub xbar: Option<Point>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<Point>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Algebraic,
    Invariance,
    Recursive,
}

#[derive(Subcommand, Debug)]
pub enum ModelOp {
    /// `Π_xτ`, and `f_x(τ)` on positive trees.
    Build {
        #[arg(long)]
        tree: String,
        #[arg(long, allow_hyphen_values = true)]
        x: Point,
        #[arg(long, allow_hyphen_values = true)]
        xbar: Option<Point>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<Point>,
    },
    /// Model identities on every tree up to `--max-edges` edges.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        max_edges: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Cuts,
    Hat,
}

#[derive(Subcommand, Debug)]
pub enum NegativeOp {
    /// Extraction-contraction coaction of a tree.
    Coaction {
        #[arg(long)]
        tree: String,
    },
    /// Twisted and plain negative antipodes of a forest `t1 . t2`.
    Antipode {
        #[arg(long)]
        forest: String,
    },
    /// Counterterm `ψ₋` and renormalised `ψ₊` on a forest.
    Bogoliubov {
        #[arg(long)]
        forest: String,
    },
    /// Compare both sides of the cointeraction identity.
    Cointeraction {
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum, default_value_t = Side::Cuts)]
        side: Side,
    },
    /// Renormalised model `Π̂_xτ` next to `Π_xMτ`.
    Renormalise {
        #[arg(long)]
        tree: String,
        #[arg(long, allow_hyphen_values = true)]
        x: Point,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<Point>,
    },
}

/// Comma-separated coordinates, e.g. `0.5` or `-1,0.25`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(pub Vec<f64>);

impl std::str::FromStr for Point {
    type Err = String;

    fn from_str(s: &str) -> Result<Point, String> {
        s.split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("`{v}` is not a number"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Point)
    }
}
