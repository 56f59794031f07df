use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use folab_core::rational::parse_rational;
use folab_core::Rational;

#[derive(Debug, Parser)]
#[command(name = "folab", version, about = "Zero-one law laboratory for sparse random graphs")]
pub struct Cli {
    /// Base seed of every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Record wall-clock times (otherwise reported as 0, keeping output reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `key=value` pairs, one record per line.
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density, maximum density, balance and automorphisms of a graph.
    Density(DensityArgs),
    /// Relative densities and safety of a rooted pair.
    Pair(PairArgs),
    /// Monte Carlo estimates over a grid of sizes and exponents.
    Scan(ScanArgs),
    /// One Monte Carlo estimate.
    Mc(McArgs),
    /// Copy counts of a strictly balanced graph against their Poisson limit.
    Poisson(PoissonArgs),
    /// Builds a witness pair of one of the two spectrum constructions.
    Witness(WitnessArgs),
    /// Checks the three structural properties used by the scripted strategy.
    #[command(name = "sset-check")]
    SsetCheck(SsetArgs),
    /// Ehrenfeucht games.
    #[command(subcommand)]
    Ef(EfCommand),
}

pub fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Graph file.
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Rooted pair file.
    #[arg(long)]
    pub pair: PathBuf,
    /// Exponent for the safety check.
    #[arg(long, value_parser = rational_arg)]
    pub alpha: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// At least one edge.
    Edge,
    /// Contains a triangle.
    Triangle,
    /// Contains a 4-clique.
    K4,
    /// Has an isolated vertex.
    Isolated,
    Connected,
}

/// The property whose probability is estimated; exactly one source.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PropertyArgs {
    #[arg(long, value_enum)]
    pub property: Option<Builtin>,
    /// Graph file: the property "contains a copy of this graph".
    #[arg(long)]
    pub contains: Option<PathBuf>,
    /// File holding a first-order sentence.
    #[arg(long)]
    pub formula: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub property: PropertyArgs,
    /// Graph sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Exponents `a/b` in (0,1), comma separated.
    #[arg(long, value_delimiter = ',', value_parser = rational_arg, conflicts_with = "theorem1")]
    pub alpha: Vec<Rational>,
    /// Sample the exponents of the first construction for this k, one per `--m`.
    #[arg(long, requires = "m")]
    pub theorem1: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<usize>,
    /// Replace each exponent by `alpha - eps` and `alpha + eps`.
    #[arg(long, value_parser = rational_arg)]
    pub epsilon: Option<Rational>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Cost guard of formula evaluation.
    #[arg(long, default_value_t = folab_core::logic::DEFAULT_COST_GUARD)]
    pub guard: u64,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[command(flatten)]
    pub property: PropertyArgs,
    #[arg(long)]
    pub n: usize,
    /// Edge probability `n^{-alpha}`.
    #[arg(long, value_parser = rational_arg, required_unless_present = "p", conflicts_with = "p")]
    pub alpha: Option<Rational>,
    /// Explicit edge probability.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = folab_core::logic::DEFAULT_COST_GUARD)]
    pub guard: u64,
}

#[derive(Debug, Args)]
pub struct PoissonArgs {
    /// Strictly balanced pattern; a triangle when omitted.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: usize,
    /// Which construction: 1 or 2.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub theorem: u8,
    /// Directory receiving `x.graph`, `y.graph` and `pair.txt`.
    #[arg(long)]
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SsetArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_parser = rational_arg)]
    pub alpha: Rational,
    /// Caps: subgraph, pattern, root and constraint vertices.
    #[arg(long, value_delimiter = ',', default_values_t = [4usize, 2, 1, 3])]
    pub caps: Vec<usize>,
}

#[derive(Debug, Subcommand)]
pub enum EfCommand {
    /// Exact winner of the k-round game.
    Solve(EfSolveArgs),
    /// Interactive game against the engine on standard input.
    Play(EfPlayArgs),
    /// Random pairs against a sentence battery.
    Crosscheck(EfCrosscheckArgs),
}

#[derive(Debug, Args)]
pub struct EfSolveArgs {
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long)]
    pub h: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Largest accepted `(v(G) v(H))^k`.
    #[arg(long, default_value_t = folab_core::game::DEFAULT_GAME_GUARD)]
    pub guard: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Role {
    Spoiler,
    Duplicator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Optimal play.
    Solver,
    /// The scripted Duplicator strategy, with solver fallback.
    Script,
}

#[derive(Debug, Args)]
pub struct EfPlayArgs {
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long)]
    pub h: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// The role taken by the human player.
    #[arg(long, value_enum)]
    pub side: Role,
    #[arg(long, value_enum, default_value_t = Engine::Solver)]
    pub engine: Engine,
    /// Exponent used by the scripted engine.
    #[arg(long, value_parser = rational_arg)]
    pub alpha: Option<Rational>,
    #[arg(long, default_value_t = folab_core::game::DEFAULT_GAME_GUARD)]
    pub guard: u64,
}

#[derive(Debug, Args)]
pub struct EfCrosscheckArgs {
    #[arg(long, default_value_t = 200)]
    pub pairs: usize,
    /// Number of rounds; also the largest depth of generated sentences.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Sentences, one per line; generated when omitted.
    #[arg(long)]
    pub battery: Option<PathBuf>,
    /// Number of generated sentences.
    #[arg(long, default_value_t = 50)]
    pub sentences: usize,
    /// Largest number of vertices of a random graph.
    #[arg(long, default_value_t = 7)]
    pub max_v: usize,
}
