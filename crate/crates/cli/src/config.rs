//! Flags, the optional TOML config file, and how they merge.
//!
//! A value given on the command line wins over the config file, which wins
//! over the built-in default.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cubefactors::analyze::ConstructionKind;
use cubefactors::construct::ConstructionParams;
use cubefactors::Mode;
use serde::Deserialize;

#[derive(Parser, Debug)]
#[command(name = "cubefactors", version, about = "Hypercube 1-factorisations and union connectivity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a factorisation and write it as JSON lines.
    Construct(CommonArgs),
    /// Check that a factorisation file is a 1-factorisation.
    Verify(VerifyArgs),
    /// Run analyses on the union of a set of factors.
    Analyze(AnalyzeArgs),
    /// Least r such that every union of r factors is connected.
    Rmin(SourceArgs),
    /// Monte-Carlo connectivity fractions per r.
    Experiment(ExperimentArgs),
    /// Write the union graph of selected factors.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    Paper,
    Directional,
    Greedy,
}

impl From<KindArg> for ConstructionKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Paper => ConstructionKind::Paper,
            KindArg::Directional => ConstructionKind::Directional,
            KindArg::Greedy => ConstructionKind::Greedy,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Explicit,
    Implicit,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Explicit => Mode::Explicit,
            ModeArg::Implicit => Mode::Implicit,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormatArg {
    Json,
    Dot,
    EdgeList,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// TOML file with default values for any flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub pg: Option<f64>,
    #[arg(long)]
    pub rg: Option<u32>,
    #[arg(long)]
    pub rh: Option<u32>,
    #[arg(long)]
    pub cube_dim: Option<u32>,
    #[arg(long)]
    pub no_conflict_check: bool,
    #[arg(long)]
    pub no_cube_precedence: bool,
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Leave timings out of reports so they are byte-comparable.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SubsetArgs {
    /// Comma-separated directions, as integers.
    #[arg(long, value_delimiter = ',')]
    pub factors: Option<Vec<u64>>,
    /// Size of a random subset drawn from the seed.
    #[arg(long)]
    pub r: Option<usize>,
    /// Repeat for every subset of size --r.
    #[arg(long)]
    pub all_subsets: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SourceArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Read the factorisation from a file instead of building it.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub subset: SubsetArgs,
    /// Comma-separated analyses, or `all`.
    #[arg(long, value_delimiter = ',')]
    pub analysis: Option<Vec<String>>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Number of construction seeds drawn from the master seed.
    #[arg(long)]
    pub seeds: Option<usize>,
    /// Factor orderings sampled per seed.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub kinds: Option<Vec<KindArg>>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ExportArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub subset: SubsetArgs,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

/// Keys accepted in the config file; all optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub d: Option<u32>,
    pub seed: Option<u64>,
    pub pg: Option<f64>,
    pub rg: Option<u32>,
    pub rh: Option<u32>,
    pub cube_dim: Option<u32>,
    pub conflict_check: Option<bool>,
    pub cube_precedence: Option<bool>,
    pub kind: Option<KindArg>,
    pub mode: Option<ModeArg>,
    pub out: Option<PathBuf>,
    pub no_timings: Option<bool>,
    pub factors: Option<Vec<u64>>,
    pub r: Option<usize>,
    pub all_subsets: Option<bool>,
    pub analysis: Option<Vec<String>>,
    pub seeds: Option<usize>,
    pub samples: Option<usize>,
    pub kinds: Option<Vec<KindArg>>,
    pub format: Option<FormatArg>,
    pub file: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

pub const DEFAULT_D: u32 = 10;
pub const DEFAULT_SEED: u64 = 0;

/// Fully resolved settings shared by every command.
#[derive(Debug, Clone)]
pub struct Settings {
    pub d: u32,
    pub seed: u64,
    pub params: ConstructionParams,
    pub kind: ConstructionKind,
    pub mode: Mode,
    pub out: Option<PathBuf>,
    pub timings: bool,
}

impl Settings {
    pub fn resolve(args: &CommonArgs, file: &FileConfig) -> anyhow::Result<Self> {
        let d = args.d.or(file.d).unwrap_or(DEFAULT_D);
        let mut params = ConstructionParams::paper_defaults(d);
        if let Some(pg) = args.pg.or(file.pg) {
            params.pg = pg;
        }
        if let Some(rg) = args.rg.or(file.rg) {
            params.rg = rg;
        }
        if let Some(rh) = args.rh.or(file.rh) {
            params.rh = rh;
        }
        if let Some(c) = args.cube_dim.or(file.cube_dim) {
            params.cube_dim = c;
        }
        params.conflict_check = !args.no_conflict_check && file.conflict_check.unwrap_or(true);
        params.cube_precedence = !args.no_cube_precedence && file.cube_precedence.unwrap_or(true);
        if !(0.0..=1.0).contains(&params.pg) {
            bail!("--pg must lie in [0, 1]");
        }
        Ok(Settings {
            d,
            seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            params,
            kind: args.kind.or(file.kind).unwrap_or(KindArg::Paper).into(),
            mode: args.mode.or(file.mode).unwrap_or(ModeArg::Explicit).into(),
            out: args.out.clone().or_else(|| file.out.clone()),
            timings: !(args.no_timings || file.no_timings.unwrap_or(false)),
        })
    }
}
