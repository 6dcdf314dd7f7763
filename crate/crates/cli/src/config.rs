//! Command-line surface. The parsed arguments double as the run
//! configuration that every report embeds.

use std::path::PathBuf;

use bdldp::designs::{DEFAULT_BLOCK_CAP, DEFAULT_POINT_CAP};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(
    name = "bdldp",
    version,
    about = "Block design LDP mechanisms and their low-communication decompositions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Globals,
    #[command(subcommand)]
    pub command: TopLevel,
}

#[derive(Subcommand, Debug)]
pub enum TopLevel {
    #[command(flatten)]
    Module(Command),
    /// Re-run the configuration embedded in a report (or a bare config file).
    Run { config: PathBuf },
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Globals {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Refuse to build designs with more blocks than this.
    #[arg(long, global = true, default_value_t = DEFAULT_BLOCK_CAP)]
    pub cap_blocks: u64,
    /// Refuse to build designs with more points than this.
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_CAP)]
    pub cap_points: u64,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
}

/// A complete, replayable run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub command: Command,
    #[serde(flatten)]
    pub globals: Globals,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Construct a block design.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Construct or check a resolution.
    #[command(subcommand)]
    Resolve(ResolveCmd),
    /// Build, decompose and verify mechanisms.
    #[command(subcommand)]
    Mech(MechCmd),
    /// Privacy-utility optimality.
    #[command(subcommand)]
    Put(PutCmd),
    /// Communication cost in bits.
    #[command(subcommand)]
    Cost(CostCmd),
    /// Monte Carlo estimation loss of a scheme.
    Simulate(SimulateArgs),
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DesignCmd {
    /// All k-subsets of v points.
    Complete(VK),
    /// m-flats of the affine space GF(q)^d.
    Ag(AgArgs),
    /// The Hadamard 3-design on 4t points.
    Hadamard3(TArg),
    /// Pairings of a round robin tournament.
    Roundrobin(RoundRobinArgs),
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResolveCmd {
    /// Orbits of the cyclic shift on the complete design.
    Cyclic(VK),
    /// Minimum-α resolution of the complete design.
    Baranyai(BaranyaiArgs),
    /// The parallel classes recorded on a design.
    Parallel(DesignSource),
    /// Complementary block pairs of a Hadamard 3-design.
    H3(DesignSource),
    /// Check a resolution file.
    Verify(FileArg),
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MechCmd {
    /// The block design mechanism of a design.
    Build(BuildArgs),
    /// Split a mechanism along a resolution.
    Decompose(DecomposeArgs),
    /// Check the LDP constraint of a mechanism file.
    VerifyLdp(VerifyLdpArgs),
    /// Check that a decomposed mechanism file reproduces its mechanism.
    VerifyDecomp(VerifyDecompArgs),
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PutCmd {
    /// The PUT-optimal block sizes.
    Kopt(VEps),
    /// The optimal block size of least communication cost.
    Kstar(VEps),
    /// Worst-case squared ℓ₂ risk of a block design scheme.
    Loss(LossArgs),
    /// Least cost of a resolution decomposition of an optimal scheme.
    Mincost(VEps),
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CostCmd {
    /// Cost of a decomposition along a resolution.
    Generic(GenericCostArgs),
    /// Cost of the cyclic shift resolution, from the closed form.
    Cyclic(CyclicCostArgs),
    /// Cost of any uniform α-resolution.
    Alpha(AlphaArgs),
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VK {
    #[arg(long)]
    pub v: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub q: u32,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TArg {
    #[arg(long)]
    pub t: usize,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRobinArgs {
    #[arg(long)]
    pub v: usize,
    #[arg(long, default_value_t = 1)]
    pub lambda: usize,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BaranyaiArgs {
    #[arg(long)]
    pub v: usize,
    #[arg(long)]
    pub k: usize,
    /// Class sizes; defaults to equal classes of v/gcd(v,k) blocks.
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileArg {
    #[arg(long)]
    pub resolution: PathBuf,
}

/// Where a design comes from: a construction name with its parameters, or a
/// design JSON file.
#[derive(Args, Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DesignSource {
    /// complete, ag, hadamard3, roundrobin, or a design JSON file
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design: Option<String>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<usize>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: DesignSource,
    #[arg(long)]
    pub eps: f64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecomposeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: DesignSource,
    #[arg(long)]
    pub eps: f64,
    /// cyclic, baranyai, parallel, h3, or a resolution JSON file
    #[arg(long)]
    pub resolution: String,
    /// Seed for the Baranyai class order.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyLdpArgs {
    #[arg(long)]
    pub mechanism: PathBuf,
    /// Budget to check against; defaults to the mechanism's own ε.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = bdldp::mechanisms::DEFAULT_LDP_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDecompArgs {
    #[arg(long)]
    pub mechanism: PathBuf,
    #[arg(long, default_value_t = bdldp::mechanisms::DEFAULT_DECOMPOSITION_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VEps {
    #[arg(long)]
    pub v: usize,
    #[arg(long)]
    pub eps: f64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LossArgs {
    #[arg(long)]
    pub v: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, default_value_t = 1)]
    pub n: u64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericCostArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: DesignSource,
    /// cyclic, baranyai, parallel, h3, or a resolution JSON file
    #[arg(long)]
    pub resolution: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicCostArgs {
    #[arg(long)]
    pub v: usize,
    #[arg(long)]
    pub k: usize,
    /// Also enumerate the orbits and report their cost.
    #[arg(long)]
    #[serde(default)]
    pub enumerate: bool,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaArgs {
    #[arg(long)]
    pub v: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub alpha: usize,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: DesignSource,
    #[arg(long)]
    pub eps: f64,
    /// none, cyclic, baranyai, parallel, h3, or a resolution JSON file
    #[arg(long, default_value = "none")]
    pub resolution: String,
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// True distribution; defaults to uniform.
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p_true: Vec<f64>,
}
