//! Flag definitions. Anything that can change a result is a flag; nothing
//! is read from the environment.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ming",
    version,
    about = "Experiments on the cyclic amplifier model: orbit structure, \
             pointer trajectories, convergence sweeps, the degeneracy \
             paradox, and macroscopicity checks."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerates the rotation orbits of a small prime-width register.
    Orbits(OrbitsArgs),
    /// Samples the pointer reading along one trajectory (plot-ready).
    Evolve(EvolveArgs),
    /// Sweeps the time-average convergence across register widths.
    Converge(ConvergeArgs),
    /// Scans the degeneracy splitting of the two-spin measurement scenario.
    Paradox(ParadoxArgs),
    /// Checks that pointer readings ignore microscopic prefixes.
    MacroCheck(MacroCheckArgs),
}

/// Output options shared by every command.
#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<std::path::PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Omit the generation-timestamp header, making reruns byte-identical.
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Particle-amplitude options shared by the trajectory commands. Either the
/// probability-plus-phase form (the default form, since only |a1|² carries
/// physical weight) or an explicit complex pair.
#[derive(Debug, Args)]
pub struct AmplitudeArgs {
    /// Detection probability |a1|².
    #[arg(long, value_name = "P", conflicts_with_all = ["a0", "a1"])]
    pub p1: Option<f64>,

    /// Relative phase of a1 in radians (with --p1).
    #[arg(long, value_name = "RAD", default_value_t = 0.0, conflicts_with_all = ["a0", "a1"])]
    pub phase: f64,

    /// Explicit a0 as "re,im" (requires --a1).
    #[arg(long, value_name = "RE,IM", requires = "a1")]
    pub a0: Option<String>,

    /// Explicit a1 as "re,im" (requires --a0).
    #[arg(long, value_name = "RE,IM", requires = "a0")]
    pub a1: Option<String>,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    /// Register width (prime, ≤ 20: the listing materialises all 2^n states).
    #[arg(long, value_name = "N")]
    pub n: usize,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Register width (prime).
    #[arg(long, value_name = "N")]
    pub n: usize,

    #[command(flatten)]
    pub amplitude: AmplitudeArgs,

    /// Defect budget rule: "zero", "sqrt", or an exponent γ in (0,1).
    #[arg(long, value_name = "RULE", default_value = "sqrt")]
    pub budget: String,

    /// Number of samples along the trajectory.
    #[arg(long, value_name = "K")]
    pub steps: Option<usize>,

    /// End of the sampled time window (default: one period, n).
    #[arg(long, value_name = "T")]
    pub t_max: Option<f64>,

    /// Idle-branch global phase rate (a gauge choice; readings are
    /// invariant under it).
    #[arg(long, value_name = "RATE", default_value_t = 0.0)]
    pub idle_phase_rate: f64,

    /// Base action scale h0 (the generator scales as h0/n; trajectories in
    /// rotation time are independent of it).
    #[arg(long, value_name = "H0", default_value_t = 1.0)]
    pub h0: f64,

    /// Cross-check the flow against dense linear algebra first (n ≤ 12).
    #[arg(long)]
    pub validate: bool,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    /// Comma-separated register widths (all prime), e.g. 5,7,11,101.
    #[arg(long = "n-list", value_name = "N,N,...", required = true)]
    pub n_list: String,

    #[command(flatten)]
    pub amplitude: AmplitudeArgs,

    /// Defect budget rule: "zero", "sqrt", or an exponent γ in (0,1).
    #[arg(long, value_name = "RULE", default_value = "sqrt")]
    pub budget: String,

    /// Quadrature steps per row (default: 2n + 2, the exactness bound).
    #[arg(long, value_name = "K")]
    pub steps: Option<usize>,

    /// Worker threads for row evaluation (output order is unaffected).
    #[arg(long, value_name = "J", default_value_t = 1)]
    pub jobs: usize,

    /// Base action scale h0 (results are independent of it).
    #[arg(long, value_name = "H0", default_value_t = 1.0)]
    pub h0: f64,

    /// Cross-check widths ≤ 12 against dense linear algebra first.
    #[arg(long)]
    pub validate: bool,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ParadoxArgs {
    /// Comma-separated degeneracy splittings; must contain 0 and at least
    /// two positive values, e.g. 0,0.001,0.01,0.1.
    #[arg(long, value_name = "E,E,...", required = true)]
    pub eps: String,

    /// Add a smoothed column from an illustrative crossover of this width.
    #[arg(long, value_name = "W")]
    pub smooth_width: Option<f64>,

    /// Steepness of the smoothing crossover.
    #[arg(long, value_name = "K", default_value_t = 2.0)]
    pub smooth_steepness: f64,

    /// Add a sampled column: seeded sequential-measurement average over
    /// this many shots.
    #[arg(long, value_name = "SHOTS")]
    pub samples: Option<u64>,

    /// Sampler seed.
    #[arg(long, value_name = "SEED", default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MacroCheckArgs {
    /// Comma-separated register widths (all prime), e.g. 101,211,401.
    #[arg(long = "n-list", value_name = "N,N,...", required = true)]
    pub n_list: String,

    /// Defect budget rule: "zero", "sqrt", or an exponent γ in (0,1).
    #[arg(long, value_name = "RULE", default_value = "sqrt")]
    pub budget: String,

    /// Repeated single-site factor of the product state.
    #[arg(long, value_enum, default_value_t = Tail::Plus)]
    pub tail: Tail,

    /// Pointer family to evaluate.
    #[arg(long, value_enum, default_value_t = Family::Deficit)]
    pub family: Family,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tail {
    Ground,
    Excited,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// 1 − (cocked mass): converges to the detection probability.
    Deficit,
    /// Indicator of leaving the cocked set: the non-uniqueness example.
    Indicator,
}
