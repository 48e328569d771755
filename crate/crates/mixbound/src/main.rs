use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mixbound::{runs, verify, MixboundError, RunConfig};

/// Shuffle laboratory: simulations, exact kernels, evolving sets, the
/// chameleon process, profile-based mixing bounds and the constants solver.
#[derive(Parser)]
#[command(name = "mixbound", version, about)]
struct Cli {
    /// JSON config file mirroring the run configuration; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded shuffle and emit its coin trace.
    Simulate(CommonArgs),
    /// Exact-kernel reports: mixing times, distance curves, lambda decay.
    Exact(CommonArgs),
    /// Evolving-set duality report on an enumerable chain.
    EvolvingSets(CommonArgs),
    /// Chameleon run with per-round red-mass log.
    Chameleon(CommonArgs),
    /// Root profile of a chain over an x grid.
    Profile(CommonArgs),
    /// Mixing-time bound from a root-profile lower bound.
    Bound(CommonArgs),
    /// Re-run the property suites; exit 1 on any failure.
    Verify(CommonArgs),
    /// Solve the implicit constants and re-verify their inequalities.
    Constants(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Hypercube dimension (2^d cards).
    #[arg(long)]
    d: Option<u32>,
    /// Chain: full | card | subset:K.
    #[arg(long)]
    chain: Option<String>,
    /// Schedule: thorp | zigzag | truncated:D | classic.
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long)]
    rounds: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// De-pink period in rounds.
    #[arg(long = "T")]
    depink_period: Option<u32>,
    /// Nonblack card count for chameleon runs.
    #[arg(long)]
    nonblack: Option<u32>,
    /// Ringing-step count for identity/duality reports.
    #[arg(long)]
    steps: Option<u64>,
    /// Profile-bound exponent: psi(x) >= 1 - x^a.
    #[arg(long)]
    a: Option<f64>,
    /// Profile-bound floor: psi(x) >= b.
    #[arg(long)]
    b: Option<f64>,
    /// log |V| for the bound iteration.
    #[arg(long = "log-v", alias = "logV")]
    log_v: Option<f64>,
    #[arg(long)]
    threshold: Option<f64>,
    /// Subset size for lambda reports.
    #[arg(long)]
    k: Option<u32>,
    /// Report flavor: mixing | distance | lambda | operator (exact),
    /// rounds | decay (chameleon).
    #[arg(long)]
    report: Option<String>,
    /// Verify suite: all | shuffle | exact | evolving | chameleon | l2 |
    /// analytic | constants | bound.
    #[arg(long)]
    suite: Option<String>,
    /// Comma-separated x grid for profiles.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    /// Profile search: exhaustive | sampled.
    #[arg(long = "mode")]
    profile_mode: Option<String>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<String>,
    /// Artifact format: csv | json.
    #[arg(long)]
    format: Option<String>,
}

impl CommonArgs {
    fn apply(self, config: &mut RunConfig) -> mixbound::Result<()> {
        macro_rules! set {
            ($field:ident) => {
                if let Some(v) = self.$field {
                    config.$field = v;
                }
            };
        }
        set!(d);
        set!(rounds);
        set!(trials);
        set!(seed);
        set!(depink_period);
        set!(nonblack);
        set!(steps);
        set!(a);
        set!(b);
        set!(log_v);
        set!(threshold);
        set!(k);
        set!(report);
        set!(suite);
        set!(grid);
        set!(profile_mode);
        set!(format);
        if let Some(chain) = self.chain {
            config.chain = chain.parse()?;
        }
        if let Some(schedule) = self.schedule {
            config.schedule = schedule.parse()?;
        }
        if self.out.is_some() {
            config.out = self.out;
        }
        Ok(())
    }
}

fn resolve_config(cli_config: Option<PathBuf>, name: &str, args: CommonArgs) -> mixbound::Result<RunConfig> {
    let mut config = match cli_config {
        Some(path) => {
            let text = std::fs::read_to_string(&path)?;
            RunConfig::from_json(&path.to_string_lossy(), &text)?
        }
        None => RunConfig::default(),
    };
    config.subcommand = name.to_string();
    args.apply(&mut config)?;
    Ok(config)
}

fn emit(config: &RunConfig, artifact: String) -> mixbound::Result<()> {
    eprintln!("config {}", config.to_json());
    match &config.out {
        Some(path) => std::fs::write(path, artifact)?,
        None => print!("{artifact}"),
    }
    Ok(())
}

fn run(cli: Cli) -> mixbound::Result<bool> {
    let (name, args) = match cli.command {
        Command::Simulate(a) => ("simulate", a),
        Command::Exact(a) => ("exact", a),
        Command::EvolvingSets(a) => ("evolving-sets", a),
        Command::Chameleon(a) => ("chameleon", a),
        Command::Profile(a) => ("profile", a),
        Command::Bound(a) => ("bound", a),
        Command::Verify(a) => ("verify", a),
        Command::Constants(a) => ("constants", a),
    };
    let config = resolve_config(cli.config, name, args)?;
    if name == "verify" {
        eprintln!("config {}", config.to_json());
        let checks = verify::run_suite(&config.suite, config.d, config.seed)?;
        let mut all_pass = true;
        for c in &checks {
            println!("{} {} ({})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
            all_pass &= c.pass;
        }
        return Ok(all_pass);
    }
    let artifact = match name {
        "simulate" => runs::run_simulate(&config)?,
        "exact" => runs::run_exact(&config)?,
        "evolving-sets" => runs::run_evolving(&config)?,
        "chameleon" => runs::run_chameleon(&config)?,
        "profile" => runs::run_profile(&config)?,
        "bound" => runs::run_bound(&config)?,
        "constants" => runs::run_constants(&config)?,
        _ => unreachable!("subcommands are exhaustive"),
    };
    emit(&config, artifact)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err @ MixboundError::BadFlag { .. }) => {
            eprintln!("usage error: {err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
