//! Command-line front end: loads configs and networks from JSON, dispatches
//! to the analysis library, and emits JSON reports (stdout by default,
//! `--out` for files). Human-readable summaries and warnings go to stderr so
//! stdout stays machine-parseable.
//!
//! Exit codes: 0 success, 1 analysis-domain errors (infeasible construction,
//! unsupported roster class, scale guards), 2 usage and parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use netform::dynamics::{evolve, Protocol, StartPoint};
use netform::model::{classify, GameConfig, Network};
use netform::oracle::{classify_all, verify_theorems};
use netform::stability::{check_theorem_conditions, is_bilaterally_stable, StabilityMode};
use netform::stability_point::stability_point;
use netform::structure::{construct_near_regular, construct_regular, NearRegular};
use netform::welfare::{is_efficient, suggest_dummies};

#[derive(Parser)]
#[command(
    name = "netform",
    version,
    about = "Stability, dynamics, and welfare analysis of peer backup partnership networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Utility comparisons only
    Plain,
    /// Partners must have storage room for the proposer's data
    Storage,
    /// Storage checks plus the proposer's own link budget
    StorageBudget,
}

impl From<ModeArg> for StabilityMode {
    fn from(arg: ModeArg) -> Self {
        match arg {
            ModeArg::Plain => StabilityMode::Plain,
            ModeArg::Storage => StabilityMode::StorageConstrained,
            ModeArg::StorageBudget => StabilityMode::StorageBudgetConstrained,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckerArg {
    /// Evaluate the stability definition from utility differences
    Definition,
    /// Evaluate the closed-form conditions for symmetric rosters
    ClosedForm,
}

#[derive(Clone, Copy, ValueEnum)]
enum FromArg {
    Null,
    Complete,
    Given,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    /// One agent one step below the common degree
    OneBelow,
    /// One agent one step above the common degree
    OneAbove,
}

#[derive(Subcommand)]
enum Command {
    /// Check a network for bilateral stability
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        network: PathBuf,
        /// Deviation constraints; defaults to the framework's usual pairing
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, value_enum, default_value = "definition")]
        checker: CheckerArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form stable neighborhood size for a symmetric roster
    StabilityPoint {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the seeded mutual-consent dynamics
    Evolve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "null")]
        from: FromArg,
        /// Start network JSON, required with --from given
        #[arg(long)]
        start_network: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resize an identical-agent roster to this population first
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_rounds: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the final network as Graphviz DOT
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the proposal log as CSV
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Build reference networks
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Exhaustively classify every network on a small roster
    Enumerate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force verification of the closed-form results over a config
    /// file holding one config or an array of configs
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Welfare, efficiency, and contentment report
    Welfare {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        network: PathBuf,
        /// Emit the dummy-storage perturbation plan instead of the report
        #[arg(long)]
        dummies: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Connected r-regular network on n agents
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// n-1 agents at degree r and one a step off, for odd n and r
    NearRegular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "one-below")]
        shape: ShapeArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

enum CliError {
    /// Bad invocation or unreadable/invalid input files.
    Usage(String),
    /// The inputs parsed but the analysis cannot apply to them.
    Domain(String),
}

impl From<netform::Error> for CliError {
    fn from(err: netform::Error) -> Self {
        CliError::Domain(err.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!(
            "{}:{}:{}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn load_config(path: &Path) -> CliResult<GameConfig> {
    let mut cfg: GameConfig = read_json(path)?;
    if let Ok(text) = std::env::var("NETFORM_EPSILON") {
        let eps: f64 = text
            .parse()
            .map_err(|_| CliError::Usage(format!("NETFORM_EPSILON: not a number: {text:?}")))?;
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(CliError::Usage(format!(
                "NETFORM_EPSILON: must be a finite non-negative number, got {text:?}"
            )));
        }
        cfg.epsilon = eps;
    }
    Ok(cfg)
}

fn resize_roster(cfg: &GameConfig, n: usize) -> CliResult<GameConfig> {
    if n == cfg.agent_count() {
        return Ok(cfg.clone());
    }
    let first = cfg.agents[0];
    if !cfg.agents.iter().all(|a| *a == first) {
        return Err(CliError::Domain(
            "--n can only resize a roster of identical agents".into(),
        ));
    }
    let mut resized =
        GameConfig::symmetric(cfg.framework, cfg.disk_failure_rate, cfg.link_cost, first, n)?;
    resized.epsilon = cfg.epsilon;
    Ok(resized)
}

fn default_mode(cfg: &GameConfig, mode: Option<ModeArg>) -> StabilityMode {
    mode.map(StabilityMode::from)
        .unwrap_or_else(|| StabilityMode::implied_by(cfg.framework))
}

/// JSON to stdout, or to `--out` with the summary (if any) echoed to stderr
/// either way.
fn emit<T: Serialize>(value: &T, out: Option<&Path>, summary: Option<String>) -> CliResult<()> {
    let json = serde_json::to_string(value)
        .map_err(|e| CliError::Domain(format!("serialization: {e}")))?;
    match out {
        Some(path) => fs::write(path, json + "\n")
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    if let Some(text) = summary {
        eprintln!("{text}");
    }
    Ok(())
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn format_degree(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.4}"),
        None => "-".to_string(),
    }
}

fn warn_overcommitted(agents: &[usize], net: &Network) {
    if !agents.is_empty() {
        let names: Vec<String> = agents.iter().map(|&i| net.display_name(i)).collect();
        eprintln!(
            "warning: agents [{}] already hold more than their resources allow; \
             the state is analyzed as-is",
            names.join(", ")
        );
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze {
            config,
            network,
            mode,
            checker,
            out,
        } => {
            let cfg = load_config(&config)?;
            let net: Network = read_json(&network)?;
            let report = match checker {
                CheckerArg::Definition => {
                    let mode = default_mode(&cfg, mode);
                    is_bilaterally_stable(&cfg, &net, mode)?
                }
                CheckerArg::ClosedForm => {
                    if mode.is_some() {
                        eprintln!("note: --mode is ignored by the closed-form checker");
                    }
                    check_theorem_conditions(&cfg, &net)?
                }
            };
            warn_overcommitted(&report.overcommitted_agents, &net);
            let summary = format!(
                "{} ({} violations)",
                if report.stable { "stable" } else { "unstable" },
                report.violations.len()
            );
            emit(&report, out.as_deref(), Some(summary))
        }
        Command::StabilityPoint { config, out } => {
            let cfg = load_config(&config)?;
            let report = stability_point(&cfg)?;
            let n = cfg.agent_count();
            let summary = format!(
                "{} under {}: eta_hat = {}{}, binding = {}, bounds = [{}, {}]{}",
                classify(&cfg),
                cfg.framework,
                report.degree,
                if report.boundary_tie {
                    format!(" (tie with {})", report.degree + 1)
                } else {
                    String::new()
                },
                report.binding,
                format_degree(report.lower_bound),
                format_degree(report.upper_bound),
                if report.capped_by_population {
                    format!("; achievable with {n} agents: {}", report.achievable_degree(n))
                } else {
                    String::new()
                },
            );
            emit(&report, out.as_deref(), Some(summary))
        }
        Command::Evolve {
            config,
            from,
            start_network,
            seed,
            n,
            max_rounds,
            mode,
            out,
            dot,
            trace,
        } => {
            let mut cfg = load_config(&config)?;
            if let Some(n) = n {
                cfg = resize_roster(&cfg, n)?;
            }
            let start = match from {
                FromArg::Null => StartPoint::Null,
                FromArg::Complete => StartPoint::Complete,
                FromArg::Given => {
                    let path = start_network.ok_or_else(|| {
                        CliError::Usage("--from given needs --start-network".into())
                    })?;
                    StartPoint::Given(read_json(&path)?)
                }
            };
            let protocol = Protocol {
                start,
                seed,
                max_rounds: max_rounds
                    .unwrap_or_else(|| Protocol::default_max_rounds(cfg.agent_count())),
            };
            let mode = default_mode(&cfg, mode);
            let result = evolve(&cfg, &protocol, mode)?;
            if let Some(path) = trace {
                let mut buf = Vec::new();
                result
                    .write_csv(&mut buf)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                write_text(&path, &String::from_utf8(buf).expect("ascii csv"))?;
            }
            if let Some(path) = dot {
                write_text(&path, &result.final_network.to_dot())?;
            }
            let summary = format!(
                "{} after {} rounds, {} links, degrees {:?}",
                if result.converged {
                    "converged"
                } else {
                    "round budget exhausted"
                },
                result.rounds,
                result.final_network.link_count(),
                result.final_network.degrees(),
            );
            emit(&result, out.as_deref(), Some(summary))
        }
        Command::Construct { kind } => {
            let (net, out, dot) = match kind {
                ConstructKind::Regular { n, r, out, dot } => (construct_regular(n, r)?, out, dot),
                ConstructKind::NearRegular {
                    n,
                    r,
                    shape,
                    out,
                    dot,
                } => {
                    let shape = match shape {
                        ShapeArg::OneBelow => NearRegular::OneBelow,
                        ShapeArg::OneAbove => NearRegular::OneAbove,
                    };
                    (construct_near_regular(n, r, shape)?, out, dot)
                }
            };
            if let Some(path) = dot {
                write_text(&path, &net.to_dot())?;
            }
            emit(&net, out.as_deref(), None)
        }
        Command::Enumerate {
            config,
            n,
            mode,
            out,
        } => {
            let mut cfg = load_config(&config)?;
            if let Some(n) = n {
                cfg = resize_roster(&cfg, n)?;
            }
            let mode = default_mode(&cfg, mode);
            let summary = classify_all(&cfg, mode)?;
            let line = format!(
                "{} graphs on {} agents: {} stable ({} degree sequences), \
                 {} efficient, {} contented",
                summary.total_graphs,
                summary.n,
                summary.stable_count,
                summary.stable_degree_sequences.len(),
                summary.efficient_count,
                summary.contented_count
            );
            emit(&summary, out.as_deref(), Some(line))
        }
        Command::Verify { config, out } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| CliError::Usage(format!("{}: {e}", config.display())))?;
            let configs: Vec<GameConfig> = match serde_json::from_str(&text) {
                Ok(list) => list,
                Err(_) => vec![serde_json::from_str(&text).map_err(|e| {
                    CliError::Usage(format!(
                        "{}:{}:{}: {e}",
                        config.display(),
                        e.line(),
                        e.column()
                    ))
                })?],
            };
            let report = verify_theorems(&configs)?;
            emit(&report, out.as_deref(), Some(format!("{report}")))
        }
        Command::Welfare {
            config,
            network,
            dummies,
            out,
        } => {
            let cfg = load_config(&config)?;
            let net: Network = read_json(&network)?;
            if dummies {
                let plan = suggest_dummies(&cfg, &net, None)?;
                if !plan.unresolved.is_empty() {
                    eprintln!(
                        "warning: agents {:?} hold more links than their best degree; \
                         extra storage cannot repair that",
                        plan.unresolved
                    );
                }
                let summary = format!("{} dummy device(s) suggested", plan.dummies.len());
                emit(&plan, out.as_deref(), Some(summary))
            } else {
                let report = is_efficient(&cfg, &net)?;
                let summary = format!(
                    "welfare {:.6} of {:.6}; {}efficient, {}contented",
                    report.welfare,
                    report.max_welfare,
                    if report.efficient { "" } else { "not " },
                    if report.contented { "" } else { "not " },
                );
                emit(&report, out.as_deref(), Some(summary))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
