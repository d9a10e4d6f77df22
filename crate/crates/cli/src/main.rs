//! `qflow`: build graphs, eigendecompose their signless Laplacians, map
//! stability windows, integrate the gradient flow, and run the named
//! regression scenarios, emitting JSON or CSV plot data.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qflow_core::dynamics::{
    initial_state, principal_window, simulate, stability_diagram, IntegrationMethod,
    PotentialParams,
};
use qflow_core::families::{barabasi_albert, build_family, GraphFamily, RandomSource};
use qflow_core::graph::Graph;
use qflow_core::metrics::{compare_with_eigenvector, RigidityParams};
use qflow_core::scenarios::{
    scenario_bridge, scenario_clustered_hubs, scenario_pendant_complete,
    scenario_scale_free_additions, scenario_star, AdditionMode, DEFAULT_M_ATTACH, DEFAULT_SEED,
};
use qflow_core::spectral::{eigendecompose, signless_laplacian, DEFAULT_TOL};
use qflow_core::{edgelist, io};

#[derive(Parser)]
#[command(
    name = "qflow",
    version,
    about = "Signless-Laplacian spectra, stability windows, and node-rigidity experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for randomized constructions (scale-free growth, initial states).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Write the result to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and print its edge list.
    Generate {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Eigendecompose the signless Laplacian Q = A + D.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Stability boundary lines a = -2qb sampled over a range of b.
    StabilityDiagram {
        #[command(flatten)]
        graph: GraphArgs,
        /// Smallest sampled b.
        #[arg(long, default_value_t = 0.1)]
        b_min: f64,
        /// Largest sampled b.
        #[arg(long, default_value_t = 2.0)]
        b_max: f64,
        /// Number of b samples per line.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Integrate the gradient flow from a seeded initial state.
    Simulate {
        #[command(flatten)]
        graph: GraphArgs,
        /// Linear coefficient a (omit in favour of --auto-window).
        #[arg(
            long,
            allow_negative_numbers = true,
            required_unless_present = "auto_window",
            conflicts_with = "auto_window"
        )]
        a: Option<f64>,
        /// Place a at the midpoint of the principal instability window.
        #[arg(long)]
        auto_window: bool,
        /// Coupling coefficient b.
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        /// Final time.
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        /// Sampling (and RK4 stepping) interval.
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        /// Integration method.
        #[arg(long, value_enum, default_value_t = Method::ExactModal)]
        method: Method,
    },
    /// Per-node centrality and rigidity report against the extreme mode.
    Metrics {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        rigidity: RigidityArgs,
        /// Normalize betweenness by (n-1)(n-2)/2.
        #[arg(long)]
        normalized: bool,
    },
    /// Named regression scenarios.
    #[command(subcommand)]
    Scenario(ScenarioCommand),
}

#[derive(Copy, Clone, ValueEnum)]
enum Method {
    ExactModal,
    Rk4,
}

#[derive(Args)]
struct GraphArgs {
    /// Parametric family.
    #[arg(
        long,
        value_enum,
        required_unless_present = "graph",
        conflicts_with = "graph"
    )]
    family: Option<Family>,

    /// Primary size parameter of the family.
    #[arg(long, conflicts_with = "graph")]
    n: Option<usize>,

    /// Secondary size: second part (complete-bipartite) or attachment count
    /// per vertex (scale-free).
    #[arg(long, conflicts_with = "graph")]
    m: Option<usize>,

    /// Read the graph from an edge-list file instead of a family.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Family {
    Complete,
    CompleteBipartite,
    Cycle,
    Path,
    Star,
    ScaleFree,
}

#[derive(Args)]
struct RigidityArgs {
    /// Shell decay factor for the rigidity index r.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Clustering weight for the refined index r-tilde.
    #[arg(long = "ptilde", default_value_t = 0.5)]
    ptilde: f64,
}

impl RigidityArgs {
    fn build(&self) -> Result<RigidityParams, AppError> {
        RigidityParams::new(self.p, self.ptilde).map_err(AppError::from)
    }
}

#[derive(Subcommand)]
enum ScenarioCommand {
    /// Complete graph with one pendant vertex attached.
    PendantComplete {
        /// Order of the complete block.
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[command(flatten)]
        rigidity: RigidityArgs,
    },
    /// Scale-free graph with pendants added at the hub and/or a leaf.
    ScaleFreeAdditions {
        /// Order of the scale-free base graph.
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Attachment edges per vertex during growth.
        #[arg(long, default_value_t = DEFAULT_M_ATTACH)]
        m: usize,
        /// Where to attach the pendant(s).
        #[arg(long, value_enum, default_value_t = Mode::ToHub)]
        mode: Mode,
        #[command(flatten)]
        rigidity: RigidityArgs,
    },
    /// Path bridging a scale-free block and a clique.
    Bridge {
        /// Order of the scale-free block.
        #[arg(long, default_value_t = 70)]
        sf_n: usize,
        /// Number of path vertices.
        #[arg(long, default_value_t = 20)]
        path_n: usize,
        /// Order of the clique block.
        #[arg(long, default_value_t = 10)]
        clique_n: usize,
        /// Attachment edges per vertex during scale-free growth.
        #[arg(long, default_value_t = DEFAULT_M_ATTACH)]
        m: usize,
        #[command(flatten)]
        rigidity: RigidityArgs,
    },
    /// Star graph, optionally with one leaf-leaf edge added.
    Star {
        /// Number of vertices including the center.
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Add the extra leaf-leaf edge.
        #[arg(long)]
        modified: bool,
        #[command(flatten)]
        rigidity: RigidityArgs,
    },
    /// New vertex wired to the k top-degree hubs of a scale-free graph.
    ClusteredHubs {
        /// Order of the scale-free base graph.
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Attachment edges per vertex during growth.
        #[arg(long, default_value_t = DEFAULT_M_ATTACH)]
        m: usize,
        /// Number of hubs the new vertex connects to (1..=4).
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[command(flatten)]
        rigidity: RigidityArgs,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    ToHub,
    ToLeaf,
    ToBoth,
}

impl From<Mode> for AdditionMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::ToHub => AdditionMode::ToHub,
            Mode::ToLeaf => AdditionMode::ToLeaf,
            Mode::ToBoth => AdditionMode::ToBoth,
        }
    }
}

/// CLI-level failure, split by exit code: usage problems exit 1, numerical
/// failures (non-convergence, degenerate windows, exhausted retries) exit 2.
enum AppError {
    Usage(String),
    Numeric(qflow_core::Error),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 1,
            AppError::Numeric(_) => 2,
        }
    }
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Usage(msg) => write!(f, "{msg}"),
            AppError::Numeric(err) => write!(f, "{err}"),
        }
    }
}

impl From<qflow_core::Error> for AppError {
    fn from(err: qflow_core::Error) -> Self {
        match err {
            qflow_core::Error::NoConvergence { .. }
            | qflow_core::Error::DegenerateWindow { .. }
            | qflow_core::Error::RetryExhausted { .. } => AppError::Numeric(err),
            other => AppError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(err: std::io::Error) -> Self {
        AppError::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version go to stdout with exit 0; parse errors go to
            // stderr with exit 1.
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let out = cli.out.clone();
    match run(cli) {
        Ok(text) => match emit(&out, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::from(err.exit_code())
            }
        },
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

/// Write the document, ensuring exactly one trailing newline.
fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), AppError> {
    let mut owned = text.trim_end_matches('\n').to_string();
    owned.push('\n');
    match out {
        Some(path) => fs::write(path, owned)?,
        None => print!("{owned}"),
    }
    Ok(())
}

fn build_graph(args: &GraphArgs, seed: u64) -> Result<Graph, AppError> {
    if let Some(path) = &args.graph {
        let text = fs::read_to_string(path)?;
        return Ok(edgelist::parse_edge_list(&text)?);
    }
    let family = args
        .family
        .expect("clap enforces --family unless --graph is given");
    let n = args
        .n
        .ok_or_else(|| AppError::Usage("--n is required with --family".to_string()))?;
    match family {
        Family::Complete => Ok(build_family(GraphFamily::Complete { n })?),
        Family::Cycle => Ok(build_family(GraphFamily::Cycle { n })?),
        Family::Path => Ok(build_family(GraphFamily::Path { n })?),
        Family::Star => Ok(build_family(GraphFamily::Star { n })?),
        Family::CompleteBipartite => {
            let m = args.m.ok_or_else(|| {
                AppError::Usage("--m is required for --family complete-bipartite".to_string())
            })?;
            Ok(build_family(GraphFamily::CompleteBipartite { n, m })?)
        }
        Family::ScaleFree => {
            let m = args.m.unwrap_or(DEFAULT_M_ATTACH);
            Ok(barabasi_albert(n, m, RandomSource::new(seed))?)
        }
    }
}

fn to_pretty(value: serde_json::Value) -> String {
    serde_json::to_string_pretty(&value).expect("JSON value serializes")
}

fn run(cli: Cli) -> Result<String, AppError> {
    let format = cli.format;
    let seed = cli.seed;
    match cli.command {
        Command::Generate { graph } => {
            let g = build_graph(&graph, seed)?;
            Ok(edgelist::serialize_edge_list(&g))
        }
        Command::Spectrum { graph } => {
            let g = build_graph(&graph, seed)?;
            let dec = eigendecompose(&signless_laplacian(&g), DEFAULT_TOL)?;
            Ok(match format {
                Format::Json => to_pretty(io::spectrum_json(&dec)),
                Format::Csv => io::spectrum_csv(&dec),
            })
        }
        Command::StabilityDiagram {
            graph,
            b_min,
            b_max,
            samples,
        } => {
            let g = build_graph(&graph, seed)?;
            let dec = eigendecompose(&signless_laplacian(&g), DEFAULT_TOL)?;
            let diagram = stability_diagram(&dec, b_min, b_max, samples)?;
            Ok(match format {
                Format::Json => to_pretty(io::diagram_json(&diagram)),
                Format::Csv => io::diagram_csv(&diagram),
            })
        }
        Command::Simulate {
            graph,
            a,
            auto_window,
            b,
            t_max,
            dt,
            method,
        } => {
            let g = build_graph(&graph, seed)?;
            let a = match a {
                Some(a) => a,
                None => {
                    debug_assert!(auto_window);
                    let dec = eigendecompose(&signless_laplacian(&g), DEFAULT_TOL)?;
                    principal_window(&dec, b)?.midpoint()
                }
            };
            let params = PotentialParams::new(a, b)?;
            let x0 = initial_state(g.n(), RandomSource::new(seed))?;
            let method = match method {
                Method::ExactModal => IntegrationMethod::ExactModal,
                Method::Rk4 => IntegrationMethod::Rk4,
            };
            let traj = simulate(&g, &params, &x0, t_max, dt, method)?;
            Ok(match format {
                Format::Json => to_pretty(io::trajectory_json(&traj, &params, t_max, dt, method)),
                Format::Csv => io::trajectory_csv(&traj),
            })
        }
        Command::Metrics {
            graph,
            rigidity,
            normalized,
        } => {
            let g = build_graph(&graph, seed)?;
            let params = rigidity.build()?;
            let dec = eigendecompose(&signless_laplacian(&g), DEFAULT_TOL)?;
            let mut report = compare_with_eigenvector(&g, &dec, &params)?;
            if normalized {
                let n = g.n();
                let pairs = if n < 3 {
                    0.0
                } else {
                    ((n - 1) * (n - 2)) as f64 / 2.0
                };
                for row in &mut report.rows {
                    row.betweenness = if pairs == 0.0 {
                        0.0
                    } else {
                        row.betweenness / pairs
                    };
                }
            }
            Ok(match format {
                Format::Json => to_pretty(io::report_json(&report)),
                Format::Csv => io::report_csv(&report),
            })
        }
        Command::Scenario(spec) => {
            let result = match spec {
                ScenarioCommand::PendantComplete { n, rigidity } => {
                    scenario_pendant_complete(n, &rigidity.build()?)?
                }
                ScenarioCommand::ScaleFreeAdditions {
                    n,
                    m,
                    mode,
                    rigidity,
                } => scenario_scale_free_additions(n, m, seed, mode.into(), &rigidity.build()?)?,
                ScenarioCommand::Bridge {
                    sf_n,
                    path_n,
                    clique_n,
                    m,
                    rigidity,
                } => scenario_bridge(sf_n, path_n, clique_n, m, seed, &rigidity.build()?)?,
                ScenarioCommand::Star {
                    n,
                    modified,
                    rigidity,
                } => scenario_star(n, modified, &rigidity.build()?)?,
                ScenarioCommand::ClusteredHubs { n, m, k, rigidity } => {
                    scenario_clustered_hubs(n, m, seed, k, &rigidity.build()?)?
                }
            };
            Ok(match format {
                Format::Json => to_pretty(io::scenario_json(&result)),
                Format::Csv => io::scenario_csv(&result),
            })
        }
    }
}
