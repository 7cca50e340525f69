//! `diamdom` command line: recognize, solve, reduce, verify.
//!
//! JSON on stdout is the machine contract. Exit codes: 0 ok, 1 a
//! verification check failed, 2 unreadable or unparsable input, 3 class or
//! precondition violation, 4 resource guard hit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde_json::{json, Value};

use diamdom::domset::{
    gamma_bounded, gamma_clawfree_diam2, gamma_exact, gamma_girth5_diam2, gamma_line_diam2, DominationCertificate,
    ExactLimits,
};
use diamdom::gadgets::{
    prepare_split_instance, reduce_cubic_clawfree, reduce_split_trianglefree, reduce_vc_k14, verify_reduction,
    ReductionInstance, VerificationReport, VerifyOptions,
};
use diamdom::graph::{diameter, girth, parse_graph, Format};
use diamdom::mmm::{cap_for_2k2_free, minimum_maximal_matching_traced, GENERAL_CAP};
use diamdom::recognition::{classify, is_2k2_free, is_claw_free, is_line_graph};
use diamdom::{Error, Graph};

#[derive(Parser, Debug)]
#[command(name = "diamdom", version, about = "Domination and matching on small-diameter graph classes")]
pub struct CliConfig {
    #[command(subcommand)]
    command: Command,

    /// Input graph format.
    #[arg(long, value_enum, default_value = "edge-list", global = true)]
    format: InputFormat,

    #[arg(long, value_enum, default_value = "json", global = true)]
    output: OutputFormat,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class report: diameter, girth, forbidden subgraphs with witnesses.
    Recognize { path: PathBuf },
    /// Minimum dominating set with a verified certificate.
    Gamma {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: GammaMethod,
        /// Size bound for `--method bounded`.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Minimum maximal matching.
    Mmm { path: PathBuf },
    /// Build a reduced instance; writes `<out>.el` and `<out>.json`.
    Reduce {
        #[command(flatten)]
        job: ReductionJob,
        /// Output prefix; defaults to the input path with the kind as extension.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a reduced instance and check it against brute force.
    VerifyReduction {
        #[command(flatten)]
        job: ReductionJob,
        /// Wall-clock limit in seconds for the target-side search.
        #[arg(long)]
        time_limit: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct ReductionJob {
    #[arg(value_enum)]
    kind: Kind,
    path: PathBuf,
    #[arg(short)]
    k: usize,
    /// Target diameter, cubic-clawfree only (default 3).
    #[arg(short)]
    d: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum InputFormat {
    EdgeList,
    Dimacs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GammaMethod {
    Auto,
    Exact,
    ClawfreeDiam2,
    LineDiam2,
    Girth5Diam2,
    Bounded,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    CubicClawfree,
    VcK14,
    SplitTrianglefree,
}

impl Kind {
    fn slug(self) -> &'static str {
        match self {
            Kind::CubicClawfree => "cubic-clawfree",
            Kind::VcK14 => "vc-k14",
            Kind::SplitTrianglefree => "split-trianglefree",
        }
    }
}

/// Reasons to stop that carry their own exit code.
#[derive(Debug)]
enum Stop {
    Usage(String),
    ChecksFailed,
    Incomplete,
}

impl std::fmt::Display for Stop {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Stop::Usage(m) => write!(f, "{m}"),
            Stop::ChecksFailed => write!(f, "verification failed"),
            Stop::Incomplete => write!(f, "verification incomplete: a resource limit was hit"),
        }
    }
}

impl std::error::Error for Stop {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(stop) = err.downcast_ref::<Stop>() {
        return match stop {
            Stop::Usage(_) => 2,
            Stop::ChecksFailed => 1,
            Stop::Incomplete => 4,
        };
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::VertexOutOfRange { .. } | Error::Io(_)) => 2,
        Some(
            Error::ClassMismatch(_)
            | Error::InvalidInput(_)
            | Error::ContractViolation(_)
            | Error::GadgetWiring(_)
            | Error::Disconnected
            | Error::ImpossibleGraph(_)
            | Error::UnsupportedPattern { .. },
        ) => 3,
        Some(Error::OracleGuard { .. } | Error::SearchLimit { .. } | Error::CapExceeded { .. }) => 4,
        _ => 1,
    }
}

fn read_graph(path: &Path, format: InputFormat) -> Result<Graph, Error> {
    let text = fs::read_to_string(path)?;
    let format = match format {
        InputFormat::EdgeList => Format::EdgeList,
        InputFormat::Dimacs => Format::Dimacs,
    };
    parse_graph(&text, format)
}

fn load(path: &Path, format: InputFormat) -> anyhow::Result<Graph> {
    read_graph(path, format).with_context(|| format!("reading {}", path.display()))
}

/// Parameter combinations clap can't express.
fn validate(cfg: &CliConfig) -> Result<(), Stop> {
    match &cfg.command {
        Command::Gamma { method, budget, .. } => match (method, budget) {
            (GammaMethod::Bounded, None) => Err(Stop::Usage("--method bounded needs --budget".into())),
            (GammaMethod::Bounded, Some(0)) => Err(Stop::Usage("--budget must be at least 1".into())),
            (m, Some(_)) if *m != GammaMethod::Bounded => {
                Err(Stop::Usage("--budget only applies to --method bounded".into()))
            }
            _ => Ok(()),
        },
        Command::Reduce { job, .. } | Command::VerifyReduction { job, .. } => match (job.kind, job.d) {
            (Kind::CubicClawfree, Some(d)) if d < 3 => Err(Stop::Usage("-d must be at least 3".into())),
            (Kind::CubicClawfree, _) | (_, None) => Ok(()),
            (kind, Some(_)) => Err(Stop::Usage(format!("-d does not apply to {}", kind.slug()))),
        },
        _ => Ok(()),
    }
}

fn emit(output: OutputFormat, value: &Value, text: impl FnOnce() -> String) {
    match output {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(value).expect("json values serialize")),
        OutputFormat::Text => println!("{}", text()),
    }
}

fn cmd_recognize(cfg: &CliConfig, path: &Path) -> anyhow::Result<()> {
    let g = load(path, cfg.format)?;
    let report = classify(&g);
    let value = serde_json::to_value(&report)?;
    emit(cfg.output, &value, || {
        let mut lines = vec![format!(
            "n = {}, m = {}, diameter {:?}, girth {:?}",
            report.n, report.m, report.diameter, report.girth
        )];
        for (flag, on) in [
            ("triangle-free", report.triangle_free),
            ("C4-free", report.c4_free),
            ("C5-free", report.c5_free),
            ("claw-free", report.claw_free),
            ("K1,4-free", report.k14_free),
            ("2K2-free", report.two_k2_free),
            ("split", report.split),
            ("line graph", report.line_graph),
        ] {
            lines.push(format!("{flag:<14} {on}"));
        }
        for w in &report.witnesses {
            lines.push(format!("witness {:?}: {:?} at {:?}", w.flag, w.pattern, w.occurrence.image()));
        }
        lines.join("\n")
    });
    Ok(())
}

/// Auto routing: girth 5 and diameter 2, then line graph of diameter ≤ 2,
/// then claw-free of diameter ≤ 2, then exact search.
fn route(g: &Graph) -> GammaMethod {
    let diam = diameter(g);
    let small = g.n() > 0 && diam.is_some_and(|d| d <= 2);
    if diam == Some(2) && girth(g) == Some(5) {
        GammaMethod::Girth5Diam2
    } else if small && is_line_graph(g) {
        GammaMethod::LineDiam2
    } else if small && is_claw_free(g) {
        GammaMethod::ClawfreeDiam2
    } else {
        GammaMethod::Exact
    }
}

fn cmd_gamma(cfg: &CliConfig, path: &Path, method: GammaMethod, budget: Option<usize>) -> anyhow::Result<()> {
    let g = load(path, cfg.format)?;
    let method = if method == GammaMethod::Auto {
        let m = route(&g);
        info!("auto routing chose {m:?}");
        m
    } else {
        method
    };
    let cert: Option<DominationCertificate> = match method {
        GammaMethod::Girth5Diam2 => Some(gamma_girth5_diam2(&g)?),
        GammaMethod::LineDiam2 => Some(gamma_line_diam2(&g)?),
        GammaMethod::ClawfreeDiam2 => Some(gamma_clawfree_diam2(&g)?),
        GammaMethod::Exact | GammaMethod::Auto => Some(gamma_exact(&g)),
        GammaMethod::Bounded => gamma_bounded(&g, budget.expect("validated"))?,
    };
    match cert {
        Some(c) => {
            let value = serde_json::to_value(&c)?;
            emit(cfg.output, &value, || {
                format!("gamma = {} via {:?}; set {:?}", c.gamma, c.method, c.set.members())
            });
        }
        None => {
            let budget = budget.expect("validated");
            let value = json!({ "gamma": null, "found": false, "budget": budget });
            emit(cfg.output, &value, || format!("no dominating set of size ≤ {budget}"));
        }
    }
    Ok(())
}

fn cmd_mmm(cfg: &CliConfig, path: &Path) -> anyhow::Result<()> {
    let g = load(path, cfg.format)?;
    let two_k2_free = is_2k2_free(&g);
    let cap = if two_k2_free { cap_for_2k2_free(g.n()) } else { GENERAL_CAP };
    let (m, trace) = minimum_maximal_matching_traced(&g, cap)?;
    let value = json!({
        "size": m.len(),
        "edges": m.edges(),
        "two_k2_free": two_k2_free,
        "stable_sets": trace.stable_sets,
        "improvement_steps": trace.steps.len(),
    });
    emit(cfg.output, &value, || format!("minimum maximal matching of size {}: {:?}", m.len(), m.edges()));
    Ok(())
}

/// The instance plus the graph it was built from (the prepared graph for
/// split inputs) and any preparation details for the sidecar.
struct Built {
    inst: ReductionInstance,
    source: Graph,
    extra: Value,
}

fn build(cfg: &CliConfig, job: &ReductionJob) -> anyhow::Result<Built> {
    let g = load(&job.path, cfg.format)?;
    Ok(match job.kind {
        Kind::CubicClawfree => Built {
            inst: reduce_cubic_clawfree(&g, job.k, job.d.unwrap_or(3))?,
            source: g,
            extra: Value::Null,
        },
        Kind::VcK14 => Built {
            inst: reduce_vc_k14(&g, job.k)?,
            source: g,
            extra: Value::Null,
        },
        Kind::SplitTrianglefree => {
            let prep = prepare_split_instance(&g)?;
            if let Some(note) = &prep.notice {
                info!("{note}");
            }
            let inst = reduce_split_trianglefree(&prep.graph, &prep.partition, job.k)?;
            let extra = json!({
                "prepared": {
                    "kept": prep.kept,
                    "removed": prep.removed.members(),
                    "clique": prep.partition.clique.members(),
                    "stable": prep.partition.stable.members(),
                    "notice": prep.notice,
                }
            });
            Built {
                inst,
                source: prep.graph,
                extra,
            }
        }
    })
}

fn cmd_reduce(cfg: &CliConfig, job: &ReductionJob, out: Option<&Path>) -> anyhow::Result<()> {
    let built = build(cfg, job)?;
    let prefix = out.map(Path::to_path_buf).unwrap_or_else(|| job.path.with_extension(job.kind.slug()));
    let graph_path = PathBuf::from(format!("{}.el", prefix.display()));
    let sidecar_path = PathBuf::from(format!("{}.json", prefix.display()));

    let mut sidecar = built.inst.sidecar();
    sidecar["k"] = json!(job.k);
    if let Some(d) = built.inst.d {
        sidecar["d"] = json!(d);
    }
    if let Value::Object(extra) = built.extra {
        for (key, v) in extra {
            sidecar[key] = v;
        }
    }
    fs::write(&graph_path, built.inst.gprime.to_edge_list())
        .with_context(|| format!("writing {}", graph_path.display()))?;
    fs::write(&sidecar_path, serde_json::to_string_pretty(&sidecar)?)
        .with_context(|| format!("writing {}", sidecar_path.display()))?;

    let value = json!({
        "kind": built.inst.kind,
        "n": built.inst.gprime.n(),
        "m": built.inst.gprime.m(),
        "k": job.k,
        "kprime": built.inst.kprime,
        "graph": graph_path,
        "sidecar": sidecar_path,
    });
    emit(cfg.output, &value, || {
        format!(
            "{} vertices, {} edges, k' = {}; wrote {} and {}",
            built.inst.gprime.n(),
            built.inst.gprime.m(),
            built.inst.kprime,
            graph_path.display(),
            sidecar_path.display()
        )
    });
    Ok(())
}

fn report_text(r: &VerificationReport) -> String {
    let mut lines = vec![format!("{:?}: k = {}, k' = {}", r.kind, r.k, r.kprime)];
    for c in &r.checks {
        let tag = match c.passed {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "UNFINISHED",
        };
        lines.push(format!("{tag:<10} {:<12} {}", c.name, c.detail));
    }
    lines.join("\n")
}

fn cmd_verify(cfg: &CliConfig, job: &ReductionJob, time_limit: Option<u64>) -> anyhow::Result<()> {
    let built = build(cfg, job)?;
    let opts = VerifyOptions {
        exact: ExactLimits {
            max_nodes: None,
            time: time_limit.map(Duration::from_secs),
        },
        oracle: None,
    };
    let report = verify_reduction(&built.inst, &built.source, job.k, &opts)?;
    let value = serde_json::to_value(&report)?;
    emit(cfg.output, &value, || report_text(&report));
    if report.incomplete {
        return Err(Stop::Incomplete.into());
    }
    if !report.all_passed() {
        return Err(Stop::ChecksFailed.into());
    }
    Ok(())
}

fn run(cfg: &CliConfig) -> anyhow::Result<()> {
    validate(cfg)?;
    match &cfg.command {
        Command::Recognize { path } => cmd_recognize(cfg, path),
        Command::Gamma { path, method, budget } => cmd_gamma(cfg, path, *method, *budget),
        Command::Mmm { path } => cmd_mmm(cfg, path),
        Command::Reduce { job, out } => cmd_reduce(cfg, job, out.as_deref()),
        Command::VerifyReduction { job, time_limit } => cmd_verify(cfg, job, *time_limit),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cfg = CliConfig::parse();
    match run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
