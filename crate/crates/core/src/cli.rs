//! The `closflow` command line.
//!
//! Exit codes: 0 on success, 1 when a check fails (hose-model violation,
//! expectation mismatch, incomplete routing), 2 for usage and parse errors.
//! Reports are plain text by default and one JSON object per line with
//! `--format json`; rationals are always written as `num/den`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algorithms::{
    ecmp, melen_turner, route_two_phase, sorted_greedy, unsorted_greedy, AlgorithmConfig,
    AlgorithmError,
};
use crate::congestion::{congestion, is_link_disjoint, validate_flowset, CongestionReport};
use crate::format::{
    instance_digest, parse_instance, parse_routing, write_instance, write_routing, ParseError,
    RoutingFile,
};
use crate::graph::SimpleGraph;
use crate::instances::{self, NamedInstance};
use crate::model::{ClosDims, FlowSet, Routing};
use crate::online::{
    adversary_super, exhaustive_supersequences, randomized_experiment, router_by_name,
    AdversaryOutcome, FamilyReport, OnlineRouter, ROUTER_NAMES,
};
use crate::oracle::{exact_opt, OracleError, DEFAULT_NODE_BUDGET};
use crate::rational::Rational;

/// Environment variable holding the oracle node budget.
pub const BUDGET_ENV: &str = "CLOSFLOW_ORACLE_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "closflow",
    version,
    about = "Minimum-congestion routing in Clos networks"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    CrossGadget,
    Theorem6,
    MtWorstcase,
    Reduction,
    OnlineXy,
    Supersequences,
    Random,
    Figure5,
    SortedGreedyXy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    TwoPhase,
    SortedGreedy,
    UnsortedGreedy,
    Ecmp,
    MelenTurner,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::TwoPhase => "two-phase",
            Algorithm::SortedGreedy => "sorted-greedy",
            Algorithm::UnsortedGreedy => "unsorted-greedy",
            Algorithm::Ecmp => "ecmp",
            Algorithm::MelenTurner => "melen-turner",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AdversaryMode {
    Xy,
    Super,
    Exhaustive,
    Random,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance family with its witness routings.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        eps: Option<Rational>,
        /// Number of blocks for supersequences.
        #[arg(long)]
        s: Option<usize>,
        /// Flows per switch pair for sorted-greedy-xy.
        #[arg(long)]
        group: Option<usize>,
        /// Edge-list file for the reduction (`graph <n>` then `edge <u> <v>`).
        #[arg(long, conflicts_with = "graph_name")]
        graph: Option<PathBuf>,
        /// Built-in graph for the reduction: triangle, k4, subdivided-k4.
        #[arg(long)]
        graph_name: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 3)]
        n_middle: usize,
        #[arg(long, default_value_t = 3)]
        n_tor: usize,
        #[arg(long, default_value_t = 9)]
        flows: usize,
        #[arg(long, default_value_t = 4)]
        max_den: u32,
        /// Output directory; without it the instance is printed.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Route an instance with one algorithm.
    Route {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        #[arg(long)]
        p: Option<Rational>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also compute the optimum and the ratio.
        #[arg(long)]
        with_opt: bool,
        #[arg(long)]
        budget: Option<u64>,
        /// Write the routing here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum congestion.
    Opt {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the congestion of a routing file.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        routing: PathBuf,
    },
    /// Run an online router against the adaptive adversary.
    Adversary {
        #[arg(long)]
        router: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = AdversaryMode::Xy)]
        mode: AdversaryMode,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Compare algorithms against the oracle on a random corpus.
    Bench {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_r: usize,
        #[arg(long, default_value_t = 9)]
        max_flows: usize,
        #[arg(long, default_value_t = 4)]
        max_den: u32,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated algorithms (default: all).
        #[arg(long, value_enum, value_delimiter = ',')]
        algorithms: Vec<Algorithm>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

/// A failure with its exit code and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn violation(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::MissingAssignments(_)
            | ParseError::DuplicateAssignment(_)
            | ParseError::Routing(_) => violation(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<AlgorithmError> for Failure {
    fn from(e: AlgorithmError) -> Self {
        match e {
            AlgorithmError::InvalidFlowSet(_) => violation(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<instances::InstanceError> for Failure {
    fn from(e: instances::InstanceError) -> Self {
        usage(e.to_string())
    }
}

struct Ctx<'a> {
    format: OutputFormat,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str, record: Value) -> Result<(), Failure> {
        let io = |e: std::io::Error| usage(format!("cannot write output: {e}"));
        match self.format {
            OutputFormat::Text => write!(self.out, "{text}").map_err(io),
            OutputFormat::Json => writeln!(self.out, "{record}").map_err(io),
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// reports to `out` and errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        out,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx) -> Result<(), Failure> {
    match command {
        Command::Gen {
            family,
            n,
            eps,
            s,
            group,
            graph,
            graph_name,
            seed,
            n_middle,
            n_tor,
            flows,
            max_den,
            out,
        } => {
            let request = GenRequest {
                family,
                n,
                eps,
                s,
                group,
                graph,
                graph_name,
                seed,
                dims: (n_middle, n_tor),
                flows,
                max_den,
            };
            cmd_gen(ctx, &request, out.as_deref())
        }
        Command::Route {
            instance,
            algorithm,
            p,
            q,
            seed,
            with_opt,
            budget,
            out,
        } => {
            let mut cfg = AlgorithmConfig::default();
            if let Some(p) = p {
                cfg.p = p;
            }
            if let Some(q) = q {
                cfg.q = q;
            }
            cmd_route(
                ctx,
                &instance,
                algorithm,
                cfg,
                seed,
                with_opt.then(|| oracle_budget(budget)),
                out.as_deref(),
            )
        }
        Command::Opt {
            instance,
            budget,
            out,
        } => cmd_opt(ctx, &instance, oracle_budget(budget), out.as_deref()),
        Command::Verify { instance, routing } => cmd_verify(ctx, &instance, &routing),
        Command::Adversary {
            router,
            n,
            mode,
            s,
            seed,
            trials,
        } => cmd_adversary(ctx, &router, n, mode, s, seed, trials),
        Command::Bench {
            count,
            max_n,
            max_r,
            max_flows,
            max_den,
            seed,
            algorithms,
            budget,
        } => {
            let seed = seed.ok_or_else(|| usage("bench needs --seed"))?;
            let algorithms = if algorithms.is_empty() {
                vec![
                    Algorithm::TwoPhase,
                    Algorithm::SortedGreedy,
                    Algorithm::UnsortedGreedy,
                    Algorithm::Ecmp,
                    Algorithm::MelenTurner,
                ]
            } else {
                algorithms
            };
            let corpus = instances::random_corpus(count, max_n, max_r, max_flows, max_den, seed);
            cmd_bench(ctx, &corpus, &algorithms, seed, oracle_budget(budget))
        }
    }
}

/// `--budget`, else the environment variable, else the default.
fn oracle_budget(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var(BUDGET_ENV).ok()?.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<FlowSet, Failure> {
    Ok(parse_instance(&read(path)?)?)
}

struct GenRequest {
    family: Family,
    n: Option<usize>,
    eps: Option<Rational>,
    s: Option<usize>,
    group: Option<usize>,
    graph: Option<PathBuf>,
    graph_name: Option<String>,
    seed: Option<u64>,
    dims: (usize, usize),
    flows: usize,
    max_den: u32,
}

fn need<T: Clone>(value: &Option<T>, flag: &str, family: Family) -> Result<T, Failure> {
    value.clone().ok_or_else(|| {
        let name = family.to_possible_value().expect("no skipped variants");
        usage(format!("family {} needs --{flag}", name.get_name()))
    })
}

fn generate(request: &GenRequest) -> Result<Vec<NamedInstance>, Failure> {
    let family = request.family;
    let n = || need(&request.n, "n", family);
    Ok(match request.family {
        Family::CrossGadget => vec![instances::cross_gadget(n()?)?],
        Family::Theorem6 => vec![instances::theorem6_instance(n()?)?],
        Family::MtWorstcase => vec![instances::mt_worstcase(
            n()?,
            &need(&request.eps, "eps", family)?,
        )?],
        Family::Figure5 => vec![instances::figure5_instance()],
        Family::Reduction => {
            let g = match (&request.graph, request.graph_name.as_deref()) {
                (Some(path), _) => {
                    SimpleGraph::parse(&read(path)?).map_err(|e| usage(e.to_string()))?
                }
                (None, Some("triangle")) => SimpleGraph::triangle(),
                (None, Some("k4")) => SimpleGraph::k4(),
                (None, Some("subdivided-k4")) => SimpleGraph::subdivided_k4(),
                (None, Some(other)) => return Err(usage(format!("unknown graph `{other}`"))),
                (None, None) => {
                    return Err(usage("family reduction needs --graph or --graph-name"))
                }
            };
            vec![instances::coloring_reduction(&g, None)?.instance]
        }
        Family::OnlineXy => {
            let seqs = instances::online_sequences(n()?)?;
            let one = Rational::one();
            vec![
                NamedInstance::new(format!("online-x-{}", seqs.n), seqs.x.flowset).with_witness(
                    "link-disjoint",
                    seqs.x_witness,
                    one.clone(),
                ),
                NamedInstance::new(format!("online-y-{}", seqs.n), seqs.y.flowset).with_witness(
                    "link-disjoint",
                    seqs.y_witness,
                    one,
                ),
            ]
        }
        Family::Supersequences => instances::supersequences(n()?, need(&request.s, "s", family)?)?,
        Family::SortedGreedyXy => {
            let (x, y) = instances::sorted_greedy_xy(
                n()?,
                need(&request.group, "group", family)?,
                &need(&request.eps, "eps", family)?,
            )?;
            vec![x, y]
        }
        Family::Random => {
            let seed = request
                .seed
                .ok_or_else(|| usage("family random needs --seed"))?;
            let dims =
                ClosDims::new(request.dims.0, request.dims.1).map_err(|e| usage(e.to_string()))?;
            let fs = instances::random_hose_instance(dims, request.flows, request.max_den, seed);
            vec![NamedInstance::new(format!("random-{seed}"), fs)]
        }
    })
}

fn file_stem(name: &str) -> String {
    name.replace('/', "_")
}

fn cmd_gen(ctx: &mut Ctx, request: &GenRequest, out: Option<&Path>) -> Result<(), Failure> {
    let generated = generate(request)?;
    let Some(dir) = out else {
        for inst in &generated {
            let text = write_instance(&inst.flowset);
            ctx.emit(&text, json!({"name": inst.name, "instance": text}))?;
        }
        return Ok(());
    };
    fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    for inst in &generated {
        let stem = file_stem(&inst.name);
        let digest = instance_digest(&inst.flowset);
        let path = dir.join(format!("{stem}.inst"));
        write_file(&path, &write_instance(&inst.flowset))?;
        let mut written = vec![path.display().to_string()];
        for (wname, w) in &inst.witnesses {
            let file = RoutingFile::new(Some(digest.clone()), &w.routing)
                .with_expected(w.congestion.clone());
            let path = dir.join(format!("{stem}.{wname}.route"));
            write_file(&path, &write_routing(&file))?;
            written.push(path.display().to_string());
        }
        let text = written
            .iter()
            .map(|p| format!("wrote {p}\n"))
            .collect::<String>();
        ctx.emit(
            &text,
            json!({"name": inst.name, "digest": digest, "files": written}),
        )?;
    }
    Ok(())
}

fn run_algorithm(
    fs: &FlowSet,
    algorithm: Algorithm,
    cfg: &AlgorithmConfig,
    seed: Option<u64>,
) -> Result<Routing, Failure> {
    Ok(match algorithm {
        Algorithm::TwoPhase => route_two_phase(fs, cfg)?,
        Algorithm::SortedGreedy => sorted_greedy(fs),
        Algorithm::UnsortedGreedy => unsorted_greedy(fs, &fs.ids().collect::<Vec<_>>())?,
        Algorithm::Ecmp => ecmp(fs, seed.ok_or_else(|| usage("ecmp needs --seed"))?),
        Algorithm::MelenTurner => melen_turner(fs, None)?,
    })
}

fn link_table(report: &CongestionReport) -> (String, Value) {
    let mut text = String::new();
    let mut rows = Vec::new();
    for (link, load) in report.loads().links().filter(|(_, l)| !l.is_zero()) {
        let _ = writeln!(text, "  {link} {load}");
        rows.push(json!([link.to_string(), load]));
    }
    (text, Value::Array(rows))
}

fn cmd_route(
    ctx: &mut Ctx,
    path: &Path,
    algorithm: Algorithm,
    cfg: AlgorithmConfig,
    seed: Option<u64>,
    budget: Option<u64>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let fs = load_instance(path)?;
    validate_flowset(&fs).map_err(|e| violation(format!("invalid instance: {e}")))?;
    let start = Instant::now();
    let routing = run_algorithm(&fs, algorithm, &cfg, seed)?;
    let wall = start.elapsed().as_secs_f64() * 1000.0;
    let report = congestion(&fs, &routing).expect("algorithms return total routings");
    let digest = instance_digest(&fs);

    let config = match algorithm {
        Algorithm::TwoPhase => format!("p={} q={}", cfg.p, cfg.q),
        Algorithm::Ecmp => format!("seed={}", seed.unwrap_or_default()),
        _ => String::new(),
    };
    let mut text = format!(
        "instance {digest}\nalgorithm {} {config}\ncongestion {}\n",
        algorithm.name(),
        report.max_congestion()
    );
    let mut record = json!({
        "command": "route",
        "instance": digest,
        "algorithm": algorithm.name(),
        "config": config,
        "congestion": report.max_congestion(),
    });
    if let Some(budget) = budget {
        match exact_opt(&fs, budget) {
            Ok(res) => {
                let _ = writeln!(text, "opt {}", res.opt);
                record["opt"] = json!(res.opt);
                if res.opt.is_positive() {
                    let ratio = report.max_congestion() / &res.opt;
                    let _ = writeln!(text, "ratio {ratio}");
                    record["ratio"] = json!(ratio);
                }
            }
            Err(e) => {
                let _ = writeln!(text, "opt unknown ({e})");
                record["opt"] = Value::Null;
            }
        }
    }
    let (links, rows) = link_table(&report);
    let _ = write!(text, "links:\n{links}time_ms {wall:.3}\n");
    record["links"] = rows;
    record["time_ms"] = json!(wall);
    if let Some(out) = out {
        let file = RoutingFile::new(Some(digest), &routing);
        write_file(out, &write_routing(&file))?;
    }
    ctx.emit(&text, record)
}

fn cmd_opt(ctx: &mut Ctx, path: &Path, budget: u64, out: Option<&Path>) -> Result<(), Failure> {
    let fs = load_instance(path)?;
    let digest = instance_digest(&fs);
    match exact_opt(&fs, budget) {
        Ok(res) => {
            if let Some(out) = out {
                let file = RoutingFile::new(Some(digest.clone()), &res.witness)
                    .with_expected(res.opt.clone());
                write_file(out, &write_routing(&file))?;
            }
            let text = format!(
                "instance {digest}\nopt {}\nlower_bound {}\nnodes {}\n",
                res.opt,
                crate::congestion::lower_bound(&fs),
                res.nodes_explored
            );
            ctx.emit(
                &text,
                json!({"command": "opt", "instance": digest, "opt": res.opt,
                       "lower_bound": crate::congestion::lower_bound(&fs), "nodes": res.nodes_explored}),
            )
        }
        Err(OracleError::BudgetExceeded {
            budget, incumbent, ..
        }) => {
            let text = format!("instance {digest}\nbudget {budget} exceeded\nbest {incumbent}\n");
            ctx.emit(
                &text,
                json!({"command": "opt", "instance": digest, "budget_exceeded": budget, "best": incumbent}),
            )?;
            Err(violation(format!(
                "oracle budget of {budget} nodes exceeded"
            )))
        }
    }
}

fn cmd_verify(ctx: &mut Ctx, instance: &Path, routing: &Path) -> Result<(), Failure> {
    let fs = load_instance(instance)?;
    let file = parse_routing(&read(routing)?)?;
    let r = file.to_routing(fs.len())?;
    let report = congestion(&fs, &r).map_err(|e| violation(e.to_string()))?;
    let disjoint = is_link_disjoint(&fs, &r).expect("routing already checked");
    let digest = instance_digest(&fs);
    let mut problems = Vec::new();
    if let Some(id) = &file.instance {
        if *id != digest {
            problems.push(format!(
                "routing names instance {id}, but this instance is {digest}"
            ));
        }
    }
    if let Some(expected) = &file.expected_congestion {
        if expected != report.max_congestion() {
            problems.push(format!(
                "expected congestion {expected}, recomputed {}",
                report.max_congestion()
            ));
        }
    }
    if let Err(e) = validate_flowset(&fs) {
        problems.push(format!("instance violates the hose model: {e}"));
    }
    let mut text = format!(
        "instance {digest}\ncongestion {}\nlink_disjoint {disjoint}\n",
        report.max_congestion()
    );
    for p in &problems {
        let _ = writeln!(text, "MISMATCH {p}");
    }
    let (links, rows) = link_table(&report);
    let _ = write!(text, "links:\n{links}");
    ctx.emit(
        &text,
        json!({"command": "verify", "instance": digest, "congestion": report.max_congestion(),
               "link_disjoint": disjoint, "problems": problems, "links": rows}),
    )?;
    if problems.is_empty() {
        Ok(())
    } else {
        Err(violation(problems.join("; ")))
    }
}

fn flows_json(fs: &FlowSet) -> Value {
    fs.flows()
        .iter()
        .map(|f| json!([f.id.0, f.input, f.source, f.output, f.dest, f.demand]))
        .collect()
}

fn outcome_report(name: &str, out: &AdversaryOutcome) -> (String, Value) {
    let choices: String = out
        .choices
        .iter()
        .map(|&y| if y { 'Y' } else { 'X' })
        .collect();
    let mut text = format!(
        "router {name}\nchoices {choices}\ncongestion {}\nwitness_congestion {}\nsequence:\n",
        out.final_congestion, out.opt_witness_congestion
    );
    for line in write_instance(&out.chosen_sequence.flowset).lines() {
        let _ = writeln!(text, "  {line}");
    }
    let _ = writeln!(
        text,
        "routing {}",
        out.routing
            .as_slice()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    let record = json!({
        "command": "adversary",
        "router": name,
        "choices": choices,
        "congestion": out.final_congestion,
        "witness_congestion": out.opt_witness_congestion,
        "sequence": flows_json(&out.chosen_sequence.flowset),
        "routing": out.routing.as_slice(),
    });
    (text, record)
}

fn family_report(name: &str, mode: &str, rep: &FamilyReport) -> (String, Value) {
    let text = format!(
        "router {name}\nmode {mode}\nruns {}\nlink_disjoint {}\nmean_congestion {}\n",
        rep.congestions.len(),
        rep.link_disjoint,
        rep.mean
    );
    let record = json!({
        "command": "adversary", "router": name, "mode": mode,
        "runs": rep.congestions.len(), "link_disjoint": rep.link_disjoint,
        "mean_congestion": rep.mean, "congestions": rep.congestions,
    });
    (text, record)
}

fn cmd_adversary(
    ctx: &mut Ctx,
    router: &str,
    n: usize,
    mode: AdversaryMode,
    s: usize,
    seed: Option<u64>,
    trials: usize,
) -> Result<(), Failure> {
    if !ROUTER_NAMES.contains(&router) && router != "greedy" {
        return Err(usage(format!(
            "unknown router `{router}`; expected one of {}",
            ROUTER_NAMES.join(", ")
        )));
    }
    let randomized = router == "ecmp" || mode == AdversaryMode::Random;
    let seed = match (seed, randomized) {
        (Some(s), _) => s,
        (None, false) => 0,
        (None, true) => return Err(usage("ecmp and random mode need --seed")),
    };
    let make = |seed: u64| -> Box<dyn OnlineRouter> {
        router_by_name(router, seed).expect("name checked")
    };
    let online = |e: crate::online::OnlineError| usage(e.to_string());
    let (text, record) = match mode {
        AdversaryMode::Xy | AdversaryMode::Super => {
            let blocks = if mode == AdversaryMode::Xy { 1 } else { s };
            let mut r = make(seed);
            let out = adversary_super(r.as_mut(), n, blocks).map_err(online)?;
            outcome_report(router, &out)
        }
        AdversaryMode::Exhaustive => {
            let rep = exhaustive_supersequences(|| make(seed), n, s).map_err(online)?;
            family_report(router, "exhaustive", &rep)
        }
        AdversaryMode::Random => {
            let rep = randomized_experiment(make, n, s, trials, seed).map_err(online)?;
            family_report(router, "random", &rep)
        }
    };
    ctx.emit(&text, record)
}

#[derive(Default)]
struct BenchRow {
    runs: usize,
    max_congestion: Rational,
    total: Rational,
    max_ratio: Option<Rational>,
}

fn cmd_bench(
    ctx: &mut Ctx,
    corpus: &[FlowSet],
    algorithms: &[Algorithm],
    seed: u64,
    budget: u64,
) -> Result<(), Failure> {
    let mut rows: Vec<BenchRow> = algorithms.iter().map(|_| BenchRow::default()).collect();
    let mut skipped = 0usize;
    let cfg = AlgorithmConfig::default();
    for (k, fs) in corpus.iter().enumerate() {
        let opt = match exact_opt(fs, budget) {
            Ok(res) => Some(res.opt),
            Err(_) => {
                skipped += 1;
                None
            }
        };
        for (row, &alg) in rows.iter_mut().zip(algorithms) {
            let r = run_algorithm(fs, alg, &cfg, Some(seed.wrapping_add(k as u64)))?;
            let c = congestion(fs, &r)
                .expect("total routing")
                .max_congestion()
                .clone();
            row.runs += 1;
            row.total += &c;
            if c > row.max_congestion {
                row.max_congestion = c.clone();
            }
            if let Some(opt) = opt.as_ref().filter(|o| o.is_positive()) {
                let ratio = &c / opt;
                if row.max_ratio.as_ref().is_none_or(|m| ratio > *m) {
                    row.max_ratio = Some(ratio);
                }
            }
        }
    }
    let mut text = format!("instances {}\noracle_skipped {skipped}\n", corpus.len());
    let _ = writeln!(
        text,
        "{:<16} {:>14} {:>14} {:>14}",
        "algorithm", "max", "mean", "max_ratio"
    );
    for (row, alg) in rows.iter().zip(algorithms) {
        let mean = if row.runs == 0 {
            Rational::zero()
        } else {
            &row.total / &Rational::from_integer(row.runs as i64)
        };
        let ratio = row
            .max_ratio
            .as_ref()
            .map_or("-".to_string(), Rational::to_string);
        let _ = writeln!(
            text,
            "{:<16} {:>14} {:>14} {:>14}",
            alg.name(),
            row.max_congestion.to_string(),
            mean.to_string(),
            ratio
        );
        let record = json!({
            "command": "bench", "algorithm": alg.name(), "instances": row.runs,
            "max_congestion": row.max_congestion, "mean_congestion": mean,
            "max_ratio": row.max_ratio, "oracle_skipped": skipped,
        });
        if ctx.format == OutputFormat::Json {
            ctx.emit("", record)?;
        }
    }
    if ctx.format == OutputFormat::Text {
        ctx.emit(&text, Value::Null)?;
    }
    Ok(())
}
