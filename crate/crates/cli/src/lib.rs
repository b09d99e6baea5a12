//! The `safezone` command line: validate, solve, generate and export-lp.
//!
//! Exit codes: 0 for success (and a "yes" decision), 1 for a "no"
//! decision, 2 for any error.

pub mod document;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use safezone::ilp::{build_cld_ip, build_dap_ip, build_eap_ip, export_lp_annotated, Formulation};
use safezone::reductions::parse_edge_list;
use safezone::{
    classify_domain, cld_exact, cld_fpt, cld_radical, dap_exact, dap_fpt, dap_radical, eap_exact, eap_fpt, eap_radical,
    gen_random, reduce_vc2pc_to_dap, reduce_vc2pc_to_eap, reduce_vccg_to_cld, safe_zone, to_2path_colored, DomainClass,
    Problem, RandomParams, Reduction, SolveResult, TwoPathColoredGraph, VotingInstance, Witness,
};

pub use document::{AgentEntry, InstanceDocument, Metadata};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("JSON line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error(transparent)]
    Core(#[from] safezone::Error),
    #[error("{0}")]
    Usage(String),
}

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "safezone", version, about = "Majority voting with uncertain agents: safe zones and interventions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an instance file and report its safe zone.
    Validate { file: PathBuf },
    /// Solve an intervention problem on an instance file.
    Solve {
        problem: ProblemArg,
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Intervention budget (eap and dap only).
        #[arg(long)]
        budget: Option<usize>,
        /// Proposals that must be guaranteed correct; defaults to all of them.
        #[arg(long)]
        lambda: Option<usize>,
        /// Largest proposal count for which `auto` uses the type program.
        #[arg(long, default_value_t = 12)]
        fpt_cap: usize,
    },
    /// Write a generated instance.
    Generate {
        kind: GenerateKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value = "general")]
        domain: DomainArg,
        #[arg(long, default_value_t = 0.3)]
        uncertainty: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge-list graph for the reductions.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Vertex-cover size for the reductions.
        #[arg(long)]
        kappa: Option<usize>,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the integer program of a problem in LP format.
    ExportLp {
        problem: ProblemArg,
        file: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Eap,
    Dap,
    Cld,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Eap => Problem::Eap,
            ProblemArg::Dap => Problem::Dap,
            ProblemArg::Cld => Problem::Cld,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    #[value(name = "fpt-m")]
    FptM,
    Radical,
    Auto,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::FptM => "fpt-m",
            Method::Radical => "radical",
            Method::Auto => "auto",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    General,
    #[value(name = "one-dimensional")]
    OneDimensional,
    Radical,
}

impl From<DomainArg> for DomainClass {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::General => DomainClass::General,
            DomainArg::OneDimensional => DomainClass::OneDimensional,
            DomainArg::Radical => DomainClass::RadicalOneDimensional,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    Random,
    EapReduction,
    DapReduction,
    CldReduction,
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self { code, stdout, stderr: String::new() }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_ERROR, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(EXIT_YES, text)
            };
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome { code: EXIT_ERROR, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { file } => validate(&load_instance(file)?),
        Command::Solve { problem, file, method, budget, lambda, fpt_cap } => {
            let instance = load_instance(file)?;
            solve(&instance, (*problem).into(), *method, *budget, *lambda, *fpt_cap)
        }
        Command::Generate { kind, n, m, domain, uncertainty, seed, graph, kappa, out } => {
            let doc = match kind {
                GenerateKind::Random => {
                    let need = |v: Option<usize>, flag: &str| {
                        v.ok_or_else(|| CliError::Usage(format!("random needs --{flag}")))
                    };
                    let params = RandomParams {
                        n: need(*n, "n")?,
                        m: need(*m, "m")?,
                        domain: (*domain).into(),
                        uncertainty: *uncertainty,
                        seed: *seed,
                    };
                    let instance = gen_random(&params)?;
                    let metadata = Metadata { certificate: None, domain: Some(classify_domain(&instance)) };
                    InstanceDocument::from_instance(&instance, Some(metadata))
                }
                reduction => {
                    let graph = graph.as_deref().ok_or_else(|| CliError::Usage("reductions need --graph".into()))?;
                    let kappa = kappa.ok_or_else(|| CliError::Usage("reductions need --kappa".into()))?;
                    reduction_document(&generate_reduction(*reduction, graph, kappa)?)
                }
            };
            write_output(out.as_deref(), &doc.to_canonical_json())
        }
        Command::ExportLp { problem, file, budget, out } => {
            let instance = load_instance(file)?;
            write_output(out.as_deref(), &lp_text(&instance, (*problem).into(), *budget)?)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn load_instance(path: &Path) -> Result<VotingInstance, CliError> {
    InstanceDocument::parse(&read(path)?)?.to_instance()
}

fn write_output(out: Option<&Path>, text: &str) -> Result<Outcome, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
            Ok(Outcome::ok(EXIT_YES, String::new()))
        }
        None => Ok(Outcome::ok(EXIT_YES, text.to_string())),
    }
}

fn proposal_names(set: impl IntoIterator<Item = usize>) -> String {
    let names: Vec<String> = set.into_iter().map(|p| format!("p{}", p + 1)).collect();
    format!("{{{}}}", names.join(", "))
}

fn agent_names(agents: &[usize]) -> String {
    let names: Vec<String> = agents.iter().map(|a| format!("a{}", a + 1)).collect();
    format!("{{{}}}", names.join(", "))
}

pub fn validate(instance: &VotingInstance) -> Result<Outcome, CliError> {
    let mut out = String::new();
    let _ = writeln!(out, "n: {}", instance.n());
    let _ = writeln!(out, "m: {}", instance.m());
    let _ = writeln!(out, "domain: {}", classify_domain(instance));
    let _ = writeln!(out, "safe zone: {}", proposal_names(safe_zone(instance).iter()));
    let _ = writeln!(out, "proposal  corr   poss   safe");
    for (p, t) in instance.tallies().iter().enumerate() {
        let (c, q) = (t.correct(), t.possible());
        let safe = if c == q { "yes" } else { "no" };
        let _ = writeln!(out, "{:<9} {:<6} {:<6} {safe}", format!("p{}", p + 1), c.to_string(), q.to_string());
    }
    Ok(Outcome::ok(EXIT_YES, out))
}

fn chosen_method(instance: &VotingInstance, method: Method, fpt_cap: usize) -> Method {
    match method {
        Method::Auto if instance.n() % 2 == 1 && classify_domain(instance) == DomainClass::RadicalOneDimensional => {
            Method::Radical
        }
        Method::Auto if instance.m() <= fpt_cap => Method::FptM,
        Method::Auto => Method::Exact,
        other => other,
    }
}

pub fn solve(
    instance: &VotingInstance,
    problem: Problem,
    method: Method,
    budget: Option<usize>,
    lambda: Option<usize>,
    fpt_cap: usize,
) -> Result<Outcome, CliError> {
    let budget = match (problem, budget) {
        (Problem::Cld, Some(_)) => return Err(CliError::Usage("cld takes no --budget".into())),
        (Problem::Cld, None) => 0,
        (_, Some(b)) => b,
        (_, None) => return Err(CliError::Usage(format!("{problem} needs --budget"))),
    };
    let lambda = lambda.unwrap_or(instance.m());
    let used = chosen_method(instance, method, fpt_cap);
    let result: SolveResult = match (used, problem) {
        (Method::Exact, Problem::Eap) => eap_exact(instance, budget),
        (Method::Exact, Problem::Dap) => dap_exact(instance, budget),
        (Method::Exact, Problem::Cld) => cld_exact(instance),
        (Method::FptM, Problem::Eap) => eap_fpt(instance, budget)?,
        (Method::FptM, Problem::Dap) => dap_fpt(instance, budget)?,
        (Method::FptM, Problem::Cld) => cld_fpt(instance)?,
        (Method::Radical, Problem::Eap) => eap_radical(instance, budget)?,
        (Method::Radical, Problem::Dap) => dap_radical(instance, budget)?,
        (Method::Radical, Problem::Cld) => cld_radical(instance)?,
        (Method::Auto, _) => unreachable!("auto resolves to a concrete method"),
    };
    let yes = result.best_value >= lambda;

    let mut out = String::new();
    let _ = writeln!(out, "problem: {problem}");
    if method == Method::Auto {
        let _ = writeln!(out, "method: auto ({})", used.name());
    } else {
        let _ = writeln!(out, "method: {}", used.name());
    }
    if problem != Problem::Cld {
        let _ = writeln!(out, "budget: {budget}");
    }
    let _ = writeln!(out, "best value: {}", result.best_value);
    let _ = writeln!(out, "witness: {}", describe_witness(&result.witness));
    let _ = writeln!(out, "lambda: {lambda}");
    let _ = writeln!(out, "decision: {}", if yes { "yes" } else { "no" });
    Ok(Outcome::ok(if yes { EXIT_YES } else { EXIT_NO }, out))
}

fn describe_witness(witness: &Witness) -> String {
    match witness {
        Witness::Educate(agents) => format!("educate {}", agent_names(agents)),
        Witness::Remove(agents) => format!("remove {}", agent_names(agents)),
        Witness::Delegate(graph) => {
            let arcs: Vec<String> = graph.arcs().map(|(i, j)| format!("a{} -> a{}", i + 1, j + 1)).collect();
            format!("delegate {{{}}}", arcs.join(", "))
        }
    }
}

/// Edge-list graph with parts is used as given; without parts, it must be
/// cubic and is first turned into a two-path-colored graph, which doubles
/// the cover size and adds twice the edge count to it.
fn generate_reduction(kind: GenerateKind, graph: &Path, kappa: usize) -> Result<Reduction, CliError> {
    let (g, parts) = parse_edge_list(&read(graph)?)?;
    if kind == GenerateKind::CldReduction {
        if parts.is_some() {
            return Err(CliError::Usage("cld-reduction takes a plain cubic edge list".into()));
        }
        return Ok(reduce_vccg_to_cld(&g, kappa)?);
    }
    let (g2, kappa) = match parts {
        Some(parts) => (TwoPathColoredGraph::new(g, parts)?, kappa),
        None => to_2path_colored(&g, kappa)?,
    };
    Ok(match kind {
        GenerateKind::EapReduction => reduce_vc2pc_to_eap(&g2, kappa),
        GenerateKind::DapReduction => reduce_vc2pc_to_dap(&g2, kappa)?,
        _ => unreachable!("handled above"),
    })
}

fn reduction_document(r: &Reduction) -> InstanceDocument {
    let metadata = Metadata { certificate: Some(r.certificate.clone()), domain: Some(classify_domain(&r.instance)) };
    InstanceDocument::from_instance(&r.instance, Some(metadata))
}

pub fn formulation(
    instance: &VotingInstance,
    problem: Problem,
    budget: Option<usize>,
) -> Result<Formulation, CliError> {
    let need = || budget.ok_or_else(|| CliError::Usage(format!("{problem} needs --budget")));
    Ok(match problem {
        Problem::Eap => build_eap_ip(instance, need()?),
        Problem::Dap => build_dap_ip(instance, need()?),
        Problem::Cld if budget.is_some() => return Err(CliError::Usage("cld takes no --budget".into())),
        Problem::Cld => build_cld_ip(instance),
    })
}

pub fn lp_text(instance: &VotingInstance, problem: Problem, budget: Option<usize>) -> Result<String, CliError> {
    let f = formulation(instance, problem, budget)?;
    let mut header = vec![match budget {
        Some(b) => format!("{problem} program, budget {b}"),
        None => format!("{problem} program"),
    }];
    header.push(format!("offset {}", f.offset));
    Ok(export_lp_annotated(&f.program, &header))
}
