//! Argument parsing and dispatch for the `freelike` binary.
//!
//! Every subcommand produces a JSON value `{ "config": ..., "report": ... }`;
//! the text format is a rendering of the same report. The worker count is not
//! part of the config because it cannot change any output.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use freelike::cayley::{self, CandidateFamily, GraphFormat};
use freelike::finitegrp::{FiniteGroup, Verdict};
use freelike::freewords::parse_word_list;
use freelike::groupcert::{self, EvidenceConfig, ScanBudget};
use freelike::percolation;
use freelike::smallcancel::{default_coefficients, make_family, one_sixth, parse_lambda, CPrimeOutcome};
use freelike::{Error, GeneratingSet, GroupOracle, PercGraph, Presentation, Word};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Parser, Debug)]
#[command(name = "freelike", version, about = "Evidence for k-free-like groups: small cancellation, girth, Cheeger bounds, percolation")]
pub struct Cli {
    /// Worker threads for scans and percolation (0 = all cores). Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    /// Output format; the default depends on the subcommand.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Write the relator family a b^{c1 j} a b^{c2 j} ... as a presentation file.
    FamilyGen(FamilyGenArgs),
    /// Check shift-closure, C'(λ), forbidden prefixes and minimum length.
    CheckSc(CheckScArgs),
    /// Decide whether a word is trivial with Dehn's algorithm.
    Wp(WpArgs),
    /// Certify that no short relation holds among a generating set.
    Girth(GirthArgs),
    /// Girth, free-subgroup and Cheeger evidence for X_n(k).
    FreelikeReport(ReportArgs),
    /// Build an almost identity from all words of bounded length.
    AlmostId(AlmostIdArgs),
    /// Mod-n girth witness for a tuple of words over {a, b}.
    Witness(WitnessArgs),
    /// Build a Cayley ball and summarise or export it.
    Ball(BallArgs),
    /// Upper-bound the Cheeger constant over candidate sets in a ball.
    Cheeger(CheegerArgs),
    /// Monte Carlo root-to-target crossing probability on a graph file.
    Percolate(PercolateArgs),
    /// Estimate the p at which crossing probability reaches the target.
    PcEstimate(PcEstimateArgs),
    /// Compare thresholds on a quotient ball and the free-group ball.
    PcCompare(PcCompareArgs),
    /// Check a word for being an (almost) identity of a finite group.
    FiniteVerify(FiniteVerifyArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct FamilyGenArgs {
    /// Values of j, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub j: Vec<u32>,
    /// Even, increasing coefficients c_1, ..., c_B (default 2,4,...,100).
    #[arg(long, value_delimiter = ',')]
    pub coeffs: Option<Vec<u32>>,
    /// Write the presentation here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct CheckScArgs {
    /// Presentation file.
    #[arg(long, alias = "presentation")]
    pub file: PathBuf,
    /// Small-cancellation parameter, e.g. 1/6 or 0.25.
    #[arg(long, default_value = "1/6")]
    pub lambda: String,
}

#[derive(Args, Debug, Serialize)]
pub struct WpArgs {
    #[arg(long, alias = "presentation")]
    pub file: PathBuf,
    /// The word to test.
    #[arg(long)]
    pub word: String,
    /// Compare `word` with this word instead of with the identity.
    #[arg(long)]
    pub equal_to: Option<String>,
    /// Record every Dehn step.
    #[arg(long)]
    pub trace: bool,
}

/// The group and generating set: a presentation file (Dehn oracle) or a free group.
#[derive(Args, Debug, Serialize)]
pub struct GroupArgs {
    /// Presentation file; without it the group is free.
    #[arg(long, alias = "presentation")]
    pub file: Option<PathBuf>,
    /// Rank of the free group when no presentation is given.
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Generating words, comma separated (default: the free basis).
    #[arg(long)]
    pub gens: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct GirthArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub group: GroupArgs,
    /// Longest relation length to scan.
    #[arg(long)]
    pub max_len: usize,
    /// Maximum number of words examined.
    #[arg(long, default_value_t = ScanBudget::default().max_words)]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct ReportArgs {
    #[arg(long)]
    pub k: usize,
    /// Must be 2 mod 4.
    #[arg(long)]
    pub n: u64,
    /// Girth scan length (default n).
    #[arg(long)]
    pub scan: Option<usize>,
    /// Radius of the ball used for the Cheeger bound.
    #[arg(long, default_value_t = 4)]
    pub ball: usize,
    /// Scan length for the pair (x1^4, x2).
    #[arg(long, default_value_t = 8)]
    pub free_len: usize,
    /// j values of the relator family.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub j: Vec<u32>,
    #[arg(long, default_value_t = 2_000_000)]
    pub ball_budget: usize,
    #[arg(long, default_value_t = ScanBudget::default().max_words)]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct AlmostIdArgs {
    #[arg(long)]
    pub k: usize,
    /// All nonempty reduced words up to this length are used.
    #[arg(long)]
    pub max_word_len: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct WitnessArgs {
    #[arg(long)]
    pub n: u64,
    /// Words over {a, b}, comma separated.
    #[arg(long)]
    pub tuple: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExportFormat {
    Adjacency,
    Dot,
}

#[derive(Args, Debug, Serialize)]
pub struct BallArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub radius: usize,
    /// Maximum number of vertices.
    #[arg(long, default_value_t = 2_000_000)]
    pub budget: usize,
    /// Print the graph in this format instead of a summary.
    #[arg(long, value_enum)]
    pub export: Option<ExportFormat>,
    /// Write the exported graph to a file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    SubBalls,
    Random,
}

#[derive(Args, Debug, Serialize)]
pub struct CheegerArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub radius: usize,
    #[arg(long, value_enum, default_value = "sub-balls")]
    pub family: FamilyKind,
    /// Number of random connected sets.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Size of each random connected set.
    #[arg(long, default_value_t = 50)]
    pub size: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 2_000_000)]
    pub budget: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct PercolateArgs {
    /// Adjacency file with `root:` and `target:` headers.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct PcEstimateArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 4000)]
    pub trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Crossing probability defining the threshold.
    #[arg(long, default_value_t = 0.5)]
    pub target: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct PcCompareArgs {
    #[arg(long, alias = "presentation")]
    pub file: PathBuf,
    /// Generating words (default: the free basis).
    #[arg(long)]
    pub gens: Option<String>,
    #[arg(long)]
    pub radius: usize,
    #[arg(long, default_value_t = 2000)]
    pub trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 2_000_000)]
    pub budget: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct FiniteVerifyArgs {
    /// Built-in group: Q8, S3, D4, Zn(n), Zn×Zn(n), Z5xZ5, ...
    #[arg(long, required_unless_present = "group_file")]
    pub group: Option<String>,
    /// Group table file.
    #[arg(long, conflicts_with = "group")]
    pub group_file: Option<PathBuf>,
    /// Word in x1..xk.
    #[arg(long)]
    pub word: String,
    #[arg(long)]
    pub k: usize,
    /// Maximum number of tuples (order^k).
    #[arg(long, default_value_t = freelike::finitegrp::DEFAULT_TUPLE_BUDGET)]
    pub budget: u64,
}

/// Why a run did not succeed, with the exit status it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, unreadable or malformed input: status 2.
    Usage(String),
    /// A verification did not go through: status 1.
    Failure(String),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) | Error::Unverified => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Standard output and exit status of a completed run.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub status: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Parses and verifies at λ = 1/6; a violation is a verification failure.
fn load_presentation(path: &Path) -> Result<Arc<Presentation>, CliError> {
    let p = Presentation::parse(&read(path)?)?;
    p.verified(one_sixth()).map(Arc::new).map_err(|e| CliError::Failure(e.to_string()))
}

fn load_group(args: &GroupArgs) -> Result<(GroupOracle, GeneratingSet), CliError> {
    let oracle = match &args.file {
        Some(path) => GroupOracle::small_cancellation(load_presentation(path)?)?,
        None => GroupOracle::free(args.rank)?,
    };
    let gens = match &args.gens {
        Some(text) => GeneratingSet::new(parse_word_list(text, oracle.rank())?, text.trim())?,
        None => GeneratingSet::standard(oracle.rank())?,
    };
    Ok((oracle, gens))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

struct Report {
    value: Value,
    text: Option<String>,
    default: Format,
    status: i32,
}

impl Report {
    fn json(value: Value) -> Report {
        Report {
            value,
            text: None,
            default: Format::Json,
            status: 0,
        }
    }

    fn text(value: Value, text: String) -> Report {
        Report {
            value,
            text: Some(text),
            default: Format::Text,
            status: 0,
        }
    }

    fn with_status(mut self, status: i32) -> Report {
        self.status = status;
        self
    }
}

/// Renders a JSON value as indented `key: value` lines.
fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

/// Runs one parsed command line (inside whatever thread pool is current).
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let report = dispatch(&cli.command)?;
    let format = cli.format.unwrap_or(report.default);
    let stdout = match format {
        Format::Json => {
            let doc = json!({ "config": to_value(&cli.command), "report": report.value });
            let mut s = serde_json::to_string_pretty(&doc).expect("json");
            s.push('\n');
            s
        }
        Format::Text => match report.text {
            Some(t) => t,
            None => {
                let mut s = String::new();
                render_text(&report.value, 0, &mut s);
                s
            }
        },
    };
    Ok(Outcome {
        stdout,
        status: report.status,
    })
}

/// Parses `args`, runs with the requested worker count, and returns the exit
/// status together with standard output and standard error.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = e.exit_code();
            let rendered = e.render().to_string();
            return if status == 0 {
                (0, rendered, String::new())
            } else {
                (status, String::new(), rendered)
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(pool) => pool,
        Err(e) => return (2, String::new(), format!("error: cannot start workers: {e}\n")),
    };
    match pool.install(|| run(&cli)) {
        Ok(out) => (out.status, out.stdout, String::new()),
        Err(e) => (e.status(), String::new(), format!("error: {}\n", e.message())),
    }
}

fn dispatch(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::FamilyGen(a) => family_gen(a),
        Command::CheckSc(a) => check_sc(a),
        Command::Wp(a) => wp(a),
        Command::Girth(a) => girth(a),
        Command::FreelikeReport(a) => freelike_report(a),
        Command::AlmostId(a) => almost_id(a),
        Command::Witness(a) => witness(a),
        Command::Ball(a) => ball(a),
        Command::Cheeger(a) => cheeger(a),
        Command::Percolate(a) => percolate(a),
        Command::PcEstimate(a) => pc_estimate(a),
        Command::PcCompare(a) => pc_compare(a),
        Command::FiniteVerify(a) => finite_verify(a),
    }
}

fn family_gen(a: &FamilyGenArgs) -> Result<Report, CliError> {
    let coeffs = a.coeffs.clone().unwrap_or_else(default_coefficients);
    let relators = make_family(&a.j, &coeffs)?;
    let text = Presentation::new(2, relators.clone())?.to_text();
    let lengths: Vec<usize> = relators.iter().map(Word::len).collect();
    let value = json!({ "relators": relators.len(), "lengths": lengths });
    match &a.out {
        Some(path) => {
            write(path, &text)?;
            Ok(Report::json(value))
        }
        None => Ok(Report::text(value, text)),
    }
}

fn check_sc(a: &CheckScArgs) -> Result<Report, CliError> {
    let lambda = parse_lambda(&a.lambda)?;
    let p = Presentation::parse(&read(&a.file)?)?;
    let conditions = p.check_family_conditions();
    let at_lambda = p.check_c_prime(lambda)?;
    let ok = conditions.all_ok() && at_lambda == CPrimeOutcome::Holds;
    let value = json!({
        "lambda": lambda.to_string(),
        "relators": p.base_relators().len(),
        "symmetrized_size": p.symmetrized_len(),
        "c_prime_at_lambda": to_value(&at_lambda),
        "conditions": to_value(&conditions),
        "all_ok": ok,
    });
    Ok(Report::json(value).with_status(if ok { 0 } else { 1 }))
}

fn wp(a: &WpArgs) -> Result<Report, CliError> {
    let p = load_presentation(&a.file)?;
    let u = Word::parse(&a.word, p.rank())?;
    let w = match &a.equal_to {
        Some(v) => u.concat(&Word::parse(v, p.rank())?.inverse())?,
        None => u.clone(),
    };
    let run = p.dehn_run(&w, a.trace)?;
    Ok(Report::json(json!({ "word": u, "tested": w, "trivial": run.trivial, "run": to_value(&run) })))
}

fn girth(a: &GirthArgs) -> Result<Report, CliError> {
    let (oracle, gens) = load_group(&a.group)?;
    let cert = groupcert::girth_scan(&oracle, &gens, a.max_len, ScanBudget { max_words: a.budget })?;
    let mut value = to_value(&cert);
    value["girth_lower_bound"] = json!(cert.girth_lower_bound());
    Ok(Report::json(value))
}

fn freelike_report(a: &ReportArgs) -> Result<Report, CliError> {
    let mut config = EvidenceConfig::new(a.k, a.n);
    config.j_values = a.j.clone();
    config.scan_len = a.scan.unwrap_or(a.n as usize);
    config.free_subgroup_len = a.free_len;
    config.ball_radius = a.ball;
    config.ball_budget = a.ball_budget;
    config.scan_budget = ScanBudget { max_words: a.budget };
    let evidence = groupcert::freelike_evidence(&config)?;
    Ok(Report::json(to_value(&evidence)))
}

fn almost_id(a: &AlmostIdArgs) -> Result<Report, CliError> {
    let u = groupcert::almost_identity_for_girth_bound(a.k, a.max_word_len)?;
    let text = format!("{u}\n");
    Ok(Report::text(json!({ "word": u, "length": u.len() }), text))
}

fn witness(a: &WitnessArgs) -> Result<Report, CliError> {
    let tuple = parse_word_list(&a.tuple, 2)?;
    Ok(Report::json(to_value(&groupcert::girth_witness_mod_n(&tuple, a.n)?)))
}

fn layer_sizes(ball: &freelike::CayleyBall) -> Vec<usize> {
    (0..=ball.radius()).map(|s| ball.sphere(s).len()).collect()
}

fn ball(a: &BallArgs) -> Result<Report, CliError> {
    let (oracle, gens) = load_group(&a.group)?;
    let ball = cayley::build_ball(&oracle, &gens, a.radius, a.budget)?;
    let summary = json!({
        "generating_set": to_value(&gens),
        "radius": ball.radius(),
        "vertices": ball.vertex_count(),
        "edges": ball.edges().len(),
        "layer_sizes": layer_sizes(&ball),
    });
    let Some(format) = a.export else {
        return Ok(Report::json(summary));
    };
    let graph = cayley::export_graph(
        &ball,
        match format {
            ExportFormat::Adjacency => GraphFormat::Adjacency,
            ExportFormat::Dot => GraphFormat::Dot,
        },
    );
    match &a.out {
        Some(path) => {
            write(path, &graph)?;
            Ok(Report::json(summary))
        }
        None => Ok(Report::text(summary, graph)),
    }
}

fn cheeger(a: &CheegerArgs) -> Result<Report, CliError> {
    let (oracle, gens) = load_group(&a.group)?;
    let ball = cayley::build_ball(&oracle, &gens, a.radius, a.budget)?;
    let family = match a.family {
        FamilyKind::SubBalls => CandidateFamily::SubBalls,
        FamilyKind::Random => CandidateFamily::RandomConnected {
            count: a.count,
            size: a.size,
            seed: a.seed,
        },
    };
    let bound = cayley::cheeger_upper_bound(&ball, &family)?;
    let mut value = to_value(&bound);
    value["vertices"] = json!(ball.vertex_count());
    Ok(Report::json(value))
}

fn load_graph(path: &Path) -> Result<PercGraph, CliError> {
    let adjacency = cayley::parse_adjacency(&read(path)?)?;
    Ok(PercGraph::from_adjacency(&adjacency)?)
}

fn percolate(a: &PercolateArgs) -> Result<Report, CliError> {
    let g = load_graph(&a.graph)?;
    let point = percolation::crossing_probability(&g, a.p, a.trials, a.seed)?;
    Ok(Report::json(to_value(&point)))
}

fn pc_estimate(a: &PcEstimateArgs) -> Result<Report, CliError> {
    let g = load_graph(&a.graph)?;
    let est = percolation::threshold_estimate(&g, a.trials, a.target, a.seed)?;
    Ok(Report::json(to_value(&est)))
}

fn pc_compare(a: &PcCompareArgs) -> Result<Report, CliError> {
    let p = load_presentation(&a.file)?;
    let gens = match &a.gens {
        Some(text) => GeneratingSet::new(parse_word_list(text, p.rank())?, text.trim())?,
        None => GeneratingSet::standard(p.rank())?,
    };
    let cmp = percolation::compare_quotient_vs_tree(p, &gens, a.radius, a.trials, a.seed, a.budget)?;
    let mut value = to_value(&cmp);
    value["monotone_within_2_sigma"] = json!(cmp.monotone_within(2.0));
    Ok(Report::json(value))
}

fn finite_verify(a: &FiniteVerifyArgs) -> Result<Report, CliError> {
    let group = match (&a.group, &a.group_file) {
        (_, Some(path)) => FiniteGroup::parse(&read(path)?)?,
        (Some(name), None) => FiniteGroup::builtin(name)?,
        (None, None) => return Err(CliError::Usage("give --group or --group-file".into())),
    };
    let u = Word::parse(&a.word, a.k)?;
    let almost = group.verify_almost_identity(&u, a.k, a.budget)?;
    let identity = group.is_identity(&u, a.k, a.budget)?;
    let describe = |v: &Verdict| match v {
        Verdict::Holds => "yes".to_string(),
        Verdict::Counterexample(t) => format!("no (counterexample: {})", group.tuple_names(t)),
    };
    let text = format!("almost-identity: {}, identity: {}\n", describe(&almost), describe(&identity));
    let names = |v: &Verdict| match v {
        Verdict::Holds => Value::Null,
        Verdict::Counterexample(t) => json!(t.iter().map(|&x| group.name(x)).collect::<Vec<_>>()),
    };
    let value = json!({
        "order": group.order(),
        "word": u,
        "almost_identity": almost.holds(),
        "almost_identity_counterexample": names(&almost),
        "identity": identity.holds(),
        "identity_counterexample": names(&identity),
    });
    Ok(Report::text(value, text).with_status(if almost.holds() { 0 } else { 1 }))
}
