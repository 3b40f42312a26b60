//! The `fairext` command line.
//!
//! Exit codes: 0 YES or pass, 3 NO or fail, 2 usage or schema error,
//! 4 resource limit, 1 internal error.

pub mod bench;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fairext_core::dp::DpConfig;
use fairext_core::engine::{select_algorithm, EngineConfig};
use fairext_core::fairness::{envy_pairs, satisfies};
use fairext_core::ilp::IlpOptions;
use fairext_core::io::{
    gen_colored_graph, gen_graph, gen_random, parse_allocation, parse_colored_graph, parse_graph, parse_instance,
    serialize_allocation, serialize_instance, write_colored_graph, write_graph, GenSpec, GenVariant,
};
use fairext_core::reductions::{is_to_refae, mcq_to_efae};
use fairext_core::relaxed::{extend_to_ef1_with, Ef1Engine};
use fairext_core::{
    run_engine, verify_catalog, Answer, CounterexampleCatalog, Engine, Error, Instance, Notion, OracleBudget,
};

use crate::bench::{run_bench, BenchOptions};

pub const EXIT_YES: u8 = 0;
pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NO: u8 = 3;
pub const EXIT_LIMIT: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "fairext", version, about = "Envy-free allocation extension solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the partial allocation extends to an envy-free one.
    Solve(SolveArgs),
    /// Check a complete allocation against a fairness notion.
    Check(CheckArgs),
    /// Extend an envy-free partial allocation to an EF1 allocation.
    #[command(name = "extend-ef1")]
    ExtendEf1(ExtendArgs),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run engines over a directory of instances and report CSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    file: PathBuf,
    /// `auto` or an engine name.
    #[arg(long, default_value = "auto", value_parser = parse_algorithm)]
    algorithm: Algorithm,
    /// Write the witness allocation here on YES.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Assignment budget of the brute-force engine.
    #[arg(long, default_value_t = OracleBudget::DEFAULT_MAX)]
    oracle_budget: u64,
    /// Branch-and-bound node budget of the ILP engine.
    #[arg(long)]
    ilp_nodes: Option<u64>,
}

#[derive(Debug, Clone, Copy)]
enum Algorithm {
    Auto,
    Fixed(Engine),
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    if s == "auto" {
        Ok(Algorithm::Auto)
    } else {
        s.parse::<Engine>().map(Algorithm::Fixed).map_err(|e| e.to_string())
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    instance: PathBuf,
    allocation: PathBuf,
    #[arg(long, value_parser = |s: &str| s.parse::<Notion>().map_err(|e| e.to_string()))]
    notion: Notion,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Ef1Method {
    RoundRobin,
    EnvyCycle,
}

#[derive(Args, Debug)]
struct ExtendArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "round-robin")]
    method: Ef1Method,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Efae,
    Refae,
    Fefae,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Seeded random instance with prescribed type counts.
    Random(GenRandomArgs),
    /// Multicolored-clique gadget as an EFAE instance.
    Mcq(GenMcqArgs),
    /// Independent-set gadget as a REFAE (or FEFAE) instance.
    Is(GenIsArgs),
    /// Counterexample instances; lists the names without arguments.
    Catalog(GenCatalogArgs),
}

#[derive(Args, Debug)]
struct GenRandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Agent types; defaults to `n`.
    #[arg(long)]
    n_t: Option<usize>,
    /// Item types; defaults to `m`.
    #[arg(long)]
    m_t: Option<usize>,
    #[arg(long, default_value_t = 10)]
    max_value: i64,
    #[arg(long, default_value_t = 0.5)]
    open_fraction: f64,
    #[arg(long, value_enum, default_value = "efae")]
    variant: VariantArg,
    /// Recipient count (REFAE) or `p` (FEFAE).
    #[arg(long, default_value_t = 2)]
    p: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GraphSource {
    /// Read the graph from this file instead of drawing one.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge probability for drawn graphs.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Also write the graph in edge-list form.
    #[arg(long)]
    graph_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenMcqArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, default_value_t = 3)]
    q: usize,
    #[arg(long, default_value_t = 2)]
    max_per_color: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenIsArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Target independent-set size.
    #[arg(long)]
    l: usize,
    /// Emit the free-recipient variant with p = 2.
    #[arg(long)]
    fefae: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenCatalogArgs {
    name: Option<String>,
    /// Re-check every catalog claim by enumeration.
    #[arg(long, conflicts_with = "name")]
    verify: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    dir: PathBuf,
    /// Comma-separated engine names; engines that do not accept an
    /// instance's variant are skipped for it.
    #[arg(long, value_delimiter = ',', value_parser = |s: &str| s.parse::<Engine>().map_err(|e| e.to_string()))]
    engines: Vec<Engine>,
    /// Per-solve wall-clock limit in milliseconds.
    #[arg(long, default_value_t = 10_000)]
    timeout: u64,
    #[arg(long, default_value_t = 4)]
    jobs: usize,
    /// Leave the millis column empty for reproducible output.
    #[arg(long)]
    mask_time: bool,
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ValuesTooLarge { .. } | Error::Overflow | Error::GenRetryExhausted(_) => EXIT_LIMIT,
            Error::GammaNotEf => EXIT_NO,
            Error::InternalInvariant(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    }
}

type Outcome = Result<u8, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Regular output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a, out),
        Command::Check(a) => check(a, out),
        Command::ExtendEf1(a) => extend_ef1(a, out),
        Command::Gen(g) => generate(g, out),
        Command::Bench(a) => bench_dir(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure {
        message: format!("{}: {e}", path.display()),
        ..Failure::from(e)
    })
}

/// Writes `text` to `path`, or to `out` when no path is given.
fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| io_failure(p, e)),
        None => writeln!(out, "{text}").map_err(|e| io_failure(Path::new("<stdout>"), e)),
    }
}

fn solve(a: SolveArgs, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(&a.file)?;
    let engine = match a.algorithm {
        Algorithm::Fixed(e) => e,
        Algorithm::Auto => {
            let sel = select_algorithm(&inst);
            emit(&format!("selection {}: {}", sel.engine, sel.rationale), None, out)?;
            sel.engine
        }
    };
    let config = EngineConfig {
        oracle: OracleBudget::new(a.oracle_budget)?,
        dp: DpConfig::default(),
        ilp: IlpOptions {
            node_budget: a.ilp_nodes.unwrap_or(IlpOptions::default().node_budget),
            ..IlpOptions::default()
        },
    };
    let outcome = run_engine(&inst, engine, &config)?;
    emit(&format!("engine {engine}"), None, out)?;
    emit(&format!("answer {}", outcome.answer), None, out)?;
    emit(&format!("nodes {}", outcome.stats.nodes), None, out)?;
    emit(&format!("states {}", outcome.stats.states), None, out)?;
    if let Some(w) = &outcome.witness {
        let doc = serialize_allocation(&inst, w);
        emit(&format!("witness {doc}"), None, out)?;
        if let Some(path) = &a.witness {
            emit(&doc, Some(path), out)?;
        }
    }
    Ok(match outcome.answer {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::ResourceLimit => EXIT_LIMIT,
    })
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(&a.instance)?;
    let alloc = parse_allocation(&read(&a.allocation)?, &inst)?;
    alloc.check_shape(&inst)?;
    let ok = satisfies(&inst, &alloc, a.notion);
    emit(&format!("{} {}", a.notion, if ok { "pass" } else { "fail" }), None, out)?;
    if !alloc.extends(&inst) {
        emit("note: allocation does not extend the partial assignment", None, out)?;
    }
    for (i, j) in envy_pairs(&inst, &alloc) {
        emit(&format!("envy {} -> {}", inst.agents()[i], inst.agents()[j]), None, out)?;
    }
    Ok(if ok { EXIT_YES } else { EXIT_NO })
}

fn extend_ef1(a: ExtendArgs, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(&a.instance)?;
    let method = match a.method {
        Ef1Method::RoundRobin => Ef1Engine::RoundRobin,
        Ef1Method::EnvyCycle => Ef1Engine::EnvyCycle,
    };
    let alloc = extend_to_ef1_with(&inst, method)?;
    emit(&serialize_allocation(&inst, &alloc), None, out)?;
    Ok(EXIT_YES)
}

fn generate(g: GenCommand, out: &mut dyn Write) -> Outcome {
    match g {
        GenCommand::Random(a) => {
            let variant = match a.variant {
                VariantArg::Efae => GenVariant::Efae,
                VariantArg::Refae => GenVariant::Refae { recipients: a.p },
                VariantArg::Fefae => GenVariant::Fefae { p: a.p },
            };
            let spec = GenSpec {
                seed: a.seed,
                n: a.n,
                m: a.m,
                n_t: a.n_t.unwrap_or(a.n),
                m_t: a.m_t.unwrap_or(a.m),
                max_value: a.max_value,
                open_fraction: a.open_fraction,
                variant,
            };
            emit(&serialize_instance(&gen_random(&spec)?), a.out.as_deref(), out)?;
        }
        GenCommand::Mcq(a) => {
            let s = &a.source;
            let g = match &s.graph {
                Some(path) => parse_colored_graph(&read(path)?)?,
                None => gen_colored_graph(s.seed, a.q, a.max_per_color, s.density)?,
            };
            if let Some(path) = &s.graph_out {
                fs::write(path, write_colored_graph(&g)).map_err(|e| io_failure(path, e))?;
            }
            emit(&serialize_instance(&mcq_to_efae(&g)?.instance), a.out.as_deref(), out)?;
        }
        GenCommand::Is(a) => {
            let s = &a.source;
            let g = match &s.graph {
                Some(path) => parse_graph(&read(path)?)?,
                None => gen_graph(s.seed, a.n, s.density)?,
            };
            if let Some(path) = &s.graph_out {
                fs::write(path, write_graph(&g)).map_err(|e| io_failure(path, e))?;
            }
            emit(
                &serialize_instance(&is_to_refae(&g, a.l, a.fefae)?.instance),
                a.out.as_deref(),
                out,
            )?;
        }
        GenCommand::Catalog(a) => {
            if a.verify {
                let report = verify_catalog();
                write!(out, "{report}").map_err(|e| io_failure(Path::new("<stdout>"), e))?;
                return Ok(if report.all_passed() { EXIT_YES } else { EXIT_NO });
            }
            let catalog = CounterexampleCatalog::load()?;
            match a.name {
                None => {
                    for e in catalog.entries() {
                        emit(e.name, None, out)?;
                    }
                }
                Some(name) => {
                    let entry = catalog.get(&name).ok_or_else(|| Failure {
                        code: EXIT_USAGE,
                        message: format!("no catalog entry `{name}`"),
                    })?;
                    emit(&serialize_instance(&entry.instance), a.out.as_deref(), out)?;
                }
            }
        }
    }
    Ok(EXIT_YES)
}

fn bench_dir(a: BenchArgs, out: &mut dyn Write) -> Outcome {
    let options = BenchOptions {
        engines: if a.engines.is_empty() {
            Engine::ALL.to_vec()
        } else {
            a.engines
        },
        timeout: Duration::from_millis(a.timeout),
        jobs: a.jobs,
    };
    let report = run_bench(&a.dir, &options).map_err(|e| io_failure(&a.dir, e))?;
    out.write_all(report.to_csv(a.mask_time).as_bytes())
        .map_err(|e| io_failure(Path::new("<stdout>"), e))?;
    Ok(report.exit_code())
}
