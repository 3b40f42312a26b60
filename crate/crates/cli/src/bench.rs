//! Runs several engines over a directory of instance documents and reports
//! one CSV row per (instance, engine).

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use fairext_core::io::parse_instance;
use fairext_core::{run_engine, Answer, Engine, EngineConfig, Error, Instance, Result, SolveOutcome};
use rayon::prelude::*;

pub const CSV_HEADER: [&str; 5] = ["path", "engine", "answer", "millis", "nodes"];

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub engines: Vec<Engine>,
    /// Wall-clock limit per solve call.
    pub timeout: Duration,
    /// Worker threads; instances are solved concurrently, engines of one
    /// instance in sequence.
    pub jobs: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            engines: Engine::ALL.to_vec(),
            timeout: Duration::from_secs(10),
            jobs: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub path: String,
    /// Engine name, `-` for unreadable files, or `DISAGREEMENT`.
    pub engine: String,
    /// `YES`, `NO`, `RESOURCE_LIMIT`, `TIMEOUT`, `ERROR`, or for a
    /// disagreement row the per-engine answers.
    pub answer: String,
    pub millis: Option<u128>,
    /// Search nodes, or stored states for the configuration DP.
    pub nodes: Option<u64>,
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn disagreements(&self) -> usize {
        self.rows.iter().filter(|r| r.engine == "DISAGREEMENT").count()
    }

    pub fn errors(&self) -> usize {
        self.rows.iter().filter(|r| r.answer == "ERROR").count()
    }

    /// 3 on any disagreement, 2 on unreadable files or engine errors, else 0.
    pub fn exit_code(&self) -> u8 {
        if self.disagreements() > 0 {
            3
        } else if self.errors() > 0 {
            2
        } else {
            0
        }
    }

    /// With `mask_time` the millis column is left empty so that repeated
    /// runs are byte-identical.
    pub fn to_csv(&self, mask_time: bool) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        for r in &self.rows {
            let millis = match (mask_time, r.millis) {
                (false, Some(ms)) => ms.to_string(),
                _ => String::new(),
            };
            let nodes = r.nodes.map(|n| n.to_string()).unwrap_or_default();
            w.write_record([r.path.as_str(), &r.engine, &r.answer, &millis, &nodes])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

/// Solver signature accepted by [`run_bench_with`].
pub type Solver = fn(&Instance, Engine) -> Result<SolveOutcome>;

fn default_solver(inst: &Instance, engine: Engine) -> Result<SolveOutcome> {
    run_engine(inst, engine, &EngineConfig::default())
}

pub fn run_bench(dir: &Path, options: &BenchOptions) -> std::io::Result<BenchReport> {
    run_bench_with(dir, options, default_solver)
}

/// Like [`run_bench`] with a substitute solver, which lets tests provoke
/// disagreements.
pub fn run_bench_with(dir: &Path, options: &BenchOptions, solver: Solver) -> std::io::Result<BenchReport> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(std::io::Error::other)?;
    let per_file: Vec<Vec<BenchRow>> =
        pool.install(|| files.par_iter().map(|p| bench_file(p, options, solver)).collect());
    Ok(BenchReport {
        rows: per_file.into_iter().flatten().collect(),
    })
}

fn bench_file(path: &Path, options: &BenchOptions, solver: Solver) -> Vec<BenchRow> {
    let shown = path.display().to_string();
    let inst = match fs::read_to_string(path)
        .map_err(|e| e.to_string())
        .and_then(|t| parse_instance(&t).map_err(|e| e.to_string()))
    {
        Ok(inst) => Arc::new(inst),
        Err(_) => {
            return vec![BenchRow {
                path: shown,
                engine: "-".into(),
                answer: "ERROR".into(),
                millis: None,
                nodes: None,
            }]
        }
    };
    let mut rows = Vec::new();
    for &engine in options.engines.iter().filter(|e| e.supports(inst.query())) {
        let (answer, millis, nodes) = timed_solve(&inst, engine, options.timeout, solver);
        rows.push(BenchRow {
            path: shown.clone(),
            engine: engine.to_string(),
            answer,
            millis,
            nodes,
        });
    }
    let decided: Vec<&BenchRow> = rows.iter().filter(|r| r.answer == "YES" || r.answer == "NO").collect();
    if decided.windows(2).any(|w| w[0].answer != w[1].answer) {
        let summary = decided
            .iter()
            .map(|r| format!("{}={}", r.engine, r.answer))
            .collect::<Vec<_>>()
            .join(";");
        rows.push(BenchRow {
            path: shown,
            engine: "DISAGREEMENT".into(),
            answer: summary,
            millis: None,
            nodes: None,
        });
    }
    rows
}

/// Runs one engine on a helper thread. A solve that overruns the timeout is
/// abandoned; its thread finishes in the background.
fn timed_solve(
    inst: &Arc<Instance>,
    engine: Engine,
    timeout: Duration,
    solver: Solver,
) -> (String, Option<u128>, Option<u64>) {
    let (tx, rx) = mpsc::channel();
    let inst = Arc::clone(inst);
    let start = Instant::now();
    thread::spawn(move || {
        let _ = tx.send(solver(&inst, engine));
    });
    match rx.recv_timeout(timeout) {
        Ok(result) => {
            let millis = Some(start.elapsed().as_millis());
            match result {
                Ok(out) => {
                    let nodes = if engine == Engine::DpPNt {
                        out.stats.states
                    } else {
                        out.stats.nodes
                    };
                    (out.answer.to_string(), millis, Some(nodes))
                }
                Err(Error::ValuesTooLarge { .. }) => (Answer::ResourceLimit.to_string(), millis, None),
                Err(_) => ("ERROR".into(), millis, None),
            }
        }
        Err(_) => ("TIMEOUT".into(), Some(timeout.as_millis()), None),
    }
}
