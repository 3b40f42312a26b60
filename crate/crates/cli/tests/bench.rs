use std::time::Duration;

use fairext_cli::bench::{run_bench, run_bench_with, BenchOptions};
use fairext_core::{run_engine, Answer, Engine, EngineConfig, Instance, Result, SolveOutcome};

const DOC: &str = r#"{"agents":["a","b"],"items":["x","y"],"valuations":[[2,1],[1,2]],"assigned":{},"query":{"variant":"FEFAE","p":2}}"#;

fn options(engines: &[Engine]) -> BenchOptions {
    BenchOptions {
        engines: engines.to_vec(),
        timeout: Duration::from_secs(5),
        jobs: 2,
    }
}

#[test]
fn empty_directory_gives_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_bench(dir.path(), &BenchOptions::default()).unwrap();
    assert!(report.rows.is_empty());
    assert_eq!(report.exit_code(), 0);
    assert_eq!(report.to_csv(true), "path,engine,answer,millis,nodes\n");
}

/// Claims NO wherever the DP engine is asked.
fn lying_dp(inst: &Instance, engine: Engine) -> Result<SolveOutcome> {
    let out = run_engine(inst, engine, &EngineConfig::default())?;
    if engine == Engine::DpPNt {
        return Ok(SolveOutcome::no(out.stats));
    }
    Ok(out)
}

#[test]
fn disagreement_row_and_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("i.json"), DOC).unwrap();
    let all = [Engine::Brute, Engine::DpPNt, Engine::IlpPMt];
    let honest = run_bench(dir.path(), &options(&all)).unwrap();
    assert_eq!(honest.exit_code(), 0);
    assert!(honest.rows.iter().all(|r| r.answer == Answer::Yes.to_string()));

    let report = run_bench_with(dir.path(), &options(&all), lying_dp).unwrap();
    let last = report.rows.last().unwrap();
    assert_eq!(last.engine, "DISAGREEMENT");
    assert_eq!(last.answer, "brute=YES;dp-p-nt=NO;ilp-p-mt=YES");
    assert_ne!(report.exit_code(), 0);
}

fn slow(_: &Instance, _: Engine) -> Result<SolveOutcome> {
    std::thread::sleep(Duration::from_millis(500));
    Ok(SolveOutcome::no(Default::default()))
}

#[test]
fn timeouts_and_bad_files_are_isolated() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.json"), DOC).unwrap();
    std::fs::write(dir.path().join("b.json"), "{ not json").unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let mut opts = options(&[Engine::Brute]);
    opts.timeout = Duration::from_millis(20);
    let report = run_bench_with(dir.path(), &opts, slow).unwrap();
    let answers: Vec<(&str, &str)> = report
        .rows
        .iter()
        .map(|r| (r.engine.as_str(), r.answer.as_str()))
        .collect();
    assert_eq!(answers, vec![("brute", "TIMEOUT"), ("-", "ERROR")]);
    assert_eq!(report.exit_code(), 2);
}
