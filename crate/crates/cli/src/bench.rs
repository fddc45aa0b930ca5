use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::ValueEnum;

use crate::commands::read_election;
use crate::solve::{reverify, solve};
use crate::{Algorithm, SolverOpts};

/// One CSV row per (instance, solver): `instance,solver,decision,cost,wall_ms,seed`.
/// Failures are recorded with decision `error` and an empty cost.
pub fn run(files: &[std::path::PathBuf], solvers: &str, seed: u64, output: Option<&Path>) -> Result<ExitCode> {
    if files.is_empty() {
        bail!("no instance files given");
    }
    let algorithms = solvers
        .split(',')
        .map(|s| Algorithm::from_str(s.trim(), true).map_err(|e| anyhow::anyhow!("solver `{s}`: {e}")))
        .collect::<Result<Vec<_>>>()?;
    let sink: Box<dyn Write> = match output {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(std::io::stdout()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["instance", "solver", "decision", "cost", "wall_ms", "seed"])?;
    for file in files {
        let inst = read_election(file)?;
        for &algorithm in &algorithms {
            let opts = SolverOpts {
                algorithm,
                color_mode: None,
                trials: None,
                seed,
            };
            let start = Instant::now();
            let res = solve(&inst, &opts).and_then(|(name, out)| reverify(&inst, &out).map(|_| (name, out)));
            let ms = start.elapsed().as_secs_f64() * 1000.0;
            let (solver, decision, cost) = match res {
                Ok((name, out)) => (
                    name,
                    if out.decision { "yes" } else { "no" }.to_string(),
                    out.cost.map(|c| c.to_string()).unwrap_or_default(),
                ),
                Err(_) => (
                    format!("{algorithm:?}").to_lowercase(),
                    "error".to_string(),
                    String::new(),
                ),
            };
            w.write_record([
                file.display().to_string(),
                solver,
                decision,
                cost,
                format!("{ms:.3}"),
                seed.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}
