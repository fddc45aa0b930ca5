use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use sbe_core::colorcoding::{solve_colorcoding, ColorConfig, ColorMode};
use sbe_core::flow::{approx_delta, solve_uniform};
use sbe_core::ilp::{solve_ilp, IlpConfig};
use sbe_core::io::{write_solution, SolutionFile};
use sbe_core::oracle::{brute_rankings, brute_topk, OracleConfig};
use sbe_core::{verify_bribery, BriberyInstance, Error, Outcome};

use crate::commands::{read_election, write_out};
use crate::{Algorithm, ColorKind, SolverOpts};

/// Runs the chosen algorithm; returns the name of the solver actually used.
pub fn solve(inst: &BriberyInstance, opts: &SolverOpts) -> Result<(String, Outcome)> {
    let m = inst.m();
    let algorithm = match opts.algorithm {
        Algorithm::Auto => {
            let approval = inst.rule.approval_k().is_some();
            // the integer program enumerates m! rankings; 6! = 720
            if approval && inst.costs.all_unit(m) {
                Algorithm::Flow
            } else if m <= 6 {
                Algorithm::Ilp
            } else if approval {
                Algorithm::Color
            } else {
                Algorithm::Brute
            }
        }
        a => a,
    };
    let out = match algorithm {
        Algorithm::Brute => {
            if inst.rule.approval_k().is_some() {
                brute_topk(inst, &OracleConfig::default())
            } else {
                brute_rankings(inst, &OracleConfig::default())
            }
        }
        Algorithm::Flow => solve_uniform(inst),
        Algorithm::Approx => approx_delta(inst),
        Algorithm::Ilp => solve_ilp(inst, &IlpConfig::default()),
        Algorithm::Color => {
            let random = ColorMode::Random {
                trials: opts.trials,
                seed: opts.seed,
            };
            match opts.color_mode {
                Some(ColorKind::Exhaustive) => solve_colorcoding(inst, ColorMode::Exhaustive, &ColorConfig::default()),
                Some(ColorKind::Random) => solve_colorcoding(inst, random, &ColorConfig::default()),
                None => match solve_colorcoding(inst, ColorMode::Exhaustive, &ColorConfig::default()) {
                    Err(Error::Resource { .. }) => {
                        return Ok((
                            "color-random".into(),
                            solve_colorcoding(inst, random, &ColorConfig::default())?,
                        ))
                    }
                    other => other,
                },
            }
        }
        Algorithm::Auto => unreachable!("resolved above"),
    }
    .with_context(|| format!("{} solver failed", name(algorithm, opts)))?;
    Ok((name(algorithm, opts), out))
}

fn name(a: Algorithm, opts: &SolverOpts) -> String {
    match a {
        Algorithm::Auto => "auto",
        Algorithm::Brute => "brute",
        Algorithm::Flow => "flow",
        Algorithm::Approx => "approx",
        Algorithm::Ilp => "ilp",
        Algorithm::Color => match opts.color_mode {
            Some(ColorKind::Random) => "color-random",
            _ => "color",
        },
    }
    .to_string()
}

/// Fails unless the witness reproduces the reported cost and decision.
pub fn reverify(inst: &BriberyInstance, out: &Outcome) -> Result<()> {
    let Some(w) = &out.witness else {
        if out.decision {
            bail!("solver reported yes without a bribery");
        }
        return Ok(());
    };
    let report = verify_bribery(inst, w)?;
    if report.is_solution() != out.decision {
        bail!(
            "witness check disagrees with the solver: cost {}, p wins: {}",
            report.cost,
            report.preferred_wins
        );
    }
    if let Some(c) = out.cost {
        if c != report.cost {
            bail!("solver reported cost {c}, witness costs {}", report.cost);
        }
    }
    Ok(())
}

pub fn run_solve(file: &Path, opts: &SolverOpts, solution: Option<&Path>) -> Result<ExitCode> {
    let inst = read_election(file)?;
    let (solver, out) = solve(&inst, opts)?;
    reverify(&inst, &out)?;
    let mut sol = SolutionFile::from_outcome(&solver, &out);
    if solver.starts_with("color") && opts.color_mode != Some(ColorKind::Exhaustive) {
        sol.seed = Some(opts.seed);
        if let Some(t) = opts.trials {
            sol.config = Some(format!("trials={t}"));
        }
    }
    let text = write_solution(&sol, inst.election.roster())?;
    print!("{text}");
    if let Some(path) = solution {
        write_out(Some(path), &text)?;
    }
    Ok(ExitCode::from(if out.decision { 0 } else { 1 }))
}
