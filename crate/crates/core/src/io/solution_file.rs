use std::fmt::Write;

use crate::election::{Ranking, Roster};
use crate::error::{Error, Result};
use crate::swap::Bribery;
use crate::{Outcome, Rational};

use super::election_file::{check_header, once, order_text, resolve};
use super::{at, expect_len, parse_nonneg, parse_num, tokenized};

/// A solver's answer as written to disk. `targets` has one ranking per
/// expanded vote when a bribery is reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub solver: String,
    pub decision: bool,
    pub cost: Option<Rational>,
    pub optimal: bool,
    pub seed: Option<u64>,
    /// Free-form echo of solver settings, one line.
    pub config: Option<String>,
    pub targets: Option<Bribery>,
}

impl SolutionFile {
    pub fn from_outcome(solver: &str, out: &Outcome) -> Self {
        SolutionFile {
            solver: solver.to_string(),
            decision: out.decision,
            cost: out.cost,
            optimal: out.optimal,
            seed: None,
            config: None,
            targets: out.witness.clone(),
        }
    }
}

pub fn write_solution(sol: &SolutionFile, roster: &Roster) -> Result<String> {
    let mut out = String::from("sbe-solution 1\n");
    if sol.solver.is_empty() || sol.solver.contains(char::is_whitespace) {
        return Err(Error::domain("solver name must be a single word"));
    }
    writeln!(out, "solver {}", sol.solver).unwrap();
    writeln!(out, "decision {}", if sol.decision { "yes" } else { "no" }).unwrap();
    if let Some(c) = sol.cost {
        writeln!(out, "cost {c}").unwrap();
    }
    writeln!(out, "optimal {}", sol.optimal).unwrap();
    if let Some(s) = sol.seed {
        writeln!(out, "seed {s}").unwrap();
    }
    if let Some(c) = &sol.config {
        if c.contains('\n') || c.contains('#') || c.trim() != c || c.is_empty() {
            return Err(Error::domain("config echo must be one trimmed line without `#`"));
        }
        writeln!(out, "config {c}").unwrap();
    }
    if let Some(b) = &sol.targets {
        for (i, t) in b.targets.iter().enumerate() {
            writeln!(out, "target {i} {}", order_text(roster, t)).unwrap();
        }
    }
    Ok(out)
}

/// Parses a solution for an election over `roster`.
pub fn parse_solution(text: &str, roster: &Roster) -> Result<SolutionFile> {
    let lines: Vec<(usize, Vec<&str>)> = tokenized(text).collect();
    check_header(lines.first(), "sbe-solution")?;
    let last = lines.last().map_or(1, |l| l.0);
    let mut solver = None;
    let mut decision = None;
    let mut cost = None;
    let mut optimal = None;
    let mut seed = None;
    let mut config = None;
    let mut targets = Vec::new();
    for (line, toks) in &lines[1..] {
        let line = *line;
        match toks[0] {
            "solver" => {
                expect_len(line, toks, 2)?;
                once(&mut solver, line, "solver", toks[1].to_string())?;
            }
            "decision" => {
                expect_len(line, toks, 2)?;
                let d = match toks[1] {
                    "yes" => true,
                    "no" => false,
                    other => return Err(Error::parse(line, format!("decision must be yes or no, got `{other}`"))),
                };
                once(&mut decision, line, "decision", d)?;
            }
            "cost" => {
                expect_len(line, toks, 2)?;
                once(&mut cost, line, "cost", parse_nonneg(line, toks[1])?)?;
            }
            "optimal" => {
                expect_len(line, toks, 2)?;
                once(&mut optimal, line, "optimal", parse_num::<bool>(line, toks[1])?)?;
            }
            "seed" => {
                expect_len(line, toks, 2)?;
                once(&mut seed, line, "seed", parse_num::<u64>(line, toks[1])?)?;
            }
            "config" => {
                if toks.len() < 2 {
                    return Err(Error::parse(line, "empty config"));
                }
                once(&mut config, line, "config", toks[1..].join(" "))?;
            }
            "target" => {
                if toks.len() < 2 {
                    return Err(Error::parse(line, "incomplete target"));
                }
                let i: usize = parse_num(line, toks[1])?;
                if i != targets.len() {
                    return Err(Error::parse(line, format!("target {i} out of order")));
                }
                let ids = toks[2..]
                    .iter()
                    .map(|n| resolve(roster, line, n))
                    .collect::<Result<Vec<_>>>()?;
                targets.push(Ranking::new(ids, roster.len()).map_err(at(line))?);
            }
            other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
        }
    }
    let missing = |k: &str| Error::parse(last, format!("missing `{k}`"));
    Ok(SolutionFile {
        solver: solver.ok_or_else(|| missing("solver"))?.1,
        decision: decision.ok_or_else(|| missing("decision"))?.1,
        cost: cost.map(|c| c.1),
        optimal: optimal.is_some_and(|o| o.1),
        seed: seed.map(|s| s.1),
        config: config.map(|c| c.1),
        targets: (!targets.is_empty()).then_some(Bribery { targets }),
    })
}
