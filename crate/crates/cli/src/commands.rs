use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use sbe_core::flow::build_point_network;
use sbe_core::io::{
    network_to_dot, parse_election, parse_graph, parse_pw, parse_solution, write_election, write_pw,
    write_solution, SolutionFile,
};
use sbe_core::kernel::{kernelize as kernelize_instance, simple_truncation_kernel};
use sbe_core::reductions::{
    clique_witness_bribery, multicolored_clique_instance, possible_winner_brute, pw_to_sb, random_instance,
    sb_to_pw, single_vote_clique_instance, CostModel, RandomSpec, DEFAULT_EXTENSION_CAP,
};
use sbe_core::{verify_bribery, BriberyInstance, Rational};

pub fn read_election(path: &Path) -> Result<BriberyInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_election(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes `text` to `path`, or to stdout when there is no path.
pub fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse().map_err(|_| anyhow!("`{s}` is not a rational p or p/q"))
}

pub fn verify(election: &Path, solution: &Path) -> Result<ExitCode> {
    let inst = read_election(election)?;
    let text = fs::read_to_string(solution).with_context(|| format!("reading {}", solution.display()))?;
    let sol = parse_solution(&text, inst.election.roster())?;
    let Some(b) = &sol.targets else {
        println!("no bribery to check; stated decision {}", if sol.decision { "yes" } else { "no" });
        return Ok(ExitCode::from(if sol.decision { 1 } else { 0 }));
    };
    let report = verify_bribery(&inst, b)?;
    println!("cost {}", report.cost);
    println!("preferred-wins {}", report.preferred_wins);
    println!("within-budget {}", report.within_budget);
    let consistent =
        report.is_solution() == sol.decision && sol.cost.is_none_or(|c| c == report.cost);
    if !consistent {
        println!("mismatch: the file states decision {} cost {:?}", sol.decision, sol.cost.map(|c| c.to_string()));
    }
    Ok(ExitCode::from(if consistent && report.is_solution() { 0 } else { 1 }))
}

pub fn kernelize(file: &Path, simple: bool, output: Option<&Path>, provenance: Option<&Path>) -> Result<ExitCode> {
    let inst = read_election(file)?;
    let original = inst.election.roster();
    let (kernel, origin): (BriberyInstance, Vec<Option<usize>>) = if simple {
        let t = simple_truncation_kernel(&inst)?;
        let origin = t.provenance.iter().map(|c| Some(c.index())).collect();
        (t.instance, origin)
    } else {
        let k = kernelize_instance(&inst)?;
        let origin = k.provenance.iter().map(|c| c.map(|c| c.index())).collect();
        (k.instance, origin)
    };
    write_out(output, &write_election(&kernel)?)?;
    if let Some(path) = provenance {
        let mut text = String::new();
        for (name, o) in kernel.election.roster().names().iter().zip(&origin) {
            let from = o.map_or("-", |i| original.names()[i].as_str());
            text.push_str(&format!("{name} {from}\n"));
        }
        write_out(Some(path), &text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_cost_model(s: &str) -> Result<CostModel> {
    let (kind, args) = s.split_once(':').unwrap_or((s, ""));
    let parts: Vec<&str> = if args.is_empty() { Vec::new() } else { args.split(',').collect() };
    match (kind, parts.as_slice()) {
        ("unit", []) => Ok(CostModel::Unit),
        ("two-valued", [lo, hi, d]) => Ok(CostModel::TwoValued {
            low: parse_rational(lo)?,
            high: parse_rational(hi)?,
            density: d.parse().map_err(|_| anyhow!("bad density `{d}`"))?,
        }),
        ("range", [lo, hi]) => Ok(CostModel::UniformRange {
            lo: lo.parse()?,
            hi: hi.parse()?,
        }),
        _ => bail!("unknown cost model `{s}` (unit | two-valued:LOW,HIGH,DENSITY | range:LO,HI)"),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn generate_random(
    m: usize,
    n: usize,
    k: usize,
    costs: &str,
    budget: Option<&str>,
    seed: u64,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let mut spec = RandomSpec::new(m, n, k, parse_cost_model(costs)?, seed);
    spec.budget = budget.map(parse_rational).transpose()?;
    let inst = random_instance(&spec)?;
    write_out(output, &write_election(&inst)?)?;
    Ok(ExitCode::SUCCESS)
}

fn read_graph(path: &Path) -> Result<sbe_core::io::GraphFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn generate_clique_gadget(
    graph: &Path,
    epsilon: &str,
    clique: Option<&str>,
    witness: Option<&Path>,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let g = read_graph(graph)?.colored()?;
    let gadget = multicolored_clique_instance(&g, parse_rational(epsilon)?)?;
    write_out(output, &write_election(&gadget.instance)?)?;
    if let (Some(list), Some(path)) = (clique, witness) {
        let xs = list
            .split(',')
            .map(|v| v.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .context("clique must be comma-separated vertex numbers")?;
        let b = clique_witness_bribery(&g, &xs, &gadget)?;
        let report = verify_bribery(&gadget.instance, &b)?;
        let sol = SolutionFile {
            solver: "clique-witness".into(),
            decision: report.is_solution(),
            cost: Some(report.cost),
            optimal: false,
            seed: None,
            config: None,
            targets: Some(b),
        };
        write_out(Some(path), &write_solution(&sol, gadget.instance.election.roster())?)?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn generate_single_vote(graph: &Path, k: usize, output: Option<&Path>) -> Result<ExitCode> {
    let g = read_graph(graph)?;
    let inst = single_vote_clique_instance(&g.graph, k)?;
    write_out(output, &write_election(&inst)?)?;
    Ok(ExitCode::SUCCESS)
}

pub fn to_pw(file: &Path, output: Option<&Path>) -> Result<ExitCode> {
    let pw = sb_to_pw(&read_election(file)?)?;
    write_out(output, &write_pw(&pw)?)?;
    Ok(ExitCode::SUCCESS)
}

pub fn from_pw(file: &Path, output: Option<&Path>, decide: bool) -> Result<ExitCode> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let pw = parse_pw(&text).with_context(|| format!("parsing {}", file.display()))?;
    write_out(output, &write_election(&pw_to_sb(&pw)?)?)?;
    if decide {
        let yes = possible_winner_brute(&pw, DEFAULT_EXTENSION_CAP)?;
        eprintln!("possible winner: {}", if yes { "yes" } else { "no" });
        return Ok(ExitCode::from(if yes { 0 } else { 1 }));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn export_network(file: &Path, s_star: u64, output: Option<&Path>) -> Result<ExitCode> {
    let inst = read_election(file)?;
    let k = inst.approval_k()?;
    let pn = build_point_network(&inst.election, k, inst.preferred, s_star, inst.mode)?;
    write_out(output, &network_to_dot(&pn.network))?;
    Ok(ExitCode::SUCCESS)
}
