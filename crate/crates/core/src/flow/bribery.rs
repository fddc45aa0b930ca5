use num_traits::{One, Zero};

use crate::election::{CandidateId, Election, Ranking, WinnerMode};
use crate::error::{Error, Result};
use crate::swap::{move_to_top, verify_bribery, Bribery, BriberyInstance, SwapCostFunction};
use crate::{Outcome, Rational};

use super::network::{min_cost_max_flow, FlowNetwork, FlowResult};

/// A point-moving network together with the node and arc indices needed to
/// read a bribery back out of a flow.
#[derive(Debug, Clone)]
pub struct PointNetwork {
    pub network: FlowNetwork,
    pub k: usize,
    pub s_star: u64,
    pub x: usize,
    /// `a[v][r]`: node of the candidate at position `r` (0-based, `r < k`) of vote `v`.
    pub a: Vec<Vec<usize>>,
    /// `a_prime[v][c]`: node of candidate `c` in vote `v`.
    pub a_prime: Vec<Vec<usize>>,
    /// `b[c]`: collector node of candidate `c`.
    pub b: Vec<usize>,
    /// Arcs that move a point inside a vote: `(arc, vote, from, to)`.
    pub moves: Vec<(usize, usize, CandidateId, CandidateId)>,
}

/// Builds the network whose flows of value `|V|·k` correspond to briberies
/// giving `p` exactly `s_star` points and every rival at most `s_star`
/// (fewer than `s_star` in unique-winner mode). Votes are expanded.
pub fn build_point_network(
    e: &Election,
    k: usize,
    p: CandidateId,
    s_star: u64,
    mode: WinnerMode,
) -> Result<PointNetwork> {
    let votes = e.expanded();
    let n = votes.len() as u64;
    let m = e.m();
    if s_star == 0 || s_star > n {
        return Err(Error::domain(format!("s* = {s_star} outside 1..={n}")));
    }
    if k == 0 || k > m {
        return Err(Error::domain(format!("k = {k} outside 1..={m}")));
    }
    if p.index() >= m {
        return Err(Error::UnknownCandidate(p.to_string()));
    }
    let names = e.roster();
    let mut net = FlowNetwork::new();
    let x = net.add_node("x");
    let mut a = Vec::with_capacity(votes.len());
    let mut a_prime = Vec::with_capacity(votes.len());
    for (j, v) in votes.iter().enumerate() {
        a.push(
            v.top(k)
                .iter()
                .map(|&c| net.add_node(format!("a[{j},{}]", names.name(c))))
                .collect::<Vec<_>>(),
        );
        a_prime.push(vec![0; m]);
        for c in names.ids() {
            a_prime[j][c.index()] = net.add_node(format!("a'[{j},{}]", names.name(c)));
        }
    }
    let b: Vec<usize> = names
        .ids()
        .map(|c| net.add_node(format!("b[{}]", names.name(c))))
        .collect();

    let zero = Rational::zero();
    let mut moves = Vec::new();
    for (j, v) in votes.iter().enumerate() {
        let order = v.order();
        for (r, &c) in order[..k].iter().enumerate() {
            net.add_arc(FlowNetwork::SOURCE, a[j][r], 1, zero);
            net.add_arc(a[j][r], a_prime[j][c.index()], 1, zero);
            for (r2, &c2) in order.iter().enumerate().skip(k) {
                let cost = Rational::from_integer((r2 - r) as i64);
                let id = net.add_arc(a[j][r], a_prime[j][c2.index()], 1, cost);
                moves.push((id, j, c, c2));
            }
        }
        for c in names.ids() {
            net.add_arc(a_prime[j][c.index()], b[c.index()], 1, zero);
        }
    }
    let rival_cap = match mode {
        WinnerMode::CoWinner => s_star,
        WinnerMode::Unique => s_star - 1,
    } as i64;
    for c in names.ids() {
        if c != p {
            net.add_arc(b[c.index()], x, rival_cap, zero);
        }
    }
    net.add_arc(b[p.index()], FlowNetwork::SINK, s_star as i64, zero);
    net.add_arc(x, FlowNetwork::SINK, (n * k as u64 - s_star) as i64, zero);
    Ok(PointNetwork {
        network: net,
        k,
        s_star,
        x,
        a,
        a_prime,
        b,
        moves,
    })
}

/// Reads the per-vote targets out of a flow: the candidates that lose their
/// point leave the top `k`, the ones that gain it enter.
pub fn flow_to_bribery(e: &Election, pn: &PointNetwork, flow: &FlowResult) -> Result<Bribery> {
    let votes = e.expanded();
    let mut leaving: Vec<Vec<CandidateId>> = vec![Vec::new(); votes.len()];
    let mut entering: Vec<Vec<CandidateId>> = vec![Vec::new(); votes.len()];
    for &(id, j, c, c2) in &pn.moves {
        if flow.flow[id] == 1 {
            leaving[j].push(c);
            entering[j].push(c2);
        }
    }
    let targets = votes
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let top: Vec<CandidateId> = v
                .top(pn.k)
                .iter()
                .copied()
                .filter(|c| !leaving[j].contains(c))
                .chain(entering[j].iter().copied())
                .collect();
            move_to_top(v, &top, pn.k)
        })
        .collect::<Result<Vec<Ranking>>>()?;
    Ok(Bribery { targets })
}

/// Exact solver for k-approval when every swap costs 1: tries every target
/// score `s*` of `p` and keeps the cheapest full flow.
pub fn solve_uniform(inst: &BriberyInstance) -> Result<Outcome> {
    let k = inst.approval_k()?;
    let m = inst.m();
    if !inst.costs.all_unit(m) {
        return Err(Error::precondition(
            "the flow solver needs every swap to cost exactly 1",
        ));
    }
    solve_as_unit(inst, k)
}

fn solve_as_unit(inst: &BriberyInstance, k: usize) -> Result<Outcome> {
    let e = &inst.election;
    if e.m() == 1 {
        return Ok(Outcome {
            decision: true,
            cost: Some(Rational::zero()),
            witness: Some(Bribery::identity(e)),
            optimal: true,
        });
    }
    let n = e.n();
    let need = (n * k as u64) as i64;
    let mut best: Option<(Rational, PointNetwork, FlowResult)> = None;
    for s_star in 1..=n {
        let pn = build_point_network(e, k, inst.preferred, s_star, inst.mode)?;
        let flow = min_cost_max_flow(&pn.network)?;
        if flow.value == need && best.as_ref().is_none_or(|(c, _, _)| flow.cost < *c) {
            best = Some((flow.cost, pn, flow));
        }
    }
    let Some((cost, pn, flow)) = best else {
        return Ok(Outcome::no());
    };
    let witness = flow_to_bribery(e, &pn, &flow)?;
    Ok(Outcome {
        decision: cost <= inst.budget,
        cost: Some(cost),
        witness: Some(witness),
        optimal: true,
    })
}

/// Approximation for prices in `[1, δ]`: solves as if every swap cost 1 and
/// prices the result at the true costs, which is at most `δ` times the
/// optimum. `decision` is set only when the repriced witness fits the budget.
pub fn approx_delta(inst: &BriberyInstance) -> Result<Outcome> {
    let k = inst.approval_k()?;
    let m = inst.m();
    if let Some((lo, _)) = inst.costs.range(m) {
        if lo < Rational::one() {
            return Err(Error::precondition(format!(
                "approximation needs every swap to cost at least 1, found {lo}"
            )));
        }
    }
    let unit = BriberyInstance {
        costs: SwapCostFunction::unit(inst.costs.len()),
        ..inst.clone()
    };
    let out = solve_as_unit(&unit, k)?;
    let Some(witness) = out.witness else {
        return Ok(Outcome::no());
    };
    let report = verify_bribery(inst, &witness)?;
    Ok(Outcome {
        decision: report.is_solution(),
        cost: Some(report.cost),
        optimal: inst.costs.all_unit(m),
        witness: Some(witness),
    })
}

/// Largest price in the instance, the `δ` of [`approx_delta`]'s guarantee.
pub fn approximation_ratio(inst: &BriberyInstance) -> Rational {
    inst.costs
        .range(inst.m())
        .map_or(Rational::one(), |(_, hi)| hi.max(Rational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{Roster, Vote, VotingRule};
    use crate::oracle::{brute_topk, OracleConfig};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn instance(names: &[&str], votes: &[&[&str]], k: usize, budget: i64) -> BriberyInstance {
        let roster = Roster::new(names.iter().copied()).unwrap();
        let votes: Vec<Vote> = votes
            .iter()
            .map(|o| {
                let ids = o.iter().map(|n| roster.id(n).unwrap()).collect();
                Vote::single(Ranking::new(ids, names.len()).unwrap())
            })
            .collect();
        let n = votes.len();
        let p = roster.id("p").unwrap();
        BriberyInstance::new(
            Election::new(roster, votes).unwrap(),
            VotingRule::Approval { k },
            p,
            SwapCostFunction::unit(n),
            q(budget),
            WinnerMode::CoWinner,
        )
        .unwrap()
    }

    fn two_votes(budget: i64) -> BriberyInstance {
        instance(
            &["c1", "c2", "p", "c3", "c4"],
            &[&["c1", "c2", "p", "c4", "c3"], &["c1", "c2", "c3", "p", "c4"]],
            2,
            budget,
        )
    }

    #[test]
    fn two_vote_network_shape_and_costs() {
        let inst = two_votes(3);
        let pn = build_point_network(&inst.election, 2, inst.preferred, 2, inst.mode).unwrap();
        // s, t, x + |A| + |A'| + |B|
        assert_eq!(pn.network.node_count(), 3 + 4 + 10 + 5);
        let u = 1;
        let c2 = inst.election.roster().id("c2").unwrap();
        let c4 = inst.election.roster().id("c4").unwrap();
        let &(id, ..) = pn
            .moves
            .iter()
            .find(|&&(_, j, c, c_)| j == u && c == c2 && c_ == c4)
            .unwrap();
        assert_eq!(pn.network.arc(id).cost, q(3));
        let flow = min_cost_max_flow(&pn.network).unwrap();
        assert_eq!((flow.value, flow.cost), (4, q(3)));
    }

    #[test]
    fn point_keeping_arcs_are_free() {
        let inst = two_votes(3);
        let pn = build_point_network(&inst.election, 2, inst.preferred, 1, inst.mode).unwrap();
        for (j, nodes) in pn.a.iter().enumerate() {
            for &a in nodes {
                for arc in pn.network.arcs().iter().filter(|arc| arc.from == a) {
                    if pn.a_prime[j].contains(&arc.to)
                        && !pn.moves.iter().any(|&(id, ..)| pn.network.arc(id) == arc)
                    {
                        assert_eq!(arc.cost, q(0));
                    }
                }
            }
        }
    }

    #[test]
    fn two_vote_example_costs_three() {
        let out = solve_uniform(&two_votes(3)).unwrap();
        assert!(out.decision);
        assert_eq!(out.cost, Some(q(3)));
        let rep = verify_bribery(&two_votes(3), out.witness.as_ref().unwrap()).unwrap();
        assert!(rep.is_solution());
        assert_eq!(rep.cost, q(3));
        assert!(!solve_uniform(&two_votes(2)).unwrap().decision);
    }

    #[test]
    fn one_swap_instance() {
        let i0 = instance(&["a", "p"], &[&["a", "p"]], 1, 0);
        assert!(!solve_uniform(&i0).unwrap().decision);
        let i1 = instance(&["a", "p"], &[&["a", "p"]], 1, 1);
        let out = solve_uniform(&i1).unwrap();
        assert!(out.decision);
        assert_eq!(out.cost, Some(q(1)));
    }

    #[test]
    fn already_winning_is_free() {
        let inst = instance(&["a", "p", "b"], &[&["p", "a", "b"], &["a", "p", "b"]], 1, 0);
        let out = solve_uniform(&inst).unwrap();
        assert_eq!(out.cost, Some(q(0)));
        assert!(out.decision);
    }

    #[test]
    fn unique_mode_needs_strict_lead() {
        let mut inst = instance(&["a", "p"], &[&["a", "p"], &["p", "a"]], 1, 5);
        inst.mode = WinnerMode::Unique;
        let out = solve_uniform(&inst).unwrap();
        assert_eq!(out.cost, Some(q(1)));
        let brute = brute_topk(&inst, &OracleConfig::default()).unwrap();
        assert_eq!(brute.cost, out.cost);
    }

    #[test]
    fn rejects_non_unit_costs_and_bad_s_star() {
        let mut inst = two_votes(3);
        inst.costs = SwapCostFunction::uniform(2, Rational::new(3, 2));
        assert!(matches!(solve_uniform(&inst), Err(Error::Precondition(_))));
        assert!(build_point_network(&inst.election, 2, inst.preferred, 0, inst.mode).is_err());
        assert!(build_point_network(&inst.election, 2, inst.preferred, 3, inst.mode).is_err());
    }

    #[test]
    fn approx_with_scaled_costs_is_exact() {
        let mut inst = two_votes(10);
        inst.costs = SwapCostFunction::uniform(2, Rational::new(3, 2));
        let out = approx_delta(&inst).unwrap();
        assert_eq!(out.cost, Some(Rational::new(9, 2)));
        assert_eq!(approximation_ratio(&inst), Rational::new(3, 2));
        let brute = brute_topk(&inst, &OracleConfig::default()).unwrap();
        assert_eq!(brute.cost, out.cost);
    }

    #[test]
    fn approx_rejects_cheap_swaps() {
        let mut inst = two_votes(10);
        inst.costs = SwapCostFunction::uniform(2, Rational::new(1, 2));
        assert!(matches!(approx_delta(&inst), Err(Error::Precondition(_))));
    }
}
