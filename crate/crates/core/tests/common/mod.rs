//! Independent oracles and instance builders shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use sbe_core::reductions::{ColoredGraph, Graph, PartialVote};
use sbe_core::{
    BriberyInstance, CandidateId, CostTable, Election, Ranking, Rational, Roster, SwapCostFunction,
    Vote, VotingRule, WinnerMode,
};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Cheapest path from `v` to `pi` in the graph of all rankings where each
/// edge swaps one adjacent pair at its table price.
pub fn dijkstra_transform_cost(v: &Ranking, pi: &Ranking, table: &CostTable) -> Rational {
    let start = v.to_vec();
    let goal = pi.to_vec();
    let mut dist: HashMap<Vec<CandidateId>, Rational> = HashMap::new();
    let mut heap = BinaryHeap::new();
    dist.insert(start.clone(), q(0));
    heap.push(Reverse((q(0), start)));
    while let Some(Reverse((d, cur))) = heap.pop() {
        if cur == goal {
            return d;
        }
        if dist.get(&cur).is_some_and(|&best| best < d) {
            continue;
        }
        for i in 0..cur.len().saturating_sub(1) {
            let mut next = cur.clone();
            next.swap(i, i + 1);
            let nd = d + table.cost(cur[i], cur[i + 1]);
            if dist.get(&next).is_none_or(|&best| nd < best) {
                dist.insert(next.clone(), nd);
                heap.push(Reverse((nd, next)));
            }
        }
    }
    unreachable!("every ranking is reachable")
}

/// Brute-force `k`-clique test.
pub fn has_clique(g: &Graph, k: usize) -> bool {
    fn rec(g: &Graph, k: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        for v in start..g.n() {
            if chosen.iter().all(|&u| g.adjacent(u, v)) {
                chosen.push(v);
                if rec(g, k, v + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(g, k, 0, &mut Vec::new())
}

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// `k` classes of `per_class` vertices with random edges between classes
/// and one planted multicolored clique, returned by color.
pub fn planted_clique(rng: &mut impl Rng, k: usize, per_class: usize, density: f64) -> (ColoredGraph, Vec<usize>) {
    let n = k * per_class;
    let colors: Vec<usize> = (0..n).map(|v| v / per_class).collect();
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] != colors[v] && rng.random_bool(density) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    let clique: Vec<usize> = (0..k).map(|c| c * per_class + rng.random_range(0..per_class)).collect();
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            g.add_edge(u, v).unwrap();
        }
    }
    (ColoredGraph::new(g, colors, k).unwrap(), clique)
}

/// A random subset of the pairs of a random linear order.
pub fn random_partial_vote(rng: &mut impl Rng, m: usize, density: f64) -> PartialVote {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if rng.random_bool(density) {
                pairs.push((CandidateId::from(order[i]), CandidateId::from(order[j])));
            }
        }
    }
    PartialVote::new(m, pairs).unwrap()
}

pub fn roster(m: usize) -> Roster {
    Roster::new(std::iter::once("p".to_string()).chain((1..m).map(|i| format!("c{i}")))).unwrap()
}

/// Random instance with per-pair prices drawn from `prices`.
pub fn priced_instance(
    rng: &mut impl Rng,
    m: usize,
    n: usize,
    rule: VotingRule,
    prices: &[Rational],
    budget: Rational,
) -> BriberyInstance {
    let mut votes = Vec::new();
    let mut tables = Vec::new();
    for _ in 0..n {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        votes.push(Vote::single(Ranking::from_indices(&order).unwrap()));
        let mut t = CostTable::uniform(prices[0]);
        for a in 0..m {
            for b in a + 1..m {
                let c = *prices.choose(rng).unwrap();
                t.set_symmetric(a.into(), b.into(), c).unwrap();
            }
        }
        tables.push(t);
    }
    BriberyInstance::new(
        Election::new(roster(m), votes).unwrap(),
        rule,
        CandidateId(0),
        SwapCostFunction::new(tables),
        budget,
        WinnerMode::CoWinner,
    )
    .unwrap()
}

/// Two votes `c1 c2 p c4 c3` and `c1 c2 c3 p c4`, 2-approval, unit prices.
pub fn two_vote_example(budget: i64) -> BriberyInstance {
    let roster = Roster::new(["p", "c1", "c2", "c3", "c4"]).unwrap();
    let r = |names: &[&str]| {
        let ids = names.iter().map(|n| roster.id(n).unwrap()).collect();
        Ranking::new(ids, 5).unwrap()
    };
    let votes = vec![
        Vote::single(r(&["c1", "c2", "p", "c4", "c3"])),
        Vote::single(r(&["c1", "c2", "c3", "p", "c4"])),
    ];
    BriberyInstance::new(
        Election::new(roster, votes).unwrap(),
        VotingRule::Approval { k: 2 },
        CandidateId(0),
        SwapCostFunction::unit(2),
        q(budget),
        WinnerMode::CoWinner,
    )
    .unwrap()
}
