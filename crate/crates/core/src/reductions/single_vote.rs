use num_traits::Zero;

use crate::election::{CandidateId, Election, Ranking, Roster, Vote, VotingRule, WinnerMode};
use crate::error::{Error, Result};
use crate::swap::{BriberyInstance, CostTable, SwapCostFunction};
use crate::Rational;

use super::graph::Graph;

/// One vote `d_1 … d_{k+1} c_1 … c_N p` under (k+1)-approval whose prices
/// make `p` win within budget iff `g` has a `k`-clique.
///
/// Swapping `c_i` with `c_j` costs 1 on an edge and 0 otherwise, `d_1` with
/// `c_i` costs `N` minus the number of earlier neighbours of `v_i`, `c_i`
/// with `p` costs `N²`; every other swap is free. The budget is
/// `(N−k)·N² + k·N − k(k−1)/2`.
pub fn single_vote_clique_instance(g: &Graph, k: usize) -> Result<BriberyInstance> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::domain(format!("clique size {k} outside 1..={n}")));
    }
    let names = (1..=k + 1)
        .map(|i| format!("d{i}"))
        .chain((1..=n).map(|i| format!("c{i}")))
        .chain(std::iter::once("p".to_string()));
    let roster = Roster::new(names)?;
    let m = roster.len();
    let d1 = CandidateId(0);
    let cand = |i: usize| CandidateId::from(k + 1 + i);
    let p = CandidateId::from(m - 1);

    let big_n = n as i64;
    let mut t = CostTable::uniform(Rational::zero());
    for i in 0..n {
        let earlier = (0..i).filter(|&j| g.adjacent(i, j)).count() as i64;
        t.set_symmetric(d1, cand(i), Rational::from_integer(big_n - earlier))?;
        t.set_symmetric(cand(i), p, Rational::from_integer(big_n * big_n))?;
        for j in i + 1..n {
            if g.adjacent(i, j) {
                t.set_symmetric(cand(i), cand(j), Rational::from_integer(1))?;
            }
        }
    }
    let k64 = k as i64;
    let budget = (big_n - k64) * big_n * big_n + k64 * big_n - k64 * (k64 - 1) / 2;
    BriberyInstance::new(
        Election::new(roster, vec![Vote::single(Ranking::identity(m))])?,
        VotingRule::Approval { k: k + 1 },
        p,
        SwapCostFunction::new(vec![t]),
        Rational::from_integer(budget),
        WinnerMode::CoWinner,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_topk, OracleConfig};

    #[test]
    fn shape_and_prices() {
        let g = Graph::with_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = single_vote_clique_instance(&g, 2).unwrap();
        assert_eq!(inst.m(), 4 + 2 + 2);
        assert_eq!(inst.budget, Rational::from_integer(39));
        let t = inst.costs.table(0);
        let id = |s: &str| inst.election.roster().id(s).unwrap();
        assert_eq!(t.cost(id("c1"), id("p")), Rational::from_integer(16));
        assert_eq!(t.cost(id("d1"), id("c3")), Rational::from_integer(2));
        assert_eq!(t.cost(id("c1"), id("c4")), Rational::zero());
        assert_eq!(t.cost(id("d2"), id("c1")), Rational::zero());
        assert!(single_vote_clique_instance(&g, 5).is_err());
    }

    #[test]
    fn triangle_found_path_not() {
        let tri = Graph::with_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let out = brute_topk(&single_vote_clique_instance(&tri, 3).unwrap(), &OracleConfig::default()).unwrap();
        assert!(out.decision);
        let path = Graph::with_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let out = brute_topk(&single_vote_clique_instance(&path, 3).unwrap(), &OracleConfig::default()).unwrap();
        assert!(!out.decision);
    }
}
