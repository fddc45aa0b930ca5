//! Color-coding search for k-approval, parameterized by the number of votes
//! and `k`.
//!
//! A solution puts at most `n·k` distinct candidates into one-positions.
//! Give `p` color 1 and the others distinct colors from `2..=n·k`; the
//! colors then describe, per vote, which classes are on top (a pattern).
//! The search enumerates the patterns under which `p` would win, colors
//! the candidates, and for each vote picks the cheapest top set whose
//! colors match the pattern.

use std::ops::ControlFlow;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::election::{CandidateId, WinnerMode};
use crate::error::{Error, Result};
use crate::swap::{move_to_top, verify_bribery, Bribery, BriberyInstance, CostMatrix};
use crate::util::{binomial, saturating_pow};
use crate::{Outcome, Rational};

/// Sorted `k`-subset of the colors `1..=n·k`.
pub type VotePattern = Vec<u32>;
/// One vote pattern per expanded vote.
pub type ElectionPattern = Vec<VotePattern>;
/// Color of every candidate, indexed by candidate; `p` has color 1.
/// Color 0 matches no pattern.
pub type Coloring = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorMode {
    /// Every coloring of `C ∖ {p}` with the pattern's colors.
    Exhaustive,
    /// `trials` random colorings per pattern; `None` means `(nk−1)^(nk−1)`.
    Random { trials: Option<u64>, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorConfig {
    /// Largest admissible `n·k`.
    pub max_nk: usize,
    /// Largest number of colorings tried for one pattern.
    pub coloring_cap: u128,
}

impl Default for ColorConfig {
    fn default() -> Self {
        ColorConfig {
            max_nk: 12,
            coloring_cap: 1_000_000,
        }
    }
}

fn is_successful(pattern: &[VotePattern], nk: usize, mode: WinnerMode) -> bool {
    let mut count = vec![0usize; nk + 1];
    for p in pattern {
        for &c in p {
            count[c as usize] += 1;
        }
    }
    count[2..].iter().all(|&c| match mode {
        WinnerMode::CoWinner => c <= count[1],
        WinnerMode::Unique => c < count[1],
    })
}

/// Calls `f` on every pattern in which color 1 occurs at least as often as
/// any other color (strictly more often in unique-winner mode).
pub fn for_each_successful_pattern<B>(
    n: usize,
    k: usize,
    mode: WinnerMode,
    max_nk: usize,
    mut f: impl FnMut(&[VotePattern]) -> ControlFlow<B>,
) -> Result<Option<B>> {
    let nk = n * k;
    if nk > max_nk {
        return Err(Error::Resource {
            what: "colors (n·k)",
            needed: nk as u128,
            cap: max_nk as u128,
        });
    }
    let subsets: Vec<VotePattern> = crate::util::combinations(nk, k)
        .into_iter()
        .map(|s| s.into_iter().map(|c| c as u32 + 1).collect())
        .collect();
    let mut idx = vec![0usize; n];
    let mut current: ElectionPattern = vec![subsets[0].clone(); n];
    loop {
        if is_successful(&current, nk, mode) {
            if let ControlFlow::Break(b) = f(&current) {
                return Ok(Some(b));
            }
        }
        // odometer step, last vote fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < subsets.len() {
                current[i] = subsets[idx[i]].clone();
                break;
            }
            idx[i] = 0;
            current[i] = subsets[0].clone();
        }
    }
}

/// Every successful pattern, co-winner semantics.
pub fn enumerate_successful_patterns(n: usize, k: usize) -> Result<Vec<ElectionPattern>> {
    let mut out = Vec::new();
    for_each_successful_pattern::<()>(n, k, WinnerMode::CoWinner, ColorConfig::default().max_nk, |p| {
        out.push(p.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Number of patterns examined before the success filter, `C(nk, k)^n`.
pub fn pattern_count(n: usize, k: usize) -> u128 {
    saturating_pow(binomial(n * k, k), n as u64)
}

/// Cheapest move-to-top set of one vote whose colors are exactly `colors`.
fn cheapest_in_vote(
    order: &[CandidateId],
    colors: &[u32],
    coloring: &[u32],
    costs: &CostMatrix,
) -> Option<(Rational, Vec<CandidateId>)> {
    let pools: Vec<Vec<CandidateId>> = colors
        .iter()
        .map(|&col| {
            order
                .iter()
                .copied()
                .filter(|c| coloring[c.index()] == col)
                .collect()
        })
        .collect();
    if pools.iter().any(Vec::is_empty) {
        return None;
    }
    let m = order.len();
    let mut best: Option<(Rational, Vec<CandidateId>)> = None;
    let mut chosen: Vec<CandidateId> = Vec::with_capacity(colors.len());
    let mut member = vec![false; m];

    fn rec(
        depth: usize,
        pools: &[Vec<CandidateId>],
        order: &[CandidateId],
        costs: &CostMatrix,
        chosen: &mut Vec<CandidateId>,
        member: &mut [bool],
        best: &mut Option<(Rational, Vec<CandidateId>)>,
    ) {
        if depth == pools.len() {
            let mut passed: Vec<CandidateId> = Vec::new();
            let mut total = Rational::zero();
            for &c in order {
                if member[c.index()] {
                    total += passed.iter().map(|&a| costs.get(a, c)).sum::<Rational>();
                } else {
                    passed.push(c);
                }
            }
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                *best = Some((total, chosen.clone()));
            }
            return;
        }
        for &c in &pools[depth] {
            member[c.index()] = true;
            chosen.push(c);
            rec(depth + 1, pools, order, costs, chosen, member, best);
            chosen.pop();
            member[c.index()] = false;
        }
    }
    rec(0, &pools, order, costs, &mut chosen, &mut member, &mut best);
    best
}

/// Cheapest bribery whose top sets match `pattern` under `coloring`, or
/// `None` when some vote has no matching set.
pub fn cheapest_for_pattern(
    inst: &BriberyInstance,
    pattern: &[VotePattern],
    coloring: &[u32],
) -> Result<Option<Bribery>> {
    let k = inst.approval_k()?;
    let m = inst.m();
    let matrices: Vec<CostMatrix> = inst.costs.tables().iter().map(|t| t.matrix(m)).collect();
    Ok(cheapest_with(inst, k, pattern, coloring, &matrices)?.map(|(_, b)| b))
}

fn cheapest_with(
    inst: &BriberyInstance,
    k: usize,
    pattern: &[VotePattern],
    coloring: &[u32],
    matrices: &[CostMatrix],
) -> Result<Option<(Rational, Bribery)>> {
    let expanded = inst.election.expanded();
    if pattern.len() != expanded.len() {
        return Err(Error::domain(format!(
            "pattern has {} entries for {} votes",
            pattern.len(),
            expanded.len()
        )));
    }
    if coloring.len() != inst.m() || coloring[inst.preferred.index()] != 1 {
        return Err(Error::domain("coloring must cover the roster and give p color 1"));
    }
    let owner = inst.election.expanded_owner();
    let mut total = Rational::zero();
    let mut targets = Vec::with_capacity(expanded.len());
    for (j, v) in expanded.iter().enumerate() {
        let Some((cost, set)) = cheapest_in_vote(v.order(), &pattern[j], coloring, &matrices[owner[j]])
        else {
            return Ok(None);
        };
        total += cost;
        targets.push(move_to_top(v, &set, k)?);
    }
    Ok(Some((total, Bribery { targets })))
}

/// Decides k-approval Swap Bribery by color coding. A `true` decision always
/// comes with a verified witness; `false` is exact only in exhaustive mode.
pub fn solve_colorcoding(
    inst: &BriberyInstance,
    mode: ColorMode,
    cfg: &ColorConfig,
) -> Result<Outcome> {
    let k = inst.approval_k()?;
    let m = inst.m();
    let n = inst.election.expanded().len();
    let nk = n * k;
    let p = inst.preferred.index();
    let matrices: Vec<CostMatrix> = inst.costs.tables().iter().map(|t| t.matrix(m)).collect();
    let mut rng = match mode {
        ColorMode::Random { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
        ColorMode::Exhaustive => None,
    };
    let trials = match mode {
        ColorMode::Random { trials: Some(t), .. } => t as u128,
        _ => saturating_pow(nk.saturating_sub(1) as u128, nk.saturating_sub(1) as u64),
    };

    let try_coloring = |pattern: &[VotePattern], coloring: &[u32]| -> Result<Option<Outcome>> {
        if let Some((cost, b)) = cheapest_with(inst, k, pattern, coloring, &matrices)? {
            if cost <= inst.budget {
                let report = verify_bribery(inst, &b)?;
                if report.is_solution() {
                    return Ok(Some(Outcome {
                        decision: true,
                        cost: Some(report.cost),
                        witness: Some(b),
                        optimal: false,
                    }));
                }
            }
        }
        Ok(None)
    };

    let found = for_each_successful_pattern(n, k, inst.mode, cfg.max_nk, |pattern| {
        let mut palette: Vec<u32> = pattern.iter().flatten().copied().filter(|&c| c != 1).collect();
        palette.sort_unstable();
        palette.dedup();
        if palette.is_empty() {
            palette.push(0);
        }
        let mut coloring = vec![0u32; m];
        coloring[p] = 1;
        let others: Vec<usize> = (0..m).filter(|&c| c != p).collect();
        let res: Result<Option<Outcome>> = match rng.as_mut() {
            None => {
                let total = saturating_pow(palette.len() as u128, others.len() as u64);
                if total > cfg.coloring_cap {
                    Err(Error::Resource {
                        what: "colorings per pattern",
                        needed: total,
                        cap: cfg.coloring_cap,
                    })
                } else {
                    let mut digits = vec![0usize; others.len()];
                    let mut out = Ok(None);
                    'all: loop {
                        for (d, &c) in digits.iter().zip(&others) {
                            coloring[c] = palette[*d];
                        }
                        match try_coloring(pattern, &coloring) {
                            Ok(None) => {}
                            other => {
                                out = other;
                                break 'all;
                            }
                        }
                        let mut i = 0;
                        loop {
                            if i == digits.len() {
                                break 'all;
                            }
                            digits[i] += 1;
                            if digits[i] < palette.len() {
                                break;
                            }
                            digits[i] = 0;
                            i += 1;
                        }
                    }
                    out
                }
            }
            Some(rng) => {
                let mut out = Ok(None);
                for _ in 0..trials.max(1) {
                    for &c in &others {
                        coloring[c] = palette[rng.random_range(0..palette.len())];
                    }
                    match try_coloring(pattern, &coloring) {
                        Ok(None) => {}
                        other => {
                            out = other;
                            break;
                        }
                    }
                }
                out
            }
        };
        match res {
            Ok(None) => ControlFlow::Continue(()),
            other => ControlFlow::Break(other),
        }
    })?;
    match found {
        Some(res) => Ok(res?.unwrap_or_else(Outcome::no)),
        None => Ok(Outcome::no()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{Election, Ranking, Roster, Vote, VotingRule};
    use crate::oracle::{brute_topk, OracleConfig};
    use crate::swap::SwapCostFunction;

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
    fn pattern_enumeration_counts() {
        assert_eq!(enumerate_successful_patterns(1, 1).unwrap(), vec![vec![vec![1]]]);
        let two = enumerate_successful_patterns(2, 1).unwrap();
        assert_eq!(two.len(), 3);
        assert!(!two.contains(&vec![vec![2], vec![2]]));
        assert_eq!(pattern_count(2, 2), 36);
        assert!(enumerate_successful_patterns(2, 2).unwrap().len() < 36);
        assert!(matches!(
            enumerate_successful_patterns(7, 2),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn single_vote_pattern_moves_p_first() {
        let inst = instance(&["a", "b", "p"], &[&["a", "b", "p"]], 1, 5);
        let b = cheapest_for_pattern(&inst, &[vec![1]], &[0, 0, 1]).unwrap().unwrap();
        assert_eq!(b.targets[0].order()[0], inst.preferred);
        assert_eq!(verify_bribery(&inst, &b).unwrap().cost, q(2));
    }

    #[test]
    fn missing_color_gives_none() {
        let inst = instance(&["a", "b", "p"], &[&["a", "b", "p"]], 2, 5);
        assert!(cheapest_for_pattern(&inst, &[vec![1, 5]], &[2, 3, 1]).unwrap().is_none());
    }

    #[test]
    fn two_vote_pattern_with_c1() {
        let inst = two_votes(3);
        let coloring = vec![2, 3, 1, 4, 4];
        let b = cheapest_for_pattern(&inst, &[vec![1, 2], vec![1, 2]], &coloring)
            .unwrap()
            .unwrap();
        let rep = verify_bribery(&inst, &b).unwrap();
        assert!(rep.is_solution());
        assert_eq!(rep.cost, q(3));
    }

    #[test]
    fn exhaustive_solves_two_vote_example() {
        let out = solve_colorcoding(&two_votes(3), ColorMode::Exhaustive, &ColorConfig::default()).unwrap();
        assert!(out.decision);
        assert!(verify_bribery(&two_votes(3), out.witness.as_ref().unwrap()).unwrap().is_solution());
        let no = solve_colorcoding(&two_votes(2), ColorMode::Exhaustive, &ColorConfig::default()).unwrap();
        assert!(!no.decision);
    }

    #[test]
    fn random_mode_is_reproducible() {
        let mode = ColorMode::Random { trials: None, seed: 7 };
        let a = solve_colorcoding(&two_votes(3), mode, &ColorConfig::default()).unwrap();
        let b = solve_colorcoding(&two_votes(3), mode, &ColorConfig::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn one_swap_and_free_win() {
        let one = instance(&["a", "p"], &[&["a", "p"]], 1, 1);
        assert!(solve_colorcoding(&one, ColorMode::Exhaustive, &ColorConfig::default())
            .unwrap()
            .decision);
        let free = instance(&["a", "p", "b"], &[&["p", "a", "b"]], 1, 0);
        let out = solve_colorcoding(&free, ColorMode::Exhaustive, &ColorConfig::default()).unwrap();
        assert_eq!(out.cost, Some(q(0)));
    }

    #[test]
    fn agrees_with_brute_on_unique_mode() {
        let mut inst = instance(&["a", "p", "b"], &[&["a", "p", "b"], &["b", "a", "p"]], 1, 2);
        inst.mode = WinnerMode::Unique;
        let brute = brute_topk(&inst, &OracleConfig::default()).unwrap();
        let cc = solve_colorcoding(&inst, ColorMode::Exhaustive, &ColorConfig::default()).unwrap();
        assert_eq!(brute.decision, cc.decision);
    }
}
