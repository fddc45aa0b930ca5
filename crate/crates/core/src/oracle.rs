//! Exhaustive solvers used as ground truth for everything else.
//!
//! [`brute_topk`] exploits that under k-approval only the set of candidates
//! in the first `k` positions of a bribed vote matters, and that the
//! cheapest way to install a set there is [`move_to_top`]. [`brute_rankings`]
//! tries every ranking for every vote and works for any rule.

use num_traits::Zero;

use crate::election::{preferred_wins_of, CandidateId, Ranking, WinnerMode};
use crate::error::{Error, Result};
use crate::swap::{move_to_top, transform_cost, Bribery, BriberyInstance, CostMatrix};
use crate::util::{binomial, factorial, permutations, saturating_pow};
use crate::{Outcome, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Upper bound on the `k`-subset combinations [`brute_topk`] may visit.
    pub topk_cap: u128,
    /// Upper bound on the ranking combinations [`brute_rankings`] may visit.
    pub rankings_cap: u128,
    /// Drop every partial bribery whose cost already exceeds the budget.
    ///
    /// The decision is unchanged, but the optimum is only reported when it
    /// fits the budget. The caps then bound visited search nodes rather than
    /// the full product, which makes large but budget-limited instances
    /// (kernels in particular) tractable.
    pub budget_cutoff: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            topk_cap: 10_000_000,
            rankings_cap: 1_000_000,
            budget_cutoff: false,
        }
    }
}

impl OracleConfig {
    pub fn with_cutoff(mut self) -> Self {
        self.budget_cutoff = true;
        self
    }
}

/// One way of bribing a single vote.
struct VoteOption {
    cost: Rational,
    /// Candidates whose score this option contributes to.
    points: Vec<(usize, i64)>,
    ranking: Ranking,
}

/// `k`-subsets of `order` with their move-to-top cost, optionally bounded.
fn top_sets(
    order: &[CandidateId],
    k: usize,
    costs: &CostMatrix,
    bound: Option<Rational>,
) -> Vec<(Vec<CandidateId>, Rational)> {
    struct Walk<'a> {
        order: &'a [CandidateId],
        k: usize,
        costs: &'a CostMatrix,
        bound: Option<Rational>,
        chosen: Vec<CandidateId>,
        passed: Vec<CandidateId>,
        out: Vec<(Vec<CandidateId>, Rational)>,
    }
    impl Walk<'_> {
        fn go(&mut self, idx: usize, cost: Rational) {
            if self.chosen.len() == self.k {
                self.out.push((self.chosen.clone(), cost));
                return;
            }
            if self.order.len() - idx < self.k - self.chosen.len() {
                return;
            }
            let c = self.order[idx];
            let extra: Rational = self.passed.iter().map(|&a| self.costs.get(a, c)).sum();
            let with = cost + extra;
            if self.bound.is_none_or(|b| with <= b) {
                self.chosen.push(c);
                self.go(idx + 1, with);
                self.chosen.pop();
            }
            self.passed.push(c);
            self.go(idx + 1, cost);
            self.passed.pop();
        }
    }
    let mut w = Walk {
        order,
        k,
        costs,
        bound,
        chosen: Vec::new(),
        passed: Vec::new(),
        out: Vec::new(),
    };
    w.go(0, Rational::zero());
    w.out
}

type LeafTest<'a> = dyn Fn(&[usize]) -> Result<bool> + 'a;

struct Search<'a> {
    options: &'a [Vec<VoteOption>],
    preferred: usize,
    mode: WinnerMode,
    scores: Vec<i64>,
    choice: Vec<usize>,
    best: Option<(Rational, Vec<usize>)>,
    bound: Option<Rational>,
    visited: u128,
    cap: u128,
    /// Leaf test; `None` means use the incremental score vector.
    leaf: Option<&'a LeafTest<'a>>,
}

impl Search<'_> {
    fn limit(&self) -> Option<Rational> {
        match (&self.best, self.bound) {
            (Some((c, _)), _) => Some(*c),
            (None, b) => b,
        }
    }

    fn score_leaf(&self) -> bool {
        let p = self.scores[self.preferred];
        self.scores.iter().enumerate().all(|(c, &s)| {
            c == self.preferred
                || match self.mode {
                    WinnerMode::CoWinner => s <= p,
                    WinnerMode::Unique => s < p,
                }
        })
    }

    fn go(&mut self, vote: usize, cost: Rational) -> Result<()> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::Resource {
                what: "brute-force search",
                needed: self.visited,
                cap: self.cap,
            });
        }
        if vote == self.options.len() {
            let wins = match self.leaf {
                Some(f) => f(&self.choice)?,
                None => self.score_leaf(),
            };
            if wins {
                self.best = Some((cost, self.choice.clone()));
            }
            return Ok(());
        }
        let opts = self.options;
        for (i, opt) in opts[vote].iter().enumerate() {
            let total = cost + opt.cost;
            // options are sorted by cost, so nothing later can do better
            match (self.best.as_ref(), self.limit()) {
                (Some(_), Some(l)) if total >= l => break,
                (None, Some(l)) if total > l => break,
                _ => {}
            }
            for &(c, d) in &opt.points {
                self.scores[c] += d;
            }
            self.choice.push(i);
            let res = self.go(vote + 1, total);
            self.choice.pop();
            for &(c, d) in &opt.points {
                self.scores[c] -= d;
            }
            res?;
            if matches!(&self.best, Some((c, _)) if c.is_zero()) {
                break;
            }
        }
        Ok(())
    }
}

fn finish(
    inst: &BriberyInstance,
    options: &[Vec<VoteOption>],
    best: Option<(Rational, Vec<usize>)>,
) -> Outcome {
    match best {
        Some((cost, choice)) => Outcome {
            decision: cost <= inst.budget,
            cost: Some(cost),
            witness: Some(Bribery {
                targets: choice
                    .iter()
                    .zip(options)
                    .map(|(&i, opts)| opts[i].ranking.clone())
                    .collect(),
            }),
            optimal: true,
        },
        None => Outcome::no(),
    }
}

/// Exhaustive k-approval solver over the `k`-subsets placed on top of each
/// vote. Returns the cheapest bribery making `p` win, if any.
pub fn brute_topk(inst: &BriberyInstance, cfg: &OracleConfig) -> Result<Outcome> {
    let k = inst.approval_k()?;
    let m = inst.m();
    let expanded = inst.election.expanded();
    let n = expanded.len();
    if !cfg.budget_cutoff {
        let needed = saturating_pow(binomial(m, k), n as u64);
        if needed > cfg.topk_cap {
            return Err(Error::Resource {
                what: "k-subset combinations",
                needed,
                cap: cfg.topk_cap,
            });
        }
    }
    let bound = cfg.budget_cutoff.then_some(inst.budget);
    let matrices: Vec<CostMatrix> = inst.costs.tables().iter().map(|t| t.matrix(m)).collect();
    let owner = inst.election.expanded_owner();

    let mut options = Vec::with_capacity(n);
    for (j, v) in expanded.iter().enumerate() {
        let mut opts: Vec<VoteOption> = top_sets(v.order(), k, &matrices[owner[j]], bound)
            .into_iter()
            .map(|(set, cost)| {
                Ok(VoteOption {
                    cost,
                    points: set.iter().map(|c| (c.index(), 1)).collect(),
                    ranking: move_to_top(v, &set, k)?,
                })
            })
            .collect::<Result<_>>()?;
        opts.sort_by_key(|a| a.cost);
        options.push(opts);
    }

    let mut search = Search {
        options: &options,
        preferred: inst.preferred.index(),
        mode: inst.mode,
        scores: vec![0; m],
        choice: Vec::with_capacity(n),
        best: None,
        bound,
        visited: 0,
        cap: if cfg.budget_cutoff { cfg.topk_cap } else { u128::MAX },
        leaf: None,
    };
    search.go(0, Rational::zero())?;
    let best = search.best.take();
    Ok(finish(inst, &options, best))
}

/// Exhaustive solver over every target ranking of every vote; supports
/// every rule, including Bucklin.
pub fn brute_rankings(inst: &BriberyInstance, cfg: &OracleConfig) -> Result<Outcome> {
    let m = inst.m();
    let expanded = inst.election.expanded();
    let n = expanded.len();
    let needed = saturating_pow(factorial(m), n as u64);
    if needed > cfg.rankings_cap && !cfg.budget_cutoff {
        return Err(Error::Resource {
            what: "ranking combinations",
            needed,
            cap: cfg.rankings_cap,
        });
    }
    if factorial(m) > cfg.rankings_cap {
        return Err(Error::Resource {
            what: "rankings per vote",
            needed: factorial(m),
            cap: cfg.rankings_cap,
        });
    }
    let perms: Vec<Ranking> = permutations(m)
        .iter()
        .map(|p| Ranking::from_indices(p))
        .collect::<Result<_>>()?;
    let owner = inst.election.expanded_owner();
    let bound = cfg.budget_cutoff.then_some(inst.budget);

    let mut options = Vec::with_capacity(n);
    for (j, v) in expanded.iter().enumerate() {
        let table = inst.costs.table(owner[j]);
        let mut opts = Vec::new();
        for p in &perms {
            let cost = transform_cost(v, p, table)?;
            if bound.is_none_or(|b| cost <= b) {
                opts.push(VoteOption {
                    cost,
                    points: Vec::new(),
                    ranking: p.clone(),
                });
            }
        }
        opts.sort_by_key(|a| a.cost);
        options.push(opts);
    }

    let leaf = |choice: &[usize]| -> Result<bool> {
        preferred_wins_of(
            choice
                .iter()
                .zip(&options)
                .map(|(&i, opts)| (&opts[i].ranking, 1)),
            m,
            &inst.rule,
            inst.preferred,
            inst.mode,
        )
    };
    let mut search = Search {
        options: &options,
        preferred: inst.preferred.index(),
        mode: inst.mode,
        scores: vec![0; m],
        choice: Vec::with_capacity(n),
        best: None,
        bound,
        visited: 0,
        cap: if cfg.budget_cutoff {
            cfg.rankings_cap
        } else {
            u128::MAX
        },
        leaf: Some(&leaf),
    };
    search.go(0, Rational::zero())?;
    let best = search.best.take();
    Ok(finish(inst, &options, best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{Election, Roster, Vote, VotingRule};
    use crate::swap::{verify_bribery, SwapCostFunction};

    fn instance(
        names: &[&str],
        votes: &[&[&str]],
        rule: VotingRule,
        p: &str,
        budget: i64,
    ) -> BriberyInstance {
        let roster = Roster::new(names.iter().copied()).unwrap();
        let votes: Vec<Vote> = votes
            .iter()
            .map(|o| {
                let ids = o.iter().map(|n| roster.id(n).unwrap()).collect();
                Vote::single(Ranking::new(ids, names.len()).unwrap())
            })
            .collect();
        let n = votes.len();
        let p = roster.id(p).unwrap();
        BriberyInstance::new(
            Election::new(roster, votes).unwrap(),
            rule,
            p,
            SwapCostFunction::unit(n),
            Rational::from_integer(budget),
            WinnerMode::CoWinner,
        )
        .unwrap()
    }

    fn two_votes(budget: i64) -> BriberyInstance {
        instance(
            &["c1", "c2", "p", "c3", "c4"],
            &[&["c1", "c2", "p", "c4", "c3"], &["c1", "c2", "c3", "p", "c4"]],
            VotingRule::Approval { k: 2 },
            "p",
            budget,
        )
    }

    #[test]
    fn two_vote_optimum_is_three() {
        let out = brute_topk(&two_votes(3), &OracleConfig::default()).unwrap();
        assert!(out.decision);
        assert_eq!(out.cost, Some(Rational::from_integer(3)));
        let rep = verify_bribery(&two_votes(3), out.witness.as_ref().unwrap()).unwrap();
        assert!(rep.is_solution());
        assert_eq!(rep.cost, Rational::from_integer(3));

        let tight = brute_topk(&two_votes(2), &OracleConfig::default()).unwrap();
        assert!(!tight.decision);
        assert_eq!(tight.cost, Some(Rational::from_integer(3)));
    }

    #[test]
    fn cutoff_keeps_decision() {
        let cfg = OracleConfig::default().with_cutoff();
        assert_eq!(
            brute_topk(&two_votes(3), &cfg).unwrap().cost,
            Some(Rational::from_integer(3))
        );
        let no = brute_topk(&two_votes(2), &cfg).unwrap();
        assert!(!no.decision);
        assert_eq!(no.cost, None);
    }

    #[test]
    fn already_winning_costs_nothing() {
        let inst = instance(
            &["a", "p"],
            &[&["p", "a"]],
            VotingRule::Approval { k: 1 },
            "p",
            0,
        );
        let out = brute_topk(&inst, &OracleConfig::default()).unwrap();
        assert!(out.decision);
        assert_eq!(out.cost, Some(Rational::zero()));
    }

    #[test]
    fn plurality_single_vote_needs_two_swaps() {
        let inst = instance(
            &["a", "b", "p"],
            &[&["a", "b", "p"]],
            VotingRule::Approval { k: 1 },
            "p",
            1,
        );
        let out = brute_topk(&inst, &OracleConfig::default()).unwrap();
        assert_eq!(out.cost, Some(Rational::from_integer(2)));
        assert!(!out.decision);
    }

    #[test]
    fn bucklin_single_vote_moves_p_first() {
        let inst = instance(
            &["a", "b", "p"],
            &[&["a", "b", "p"]],
            VotingRule::Bucklin,
            "p",
            5,
        );
        let out = brute_rankings(&inst, &OracleConfig::default()).unwrap();
        assert!(out.decision);
        assert_eq!(out.cost, Some(Rational::from_integer(2)));
        assert_eq!(out.witness.unwrap().targets[0].order()[0], inst.preferred);
    }

    #[test]
    fn caps_are_enforced() {
        let cfg = OracleConfig {
            topk_cap: 10,
            rankings_cap: 10,
            budget_cutoff: false,
        };
        assert!(matches!(
            brute_topk(&two_votes(3), &cfg),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            brute_rankings(&two_votes(3), &cfg),
            Err(Error::Resource { .. })
        ));
        let bucklin = instance(&["a", "p"], &[&["a", "p"]], VotingRule::Bucklin, "p", 1);
        assert!(matches!(
            brute_topk(&bucklin, &OracleConfig::default()),
            Err(Error::UnsupportedRule(_))
        ));
    }

    #[test]
    fn rankings_agree_with_topk_on_two_votes() {
        let a = brute_topk(&two_votes(3), &OracleConfig::default()).unwrap();
        let b = brute_rankings(&two_votes(3), &OracleConfig::default()).unwrap();
        assert_eq!(a.cost, b.cost);
        assert_eq!(a.decision, b.decision);
    }
}
