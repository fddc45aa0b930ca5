use num_traits::Zero;

use crate::election::{CandidateId, Ranking};
use crate::error::{Error, Result};
use crate::swap::{transform_cost, verify_bribery, Bribery, BriberyInstance, CostMatrix};
use crate::{Outcome, Rational};

use super::describe::{describe_rule, perm_index, LinearInequalitySystem};
use super::program::{ilp_feasible, IlpConfig, IntegerProgram, Relation};

/// How expanded votes are pooled into groups sharing variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Grouping {
    /// One group per distinct (ranking, price matrix) pair.
    #[default]
    ByRankingAndCosts,
    /// One group per expanded vote.
    PerVote,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoteGroup {
    pub ranking: Ranking,
    /// Index of the group's ranking in the description's permutation list.
    pub base: usize,
    /// Expanded vote indices, ascending.
    pub members: Vec<usize>,
    pub matrix: CostMatrix,
}

/// Variables `t[g, j]` (votes of group `g` turned into ranking `j`) and the
/// constraints that make the transformed election a win for `p` within
/// budget under one set of the rule description.
#[derive(Debug, Clone)]
pub struct TransformationIlp {
    pub program: IntegerProgram,
    /// `(group, permutation index, price)` of every variable.
    pub vars: Vec<(usize, usize, Rational)>,
    pub groups: Vec<VoteGroup>,
    pub set_index: usize,
    /// Candidate relabeling that moves `p` to label 0; an involution.
    pub relabel: Vec<usize>,
}

fn relabel_for(m: usize, p: CandidateId) -> Vec<usize> {
    let mut r: Vec<usize> = (0..m).collect();
    r.swap(0, p.index());
    r
}

/// Pools the expanded votes of `inst`.
pub fn vote_groups(inst: &BriberyInstance, grouping: Grouping) -> Vec<VoteGroup> {
    let m = inst.m();
    let relabel = relabel_for(m, inst.preferred);
    let owner = inst.election.expanded_owner();
    let mut groups: Vec<VoteGroup> = Vec::new();
    for (j, v) in inst.election.expanded().into_iter().enumerate() {
        let matrix = inst.costs.table(owner[j]).matrix(m);
        if grouping == Grouping::ByRankingAndCosts {
            if let Some(g) = groups
                .iter_mut()
                .find(|g| g.ranking == v && g.matrix == matrix)
            {
                g.members.push(j);
                continue;
            }
        }
        let labels: Vec<usize> = v.order().iter().map(|c| relabel[c.index()]).collect();
        groups.push(VoteGroup {
            base: perm_index(&labels),
            ranking: v,
            members: vec![j],
            matrix,
        });
    }
    groups
}

fn ranking_of(labels: &[usize], relabel: &[usize]) -> Result<Ranking> {
    let order: Vec<usize> = labels.iter().map(|&l| relabel[l]).collect();
    Ranking::from_indices(&order)
}

/// Builds the program for set `set_index` of `system`; `p` is relabeled to
/// the description's first candidate.
pub fn build_ilp(
    inst: &BriberyInstance,
    system: &LinearInequalitySystem,
    set_index: usize,
    grouping: Grouping,
) -> Result<TransformationIlp> {
    let m = inst.m();
    if system.m != m {
        return Err(Error::domain(format!(
            "description for {} candidates used with {m}",
            system.m
        )));
    }
    let set = system
        .sets
        .get(set_index)
        .ok_or_else(|| Error::domain(format!("no inequality set {set_index}")))?;
    let relabel = relabel_for(m, inst.preferred);
    let groups = vote_groups(inst, grouping);
    let owner = inst.election.expanded_owner();
    let targets: Vec<Ranking> = system
        .perms
        .iter()
        .map(|p| ranking_of(p, &relabel))
        .collect::<Result<_>>()?;

    let mut program = IntegerProgram::default();
    let mut vars = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let size = g.members.len() as i64;
        let table = inst.costs.table(owner[g.members[0]]);
        let mut row = Vec::new();
        for (j, t) in targets.iter().enumerate() {
            if j == g.base {
                continue;
            }
            let price = transform_cost(&g.ranking, t, table)?;
            // a single transformation above budget can never be used
            if price > inst.budget {
                continue;
            }
            let id = program.add_var(0, size);
            vars.push((gi, j, price));
            row.push((id, Rational::from_integer(1)));
        }
        if !row.is_empty() {
            program.add_constraint(row, Relation::Le, Rational::from_integer(size));
        }
    }
    let budget_row: Vec<(usize, Rational)> = vars
        .iter()
        .enumerate()
        .filter(|(_, (_, _, c))| !c.is_zero())
        .map(|(id, &(_, _, c))| (id, c))
        .collect();
    program.add_constraint(budget_row, Relation::Le, inst.budget);

    let mut base_counts = vec![0i64; system.perms.len()];
    for g in &groups {
        base_counts[g.base] += g.members.len() as i64;
    }
    for ineq in set {
        let constant: Rational = ineq
            .coeffs
            .iter()
            .zip(&base_counts)
            .map(|(a, &c)| a * c)
            .sum();
        let terms: Vec<(usize, Rational)> = vars
            .iter()
            .enumerate()
            .map(|(id, &(g, j, _))| (id, ineq.coeffs[j] - ineq.coeffs[groups[g].base]))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        program.add_constraint(terms, ineq.relation, ineq.rhs - constant);
    }
    Ok(TransformationIlp {
        program,
        vars,
        groups,
        set_index,
        relabel,
    })
}

impl TransformationIlp {
    /// Ranking counts `x′` after applying `t`, indexed by permutation.
    pub fn resulting_counts(&self, t: &[i64], perms: usize) -> Vec<i64> {
        let mut x = vec![0i64; perms];
        for g in &self.groups {
            x[g.base] += g.members.len() as i64;
        }
        for (&(g, j, _), &v) in self.vars.iter().zip(t) {
            x[j] += v;
            x[self.groups[g].base] -= v;
        }
        x
    }

    /// Turns an assignment into targets: in each group the lowest-indexed
    /// copies move first, in variable order.
    pub fn to_bribery(&self, inst: &BriberyInstance, system: &LinearInequalitySystem, t: &[i64]) -> Result<Bribery> {
        let mut targets = inst.election.expanded();
        let mut next = vec![0usize; self.groups.len()];
        for (&(g, j, _), &v) in self.vars.iter().zip(t) {
            for _ in 0..v {
                let slot = *self.groups[g]
                    .members
                    .get(next[g])
                    .ok_or_else(|| Error::domain("assignment moves more votes than the group has"))?;
                next[g] += 1;
                targets[slot] = ranking_of(&system.perms[j], &self.relabel)?;
            }
        }
        Ok(Bribery { targets })
    }
}

/// Decides the instance by trying every set of the rule description.
pub fn solve_ilp(inst: &BriberyInstance, cfg: &IlpConfig) -> Result<Outcome> {
    solve_ilp_grouped(inst, cfg, Grouping::ByRankingAndCosts)
}

pub fn solve_ilp_grouped(inst: &BriberyInstance, cfg: &IlpConfig, grouping: Grouping) -> Result<Outcome> {
    let m = inst.m();
    if m == 1 {
        return Ok(Outcome {
            decision: true,
            cost: Some(Rational::zero()),
            witness: Some(Bribery::identity(&inst.election)),
            optimal: true,
        });
    }
    let system = describe_rule(&inst.rule, m, inst.election.n(), inst.mode, cfg.perm_cap)?;
    for i in 0..system.sets.len() {
        let ilp = build_ilp(inst, &system, i, grouping)?;
        if let Some(t) = ilp_feasible(&ilp.program, cfg)? {
            let witness = ilp.to_bribery(inst, &system, &t)?;
            let report = verify_bribery(inst, &witness)?;
            if !report.is_solution() {
                return Err(Error::domain(format!(
                    "integer program witness failed verification (set {i})"
                )));
            }
            return Ok(Outcome {
                decision: true,
                cost: Some(report.cost),
                witness: Some(witness),
                optimal: false,
            });
        }
    }
    Ok(Outcome::no())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{Election, Roster, Vote, VotingRule, WinnerMode};
    use crate::swap::SwapCostFunction;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn instance(names: &[&str], votes: &[&[&str]], rule: VotingRule, budget: i64) -> BriberyInstance {
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
            rule,
            p,
            SwapCostFunction::unit(n),
            q(budget),
            WinnerMode::CoWinner,
        )
        .unwrap()
    }

    #[test]
    fn identical_votes_form_one_group() {
        let inst = instance(
            &["a", "p", "b"],
            &[&["a", "p", "b"], &["a", "p", "b"]],
            VotingRule::Approval { k: 1 },
            100,
        );
        let sys = describe_rule(&inst.rule, 3, 2, inst.mode, 720).unwrap();
        let ilp = build_ilp(&inst, &sys, 0, Grouping::ByRankingAndCosts).unwrap();
        assert_eq!(ilp.groups.len(), 1);
        assert_eq!(ilp.vars.len(), 5);
        let per_vote = build_ilp(&inst, &sys, 0, Grouping::PerVote).unwrap();
        assert_eq!(per_vote.groups.len(), 2);
    }

    #[test]
    fn zero_budget_means_current_winner() {
        let lose = instance(&["a", "p"], &[&["a", "p"]], VotingRule::Approval { k: 1 }, 0);
        assert!(!solve_ilp(&lose, &IlpConfig::default()).unwrap().decision);
        let win = instance(&["a", "p"], &[&["p", "a"]], VotingRule::Approval { k: 1 }, 0);
        let out = solve_ilp(&win, &IlpConfig::default()).unwrap();
        assert!(out.decision);
        assert_eq!(out.cost, Some(q(0)));
    }

    #[test]
    fn two_vote_transformation_price() {
        let inst = instance(
            &["c1", "c2", "p", "c3", "c4"],
            &[&["c1", "c2", "p", "c4", "c3"], &["c1", "c2", "c3", "p", "c4"]],
            VotingRule::Approval { k: 2 },
            3,
        );
        let sys = describe_rule(&inst.rule, 5, 2, inst.mode, 720).unwrap();
        let ilp = build_ilp(&inst, &sys, 0, Grouping::ByRankingAndCosts).unwrap();
        let r = |names: &[&str]| -> Vec<usize> {
            names
                .iter()
                .map(|n| ilp.relabel[inst.election.roster().id(n).unwrap().index()])
                .collect()
        };
        let target = perm_index(&r(&["c1", "p", "c2", "c4", "c3"]));
        let &(_, _, price) = ilp
            .vars
            .iter()
            .find(|&&(g, j, _)| g == 0 && j == target)
            .unwrap();
        assert_eq!(price, q(1));
        let out = solve_ilp(&inst, &IlpConfig::default()).unwrap();
        assert!(out.decision);
        let tight = solve_ilp(&instance(
            &["c1", "c2", "p", "c3", "c4"],
            &[&["c1", "c2", "p", "c4", "c3"], &["c1", "c2", "c3", "p", "c4"]],
            VotingRule::Approval { k: 2 },
            2,
        ), &IlpConfig::default())
        .unwrap();
        assert!(!tight.decision);
    }

    #[test]
    fn bucklin_moves_p_up() {
        let inst = instance(
            &["a", "b", "p"],
            &[&["a", "b", "p"], &["b", "a", "p"], &["a", "p", "b"]],
            VotingRule::Bucklin,
            2,
        );
        let out = solve_ilp(&inst, &IlpConfig::default()).unwrap();
        assert!(out.decision);
        assert!(verify_bribery(&inst, out.witness.as_ref().unwrap()).unwrap().is_solution());
    }

    #[test]
    fn counts_are_conserved() {
        let inst = instance(
            &["a", "p", "b"],
            &[&["a", "p", "b"], &["b", "a", "p"], &["a", "p", "b"]],
            VotingRule::Approval { k: 1 },
            4,
        );
        let sys = describe_rule(&inst.rule, 3, 3, inst.mode, 720).unwrap();
        let ilp = build_ilp(&inst, &sys, 0, Grouping::ByRankingAndCosts).unwrap();
        let mut t = vec![0i64; ilp.vars.len()];
        t[0] = 1;
        t[ilp.vars.len() - 1] = 1;
        let x = ilp.resulting_counts(&t, 6);
        assert_eq!(x.iter().sum::<i64>(), 3);
    }
}
