use num_traits::Zero;

use crate::election::{VotingRule, WinnerMode};
use crate::error::{Error, Result};
use crate::util::{factorial, permutations};
use crate::Rational;

use super::program::Relation;

/// `Σ_π coeffs[π]·x_π  relation  rhs` over the count `x_π` of each ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Inequality {
    pub fn holds(&self, x: &[i64]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, &v)| a * v).sum();
        self.relation.holds(lhs, self.rhs)
    }
}

/// Sets of inequalities over ranking counts such that candidate 0 wins iff
/// the counts satisfy every inequality of at least one set. Rankings are the
/// permutations of `0..m` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearInequalitySystem {
    pub m: usize,
    pub perms: Vec<Vec<usize>>,
    pub sets: Vec<Vec<Inequality>>,
}

impl LinearInequalitySystem {
    /// Index of the set satisfied by `counts`, if any.
    pub fn satisfied_by(&self, counts: &[i64]) -> Option<usize> {
        self.sets
            .iter()
            .position(|set| set.iter().all(|ineq| ineq.holds(counts)))
    }
}

/// Index of a permutation of `0..m` among [`permutations`]`(m)`.
pub fn perm_index(perm: &[usize]) -> usize {
    let m = perm.len();
    let mut idx = 0usize;
    for i in 0..m {
        let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count();
        idx = idx * (m - i) + smaller;
    }
    idx
}

/// `x_π` coefficient vector counting rankings that place `c` in the first `b` positions.
fn top_indicator(perms: &[Vec<usize>], c: usize, b: usize) -> Vec<Rational> {
    perms
        .iter()
        .map(|p| {
            if p[..b].contains(&c) {
                Rational::from_integer(1)
            } else {
                Rational::zero()
            }
        })
        .collect()
}

fn points(perms: &[Vec<usize>], c: usize, s: &[u64]) -> Vec<Rational> {
    perms
        .iter()
        .map(|p| {
            let pos = p.iter().position(|&x| x == c).expect("permutation");
            Rational::from_integer(s[pos] as i64)
        })
        .collect()
}

fn dominance(own: &[Rational], other: &[Rational], mode: WinnerMode) -> Inequality {
    Inequality {
        coeffs: own.iter().zip(other).map(|(a, b)| a - b).collect(),
        relation: Relation::Ge,
        rhs: match mode {
            WinnerMode::CoWinner => Rational::zero(),
            WinnerMode::Unique => Rational::from_integer(1),
        },
    }
}

/// Describes `rule` for `m` candidates and `n` votes.
pub fn describe_rule(
    rule: &VotingRule,
    m: usize,
    n: u64,
    mode: WinnerMode,
    perm_cap: u128,
) -> Result<LinearInequalitySystem> {
    if m < 2 {
        return Err(Error::domain("rule descriptions need at least two candidates"));
    }
    if factorial(m) > perm_cap {
        return Err(Error::Resource {
            what: "rankings (m!)",
            needed: factorial(m),
            cap: perm_cap,
        });
    }
    rule.validate(m)?;
    let perms = permutations(m);
    let sets = match rule {
        VotingRule::Approval { k } => {
            let own = top_indicator(&perms, 0, *k);
            vec![(1..m)
                .map(|j| dominance(&own, &top_indicator(&perms, j, *k), mode))
                .collect()]
        }
        VotingRule::Scoring(s) => {
            let own = points(&perms, 0, s);
            vec![(1..m)
                .map(|j| dominance(&own, &points(&perms, j, s), mode))
                .collect()]
        }
        VotingRule::Bucklin => {
            let half = Rational::from_integer((n / 2) as i64);
            (1..=m)
                .map(|b| {
                    let mut set: Vec<Inequality> = (0..m)
                        .map(|j| Inequality {
                            coeffs: top_indicator(&perms, j, b - 1),
                            relation: Relation::Le,
                            rhs: half,
                        })
                        .collect();
                    let own = top_indicator(&perms, 0, b);
                    set.push(Inequality {
                        coeffs: own.clone(),
                        relation: Relation::Ge,
                        rhs: half + 1,
                    });
                    set.extend((1..m).map(|j| dominance(&own, &top_indicator(&perms, j, b), mode)));
                    set
                })
                .collect()
        }
    };
    Ok(LinearInequalitySystem { m, perms, sets })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(rule: VotingRule, m: usize, n: u64) -> LinearInequalitySystem {
        describe_rule(&rule, m, n, WinnerMode::CoWinner, 720).unwrap()
    }

    #[test]
    fn shapes() {
        let a = desc(VotingRule::Approval { k: 1 }, 3, 4);
        assert_eq!(a.sets.len(), 1);
        assert_eq!(a.sets[0].len(), 2);
        assert_eq!(a.sets[0][0].coeffs.len(), 6);
        let b = desc(VotingRule::Bucklin, 3, 4);
        assert_eq!(b.sets.len(), 3);
        assert!(b.sets.iter().all(|s| s.len() == 6));
        assert!(describe_rule(&VotingRule::Bucklin, 7, 1, WinnerMode::CoWinner, 720).is_err());
    }

    #[test]
    fn two_candidate_plurality() {
        let a = desc(VotingRule::Approval { k: 1 }, 2, 1);
        let ineq = &a.sets[0][0];
        // perms: (0,1) then (1,0)
        assert_eq!(ineq.coeffs, vec![Rational::from_integer(1), Rational::from_integer(-1)]);
        assert_eq!(ineq.relation, Relation::Ge);
        assert_eq!(ineq.rhs, Rational::zero());
    }

    #[test]
    fn perm_index_matches_enumeration() {
        for m in 1..=5 {
            for (i, p) in permutations(m).iter().enumerate() {
                assert_eq!(perm_index(p), i);
            }
        }
    }
}
