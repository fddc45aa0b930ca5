use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::election::{CandidateId, Election, Ranking, Roster, Vote, VotingRule, WinnerMode};
use crate::error::{Error, Result};
use crate::swap::{BriberyInstance, CostTable, SwapCostFunction};
use crate::Rational;

/// How swap prices of generated instances are drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostModel {
    /// Every swap costs 1.
    Unit,
    /// Each pair costs `high` with probability `density`, otherwise `low`.
    TwoValued {
        low: Rational,
        high: Rational,
        density: f64,
    },
    /// Integer prices drawn uniformly from `lo..=hi` per pair.
    UniformRange { lo: i64, hi: i64 },
}

/// Parameters of a random k-approval instance. Candidate 0 is `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub costs: CostModel,
    /// Drawn uniformly from `0..=m·n/2` when absent.
    pub budget: Option<Rational>,
    pub seed: u64,
}

impl RandomSpec {
    pub fn new(m: usize, n: usize, k: usize, costs: CostModel, seed: u64) -> Self {
        RandomSpec {
            m,
            n,
            k,
            costs,
            budget: None,
            seed,
        }
    }
}

/// Uniformly random votes and prices; equal parameters always yield the same instance.
pub fn random_instance(spec: &RandomSpec) -> Result<BriberyInstance> {
    if spec.m == 0 || spec.n == 0 || spec.k == 0 || spec.k > spec.m {
        return Err(Error::domain(format!(
            "need m, n ≥ 1 and 1 ≤ k ≤ m, got m={} n={} k={}",
            spec.m, spec.n, spec.k
        )));
    }
    match spec.costs {
        CostModel::UniformRange { lo, hi } if lo < 0 || lo > hi => {
            return Err(Error::domain(format!("bad price range {lo}..={hi}")));
        }
        CostModel::TwoValued { low, high, density }
            if low < Rational::from_integer(0)
                || high < Rational::from_integer(0)
                || !(0.0..=1.0).contains(&density) =>
        {
            return Err(Error::domain("bad two-valued price model"));
        }
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let m = spec.m;
    let roster = Roster::new(
        std::iter::once("p".to_string()).chain((1..m).map(|i| format!("c{i}"))),
    )?;
    let mut votes = Vec::with_capacity(spec.n);
    let mut tables = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let mut order: Vec<CandidateId> = (0..m).map(CandidateId::from).collect();
        order.shuffle(&mut rng);
        votes.push(Vote::single(Ranking::new(order, m)?));
        let mut t = CostTable::unit();
        match spec.costs {
            CostModel::Unit => {}
            CostModel::TwoValued { low, high, density } => {
                t = CostTable::uniform(low);
                for a in 0..m {
                    for b in a + 1..m {
                        if rng.random_bool(density) {
                            t.set_symmetric(a.into(), b.into(), high)?;
                        }
                    }
                }
            }
            CostModel::UniformRange { lo, hi } => {
                for a in 0..m {
                    for b in a + 1..m {
                        let c = Rational::from_integer(rng.random_range(lo..=hi));
                        t.set_symmetric(a.into(), b.into(), c)?;
                    }
                }
            }
        }
        tables.push(t);
    }
    let budget = match spec.budget {
        Some(b) => b,
        None => Rational::from_integer(rng.random_range(0..=(m * spec.n / 2) as i64)),
    };
    BriberyInstance::new(
        Election::new(roster, votes)?,
        VotingRule::Approval { k: spec.k },
        CandidateId(0),
        SwapCostFunction::new(tables),
        budget,
        WinnerMode::CoWinner,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let spec = RandomSpec::new(5, 3, 2, CostModel::UniformRange { lo: 1, hi: 3 }, 7);
        let a = random_instance(&spec).unwrap();
        assert_eq!(a, random_instance(&spec).unwrap());
        let other = random_instance(&RandomSpec { seed: 8, ..spec }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn unit_model_is_unit() {
        let inst = random_instance(&RandomSpec::new(4, 3, 1, CostModel::Unit, 1)).unwrap();
        assert!(inst.costs.all_unit(4));
        assert_eq!(inst.election.n(), 3);
    }

    #[test]
    fn two_valued_prices() {
        let one = Rational::from_integer(1);
        let two = Rational::from_integer(2);
        let spec = RandomSpec::new(
            5,
            4,
            2,
            CostModel::TwoValued {
                low: one,
                high: two,
                density: 0.5,
            },
            3,
        );
        let inst = random_instance(&spec).unwrap();
        let (lo, hi) = inst.costs.range(5).unwrap();
        assert!(lo >= one && hi <= two);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(random_instance(&RandomSpec::new(3, 1, 4, CostModel::Unit, 0)).is_err());
        assert!(random_instance(&RandomSpec::new(3, 1, 1, CostModel::UniformRange { lo: 2, hi: 1 }, 0)).is_err());
    }
}
