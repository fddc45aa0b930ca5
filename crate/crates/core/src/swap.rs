//! Swap costs, admissible swap sets, transformation costs and bribery
//! verification.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Zero};

use crate::election::{
    preferred_wins_of, CandidateId, Election, Ranking, VotingRule, WinnerMode,
};
use crate::error::{Error, Result};
use crate::Rational;

/// Swap prices for one vote entry.
///
/// `cost(a, b)` is charged when `a` directly precedes `b` and the two are
/// exchanged. A pair given in one direction only applies to both
/// directions; pairs never mentioned cost `default`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostTable {
    pub default: Rational,
    overrides: BTreeMap<(CandidateId, CandidateId), Rational>,
}

impl CostTable {
    pub fn uniform(cost: Rational) -> Self {
        CostTable {
            default: cost,
            overrides: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        Self::uniform(Rational::one())
    }

    /// Sets the price of swapping `a` while it directly precedes `b`.
    pub fn set(&mut self, a: CandidateId, b: CandidateId, cost: Rational) -> Result<()> {
        if a == b {
            return Err(Error::domain("cost pair needs two distinct candidates"));
        }
        if cost < Rational::zero() {
            return Err(Error::domain(format!("negative swap cost {cost}")));
        }
        self.overrides.insert((a, b), cost);
        Ok(())
    }

    /// Sets both orientations of the pair.
    pub fn set_symmetric(&mut self, a: CandidateId, b: CandidateId, cost: Rational) -> Result<()> {
        self.set(a, b, cost)?;
        self.set(b, a, cost)
    }

    #[inline]
    pub fn cost(&self, a: CandidateId, b: CandidateId) -> Rational {
        if self.overrides.is_empty() {
            return self.default;
        }
        self.overrides
            .get(&(a, b))
            .or_else(|| self.overrides.get(&(b, a)))
            .copied()
            .unwrap_or(self.default)
    }

    pub fn overrides(&self) -> impl Iterator<Item = (CandidateId, CandidateId, Rational)> + '_ {
        self.overrides.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    /// Every price this table can return for an election with `m` candidates.
    pub fn values(&self, m: usize) -> Vec<Rational> {
        let mut covered = HashSet::new();
        for &(a, b) in self.overrides.keys() {
            covered.insert((a.min(b), a.max(b)));
        }
        let all_pairs = m * m.saturating_sub(1) / 2;
        let mut out: Vec<Rational> = self.overrides.values().copied().collect();
        if covered.len() < all_pairs {
            out.push(self.default);
        }
        out
    }

    /// Dense `m × m` matrix of `cost(a, b)`, for solvers on small rosters.
    pub fn matrix(&self, m: usize) -> CostMatrix {
        let mut data = vec![self.default; m * m];
        for (&(a, b), &c) in &self.overrides {
            // explicit entries win over the symmetric completion
            if !self.overrides.contains_key(&(b, a)) {
                data[b.index() * m + a.index()] = c;
            }
            data[a.index() * m + b.index()] = c;
        }
        CostMatrix { m, data }
    }
}

/// Dense pair-cost lookup built from a [`CostTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    m: usize,
    data: Vec<Rational>,
}

impl CostMatrix {
    #[inline]
    pub fn get(&self, a: CandidateId, b: CandidateId) -> Rational {
        self.data[a.index() * self.m + b.index()]
    }
}

/// Pair prices for every vote entry of an election. Copies of a vote with
/// multiplicity share the entry's table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapCostFunction {
    tables: Vec<CostTable>,
}

impl SwapCostFunction {
    pub fn new(tables: Vec<CostTable>) -> Self {
        SwapCostFunction { tables }
    }

    pub fn uniform(entries: usize, cost: Rational) -> Self {
        SwapCostFunction {
            tables: vec![CostTable::uniform(cost); entries],
        }
    }

    pub fn unit(entries: usize) -> Self {
        Self::uniform(entries, Rational::one())
    }

    pub fn tables(&self) -> &[CostTable] {
        &self.tables
    }

    pub fn table(&self, entry: usize) -> &CostTable {
        &self.tables[entry]
    }

    pub fn table_mut(&mut self, entry: usize) -> &mut CostTable {
        &mut self.tables[entry]
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// Smallest and largest price any swap can have.
    pub fn range(&self, m: usize) -> Option<(Rational, Rational)> {
        let vals: Vec<Rational> = self.tables.iter().flat_map(|t| t.values(m)).collect();
        Some((*vals.iter().min()?, *vals.iter().max()?))
    }

    pub fn all_unit(&self, m: usize) -> bool {
        self.tables
            .iter()
            .all(|t| t.values(m).iter().all(|c| c.is_one()))
    }
}

/// A single swap `(vote, first, second)`: `first` directly precedes
/// `second` in `vote` and the two trade places.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Swap {
    pub vote: usize,
    pub first: CandidateId,
    pub second: CandidateId,
}

/// Applies a set of swaps to one vote.
///
/// The set must be admissible, i.e. applicable one after the other in some
/// order; the resulting ranking does not depend on which order is used.
pub fn apply_swaps(v: &Ranking, swaps: &[(CandidateId, CandidateId)]) -> Result<Ranking> {
    let m = v.len();
    let mut set: Vec<(CandidateId, CandidateId)> = Vec::with_capacity(swaps.len());
    for &(a, b) in swaps {
        if a == b {
            return Err(Error::Admissibility(format!("swap of {a} with itself")));
        }
        if a.index() >= m || b.index() >= m {
            return Err(Error::UnknownCandidate(format!("{a} or {b}")));
        }
        if !set.contains(&(a, b)) {
            set.push((a, b));
        }
    }
    if set.len() > 64 {
        return Err(Error::Resource {
            what: "swap set",
            needed: set.len() as u128,
            cap: 64,
        });
    }
    let full = if set.len() == 64 {
        u64::MAX
    } else {
        (1u64 << set.len()) - 1
    };
    let mut order = v.to_vec();
    let mut pos = v.positions();
    let mut dead = HashSet::new();
    if sequence_swaps(&set, &mut order, &mut pos, full, &mut dead) {
        Ranking::new(order, m)
    } else {
        Err(Error::Admissibility(format!(
            "no order applies all {} swaps",
            set.len()
        )))
    }
}

fn sequence_swaps(
    set: &[(CandidateId, CandidateId)],
    order: &mut [CandidateId],
    pos: &mut [usize],
    remaining: u64,
    dead: &mut HashSet<(Vec<CandidateId>, u64)>,
) -> bool {
    if remaining == 0 {
        return true;
    }
    if dead.contains(&(order.to_vec(), remaining)) {
        return false;
    }
    for (i, &(a, b)) in set.iter().enumerate() {
        if remaining & (1 << i) == 0 || pos[a.index()] + 1 != pos[b.index()] {
            continue;
        }
        let (pa, pb) = (pos[a.index()], pos[b.index()]);
        order.swap(pa, pb);
        pos.swap(a.index(), b.index());
        if sequence_swaps(set, order, pos, remaining & !(1 << i), dead) {
            return true;
        }
        order.swap(pa, pb);
        pos.swap(a.index(), b.index());
    }
    dead.insert((order.to_vec(), remaining));
    false
}

/// Pairs `(earlier-in-v, later-in-v)` that `pi` puts in the opposite order.
fn inverted_pairs(v: &Ranking, pi: &Ranking) -> Result<Vec<(CandidateId, CandidateId)>> {
    if v.len() != pi.len() {
        return Err(Error::InvalidRanking(format!(
            "rankings of different length {} and {}",
            v.len(),
            pi.len()
        )));
    }
    let (a, b) = (v.order(), pi.order());
    let Some(lo) = (0..a.len()).find(|&i| a[i] != b[i]) else {
        return Ok(Vec::new());
    };
    let hi = (0..a.len()).rev().find(|&i| a[i] != b[i]).unwrap_or(lo);
    let target: HashMap<CandidateId, usize> =
        b[lo..=hi].iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let seg = &a[lo..=hi];
    let mut out = Vec::new();
    for (i, &x) in seg.iter().enumerate() {
        for &y in &seg[i + 1..] {
            if target[&x] > target[&y] {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Minimum total price of turning `v` into `pi`: every inverted pair is
/// swapped exactly once.
pub fn transform_cost(v: &Ranking, pi: &Ranking, costs: &CostTable) -> Result<Rational> {
    Ok(inverted_pairs(v, pi)?
        .into_iter()
        .map(|(x, y)| costs.cost(x, y))
        .sum())
}

/// Adjacent swaps, in application order, realising `v → pi` at minimum
/// cost (bubble sort towards `pi`).
pub fn swap_sequence(v: &Ranking, pi: &Ranking) -> Result<Vec<(CandidateId, CandidateId)>> {
    if v.len() != pi.len() {
        return Err(Error::InvalidRanking("rankings of different length".into()));
    }
    let target = pi.positions();
    let mut cur = v.to_vec();
    let mut out = Vec::new();
    for end in (1..cur.len()).rev() {
        for i in 0..end {
            if target[cur[i].index()] > target[cur[i + 1].index()] {
                out.push((cur[i], cur[i + 1]));
                cur.swap(i, i + 1);
            }
        }
    }
    Ok(out)
}

fn check_subset(v: &Ranking, chosen: &[CandidateId], k: usize) -> Result<Vec<bool>> {
    if chosen.len() != k {
        return Err(Error::domain(format!(
            "need exactly {k} candidates, got {}",
            chosen.len()
        )));
    }
    let mut member = vec![false; v.len()];
    for c in chosen {
        let slot = member
            .get_mut(c.index())
            .ok_or_else(|| Error::UnknownCandidate(c.to_string()))?;
        if std::mem::replace(slot, true) {
            return Err(Error::domain(format!("candidate {c} chosen twice")));
        }
    }
    Ok(member)
}

/// Cheapest price of a ranking whose first `k` positions hold exactly `chosen`.
pub fn move_to_top_cost(
    v: &Ranking,
    chosen: &[CandidateId],
    k: usize,
    costs: &CostTable,
) -> Result<Rational> {
    let member = check_subset(v, chosen, k)?;
    let mut passed: Vec<CandidateId> = Vec::new();
    let mut total = Rational::zero();
    for &c in v.order() {
        if member[c.index()] {
            total += passed.iter().map(|&a| costs.cost(a, c)).sum::<Rational>();
        } else {
            passed.push(c);
        }
    }
    Ok(total)
}

/// The ranking realising [`move_to_top_cost`]: `chosen` first, everything
/// else after, both in their original relative order.
pub fn move_to_top(v: &Ranking, chosen: &[CandidateId], k: usize) -> Result<Ranking> {
    let member = check_subset(v, chosen, k)?;
    let (top, rest): (Vec<CandidateId>, Vec<CandidateId>) =
        v.order().iter().partition(|c| member[c.index()]);
    Ranking::new(top.into_iter().chain(rest).collect(), v.len())
}

/// Target ranking for every expanded vote.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bribery {
    pub targets: Vec<Ranking>,
}

impl Bribery {
    /// The bribery that changes nothing.
    pub fn identity(e: &Election) -> Self {
        Bribery {
            targets: e.expanded(),
        }
    }

    /// Minimum-cost swaps realising every target, tagged with the expanded
    /// vote index.
    pub fn swaps(&self, e: &Election) -> Result<Vec<Swap>> {
        let mut out = Vec::new();
        for (j, (v, t)) in e.expanded().iter().zip(&self.targets).enumerate() {
            for (first, second) in swap_sequence(v, t)? {
                out.push(Swap {
                    vote: j,
                    first,
                    second,
                });
            }
        }
        Ok(out)
    }
}

/// A Swap Bribery question: can `preferred` be made a winner by swaps of
/// total cost at most `budget`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BriberyInstance {
    pub election: Election,
    pub rule: VotingRule,
    pub preferred: CandidateId,
    pub costs: SwapCostFunction,
    pub budget: Rational,
    pub mode: WinnerMode,
}

impl BriberyInstance {
    pub fn new(
        election: Election,
        rule: VotingRule,
        preferred: CandidateId,
        costs: SwapCostFunction,
        budget: Rational,
        mode: WinnerMode,
    ) -> Result<Self> {
        let inst = BriberyInstance {
            election,
            rule,
            preferred,
            costs,
            budget,
            mode,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.election.m();
        self.rule.validate(m)?;
        if !self.election.roster().contains(self.preferred) {
            return Err(Error::UnknownCandidate(self.preferred.to_string()));
        }
        if self.budget < Rational::zero() {
            return Err(Error::domain("budget must be non-negative"));
        }
        if self.costs.len() != self.election.votes().len() {
            return Err(Error::domain(format!(
                "{} cost tables for {} votes",
                self.costs.len(),
                self.election.votes().len()
            )));
        }
        for t in self.costs.tables() {
            if t.default < Rational::zero() {
                return Err(Error::domain("negative default cost"));
            }
            for (a, b, c) in t.overrides() {
                if a.index() >= m || b.index() >= m {
                    return Err(Error::UnknownCandidate(format!("{a} or {b}")));
                }
                if c < Rational::zero() {
                    return Err(Error::domain("negative swap cost"));
                }
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.election.m()
    }

    /// Cost table of every expanded vote.
    pub fn expanded_tables(&self) -> Vec<&CostTable> {
        self.election
            .expanded_owner()
            .into_iter()
            .map(|i| self.costs.table(i))
            .collect()
    }

    /// Whether `preferred` wins the election as cast.
    pub fn preferred_wins_now(&self) -> Result<bool> {
        crate::election::preferred_wins(&self.election, &self.rule, self.preferred, self.mode)
    }

    pub fn approval_k(&self) -> Result<usize> {
        self.rule.approval_k().ok_or_else(|| {
            Error::UnsupportedRule(format!("k-approval required, got {:?}", self.rule))
        })
    }
}

/// Outcome of checking a bribery against an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub cost: Rational,
    pub preferred_wins: bool,
    pub within_budget: bool,
}

impl VerifyReport {
    pub fn is_solution(&self) -> bool {
        self.preferred_wins && self.within_budget
    }
}

pub fn verify_bribery(inst: &BriberyInstance, b: &Bribery) -> Result<VerifyReport> {
    let e = &inst.election;
    let m = e.m();
    let expanded = e.expanded();
    if b.targets.len() != expanded.len() {
        return Err(Error::domain(format!(
            "bribery has {} targets for {} votes",
            b.targets.len(),
            expanded.len()
        )));
    }
    let owner = e.expanded_owner();
    let mut cost = Rational::zero();
    for (j, (v, t)) in expanded.iter().zip(&b.targets).enumerate() {
        if t.len() != m {
            return Err(Error::InvalidRanking(format!("target {j} is not a full ranking")));
        }
        cost += transform_cost(v, t, inst.costs.table(owner[j]))?;
    }
    let wins = preferred_wins_of(
        b.targets.iter().map(|t| (t, 1)),
        m,
        &inst.rule,
        inst.preferred,
        inst.mode,
    )?;
    Ok(VerifyReport {
        within_budget: cost <= inst.budget,
        cost,
        preferred_wins: wins,
    })
}
