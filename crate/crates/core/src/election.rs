//! Candidates, rankings, elections and winner determination.
//!
//! Votes carry a multiplicity so that large generated elections stay
//! compact; every rule counts a vote of multiplicity `w` exactly like `w`
//! separate copies.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Dense candidate index into a [`Roster`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub u32);

impl CandidateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for CandidateId {
    fn from(i: usize) -> Self {
        CandidateId(i as u32)
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Ordered list of uniquely named candidates.
#[derive(Debug, Clone, Default)]
pub struct Roster {
    names: Vec<String>,
    index: HashMap<String, CandidateId>,
}

impl PartialEq for Roster {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Roster {}

impl Roster {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut roster = Roster::default();
        for name in names {
            roster.push(name)?;
        }
        Ok(roster)
    }

    /// Appends a candidate and returns its id.
    pub fn push(&mut self, name: impl Into<String>) -> Result<CandidateId> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::domain(format!("invalid candidate name {name:?}")));
        }
        if self.index.contains_key(&name) {
            return Err(Error::domain(format!("duplicate candidate `{name}`")));
        }
        let id = CandidateId::from(self.names.len());
        self.index.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, c: CandidateId) -> &str {
        &self.names[c.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Result<CandidateId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownCandidate(name.to_string()))
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        c.index() < self.names.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = CandidateId> + '_ {
        (0..self.names.len()).map(CandidateId::from)
    }
}

/// A strict linear order over the roster, most preferred first.
///
/// The order is shared behind an `Arc`, so cloning a ranking is cheap.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking(Arc<[CandidateId]>);

impl Ranking {
    /// Builds a ranking, checking that `order` permutes `0..m`.
    pub fn new(order: Vec<CandidateId>, m: usize) -> Result<Self> {
        if order.len() != m {
            return Err(Error::InvalidRanking(format!(
                "expected {m} candidates, got {}",
                order.len()
            )));
        }
        let mut seen = vec![false; m];
        for c in &order {
            let i = c.index();
            if i >= m {
                return Err(Error::InvalidRanking(format!("candidate {c} out of range")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidRanking(format!("candidate {c} listed twice")));
            }
        }
        Ok(Ranking(order.into()))
    }

    pub fn from_indices(order: &[usize]) -> Result<Self> {
        Self::new(order.iter().map(|&i| CandidateId::from(i)).collect(), order.len())
    }

    /// The identity order `0, 1, …, m-1`.
    pub fn identity(m: usize) -> Self {
        Ranking((0..m).map(CandidateId::from).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn top(&self, k: usize) -> &[CandidateId] {
        &self.0[..k.min(self.0.len())]
    }

    /// 0-based position of every candidate, indexed by candidate.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, c) in self.0.iter().enumerate() {
            pos[c.index()] = i;
        }
        pos
    }

    pub fn to_vec(&self) -> Vec<CandidateId> {
        self.0.to_vec()
    }
}

/// 1-based position of `c` in `v`.
pub fn rank_of(c: CandidateId, v: &Ranking) -> Result<usize> {
    v.order()
        .iter()
        .position(|&x| x == c)
        .map(|i| i + 1)
        .ok_or_else(|| Error::UnknownCandidate(c.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vote {
    pub ranking: Ranking,
    pub multiplicity: u64,
}

impl Vote {
    pub fn new(ranking: Ranking, multiplicity: u64) -> Self {
        Vote {
            ranking,
            multiplicity,
        }
    }

    pub fn single(ranking: Ranking) -> Self {
        Vote::new(ranking, 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    roster: Roster,
    votes: Vec<Vote>,
}

impl Election {
    pub fn new(roster: Roster, votes: Vec<Vote>) -> Result<Self> {
        let m = roster.len();
        if m == 0 {
            return Err(Error::domain("election has no candidates"));
        }
        for (i, v) in votes.iter().enumerate() {
            if v.multiplicity == 0 {
                return Err(Error::domain(format!("vote {i} has multiplicity 0")));
            }
            if v.ranking.len() != m {
                return Err(Error::InvalidRanking(format!(
                    "vote {i} ranks {} of {m} candidates",
                    v.ranking.len()
                )));
            }
        }
        let e = Election { roster, votes };
        if e.n() == 0 {
            return Err(Error::domain("election has no votes"));
        }
        Ok(e)
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn votes(&self) -> &[Vote] {
        &self.votes
    }

    /// Number of candidates.
    pub fn m(&self) -> usize {
        self.roster.len()
    }

    /// Number of votes counting multiplicities.
    pub fn n(&self) -> u64 {
        self.votes.iter().map(|v| v.multiplicity).sum()
    }

    /// One ranking per expanded vote, in vote order.
    pub fn expanded(&self) -> Vec<Ranking> {
        self.votes
            .iter()
            .flat_map(|v| std::iter::repeat_n(v.ranking.clone(), v.multiplicity as usize))
            .collect()
    }

    /// Maps every expanded vote index to the index of its vote entry.
    pub fn expanded_owner(&self) -> Vec<usize> {
        self.votes
            .iter()
            .enumerate()
            .flat_map(|(i, v)| std::iter::repeat_n(i, v.multiplicity as usize))
            .collect()
    }

    pub(crate) fn weighted(&self) -> impl Iterator<Item = (&Ranking, u64)> + Clone {
        self.votes.iter().map(|v| (&v.ranking, v.multiplicity))
    }
}

/// The voting rules understood by the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VotingRule {
    /// One point for each of the first `k` positions.
    Approval { k: usize },
    /// Positional scoring with a non-increasing vector `s_1 ≥ … ≥ s_m`.
    Scoring(Vec<u64>),
    Bucklin,
}

impl VotingRule {
    pub fn validate(&self, m: usize) -> Result<()> {
        match self {
            VotingRule::Approval { k } if *k == 0 || *k > m => Err(Error::domain(format!(
                "k-approval needs 1 <= k <= m, got k={k}, m={m}"
            ))),
            VotingRule::Scoring(s) if s.len() != m => Err(Error::domain(format!(
                "scoring vector has {} entries for {m} candidates",
                s.len()
            ))),
            VotingRule::Scoring(s) if s.windows(2).any(|w| w[0] < w[1]) => {
                Err(Error::domain("scoring vector must be non-increasing"))
            }
            _ => Ok(()),
        }
    }

    pub fn approval_k(&self) -> Option<usize> {
        match self {
            VotingRule::Approval { k } => Some(*k),
            _ => None,
        }
    }
}

/// Co-winner (`p` ties for first) or unique-winner semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WinnerMode {
    #[default]
    CoWinner,
    Unique,
}

pub(crate) fn tally<'a>(
    votes: impl Iterator<Item = (&'a Ranking, u64)>,
    m: usize,
    rule: &VotingRule,
) -> Result<Vec<u64>> {
    rule.validate(m)?;
    let mut scores = vec![0u64; m];
    match rule {
        VotingRule::Approval { k } => {
            for (r, w) in votes {
                for c in r.top(*k) {
                    scores[c.index()] += w;
                }
            }
        }
        VotingRule::Scoring(s) => {
            for (r, w) in votes {
                for (pos, c) in r.order().iter().enumerate() {
                    scores[c.index()] += w * s[pos];
                }
            }
        }
        VotingRule::Bucklin => {
            return Err(Error::UnsupportedRule(
                "Bucklin is not score-additive".into(),
            ))
        }
    }
    Ok(scores)
}

/// Total score of `c` under a score-based rule.
pub fn score(c: CandidateId, e: &Election, rule: &VotingRule) -> Result<u64> {
    if !e.roster().contains(c) {
        return Err(Error::UnknownCandidate(c.to_string()));
    }
    Ok(scores(e, rule)?[c.index()])
}

pub fn scores(e: &Election, rule: &VotingRule) -> Result<Vec<u64>> {
    tally(e.weighted(), e.m(), rule)
}

/// Bucklin winning round `b` (1-based) together with the `b`-approval scores.
pub(crate) fn bucklin_round_of<'a>(
    votes: impl Iterator<Item = (&'a Ranking, u64)> + Clone,
    m: usize,
) -> (usize, Vec<u64>) {
    let n: u64 = votes.clone().map(|(_, w)| w).sum();
    let quota = n / 2 + 1;
    let mut scores = vec![0u64; m];
    for b in 1..=m {
        for (r, w) in votes.clone() {
            scores[r.order()[b - 1].index()] += w;
        }
        if scores.iter().any(|&s| s >= quota) {
            return (b, scores);
        }
    }
    // Round m always reaches the quota since every candidate then has score n.
    unreachable!("Bucklin round must exist for a non-empty election")
}

pub fn bucklin_round(e: &Election) -> (usize, Vec<u64>) {
    bucklin_round_of(e.weighted(), e.m())
}

pub(crate) fn winners_of<'a>(
    votes: impl Iterator<Item = (&'a Ranking, u64)> + Clone,
    m: usize,
    rule: &VotingRule,
) -> Result<Vec<CandidateId>> {
    let scores = match rule {
        VotingRule::Bucklin => bucklin_round_of(votes, m).1,
        _ => tally(votes, m, rule)?,
    };
    let best = scores.iter().copied().max().unwrap_or(0);
    Ok(scores
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == best)
        .map(|(i, _)| CandidateId::from(i))
        .collect())
}

/// All candidates of maximal score (for Bucklin: maximal score in the
/// winning round). Ties are never broken.
pub fn winners(e: &Election, rule: &VotingRule) -> Result<Vec<CandidateId>> {
    winners_of(e.weighted(), e.m(), rule)
}

pub(crate) fn preferred_wins_of<'a>(
    votes: impl Iterator<Item = (&'a Ranking, u64)> + Clone,
    m: usize,
    rule: &VotingRule,
    p: CandidateId,
    mode: WinnerMode,
) -> Result<bool> {
    let w = winners_of(votes, m, rule)?;
    Ok(match mode {
        WinnerMode::CoWinner => w.contains(&p),
        WinnerMode::Unique => w == [p],
    })
}

/// Whether `p` wins `e` under `rule` and `mode`.
pub fn preferred_wins(
    e: &Election,
    rule: &VotingRule,
    p: CandidateId,
    mode: WinnerMode,
) -> Result<bool> {
    preferred_wins_of(e.weighted(), e.m(), rule, p, mode)
}
