use std::collections::BTreeSet;

use num_traits::Zero;

use crate::election::{preferred_wins_of, CandidateId, Election, Ranking, Roster, Vote, VotingRule, WinnerMode};
use crate::error::{Error, Result};
use crate::swap::{BriberyInstance, CostTable, SwapCostFunction};
use crate::Rational;

/// Cap on the number of joint extensions [`possible_winner_brute`] visits.
pub const DEFAULT_EXTENSION_CAP: u128 = 1_000_000;

/// Strict partial order over `0..m`, stored transitively closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialVote {
    m: usize,
    // before[a] = candidates that a must precede
    before: Vec<BTreeSet<usize>>,
}

impl PartialVote {
    /// Closes `pairs` (`a` before `b`) transitively; a cycle is an error.
    pub fn new(m: usize, pairs: impl IntoIterator<Item = (CandidateId, CandidateId)>) -> Result<Self> {
        let mut before = vec![BTreeSet::new(); m];
        for (a, b) in pairs {
            if a.index() >= m || b.index() >= m {
                return Err(Error::UnknownCandidate(format!("{a} or {b}")));
            }
            before[a.index()].insert(b.index());
        }
        // Floyd–Warshall style closure
        for via in 0..m {
            for a in 0..m {
                if before[a].contains(&via) {
                    let extra: Vec<usize> = before[via].iter().copied().collect();
                    before[a].extend(extra);
                }
            }
        }
        if let Some(a) = (0..m).find(|&a| before[a].contains(&a)) {
            return Err(Error::domain(format!(
                "order relation has a cycle through candidate {a}"
            )));
        }
        Ok(PartialVote { m, before })
    }

    pub fn empty(m: usize) -> Self {
        PartialVote {
            m,
            before: vec![BTreeSet::new(); m],
        }
    }

    /// The linear order of `v` as a partial vote.
    pub fn linear(v: &Ranking) -> Self {
        let o = v.order();
        let before = {
            let mut b = vec![BTreeSet::new(); o.len()];
            for i in 0..o.len() {
                b[o[i].index()] = o[i + 1..].iter().map(|c| c.index()).collect();
            }
            b
        };
        PartialVote { m: o.len(), before }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn precedes(&self, a: CandidateId, b: CandidateId) -> bool {
        self.before[a.index()].contains(&b.index())
    }

    /// All ordered pairs of the relation.
    pub fn pairs(&self) -> Vec<(CandidateId, CandidateId)> {
        self.before
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (CandidateId::from(a), CandidateId::from(b))))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.pairs().len() == self.m * self.m.saturating_sub(1) / 2
    }

    pub fn extends_to(&self, v: &Ranking) -> bool {
        let pos = v.positions();
        self.pairs().iter().all(|&(a, b)| pos[a.index()] < pos[b.index()])
    }

    /// Smallest linear extension in lexicographic order of candidate indices.
    pub fn lex_min_extension(&self) -> Ranking {
        let mut indeg = vec![0usize; self.m];
        for bs in &self.before {
            for &b in bs {
                indeg[b] += 1;
            }
        }
        let mut ready: BTreeSet<usize> = (0..self.m).filter(|&c| indeg[c] == 0).collect();
        let mut order = Vec::with_capacity(self.m);
        while let Some(c) = ready.pop_first() {
            order.push(c);
            for &b in &self.before[c] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
        Ranking::from_indices(&order).expect("acyclic relation has a full extension")
    }

    /// Every linear extension, failing once more than `cap` exist.
    pub fn linear_extensions(&self, cap: u128) -> Result<Vec<Ranking>> {
        let mut indeg = vec![0usize; self.m];
        for bs in &self.before {
            for &b in bs {
                indeg[b] += 1;
            }
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.m);
        let mut placed = vec![false; self.m];
        self.extend(&mut indeg, &mut placed, &mut cur, &mut out, cap)?;
        Ok(out)
    }

    fn extend(
        &self,
        indeg: &mut [usize],
        placed: &mut [bool],
        cur: &mut Vec<usize>,
        out: &mut Vec<Ranking>,
        cap: u128,
    ) -> Result<()> {
        if cur.len() == self.m {
            if out.len() as u128 >= cap {
                return Err(Error::Resource {
                    what: "linear extensions",
                    needed: cap + 1,
                    cap,
                });
            }
            out.push(Ranking::from_indices(cur)?);
            return Ok(());
        }
        for c in 0..self.m {
            if placed[c] || indeg[c] != 0 {
                continue;
            }
            placed[c] = true;
            cur.push(c);
            for &b in &self.before[c] {
                indeg[b] -= 1;
            }
            let res = self.extend(indeg, placed, cur, out, cap);
            for &b in &self.before[c] {
                indeg[b] += 1;
            }
            cur.pop();
            placed[c] = false;
            res?;
        }
        Ok(())
    }
}

/// Can `preferred` win once every partial vote is completed?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PossibleWinnerInstance {
    pub roster: Roster,
    pub votes: Vec<PartialVote>,
    pub rule: VotingRule,
    pub preferred: CandidateId,
    pub mode: WinnerMode,
}

impl PossibleWinnerInstance {
    pub fn validate(&self) -> Result<()> {
        let m = self.roster.len();
        self.rule.validate(m)?;
        if !self.roster.contains(self.preferred) {
            return Err(Error::UnknownCandidate(self.preferred.to_string()));
        }
        if self.votes.is_empty() {
            return Err(Error::domain("no votes"));
        }
        if let Some(i) = self.votes.iter().position(|v| v.m() != m) {
            return Err(Error::domain(format!("partial vote {i} is over a different roster")));
        }
        Ok(())
    }
}

/// Zero-budget bribery with prices in `{0, δ}` as a possible-winner question:
/// each vote may only reorder pairs that are free to swap.
pub fn sb_to_pw(inst: &BriberyInstance) -> Result<PossibleWinnerInstance> {
    if !inst.budget.is_zero() {
        return Err(Error::precondition(format!("budget must be 0, got {}", inst.budget)));
    }
    let m = inst.m();
    let mut delta: Option<Rational> = None;
    for t in inst.costs.tables() {
        for c in t.values(m) {
            if c.is_zero() {
                continue;
            }
            match delta {
                None => delta = Some(c),
                Some(d) if d == c => {}
                Some(d) => {
                    return Err(Error::precondition(format!(
                        "prices must take one non-zero value, found {d} and {c}"
                    )))
                }
            }
        }
    }
    let tables = inst.expanded_tables();
    let votes = inst
        .election
        .expanded()
        .iter()
        .zip(tables)
        .map(|(v, t)| {
            let o = v.order();
            let mut pairs = Vec::new();
            for i in 0..o.len() {
                for &b in &o[i + 1..] {
                    if !t.cost(o[i], b).is_zero() {
                        pairs.push((o[i], b));
                    }
                }
            }
            PartialVote::new(m, pairs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PossibleWinnerInstance {
        roster: inst.election.roster().clone(),
        votes,
        rule: inst.rule.clone(),
        preferred: inst.preferred,
        mode: inst.mode,
    })
}

/// Possible winner as zero-budget bribery: every vote is cast as its
/// lexicographically smallest extension, pairs fixed by the partial order
/// cost 1 to swap and all others are free.
pub fn pw_to_sb(pw: &PossibleWinnerInstance) -> Result<BriberyInstance> {
    pw.validate()?;
    let mut votes = Vec::with_capacity(pw.votes.len());
    let mut tables = Vec::with_capacity(pw.votes.len());
    for pv in &pw.votes {
        votes.push(Vote::single(pv.lex_min_extension()));
        let mut t = CostTable::uniform(Rational::zero());
        for (a, b) in pv.pairs() {
            t.set_symmetric(a, b, Rational::from_integer(1))?;
        }
        tables.push(t);
    }
    BriberyInstance::new(
        Election::new(pw.roster.clone(), votes)?,
        pw.rule.clone(),
        pw.preferred,
        SwapCostFunction::new(tables),
        Rational::zero(),
        pw.mode,
    )
}

/// Tries every joint extension.
pub fn possible_winner_brute(pw: &PossibleWinnerInstance, cap: u128) -> Result<bool> {
    pw.validate()?;
    let mut options = Vec::with_capacity(pw.votes.len());
    let mut product: u128 = 1;
    for v in &pw.votes {
        let ext = v.linear_extensions(cap)?;
        product = product.saturating_mul(ext.len() as u128);
        if product > cap {
            return Err(Error::Resource {
                what: "joint extensions",
                needed: product,
                cap,
            });
        }
        options.push(ext);
    }
    let m = pw.roster.len();
    let mut idx = vec![0usize; options.len()];
    loop {
        let chosen = idx.iter().zip(&options).map(|(&i, o)| (&o[i], 1u64));
        if preferred_wins_of(chosen, m, &pw.rule, pw.preferred, pw.mode)? {
            return Ok(true);
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(false);
            }
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
