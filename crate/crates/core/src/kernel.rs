//! Size reduction for k-approval when every swap costs at least 1.
//!
//! With budget `β` a candidate can only gain or lose a point in a vote if it
//! sits within `β` positions of the approval boundary. [`kernelize`] keeps
//! those candidates plus `p` and the strongest of the rest, cuts every vote
//! down to that window, and restores the remaining scores with padding votes
//! made of fresh dummies. The result has size bounded in `n` and `β` only.

use num_traits::{One, ToPrimitive};

use crate::election::{score, CandidateId, Election, Ranking, Roster, Vote, VotingRule, WinnerMode};
use crate::error::{Error, Result};
use crate::swap::{BriberyInstance, CostTable, SwapCostFunction};
use crate::Rational;

#[derive(Debug, Clone)]
pub struct KernelOutput {
    /// The reduced instance, under `(β+1)`-approval.
    pub instance: BriberyInstance,
    /// Original candidates that can change score within budget.
    pub relevant: Vec<CandidateId>,
    /// Highest-scoring original candidate outside `relevant` and other than `p`.
    pub sentinel: Option<CandidateId>,
    /// Kernel ids of the dummy candidates.
    pub dummies: Vec<CandidateId>,
    /// Original candidate behind each kernel candidate (`None` for dummies).
    pub provenance: Vec<Option<CandidateId>>,
}

fn check_costs(inst: &BriberyInstance) -> Result<usize> {
    let k = inst.approval_k()?;
    if let Some((lo, _)) = inst.costs.range(inst.m()) {
        if lo < Rational::one() {
            return Err(Error::precondition(format!(
                "kernelization needs every swap to cost at least 1, found {lo}"
            )));
        }
    }
    Ok(k)
}

fn whole_budget(inst: &BriberyInstance) -> Result<usize> {
    inst.budget
        .floor()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::domain("budget out of range"))
}

/// 1-based position window `[k−β+1, k+β]`, clamped to the vote.
fn window(k: usize, b: usize, m: usize) -> (usize, usize) {
    ((k + 1).saturating_sub(b).max(1), (k + b).min(m))
}

/// Candidates in position window `[k−β+1, k+β]` of at least one vote, in
/// index order.
pub fn relevant_candidates(inst: &BriberyInstance) -> Result<Vec<CandidateId>> {
    let k = check_costs(inst)?;
    let b = whole_budget(inst)?;
    let m = inst.m();
    let (lo, hi) = window(k, b, m);
    let mut hit = vec![false; m];
    for v in inst.election.votes() {
        if lo <= hi {
            for c in &v.ranking.order()[lo - 1..hi] {
                hit[c.index()] = true;
            }
        }
    }
    Ok((0..m).filter(|&c| hit[c]).map(CandidateId::from).collect())
}

fn dummy_name(roster: &Roster, next: usize) -> String {
    let mut prefix = String::from("~d");
    loop {
        let name = format!("{prefix}{next}");
        if !roster.names().contains(&name) {
            return name;
        }
        prefix.insert(0, '~');
    }
}

/// Reduces a co-winner k-approval instance with prices at least 1 to an
/// equivalent `(β+1)`-approval instance with at most `(2nβ+3)n` votes and
/// `n+(2nβ+2)(2nβ+1)` candidates.
pub fn kernelize(inst: &BriberyInstance) -> Result<KernelOutput> {
    let k = check_costs(inst)?;
    if inst.mode != WinnerMode::CoWinner {
        return Err(Error::precondition(
            "kernelization supports co-winner mode only (dummies may tie with p)",
        ));
    }
    let b = whole_budget(inst)?;
    let e = &inst.election;
    let m = e.m();
    let p = inst.preferred;
    let relevant = relevant_candidates(inst)?;
    let rule = VotingRule::Approval { k };

    let mut in_relevant = vec![false; m];
    for c in &relevant {
        in_relevant[c.index()] = true;
    }
    let sentinel = (0..m)
        .map(CandidateId::from)
        .filter(|&c| !in_relevant[c.index()] && c != p)
        .map(|c| Ok((score(c, e, &rule)?, c)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        // highest score, lowest index
        .min_by_key(|&(s, c)| (std::cmp::Reverse(s), c));
    let sentinel = sentinel.map(|(_, c)| c);

    let mut kept = in_relevant.clone();
    kept[p.index()] = true;
    if let Some(c) = sentinel {
        kept[c.index()] = true;
    }
    let mut roster = Roster::default();
    let mut to_kernel: Vec<Option<CandidateId>> = vec![None; m];
    let mut provenance = Vec::new();
    for c in (0..m).filter(|&c| kept[c]) {
        to_kernel[c] = Some(roster.push(e.roster().names()[c].clone())?);
        provenance.push(Some(CandidateId::from(c)));
    }
    let mut dummies = Vec::new();
    let mut fresh = |roster: &mut Roster, provenance: &mut Vec<Option<CandidateId>>| {
        let id = roster.push(dummy_name(e.roster(), dummies.len()))?;
        dummies.push(id);
        provenance.push(None);
        Ok::<_, Error>(id)
    };

    let (lo, hi) = window(k, b, m);
    let kp = b + 1;
    // prefixes before the tail is appended, with their cost tables
    let mut prefixes: Vec<(Vec<CandidateId>, CostTable)> = Vec::new();
    let mut kernel_points = vec![0u64; m];
    let owner = e.expanded_owner();
    for (j, v) in e.expanded().iter().enumerate() {
        let lead = b + lo - k;
        let mut prefix = Vec::with_capacity(2 * b + 1);
        let mut pads = Vec::new();
        for _ in 0..lead {
            pads.push(fresh(&mut roster, &mut provenance)?);
        }
        prefix.extend(&pads);
        let win: &[CandidateId] = if lo <= hi { &v.order()[lo - 1..hi] } else { &[] };
        for (i, &c) in win.iter().enumerate() {
            prefix.push(to_kernel[c.index()].expect("window candidates are kept"));
            if lead + i < kp {
                kernel_points[c.index()] += 1;
            }
        }
        while prefix.len() < 2 * b + 1 {
            let d = fresh(&mut roster, &mut provenance)?;
            pads.push(d);
            prefix.push(d);
        }
        let src = inst.costs.table(owner[j]);
        let mut table = CostTable::unit();
        // padding never moves within budget; when the window is clamped it
        // stands for positions the vote does not have
        let pinned = Rational::from_integer(b as i64 + 1);
        for &d in &pads {
            for &c in &prefix {
                if c != d {
                    table.set(d, c, pinned)?;
                    table.set(c, d, pinned)?;
                }
            }
        }
        for &a in win {
            for &c in win {
                if a != c && src.cost(a, c) != Rational::one() {
                    let (ka, kc) = (to_kernel[a.index()].unwrap(), to_kernel[c.index()].unwrap());
                    table.set(ka, kc, src.cost(a, c))?;
                }
            }
        }
        prefixes.push((prefix, table));
    }
    for c in (0..m).filter(|&c| kept[c]) {
        let id = CandidateId::from(c);
        let missing = score(id, e, &rule)? - kernel_points[c];
        for _ in 0..missing {
            let mut prefix = vec![to_kernel[c].unwrap()];
            for _ in 0..2 * b {
                prefix.push(fresh(&mut roster, &mut provenance)?);
            }
            prefixes.push((prefix, CostTable::unit()));
        }
    }

    let mk = roster.len();
    let mut votes = Vec::with_capacity(prefixes.len());
    let mut tables = Vec::with_capacity(prefixes.len());
    for (prefix, table) in prefixes {
        let mut seen = vec![false; mk];
        for c in &prefix {
            seen[c.index()] = true;
        }
        let order: Vec<CandidateId> = prefix
            .into_iter()
            .chain((0..mk).filter(|&c| !seen[c]).map(CandidateId::from))
            .collect();
        votes.push(Vote::single(Ranking::new(order, mk)?));
        tables.push(table);
    }

    let n = e.n() as usize;
    let (vk, ck) = (votes.len(), mk);
    let vote_bound = (2 * n * b + 3) * n;
    let cand_bound = n + (2 * n * b + 2) * (2 * n * b + 1);
    assert!(vk <= vote_bound, "kernel has {vk} votes, bound {vote_bound}");
    assert!(ck <= cand_bound, "kernel has {ck} candidates, bound {cand_bound}");

    let instance = BriberyInstance::new(
        Election::new(roster, votes)?,
        VotingRule::Approval { k: kp },
        to_kernel[p.index()].unwrap(),
        SwapCostFunction::new(tables),
        inst.budget,
        WinnerMode::CoWinner,
    )?;
    Ok(KernelOutput {
        instance,
        relevant,
        sentinel,
        dummies,
        provenance,
    })
}

/// Result of [`simple_truncation_kernel`].
#[derive(Debug, Clone)]
pub struct Truncation {
    pub instance: BriberyInstance,
    /// Original candidate behind each kept candidate.
    pub provenance: Vec<CandidateId>,
}

/// Deletes every candidate ranked below `k+β` in all votes, except `p`.
/// Deleted candidates score nothing before or after any affordable bribery,
/// and the kept ones keep their positions up to `k+β`.
pub fn simple_truncation_kernel(inst: &BriberyInstance) -> Result<Truncation> {
    let k = check_costs(inst)?;
    let b = whole_budget(inst)?;
    let e = &inst.election;
    let m = e.m();
    let reach = (k + b).min(m);
    let mut kept = vec![false; m];
    kept[inst.preferred.index()] = true;
    for v in e.votes() {
        for c in &v.ranking.order()[..reach] {
            kept[c.index()] = true;
        }
    }
    let mut roster = Roster::default();
    let mut to_new = vec![None; m];
    let mut provenance = Vec::new();
    for c in (0..m).filter(|&c| kept[c]) {
        to_new[c] = Some(roster.push(e.roster().names()[c].clone())?);
        provenance.push(CandidateId::from(c));
    }
    let mk = roster.len();
    let votes = e
        .votes()
        .iter()
        .map(|v| {
            let order = v
                .ranking
                .order()
                .iter()
                .filter_map(|c| to_new[c.index()])
                .collect();
            Ok(Vote::new(Ranking::new(order, mk)?, v.multiplicity))
        })
        .collect::<Result<Vec<_>>>()?;
    let tables = inst
        .costs
        .tables()
        .iter()
        .map(|t| {
            let mut nt = CostTable::uniform(t.default);
            for (a, c, r) in t.overrides() {
                if let (Some(na), Some(nc)) = (to_new[a.index()], to_new[c.index()]) {
                    nt.set(na, nc, r)?;
                }
            }
            Ok(nt)
        })
        .collect::<Result<Vec<_>>>()?;
    let instance = BriberyInstance::new(
        Election::new(roster, votes)?,
        inst.rule.clone(),
        to_new[inst.preferred.index()].unwrap(),
        SwapCostFunction::new(tables),
        inst.budget,
        inst.mode,
    )?;
    Ok(Truncation {
        instance,
        provenance,
    })
}
