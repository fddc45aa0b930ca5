//! 2-approval instance that encodes Multicolored Clique with prices in
//! `{1, 1+ε}` and a budget of `k³ + 10k²`.
//!
//! Every non-dummy candidate except `r` and the `a` candidates starts with
//! exactly `K` points, like `p`; each `a` has one point too many and must
//! pass it along a path of selection and incidence gadgets that ends at
//! `r`. Classes are numbered `1..=k` internally; class `i` holds the
//! vertices of color `i − 1`.

use std::collections::HashMap;

use num_traits::One;

use crate::election::{scores, CandidateId, Election, Ranking, Roster, Vote, VotingRule, WinnerMode};
use crate::error::{Error, Result};
use crate::swap::{Bribery, BriberyInstance, CostTable, SwapCostFunction};
use crate::Rational;

use super::graph::ColoredGraph;

/// A generated instance with the bookkeeping needed to build the bribery
/// that corresponds to a clique.
#[derive(Debug, Clone)]
pub struct CliqueGadget {
    pub instance: BriberyInstance,
    pub k: usize,
    /// Target score `K` of `p` and the middle tier.
    pub target: u64,
    pub epsilon: Rational,
    /// Vote entries of each transfer path `q1 → q2`; parallel paths are listed separately.
    chains: HashMap<(CandidateId, CandidateId), Vec<Vec<usize>>>,
    selection: HashMap<(usize, usize), usize>,
    incidence: HashMap<(usize, usize, usize, usize), usize>,
    guards: usize,
    dummies: Vec<CandidateId>,
}

struct Builder {
    roster: Roster,
    prefixes: Vec<Vec<CandidateId>>,
    expensive: Vec<Vec<(CandidateId, CandidateId)>>,
    chains: HashMap<(CandidateId, CandidateId), Vec<Vec<usize>>>,
    transporters: Vec<CandidateId>,
    dummies: Vec<CandidateId>,
}

impl Builder {
    fn add(&mut self, name: String) -> CandidateId {
        self.roster.push(name).expect("generated names are unique")
    }

    fn id(&self, name: &str) -> CandidateId {
        self.roster.id(name).expect("candidate was generated")
    }

    fn dummy(&mut self) -> CandidateId {
        let d = self.add(format!("d{}", self.dummies.len() + 1));
        self.dummies.push(d);
        d
    }

    fn vote(&mut self, prefix: Vec<CandidateId>) -> usize {
        self.prefixes.push(prefix);
        self.expensive.push(Vec::new());
        self.prefixes.len() - 1
    }

    /// Votes letting `q1` pass one point to `q2` at cost `c`.
    fn chain(&mut self, q1: CandidateId, q2: CandidateId, c: usize) {
        let mut path = vec![q1];
        for _ in 1..c {
            let t = self.add(format!("t{}", self.transporters.len() + 1));
            self.transporters.push(t);
            path.push(t);
        }
        path.push(q2);
        let mut votes = Vec::with_capacity(c);
        for w in path.windows(2) {
            let d = self.dummy();
            votes.push(self.vote(vec![d, w[0], w[1]]));
        }
        self.chains.entry((q1, q2)).or_default().push(votes);
    }
}

fn a(i: usize, j: usize) -> String {
    format!("a_{i}_{j}")
}
fn vx(kind: &str, i: usize, x: usize) -> String {
    format!("{kind}_{i}_v{x}")
}
fn mm(kind: &str, i: usize, j: usize) -> String {
    format!("{kind}_{i}_{j}")
}

/// Builds the instance for `g`; `epsilon` is the surcharge on the
/// expensive swaps of the gadget votes.
pub fn multicolored_clique_instance(g: &ColoredGraph, epsilon: Rational) -> Result<CliqueGadget> {
    let k = g.k();
    if k < 2 {
        return Err(Error::domain(format!("need at least two color classes, got {k}")));
    }
    if epsilon <= Rational::from_integer(0) {
        return Err(Error::domain("epsilon must be positive"));
    }
    g.check_independent()?;
    let nv = g.graph.n();
    let class = |i: usize| g.class(i - 1);
    let col = |x: usize| g.color(x) + 1;
    // |E_x^i|
    let deg = |x: usize, i: usize| g.edges_into(x, i - 1) as u64;

    let beta = (k * k * k + 10 * k * k) as u64;
    let mut big_k = (k * k) as u64;
    for i in 1..=k {
        big_k = big_k.max(class(i).len() as u64);
        for x in 0..nv {
            if col(x) != i {
                big_k = big_k.max(deg(x, i));
            }
        }
    }
    big_k = big_k.max(2);
    big_k += big_k % 2;

    let mut b = Builder {
        roster: Roster::default(),
        prefixes: Vec::new(),
        expensive: Vec::new(),
        chains: HashMap::new(),
        transporters: Vec::new(),
        dummies: Vec::new(),
    };
    let p = b.add("p".into());
    let r = b.add("r".into());
    let guards: Vec<CandidateId> = (1..=beta + 2).map(|h| b.add(format!("g{h}"))).collect();
    for i in 1..=k {
        for j in 1..=k {
            b.add(a(i, j));
        }
    }
    for kind in ["b", "c", "ct", "f", "h"] {
        for i in 1..=k {
            for x in 0..nv {
                b.add(vx(kind, i, x));
            }
        }
    }
    for i in 1..=k {
        for x in (0..nv).filter(|&x| col(x) < i) {
            b.add(vx("ht", i, x));
        }
    }
    for i in 1..=k {
        for j in i..=k {
            b.add(mm("m", i, j));
        }
    }
    for i in 1..=k {
        for j in i + 1..=k {
            b.add(mm("mt", i, j));
        }
    }

    // selection
    let mut selection = HashMap::new();
    for i in 1..=k {
        for j in 1..=k {
            for x in class(j) {
                b.chain(b.id(&a(i, j)), b.id(&vx("b", i, x)), 1);
            }
        }
    }
    for x in 0..nv {
        b.chain(b.id(&vx("b", 1, x)), b.id(&vx("ct", 1, x)), 2);
    }
    for i in 2..=k {
        for x in 0..nv {
            let (bb, c, ct, f) = (
                b.id(&vx("b", i, x)),
                b.id(&vx("c", i - 1, x)),
                b.id(&vx("ct", i, x)),
                b.id(&vx("f", i - 1, x)),
            );
            let v = b.vote(vec![bb, c, ct, f]);
            b.expensive[v] = vec![(bb, c), (ct, f)];
            selection.insert((i, x), v);
        }
    }
    for x in 0..nv {
        b.chain(b.id(&vx("c", k, x)), b.id(&vx("f", k, x)), 2);
    }
    for i in 1..=k {
        for x in 0..nv {
            b.chain(b.id(&vx("ct", i, x)), b.id(&vx("c", i, x)), 1);
        }
    }
    for i in 1..=k {
        for x in 0..nv {
            b.chain(b.id(&vx("f", i, x)), b.id(&vx("h", i, x)), 2 * (k - i) + 1);
        }
    }

    // incidence
    let mut incidence = HashMap::new();
    for i in 1..=k {
        for x in (0..nv).filter(|&x| col(x) < i) {
            b.chain(b.id(&vx("h", i, x)), b.id(&vx("ht", i, x)), 1);
        }
    }
    for i in 1..=k {
        for j in i + 1..=k {
            for x in class(j) {
                for y in class(i) {
                    if !g.graph.adjacent(x, y) {
                        continue;
                    }
                    let (h, ht, mt, m) = (
                        b.id(&vx("h", i, x)),
                        b.id(&vx("ht", j, y)),
                        b.id(&mm("mt", i, j)),
                        b.id(&mm("m", i, j)),
                    );
                    let v = b.vote(vec![h, ht, mt, m]);
                    b.expensive[v] = vec![(h, ht), (mt, m)];
                    incidence.insert((i, j, y, x), v);
                }
            }
        }
    }
    for i in 1..=k {
        for j in i + 1..=k {
            b.chain(b.id(&mm("mt", i, j)), b.id(&mm("m", i, j)), 1);
        }
    }
    for i in 1..=k {
        for x in class(i) {
            b.chain(b.id(&vx("h", i, x)), b.id(&mm("m", i, i)), 3);
        }
    }
    for i in 1..=k {
        for j in i + 1..=k {
            let m = b.id(&mm("m", i, j));
            b.chain(m, r, 1);
            b.chain(m, r, 1);
        }
        let m = b.id(&mm("m", i, i));
        b.chain(m, r, 1);
    }

    // initial scores
    let mut initial: Vec<(CandidateId, u64)> = Vec::new();
    let mut special = vec![false; b.roster.len()];
    special[p.index()] = true;
    special[r.index()] = true;
    for g in &guards {
        special[g.index()] = true;
    }
    initial.push((p, big_k));
    for i in 1..=k {
        for j in 1..=k {
            let c = b.id(&a(i, j));
            special[c.index()] = true;
            initial.push((c, big_k + 1 - class(j).len() as u64));
        }
    }
    for i in 1..=k {
        for x in 0..nv {
            if col(x) > i {
                let c = b.id(&vx("h", i, x));
                special[c.index()] = true;
                initial.push((c, big_k - deg(x, i)));
            }
            if col(x) < i {
                let c = b.id(&vx("ht", i, x));
                special[c.index()] = true;
                initial.push((c, big_k - deg(x, i)));
            }
        }
        for j in i + 1..=k {
            let c = b.id(&mm("m", i, j));
            special[c.index()] = true;
            initial.push((c, big_k - 2));
        }
    }
    let rest: Vec<CandidateId> = b
        .roster
        .ids()
        .filter(|c| !special[c.index()] && !b.dummies.contains(c))
        .collect();
    initial.extend(rest.into_iter().map(|c| (c, big_k - 1)));
    for (c, mult) in initial {
        for _ in 0..mult {
            let d = b.dummy();
            b.vote(vec![c, d]);
        }
    }

    // rankings: truncate with guards up to position β+2, then everything else
    let m = b.roster.len();
    let depth = beta as usize + 2;
    let mut votes = Vec::with_capacity(b.prefixes.len() + depth);
    let mut tables = Vec::with_capacity(b.prefixes.len() + depth);
    let mut next_guard = 0usize;
    let one = Rational::one();
    for (prefix, expensive) in b.prefixes.iter().zip(&b.expensive) {
        let mut order = prefix.clone();
        for _ in prefix.len()..depth {
            order.push(guards[next_guard]);
            next_guard = (next_guard + 1) % guards.len();
        }
        votes.push(Vote::single(complete(order, m)?));
        let mut t = CostTable::unit();
        for &(x, y) in expensive {
            t.set_symmetric(x, y, one + epsilon)?;
        }
        tables.push(t);
    }
    for h in 0..guards.len() {
        let order = guards[h..].iter().chain(&guards[..h]).copied().collect();
        votes.push(Vote::new(complete(order, m)?, big_k / 2));
        tables.push(CostTable::unit());
    }

    let instance = BriberyInstance::new(
        Election::new(b.roster, votes)?,
        VotingRule::Approval { k: 2 },
        p,
        SwapCostFunction::new(tables),
        Rational::from_integer(beta as i64),
        WinnerMode::CoWinner,
    )?;
    let gadget = CliqueGadget {
        instance,
        k,
        target: big_k,
        epsilon,
        chains: b.chains,
        selection,
        incidence,
        guards: guards.len(),
        dummies: b.dummies,
    };
    gadget.audit().expect("initial scores of the generated instance");
    Ok(gadget)
}

fn complete(mut order: Vec<CandidateId>, m: usize) -> Result<Ranking> {
    let mut used = vec![false; m];
    for c in &order {
        used[c.index()] = true;
    }
    order.extend((0..m).filter(|&c| !used[c]).map(CandidateId::from));
    Ranking::new(order, m)
}

impl CliqueGadget {
    pub fn budget(&self) -> Rational {
        self.instance.budget
    }

    pub fn guard_count(&self) -> usize {
        self.guards
    }

    pub fn candidate(&self, name: &str) -> Result<CandidateId> {
        self.instance.election.roster().id(name)
    }

    /// Checks the initial scores: `r` has 0, every `a` has `K+1`, dummies
    /// at most 1 and everything else exactly `K`.
    pub fn audit(&self) -> Result<()> {
        let e = &self.instance.election;
        let s = scores(e, &self.instance.rule)?;
        let mut is_dummy = vec![false; e.m()];
        for d in &self.dummies {
            is_dummy[d.index()] = true;
        }
        for c in e.roster().ids() {
            let name = e.roster().name(c);
            let want_ok = if is_dummy[c.index()] {
                s[c.index()] <= 1
            } else if name == "r" {
                s[c.index()] == 0
            } else if name.starts_with("a_") {
                s[c.index()] == self.target + 1
            } else {
                s[c.index()] == self.target
            };
            if !want_ok {
                return Err(Error::domain(format!(
                    "candidate {name} starts with {} points (K = {})",
                    s[c.index()],
                    self.target
                )));
            }
        }
        Ok(())
    }
}

/// The bribery that moves every surplus point to `r` along the paths
/// picked by `clique`, where `clique[c]` is the chosen vertex of color `c`.
pub fn clique_witness_bribery(g: &ColoredGraph, clique: &[usize], gadget: &CliqueGadget) -> Result<Bribery> {
    if !g.is_multicolored_clique(clique) {
        return Err(Error::domain(format!("{clique:?} is not a multicolored clique")));
    }
    let k = gadget.k;
    if g.k() != k {
        return Err(Error::domain("graph does not match the generated instance"));
    }
    let e = &gadget.instance.election;
    let mut targets = e.expanded();
    let id = |s: String| gadget.candidate(&s);
    // x[i] for classes 1..=k
    let x = |i: usize| clique[i - 1];

    let mut used: HashMap<(CandidateId, CandidateId), usize> = HashMap::new();
    let mut transfer = |q1: CandidateId, q2: CandidateId, targets: &mut Vec<Ranking>| -> Result<()> {
        let paths = gadget
            .chains
            .get(&(q1, q2))
            .ok_or_else(|| Error::domain("no transfer path between the candidates"))?;
        let n = used.entry((q1, q2)).or_insert(0);
        let path = paths
            .get(*n)
            .ok_or_else(|| Error::domain("transfer path used too often"))?;
        *n += 1;
        for &v in path {
            targets[v] = reorder(&targets[v], &[0, 2, 1])?;
        }
        Ok(())
    };

    for i in 1..=k {
        for j in 1..=k {
            transfer(id(a(i, j))?, id(vx("b", i, x(j)))?, &mut targets)?;
        }
    }
    for j in 1..=k {
        let xj = x(j);
        transfer(id(vx("b", 1, xj))?, id(vx("ct", 1, xj))?, &mut targets)?;
        for i in 2..=k {
            let v = gadget.selection[&(i, xj)];
            targets[v] = reorder(&targets[v], &[2, 3, 0, 1])?;
        }
        for i in 1..=k {
            transfer(id(vx("ct", i, xj))?, id(vx("c", i, xj))?, &mut targets)?;
            transfer(id(vx("f", i, xj))?, id(vx("h", i, xj))?, &mut targets)?;
        }
        transfer(id(vx("c", k, xj))?, id(vx("f", k, xj))?, &mut targets)?;
    }
    for i in 1..=k {
        for j in 1..i {
            transfer(id(vx("h", i, x(j)))?, id(vx("ht", i, x(j)))?, &mut targets)?;
        }
        for j in i + 1..=k {
            let v = gadget.incidence[&(i, j, x(i), x(j))];
            targets[v] = reorder(&targets[v], &[2, 3, 0, 1])?;
            let m = id(mm("m", i, j))?;
            transfer(id(mm("mt", i, j))?, m, &mut targets)?;
            let r = id("r".into())?;
            transfer(m, r, &mut targets)?;
            transfer(m, r, &mut targets)?;
        }
        let mii = id(mm("m", i, i))?;
        transfer(id(vx("h", i, x(i)))?, mii, &mut targets)?;
        transfer(mii, id("r".into())?, &mut targets)?;
    }
    Ok(Bribery { targets })
}

/// `v` with its first `perm.len()` entries rearranged: new position `i`
/// holds old position `perm[i]`.
fn reorder(v: &Ranking, perm: &[usize]) -> Result<Ranking> {
    let mut order = v.to_vec();
    for (i, &j) in perm.iter().enumerate() {
        order[i] = v.order()[j];
    }
    Ranking::new(order, v.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::Graph;
    use crate::swap::verify_bribery;

    fn square() -> ColoredGraph {
        // classes {0,1} and {2,3}; 0-2 and 1-3 are the cliques
        let g = Graph::with_edges(4, [(0, 2), (1, 3)]).unwrap();
        ColoredGraph::new(g, vec![0, 0, 1, 1], 2).unwrap()
    }

    #[test]
    fn sizes_for_two_classes() {
        let gadget = multicolored_clique_instance(&square(), Rational::one()).unwrap();
        assert_eq!(gadget.budget(), Rational::from_integer(48));
        assert_eq!(gadget.guard_count(), 50);
        assert_eq!(gadget.target, 4);
        let m_count = gadget
            .instance
            .election
            .roster()
            .names()
            .iter()
            .filter(|n| n.starts_with("m_"))
            .count();
        assert_eq!(m_count, 3);
    }

    #[test]
    fn witness_costs_exactly_the_budget() {
        let g = square();
        let gadget = multicolored_clique_instance(&g, Rational::one()).unwrap();
        let w = clique_witness_bribery(&g, &[1, 3], &gadget).unwrap();
        let rep = verify_bribery(&gadget.instance, &w).unwrap();
        assert_eq!(rep.cost, Rational::from_integer(48));
        assert!(rep.preferred_wins);
        let after = Election::new(
            gadget.instance.election.roster().clone(),
            w.targets.into_iter().map(Vote::single).collect(),
        )
        .unwrap();
        let s = scores(&after, &gadget.instance.rule).unwrap();
        assert_eq!(s[gadget.candidate("r").unwrap().index()], 4);
        assert_eq!(s[gadget.candidate("a_1_2").unwrap().index()], 4);
        assert!(clique_witness_bribery(&g, &[0, 3], &gadget).is_err());
    }

    #[test]
    fn rejects_edges_inside_a_class() {
        let g = Graph::with_edges(2, [(0, 1)]).unwrap();
        let cg = ColoredGraph::new(g, vec![0, 0], 2).unwrap();
        assert!(multicolored_clique_instance(&cg, Rational::one()).is_err());
    }
}
