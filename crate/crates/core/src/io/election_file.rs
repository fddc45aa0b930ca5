use std::fmt::Write;

use crate::election::{CandidateId, Election, Ranking, Roster, Vote, VotingRule, WinnerMode};
use crate::error::{Error, Result};
use crate::swap::{BriberyInstance, CostTable, SwapCostFunction};
use crate::Rational;

use super::{at, check_name, expect_len, parse_nonneg, parse_num, tokenized};

pub(crate) fn parse_rule(line: usize, toks: &[&str]) -> Result<VotingRule> {
    match toks.get(1).copied() {
        Some("k-approval") => {
            expect_len(line, toks, 3)?;
            Ok(VotingRule::Approval {
                k: parse_num(line, toks[2])?,
            })
        }
        Some("bucklin") => {
            expect_len(line, toks, 2)?;
            Ok(VotingRule::Bucklin)
        }
        Some("scoring") => {
            expect_len(line, toks, 3)?;
            let s = toks[2]
                .split(',')
                .map(|v| parse_num(line, v))
                .collect::<Result<Vec<u64>>>()?;
            Ok(VotingRule::Scoring(s))
        }
        other => Err(Error::parse(line, format!("unknown rule {other:?}"))),
    }
}

pub(crate) fn rule_text(rule: &VotingRule) -> String {
    match rule {
        VotingRule::Approval { k } => format!("k-approval {k}"),
        VotingRule::Bucklin => "bucklin".into(),
        VotingRule::Scoring(s) => {
            let parts: Vec<String> = s.iter().map(u64::to_string).collect();
            format!("scoring {}", parts.join(","))
        }
    }
}

pub(crate) fn parse_mode(line: usize, s: &str) -> Result<WinnerMode> {
    match s {
        "co-winner" => Ok(WinnerMode::CoWinner),
        "unique-winner" => Ok(WinnerMode::Unique),
        _ => Err(Error::parse(line, format!("unknown mode `{s}`"))),
    }
}

pub(crate) fn mode_text(mode: WinnerMode) -> &'static str {
    match mode {
        WinnerMode::CoWinner => "co-winner",
        WinnerMode::Unique => "unique-winner",
    }
}

/// Stores a once-only key, rejecting repeats.
pub(crate) fn once<T>(slot: &mut Option<(usize, T)>, line: usize, key: &str, v: T) -> Result<()> {
    if slot.is_some() {
        return Err(Error::parse(line, format!("`{key}` given twice")));
    }
    *slot = Some((line, v));
    Ok(())
}

pub(crate) fn resolve(roster: &Roster, line: usize, name: &str) -> Result<CandidateId> {
    roster.id(name).map_err(at(line))
}

/// Collects `candidates` / `candidate` lines into a roster.
#[derive(Default)]
pub(crate) struct RosterLines {
    count: Option<(usize, usize)>,
    roster: Roster,
}

impl RosterLines {
    pub(crate) fn accept(&mut self, line: usize, toks: &[&str]) -> Result<bool> {
        match toks[0] {
            "candidates" => {
                expect_len(line, toks, 2)?;
                once(&mut self.count, line, "candidates", parse_num(line, toks[1])?)?;
            }
            "candidate" => {
                expect_len(line, toks, 3)?;
                let idx: usize = parse_num(line, toks[1])?;
                if idx != self.roster.len() {
                    return Err(Error::parse(
                        line,
                        format!("candidate {idx} declared out of order (expected {})", self.roster.len()),
                    ));
                }
                self.roster.push(toks[2]).map_err(at(line))?;
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub(crate) fn finish(self, last_line: usize) -> Result<Roster> {
        let Some((line, m)) = self.count else {
            return Err(Error::parse(last_line, "missing `candidates`"));
        };
        if m != self.roster.len() {
            return Err(Error::parse(
                line,
                format!("{m} candidates announced, {} declared", self.roster.len()),
            ));
        }
        Ok(self.roster)
    }
}

pub(crate) fn check_header(first: Option<&(usize, Vec<&str>)>, magic: &str) -> Result<()> {
    match first {
        Some((_, t)) if t.len() == 2 && t[0] == magic && t[1] == "1" => Ok(()),
        Some((line, _)) => Err(Error::parse(*line, format!("expected header `{magic} 1`"))),
        None => Err(Error::parse(1, "empty file")),
    }
}

struct VoteLine<'a> {
    line: usize,
    multiplicity: u64,
    order: Vec<&'a str>,
}

/// Parses the election format.
pub fn parse_election(text: &str) -> Result<BriberyInstance> {
    let lines: Vec<(usize, Vec<&str>)> = tokenized(text).collect();
    check_header(lines.first(), "sbe")?;
    let mut roster = RosterLines::default();
    let mut rule = None;
    let mut budget = None;
    let mut preferred = None;
    let mut mode = None;
    let mut votes: Vec<VoteLine> = Vec::new();
    let mut costs: Vec<(usize, usize, Vec<&str>)> = Vec::new();
    let last = lines.last().map_or(1, |l| l.0);

    for (line, toks) in &lines[1..] {
        let line = *line;
        if roster.accept(line, toks)? {
            continue;
        }
        match toks[0] {
            "rule" => once(&mut rule, line, "rule", parse_rule(line, toks)?)?,
            "budget" => {
                expect_len(line, toks, 2)?;
                once(&mut budget, line, "budget", parse_nonneg(line, toks[1])?)?;
            }
            "preferred" => {
                expect_len(line, toks, 2)?;
                once(&mut preferred, line, "preferred", toks[1])?;
            }
            "mode" => {
                expect_len(line, toks, 2)?;
                once(&mut mode, line, "mode", parse_mode(line, toks[1])?)?;
            }
            "vote" => {
                if toks.len() < 5 || toks[2] != "multiplicity" || toks[4] != "order" {
                    return Err(Error::parse(line, "expected `vote <i> multiplicity <w> order <names…>`"));
                }
                let i: usize = parse_num(line, toks[1])?;
                if i != votes.len() {
                    return Err(Error::parse(line, format!("vote {i} out of order (expected {})", votes.len())));
                }
                votes.push(VoteLine {
                    line,
                    multiplicity: parse_num(line, toks[3])?,
                    order: toks[5..].to_vec(),
                });
            }
            "costs" => {
                if toks.len() < 3 {
                    return Err(Error::parse(line, "incomplete `costs` line"));
                }
                let i: usize = parse_num(line, toks[1])?;
                costs.push((line, i, toks[2..].to_vec()));
            }
            other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
        }
    }

    let roster = roster.finish(last)?;
    let m = roster.len();
    let (rule_line, rule) = rule.ok_or_else(|| Error::parse(last, "missing `rule`"))?;
    rule.validate(m).map_err(at(rule_line))?;
    let (_, budget) = budget.ok_or_else(|| Error::parse(last, "missing `budget`"))?;
    let (pline, pname) = preferred.ok_or_else(|| Error::parse(last, "missing `preferred`"))?;
    let preferred = resolve(&roster, pline, pname)?;
    let mode = mode.map_or(WinnerMode::CoWinner, |(_, m)| m);

    let mut entries = Vec::with_capacity(votes.len());
    for v in &votes {
        let ids = v
            .order
            .iter()
            .map(|n| resolve(&roster, v.line, n))
            .collect::<Result<Vec<_>>>()?;
        let ranking = Ranking::new(ids, m).map_err(at(v.line))?;
        if v.multiplicity == 0 {
            return Err(Error::parse(v.line, "multiplicity must be positive"));
        }
        entries.push(Vote::new(ranking, v.multiplicity));
    }
    let mut tables = vec![CostTable::unit(); votes.len()];
    let mut has_default = vec![false; votes.len()];
    for (line, i, rest) in costs {
        let Some(t) = tables.get_mut(i) else {
            return Err(Error::parse(line, format!("costs for unknown vote {i}")));
        };
        match rest[0] {
            "default" => {
                expect_len(line, &rest, 2)?;
                if has_default[i] {
                    return Err(Error::parse(line, format!("default cost of vote {i} given twice")));
                }
                has_default[i] = true;
                t.default = parse_nonneg(line, rest[1])?;
            }
            "pair" => {
                expect_len(line, &rest, 4)?;
                let a = resolve(&roster, line, rest[1])?;
                let b = resolve(&roster, line, rest[2])?;
                t.set(a, b, parse_nonneg(line, rest[3])?).map_err(at(line))?;
            }
            other => return Err(Error::parse(line, format!("unknown costs field `{other}`"))),
        }
    }
    let election = Election::new(roster, entries).map_err(at(last))?;
    BriberyInstance::new(election, rule, preferred, SwapCostFunction::new(tables), budget, mode)
        .map_err(at(last))
}

pub(crate) fn write_roster(out: &mut String, roster: &Roster) -> Result<()> {
    writeln!(out, "candidates {}", roster.len()).unwrap();
    for (i, name) in roster.names().iter().enumerate() {
        check_name(name)?;
        writeln!(out, "candidate {i} {name}").unwrap();
    }
    Ok(())
}

pub(crate) fn order_text(roster: &Roster, r: &Ranking) -> String {
    let names: Vec<&str> = r.order().iter().map(|&c| roster.name(c)).collect();
    names.join(" ")
}

/// Serializes an instance; [`parse_election`] reads it back unchanged.
pub fn write_election(inst: &BriberyInstance) -> Result<String> {
    let roster = inst.election.roster();
    let mut out = String::from("sbe 1\n");
    write_roster(&mut out, roster)?;
    writeln!(out, "rule {}", rule_text(&inst.rule)).unwrap();
    writeln!(out, "budget {}", inst.budget).unwrap();
    writeln!(out, "preferred {}", roster.name(inst.preferred)).unwrap();
    writeln!(out, "mode {}", mode_text(inst.mode)).unwrap();
    for (i, v) in inst.election.votes().iter().enumerate() {
        writeln!(
            out,
            "vote {i} multiplicity {} order {}",
            v.multiplicity,
            order_text(roster, &v.ranking)
        )
        .unwrap();
    }
    for (i, t) in inst.costs.tables().iter().enumerate() {
        if t.default != Rational::from_integer(1) {
            writeln!(out, "costs {i} default {}", t.default).unwrap();
        }
        for (a, b, c) in t.overrides() {
            writeln!(out, "costs {i} pair {} {} {c}", roster.name(a), roster.name(b)).unwrap();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "sbe 1\ncandidates 2\ncandidate 0 a\ncandidate 1 p\nrule k-approval 1\nbudget 1\npreferred p\nvote 0 multiplicity 1 order a p\n";

    #[test]
    fn minimal_file() {
        let inst = parse_election(MINIMAL).unwrap();
        assert_eq!(inst.m(), 2);
        assert_eq!(inst.mode, WinnerMode::CoWinner);
        assert!(inst.costs.all_unit(2));
    }

    #[test]
    fn pair_override() {
        let text = format!("{MINIMAL}costs 0 pair a p 3/2\n");
        let inst = parse_election(&text).unwrap();
        let (a, p) = (CandidateId(0), CandidateId(1));
        assert_eq!(inst.costs.table(0).cost(a, p), Rational::new(3, 2));
        assert_eq!(parse_election(&write_election(&inst).unwrap()).unwrap(), inst);
    }

    #[test]
    fn comments_and_rules() {
        let text = MINIMAL.replace("rule k-approval 1", "# scores\nrule scoring 2,0  # trailing");
        let inst = parse_election(&text).unwrap();
        assert_eq!(inst.rule, VotingRule::Scoring(vec![2, 0]));
        let text = MINIMAL.replace("rule k-approval 1", "rule bucklin") + "mode unique-winner\n";
        let inst = parse_election(&text).unwrap();
        assert_eq!(inst.rule, VotingRule::Bucklin);
        assert_eq!(parse_election(&write_election(&inst).unwrap()).unwrap(), inst);
    }

    fn err_line(text: &str) -> usize {
        match parse_election(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(err_line(&MINIMAL.replace("candidate 1 p", "candidate 1 a")), 4);
        assert_eq!(err_line(&MINIMAL.replace("order a p", "order a a")), 8);
        assert_eq!(err_line(&format!("{MINIMAL}costs 0 default -1\n")), 9);
        assert_eq!(err_line(&format!("{MINIMAL}colour red\n")), 9);
        assert_eq!(err_line(&MINIMAL.replace("sbe 1", "sbe 2")), 1);
        assert_eq!(err_line(&format!("{MINIMAL}budget 2\n")), 9);
        assert_eq!(err_line(&format!("{MINIMAL}costs 3 default 1\n")), 9);
        assert_eq!(err_line(&MINIMAL.replace("preferred p", "preferred q")), 7);
    }
}
