use std::fmt::Write;

use crate::election::WinnerMode;
use crate::error::{Error, Result};
use crate::reductions::{PartialVote, PossibleWinnerInstance};

use super::election_file::{check_header, mode_text, once, parse_mode, parse_rule, resolve, rule_text, write_roster, RosterLines};
use super::{at, expect_len, parse_num, tokenized};

/// Parses a possible-winner instance:
/// `sbe-pw 1`, the roster lines, `rule`, `preferred`, optional `mode`,
/// `votes <n>` and `before <i> <a> <b>` for each required precedence.
pub fn parse_pw(text: &str) -> Result<PossibleWinnerInstance> {
    let lines: Vec<(usize, Vec<&str>)> = tokenized(text).collect();
    check_header(lines.first(), "sbe-pw")?;
    let last = lines.last().map_or(1, |l| l.0);
    let mut roster = RosterLines::default();
    let mut rule = None;
    let mut preferred = None;
    let mut mode = None;
    let mut count = None;
    let mut before: Vec<(usize, usize, &str, &str)> = Vec::new();
    for (line, toks) in &lines[1..] {
        let line = *line;
        if roster.accept(line, toks)? {
            continue;
        }
        match toks[0] {
            "rule" => once(&mut rule, line, "rule", parse_rule(line, toks)?)?,
            "preferred" => {
                expect_len(line, toks, 2)?;
                once(&mut preferred, line, "preferred", toks[1])?;
            }
            "mode" => {
                expect_len(line, toks, 2)?;
                once(&mut mode, line, "mode", parse_mode(line, toks[1])?)?;
            }
            "votes" => {
                expect_len(line, toks, 2)?;
                once(&mut count, line, "votes", parse_num::<usize>(line, toks[1])?)?;
            }
            "before" => {
                expect_len(line, toks, 4)?;
                before.push((line, parse_num(line, toks[1])?, toks[2], toks[3]));
            }
            other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
        }
    }
    let roster = roster.finish(last)?;
    let m = roster.len();
    let (rline, rule) = rule.ok_or_else(|| Error::parse(last, "missing `rule`"))?;
    rule.validate(m).map_err(at(rline))?;
    let (pline, pname) = preferred.ok_or_else(|| Error::parse(last, "missing `preferred`"))?;
    let preferred = resolve(&roster, pline, pname)?;
    let (cline, n) = count.ok_or_else(|| Error::parse(last, "missing `votes`"))?;
    if n == 0 {
        return Err(Error::parse(cline, "need at least one vote"));
    }
    let mut pairs = vec![Vec::new(); n];
    let mut first_line = vec![cline; n];
    for (line, i, a, b) in before {
        let Some(ps) = pairs.get_mut(i) else {
            return Err(Error::parse(line, format!("vote {i} outside 0..{n}")));
        };
        if ps.is_empty() {
            first_line[i] = line;
        }
        ps.push((resolve(&roster, line, a)?, resolve(&roster, line, b)?));
    }
    let votes = pairs
        .into_iter()
        .zip(first_line)
        .map(|(ps, line)| PartialVote::new(m, ps).map_err(at(line)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PossibleWinnerInstance {
        roster,
        votes,
        rule,
        preferred,
        mode: mode.map_or(WinnerMode::CoWinner, |(_, m)| m),
    })
}

/// Writes every pair of each (closed) partial order.
pub fn write_pw(pw: &PossibleWinnerInstance) -> Result<String> {
    let mut out = String::from("sbe-pw 1\n");
    write_roster(&mut out, &pw.roster)?;
    writeln!(out, "rule {}", rule_text(&pw.rule)).unwrap();
    writeln!(out, "preferred {}", pw.roster.name(pw.preferred)).unwrap();
    writeln!(out, "mode {}", mode_text(pw.mode)).unwrap();
    writeln!(out, "votes {}", pw.votes.len()).unwrap();
    for (i, v) in pw.votes.iter().enumerate() {
        for (a, b) in v.pairs() {
            writeln!(out, "before {i} {} {}", pw.roster.name(a), pw.roster.name(b)).unwrap();
        }
    }
    Ok(out)
}
