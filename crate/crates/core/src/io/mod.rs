//! Line-oriented text formats: elections, solutions, partial-vote
//! instances, graphs, and DOT output for flow networks.
//!
//! Every format ignores blank lines and `#` comments and rejects unknown
//! keys with a line-numbered error.

mod dot;
mod election_file;
mod graph_file;
mod pw_file;
mod solution_file;

pub use dot::network_to_dot;
pub use election_file::{parse_election, write_election};
pub use graph_file::{parse_graph, write_graph, GraphFile};
pub use pw_file::{parse_pw, write_pw};
pub use solution_file::{parse_solution, write_solution, SolutionFile};

use crate::error::{Error, Result};
use crate::Rational;

/// Non-empty lines split into tokens, with 1-based line numbers.
pub(crate) fn tokenized(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

pub(crate) fn parse_rational(line: usize, s: &str) -> Result<Rational> {
    let r: Rational = s
        .parse()
        .map_err(|_| Error::parse(line, format!("`{s}` is not a rational p or p/q")))?;
    Ok(r)
}

pub(crate) fn parse_nonneg(line: usize, s: &str) -> Result<Rational> {
    let r = parse_rational(line, s)?;
    if r < Rational::from_integer(0) {
        return Err(Error::parse(line, format!("negative value {s}")));
    }
    Ok(r)
}

pub(crate) fn parse_num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("`{s}` is not a valid number")))
}

pub(crate) fn expect_len(line: usize, toks: &[&str], n: usize) -> Result<()> {
    if toks.len() != n {
        return Err(Error::parse(
            line,
            format!("`{}` takes {} fields, got {}", toks[0], n - 1, toks.len() - 1),
        ));
    }
    Ok(())
}

/// Checks that `name` survives whitespace tokenization.
pub(crate) fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name.contains(char::is_whitespace) || name.contains('#') {
        return Err(Error::domain(format!(
            "candidate name `{name}` cannot be written (whitespace or `#`)"
        )));
    }
    Ok(())
}

/// Attaches `line` to errors raised while building from parsed fields.
pub(crate) fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    }
}
