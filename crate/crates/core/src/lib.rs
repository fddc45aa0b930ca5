//! Swap Bribery workbench.
//!
//! An election is bribed by paying per-voter prices for swapping adjacent
//! candidates; the question is whether a preferred candidate can be made a
//! winner within a budget. This crate contains:
//!
//! * the election and swap model ([`election`], [`swap`]),
//! * exhaustive ground-truth solvers ([`oracle`]),
//! * a min-cost-flow solver for unit prices under k-approval ([`flow`]),
//! * a color-coding search parameterized by votes and `k` ([`colorcoding`]),
//! * kernels for the combined parameter (votes, budget) ([`kernel`]),
//! * an integer-programming solver parameterized by candidates ([`ilp`]),
//! * instance generators and problem translations ([`reductions`]),
//! * the text formats used by the command line tool ([`io`]).

pub mod colorcoding;
pub mod election;
pub mod error;
pub mod flow;
pub mod ilp;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod reductions;
pub mod swap;
mod util;

pub use election::{CandidateId, Election, Ranking, Roster, Vote, VotingRule, WinnerMode};
pub use error::{Error, Result};
pub use swap::{
    verify_bribery, Bribery, BriberyInstance, CostTable, SwapCostFunction, VerifyReport,
};

/// Exact prices and budgets.
pub type Rational = num_rational::Ratio<i64>;

/// What a solver reports about an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// Whether a bribery within budget exists (as far as this solver can tell).
    pub decision: bool,
    /// Cost of the returned witness, or the proven optimum when `optimal`.
    pub cost: Option<Rational>,
    pub witness: Option<Bribery>,
    /// `cost` is the minimum over all briberies making `p` win.
    pub optimal: bool,
}

impl Outcome {
    pub fn no() -> Self {
        Outcome {
            decision: false,
            cost: None,
            witness: None,
            optimal: false,
        }
    }
}
