//! Instance generators and translations between problems.

mod clique_gadget;
mod graph;
mod possible_winner;
mod random;
mod single_vote;

pub use clique_gadget::{clique_witness_bribery, multicolored_clique_instance, CliqueGadget};
pub use graph::{ColoredGraph, Graph};
pub use possible_winner::{
    possible_winner_brute, pw_to_sb, sb_to_pw, PartialVote, PossibleWinnerInstance,
    DEFAULT_EXTENSION_CAP,
};
pub use random::{random_instance, CostModel, RandomSpec};
pub use single_vote::single_vote_clique_instance;
