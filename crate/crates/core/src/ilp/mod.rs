//! Swap Bribery as an integer program over ranking counts, for rules whose
//! winners can be described by linear inequalities on how many votes cast
//! each ranking. The number of variables depends on `m` only.

mod describe;
mod lp;
mod program;
mod transform;

pub use describe::{describe_rule, perm_index, Inequality, LinearInequalitySystem};
pub use program::{box_search, ilp_feasible, IlpConfig, IntegerProgram, LinearConstraint, Relation};
pub use transform::{
    build_ilp, solve_ilp, solve_ilp_grouped, vote_groups, Grouping, TransformationIlp, VoteGroup,
};
