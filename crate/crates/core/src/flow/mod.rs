//! Unit-price k-approval bribery as a min-cost flow problem.
//!
//! Every vote hands out `k` points. A flow routes each point either to the
//! candidate already holding it or, at a price equal to the distance in
//! the vote, to a candidate further down. Capacities cap every rival at the
//! score `s*` targeted for `p`.

mod bribery;
mod network;

pub use bribery::{
    approx_delta, approximation_ratio, build_point_network, flow_to_bribery, solve_uniform,
    PointNetwork,
};
pub use network::{min_cost_max_flow, FlowArc, FlowNetwork, FlowResult};
