use std::fmt::Write;

use crate::flow::FlowNetwork;

/// Graphviz rendering; arcs are labelled `capacity/cost`.
pub fn network_to_dot(net: &FlowNetwork) -> String {
    let mut out = String::from("digraph flow {\n  rankdir=LR;\n");
    for (i, label) in net.labels().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", label.replace('"', "\\\"")).unwrap();
    }
    for a in net.arcs() {
        writeln!(out, "  n{} -> n{} [label=\"{}/{}\"];", a.from, a.to, a.capacity, a.cost).unwrap();
    }
    out.push_str("}\n");
    out
}
