use std::fmt::Write;

use crate::error::{Error, Result};
use crate::reductions::{ColoredGraph, Graph};

use super::{expect_len, parse_num, tokenized};

/// Contents of a graph file: `graph N M [k]`, then `M` edge lines `u v`
/// and optional `color u c` lines (vertices and colors count from 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub k: Option<usize>,
    pub colors: Option<Vec<usize>>,
}

impl GraphFile {
    /// The colored graph; every vertex needs a color. The number of classes
    /// is `k` when given, otherwise one more than the largest color.
    pub fn colored(&self) -> Result<ColoredGraph> {
        let colors = self
            .colors
            .clone()
            .ok_or_else(|| Error::domain("graph has no color lines"))?;
        let k = self
            .k
            .unwrap_or_else(|| colors.iter().max().map_or(0, |c| c + 1));
        ColoredGraph::new(self.graph.clone(), colors, k)
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut lines = tokenized(text);
    let Some((hline, head)) = lines.next() else {
        return Err(Error::parse(1, "empty file"));
    };
    if head[0] != "graph" || !(3..=4).contains(&head.len()) {
        return Err(Error::parse(hline, "expected `graph N M [k]`"));
    }
    let n: usize = parse_num(hline, head[1])?;
    let edges: usize = parse_num(hline, head[2])?;
    let k = head.get(3).map(|s| parse_num(hline, s)).transpose()?;
    let mut graph = Graph::new(n);
    let mut seen = 0usize;
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut any_color = false;
    let mut last = hline;
    for (line, toks) in lines {
        last = line;
        if toks[0] == "color" {
            expect_len(line, &toks, 3)?;
            let u: usize = parse_num(line, toks[1])?;
            let c: usize = parse_num(line, toks[2])?;
            let slot = colors
                .get_mut(u)
                .ok_or_else(|| Error::parse(line, format!("vertex {u} outside 0..{n}")))?;
            if slot.replace(c).is_some() {
                return Err(Error::parse(line, format!("vertex {u} colored twice")));
            }
            any_color = true;
            continue;
        }
        if toks.len() != 2 {
            return Err(Error::parse(line, "expected an edge `u v` or `color u c`"));
        }
        let u: usize = parse_num(line, toks[0])?;
        let v: usize = parse_num(line, toks[1])?;
        graph
            .add_edge(u, v)
            .map_err(|e| Error::parse(line, e.to_string()))?;
        seen += 1;
    }
    if seen != edges {
        return Err(Error::parse(last, format!("{edges} edges announced, {seen} listed")));
    }
    let colors = if any_color {
        let full: Option<Vec<usize>> = colors.iter().copied().collect();
        Some(full.ok_or_else(|| Error::parse(last, "some vertices have no color"))?)
    } else {
        None
    };
    Ok(GraphFile { graph, k, colors })
}

pub fn write_graph(g: &GraphFile) -> String {
    let mut out = format!("graph {} {}", g.graph.n(), g.graph.edge_count());
    if let Some(k) = g.k {
        write!(out, " {k}").unwrap();
    }
    out.push('\n');
    for (u, v) in g.graph.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    if let Some(cs) = &g.colors {
        for (u, c) in cs.iter().enumerate() {
            writeln!(out, "color {u} {c}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colored_round_trip() {
        let text = "graph 4 2 2\n0 2\n1 3\ncolor 0 0\ncolor 1 0\ncolor 2 1\ncolor 3 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(write_graph(&g), text);
        let cg = g.colored().unwrap();
        assert_eq!(cg.class(1), vec![2, 3]);
    }

    #[test]
    fn plain_and_errors() {
        let g = parse_graph("graph 3 1\n0 1 # edge\n").unwrap();
        assert!(g.colors.is_none() && g.graph.adjacent(1, 0));
        assert!(parse_graph("graph 3 2\n0 1\n").is_err());
        assert!(parse_graph("graph 3 1\n0 5\n").is_err());
        assert!(parse_graph("graph 2 0\ncolor 0 0\n").is_err());
    }
}
