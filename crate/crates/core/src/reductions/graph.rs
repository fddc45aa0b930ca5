use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn with_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::domain(format!("edge {u} {v} outside 0..{}", self.n)));
        }
        if u == v {
            return Err(Error::domain(format!("loop at vertex {u}")));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(smaller, larger)` pairs, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| {
            u < self.n && vs[i + 1..].iter().all(|&v| u != v && self.adjacent(u, v))
        })
    }
}

/// Graph whose vertices are partitioned into `k` color classes `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    pub graph: Graph,
    colors: Vec<usize>,
    k: usize,
}

impl ColoredGraph {
    pub fn new(graph: Graph, colors: Vec<usize>, k: usize) -> Result<Self> {
        if colors.len() != graph.n() {
            return Err(Error::domain(format!(
                "{} colors for {} vertices",
                colors.len(),
                graph.n()
            )));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::domain(format!("color {c} outside 0..{k}")));
        }
        Ok(ColoredGraph { graph, colors, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.colors[v] == c).collect()
    }

    /// Neighbours of `x` in class `c`.
    pub fn edges_into(&self, x: usize, c: usize) -> usize {
        self.class(c)
            .into_iter()
            .filter(|&y| self.graph.adjacent(x, y))
            .count()
    }

    /// Fails on the first edge inside a class.
    pub fn check_independent(&self) -> Result<()> {
        match self.graph.edges().find(|&(u, v)| self.colors[u] == self.colors[v]) {
            Some((u, v)) => Err(Error::domain(format!(
                "edge {u} {v} joins two vertices of color {}",
                self.colors[u]
            ))),
            None => Ok(()),
        }
    }

    /// Whether `xs[c]` lies in class `c` for every `c` and the vertices are
    /// pairwise adjacent.
    pub fn is_multicolored_clique(&self, xs: &[usize]) -> bool {
        xs.len() == self.k
            && xs
                .iter()
                .enumerate()
                .all(|(c, &x)| x < self.graph.n() && self.colors[x] == c)
            && self.graph.is_clique(xs)
    }
}
