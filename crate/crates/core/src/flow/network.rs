use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub capacity: i64,
    pub cost: Rational,
}

/// Directed network with integer capacities and rational costs. Node 0 is
/// the source and node 1 the sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    labels: Vec<String>,
    arcs: Vec<FlowArc>,
}

impl Default for FlowNetwork {
    fn default() -> Self {
        Self::new()
    }
}

impl FlowNetwork {
    pub const SOURCE: usize = 0;
    pub const SINK: usize = 1;

    pub fn new() -> Self {
        FlowNetwork {
            labels: vec!["s".into(), "t".into()],
            arcs: Vec::new(),
        }
    }

    pub fn add_node(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: i64, cost: Rational) -> usize {
        self.arcs.push(FlowArc {
            from,
            to,
            capacity,
            cost,
        });
        self.arcs.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> &FlowArc {
        &self.arcs[id]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        for (i, a) in self.arcs.iter().enumerate() {
            if a.from >= n || a.to >= n {
                return Err(Error::domain(format!("arc {i} references a missing node")));
            }
            if a.capacity < 0 {
                return Err(Error::domain(format!("arc {i} has negative capacity")));
            }
            if a.cost < Rational::zero() {
                return Err(Error::domain(format!("arc {i} has negative cost")));
            }
            if a.to == Self::SOURCE || a.from == Self::SINK {
                return Err(Error::domain(format!(
                    "arc {i} enters the source or leaves the sink"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: i64,
    pub cost: Rational,
    /// Flow on every arc, indexed like [`FlowNetwork::arcs`].
    pub flow: Vec<i64>,
}

struct Residual {
    to: usize,
    cap: i64,
    cost: Rational,
    rev: usize,
}

/// Maximum flow of minimum cost, by successive shortest augmenting paths.
pub fn min_cost_max_flow(net: &FlowNetwork) -> Result<FlowResult> {
    net.validate()?;
    let n = net.node_count();
    let (s, t) = (FlowNetwork::SOURCE, FlowNetwork::SINK);
    let mut graph: Vec<Vec<Residual>> = (0..n).map(|_| Vec::new()).collect();
    let mut handle = Vec::with_capacity(net.arcs.len());
    for a in &net.arcs {
        let fwd = graph[a.from].len();
        let bwd = graph[a.to].len() + usize::from(a.from == a.to);
        graph[a.from].push(Residual {
            to: a.to,
            cap: a.capacity,
            cost: a.cost,
            rev: bwd,
        });
        graph[a.to].push(Residual {
            to: a.from,
            cap: 0,
            cost: -a.cost,
            rev: fwd,
        });
        handle.push((a.from, fwd));
    }

    // costs are non-negative, so zero potentials are valid to start with
    let mut potential = vec![Rational::zero(); n];
    let mut value = 0i64;
    let mut cost = Rational::zero();
    loop {
        let mut dist: Vec<Option<Rational>> = vec![None; n];
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut heap = BinaryHeap::new();
        dist[s] = Some(Rational::zero());
        heap.push(Reverse((Rational::zero(), s)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if dist[u].is_some_and(|du| du < d) {
                continue;
            }
            for (ei, e) in graph[u].iter().enumerate() {
                if e.cap == 0 {
                    continue;
                }
                let nd = d + e.cost + potential[u] - potential[e.to];
                if dist[e.to].is_none_or(|old| nd < old) {
                    dist[e.to] = Some(nd);
                    prev[e.to] = Some((u, ei));
                    heap.push(Reverse((nd, e.to)));
                }
            }
        }
        if dist[t].is_none() {
            break;
        }
        for v in 0..n {
            if let Some(d) = dist[v] {
                potential[v] += d;
            }
        }
        let mut push = i64::MAX;
        let mut v = t;
        while let Some((u, ei)) = prev[v] {
            push = push.min(graph[u][ei].cap);
            v = u;
        }
        let mut v = t;
        while let Some((u, ei)) = prev[v] {
            let e = &mut graph[u][ei];
            e.cap -= push;
            cost += e.cost * push;
            let (to, rev) = (e.to, e.rev);
            graph[to][rev].cap += push;
            v = u;
        }
        value += push;
    }

    let flow = net
        .arcs
        .iter()
        .zip(&handle)
        .map(|(a, &(u, ei))| a.capacity - graph[u][ei].cap)
        .collect();
    Ok(FlowResult { value, cost, flow })
}
