use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

/// A closed walk. `vertices` repeats the start vertex at the end, so
/// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    /// Builds a closed walk from an open vertex sequence `v0 .. v_{k-1}`;
    /// the closing edge `v_{k-1} v0` is implied.
    pub fn from_vertices(g: &Graph, seq: &[Vertex]) -> Result<Cycle> {
        if seq.len() < 2 {
            return Err(Error::InvalidArgument("a cycle needs at least two vertices".into()));
        }
        let mut vertices = seq.to_vec();
        vertices.push(seq[0]);
        let mut edges = Vec::with_capacity(seq.len());
        for w in vertices.windows(2) {
            let e = g
                .edge_between(w[0], w[1])
                .ok_or_else(|| Error::InvalidArgument(format!("no edge between {} and {}", w[0], w[1])))?;
            edges.push(e);
        }
        Ok(Cycle { vertices, edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// True when no vertex repeats and the length is at least 3.
    pub fn is_simple(&self) -> bool {
        let body = &self.vertices[..self.vertices.len() - 1];
        let mut sorted = body.to_vec();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1]) && self.len() >= 3
    }

    fn body(&self) -> &[Vertex] {
        &self.vertices[..self.vertices.len() - 1]
    }
}

/// Splits closed walks at repeated vertices until every piece is simple.
/// Pieces of length at most 2 are dropped. The split vertex is the
/// smallest repeated vertex ID.
pub fn simplify_cycles(cycles: Vec<Cycle>) -> Vec<Cycle> {
    let mut out = Vec::new();
    let mut stack: Vec<Cycle> = cycles.into_iter().rev().collect();
    while let Some(c) = stack.pop() {
        if c.len() <= 2 {
            continue;
        }
        let body = c.body();
        let mut sorted = body.to_vec();
        sorted.sort_unstable();
        let Some(w) = sorted.windows(2).find(|p| p[0] == p[1]).map(|p| p[0]) else {
            out.push(c);
            continue;
        };
        let pos: Vec<usize> = (0..body.len()).filter(|&i| body[i] == w).collect();
        let k = body.len();
        let mut pieces = Vec::new();
        for (j, &start) in pos.iter().enumerate() {
            let end = if j + 1 < pos.len() { pos[j + 1] } else { pos[0] + k };
            let vertices: Vec<Vertex> = (start..=end).map(|i| body[i % k]).collect();
            let edges: Vec<EdgeId> = (start..end).map(|i| c.edges[i % k]).collect();
            pieces.push(Cycle { vertices, edges });
        }
        stack.extend(pieces.into_iter().rev());
    }
    out
}

/// A collection of cycles with a per-edge occurrence index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCover {
    pub cycles: Vec<Cycle>,
    /// For each edge, `(cycle index, multiplicity)` pairs in cycle order.
    pub per_edge_index: Vec<Vec<(usize, usize)>>,
}

impl CycleCover {
    pub fn new(m: usize, cycles: Vec<Cycle>) -> Self {
        let mut per_edge_index = vec![Vec::new(); m];
        for (i, c) in cycles.iter().enumerate() {
            for &e in &c.edges {
                let list: &mut Vec<(usize, usize)> = &mut per_edge_index[e];
                match list.last_mut() {
                    Some((j, k)) if *j == i => *k += 1,
                    _ => list.push((i, 1)),
                }
            }
        }
        CycleCover { cycles, per_edge_index }
    }

    pub fn empty(m: usize) -> Self {
        Self::new(m, Vec::new())
    }

    pub fn m(&self) -> usize {
        self.per_edge_index.len()
    }

    /// Maximum cycle length (0 for an empty cover).
    pub fn dilation(&self) -> usize {
        self.cycles.iter().map(Cycle::len).max().unwrap_or(0)
    }

    /// Total multiplicity of edge `e` over all cycles.
    pub fn congestion(&self, e: EdgeId) -> usize {
        self.per_edge_index[e].iter().map(|&(_, k)| k).sum()
    }

    pub fn max_congestion(&self) -> usize {
        (0..self.m()).map(|e| self.congestion(e)).max().unwrap_or(0)
    }

    pub fn covers(&self, e: EdgeId) -> bool {
        !self.per_edge_index[e].is_empty()
    }

    /// Length of the shortest cycle containing `e`.
    pub fn shortest_through(&self, e: EdgeId) -> Option<usize> {
        self.per_edge_index[e].iter().map(|&(i, _)| self.cycles[i].len()).min()
    }

    /// Concatenates covers over the same edge set.
    pub fn merge(m: usize, parts: impl IntoIterator<Item = CycleCover>) -> CycleCover {
        let cycles = parts.into_iter().flat_map(|c| c.cycles).collect();
        CycleCover::new(m, cycles)
    }
}
