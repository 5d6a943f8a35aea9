//! Covers whose dilation is measured against the shortest cycle through
//! each edge instead of the diameter.

use serde::{Deserialize, Serialize};

use crate::ceil_log2;
use crate::cover::graph_cover;
use crate::cycle::{Cycle, CycleCover};
use crate::error::Result;
use crate::graph::{bridges, EdgeId, Graph, Subgraph};
use crate::ncover::{neighborhood_cover, NeighborhoodCover};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptValue {
    /// Shortest cycle through each edge; `None` for bridges.
    pub per_edge: Vec<Option<usize>>,
    /// Largest finite entry of `per_edge`; `None` when every edge is a bridge.
    pub opt: Option<usize>,
}

pub fn opt_value(g: &Graph) -> OptValue {
    let per_edge: Vec<Option<usize>> = (0..g.m())
        .map(|e| {
            let (u, v) = g.edge(e);
            g.bfs_distances_avoiding(u, Some(e))[v].map(|d| d + 1)
        })
        .collect();
    let opt = per_edge.iter().flatten().copied().max();
    OptValue { per_edge, opt }
}

fn lift(sub: &Subgraph, c: &Cycle) -> Cycle {
    Cycle {
        vertices: c.vertices.iter().map(|&v| sub.vertex_map[v]).collect(),
        edges: c.edges.iter().map(|&e| sub.edge_map[e]).collect(),
    }
}

/// `graph_cover` on each connected component, expressed in host IDs.
pub fn cover_components(g: &Graph) -> Result<Vec<Cycle>> {
    let mut out = Vec::new();
    for comp in g.components() {
        if comp.len() < 3 {
            continue;
        }
        let sub = g.induced_subgraph(&comp);
        for c in graph_cover(&sub.graph)?.cover.cycles {
            out.push(lift(&sub, &c));
        }
    }
    Ok(out)
}

/// Covers each cluster of a t-neighborhood cover separately.
pub fn cover_clusters(g: &Graph, nc: &NeighborhoodCover) -> Result<CycleCover> {
    let mut cycles = Vec::new();
    for cl in &nc.clusters {
        let sub = g.induced_subgraph(&cl.vertices);
        for c in cover_components(&sub.graph)? {
            cycles.push(lift(&sub, &c));
        }
    }
    Ok(CycleCover::new(g.m(), cycles))
}

#[derive(Debug, Clone)]
pub struct OptimalCover {
    pub cover: CycleCover,
    pub opt: Option<usize>,
    pub neighborhoods: Option<NeighborhoodCover>,
    pub bridges: Vec<EdgeId>,
}

/// Clusters the graph with radius OPT and covers every cluster.
pub fn optimal_cycle_cover(g: &Graph, seed: u64) -> Result<OptimalCover> {
    let ov = opt_value(g);
    let br = bridges(g);
    let Some(opt) = ov.opt else {
        return Ok(OptimalCover { cover: CycleCover::empty(g.m()), opt: None, neighborhoods: None, bridges: br });
    };
    let nc = neighborhood_cover(g, opt, seed)?;
    let cover = cover_clusters(g, &nc)?;
    Ok(OptimalCover { cover, opt: Some(opt), neighborhoods: Some(nc), bridges: br })
}

#[derive(Debug, Clone)]
pub struct Scale {
    pub radius: usize,
    pub clusters: usize,
    pub cover: CycleCover,
}

#[derive(Debug, Clone)]
pub struct EdgeOptimalCover {
    pub cover: CycleCover,
    pub scales: Vec<Scale>,
    /// Shortest cycle through each edge within `cover`.
    pub certified: Vec<Option<usize>>,
    pub bridges: Vec<EdgeId>,
}

/// One neighborhood cover per radius 2^i, i = 2..=⌈log₂ OPT⌉, merged.
pub fn optimal_edge_cycle_cover(g: &Graph, seed: u64) -> Result<EdgeOptimalCover> {
    let ov = opt_value(g);
    let br = bridges(g);
    let top = ov.opt.map_or(1, |o| ceil_log2(o).max(2));
    let mut scales = Vec::new();
    for i in 2..=top {
        let radius = 1usize << i;
        let nc = neighborhood_cover(g, radius, seed.wrapping_add(i as u64))?;
        let cover = cover_clusters(g, &nc)?;
        scales.push(Scale { radius, clusters: nc.clusters.len(), cover });
    }
    let cover = CycleCover::merge(g.m(), scales.iter().map(|s| s.cover.clone()));
    let certified = (0..g.m()).map(|e| cover.shortest_through(e)).collect();
    Ok(EdgeOptimalCover { cover, scales, certified, bridges: br })
}
