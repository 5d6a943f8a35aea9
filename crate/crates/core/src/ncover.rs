//! t-neighborhood covers by ball carving with exponentially distributed radii.
//!
//! In each phase every vertex `u` draws `r_u ~ Exp(β)`. A vertex `w` scores
//! `m_u(w) = r_u − dist(w, u)` for each center and joins the cluster `S_u`
//! of every center within 1 of its best score. Phases repeat until every
//! t-ball lies inside some cluster.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::ceil_log2;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_C: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub center: Vertex,
    pub phase: usize,
    /// Sorted member list.
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodCover {
    pub clusters: Vec<Cluster>,
    pub radius: usize,
    pub stretch: f64,
    /// Largest number of clusters containing one vertex.
    pub overlap: usize,
    pub phases: usize,
}

impl NeighborhoodCover {
    /// Number of clusters containing each vertex.
    pub fn overlap_per_vertex(&self, n: usize) -> Vec<usize> {
        let mut q = vec![0; n];
        for c in &self.clusters {
            for &v in &c.vertices {
                q[v] += 1;
            }
        }
        q
    }

    /// Largest strong diameter over the clusters (`None` if some cluster
    /// induces a disconnected subgraph).
    pub fn max_cluster_diameter(&self, g: &Graph) -> Option<usize> {
        let mut best = 0;
        for c in &self.clusters {
            best = best.max(g.induced_subgraph(&c.vertices).graph.diameter()?);
        }
        Some(best)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborhoodParams {
    pub c: f64,
    /// Phase cap; `None` means 8·⌈log₂ n⌉.
    pub max_phases: Option<usize>,
}

impl Default for NeighborhoodParams {
    fn default() -> Self {
        NeighborhoodParams { c: DEFAULT_C, max_phases: None }
    }
}

pub fn neighborhood_cover(g: &Graph, t: usize, seed: u64) -> Result<NeighborhoodCover> {
    neighborhood_cover_with(g, t, seed, NeighborhoodParams::default())
}

pub fn neighborhood_cover_with(g: &Graph, t: usize, seed: u64, params: NeighborhoodParams) -> Result<NeighborhoodCover> {
    if t == 0 {
        return Err(Error::InvalidArgument("neighborhood radius must be at least 1".into()));
    }
    let n = g.n();
    let lg = ceil_log2(n).max(1);
    let cap = params.max_phases.unwrap_or(8 * lg);
    let k = (2.0 * (n.max(2) as f64).log2()).max(1.0);
    let beta = (params.c * n.max(1) as f64).ln() / (3.0 * k * t as f64);
    let exp = Exp::new(beta).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let dist = g.distance_matrix();
    let balls: Vec<Vec<Vertex>> = (0..n)
        .map(|w| (0..n).filter(|&y| dist[w][y] <= t).collect())
        .collect();

    let mut satisfied = vec![false; n];
    let mut left = n;
    let mut seen: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    let mut clusters = Vec::new();
    let mut phases = 0;
    while left > 0 {
        if phases == cap {
            return Err(Error::NeighborhoodCoverIncomplete { phases, uncovered: left });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(phases as u64);
        let r: Vec<f64> = (0..n).map(|_| exp.sample(&mut rng)).collect();
        let score = |u: Vertex, w: Vertex| {
            if dist[w][u] == usize::MAX {
                f64::NEG_INFINITY
            } else {
                r[u] - dist[w][u] as f64
            }
        };
        let best: Vec<f64> = (0..n)
            .map(|w| (0..n).map(|u| score(u, w)).fold(f64::NEG_INFINITY, f64::max))
            .collect();
        let mut member = vec![false; n];
        for u in 0..n {
            let mut vertices = Vec::new();
            for w in 0..n {
                member[w] = score(u, w) >= best[w] - 1.0;
                if member[w] {
                    vertices.push(w);
                }
            }
            if vertices.is_empty() {
                continue;
            }
            for w in 0..n {
                if !satisfied[w] && member[w] && balls[w].iter().all(|&y| member[y]) {
                    satisfied[w] = true;
                    left -= 1;
                }
            }
            if seen.insert(vertices.clone()) {
                clusters.push(Cluster { center: u, phase: phases, vertices });
            }
        }
        phases += 1;
    }
    let mut q = vec![0usize; n];
    for c in &clusters {
        for &v in &c.vertices {
            q[v] += 1;
        }
    }
    Ok(NeighborhoodCover {
        clusters,
        radius: t,
        stretch: k,
        overlap: q.into_iter().max().unwrap_or(0),
        phases,
    })
}

/// Every vertex whose t-ball lies in no cluster.
pub fn uncovered_balls(g: &Graph, nc: &NeighborhoodCover) -> Vec<Vertex> {
    let n = g.n();
    let sets: Vec<Vec<bool>> = nc
        .clusters
        .iter()
        .map(|c| {
            let mut s = vec![false; n];
            for &v in &c.vertices {
                s[v] = true;
            }
            s
        })
        .collect();
    (0..n)
        .filter(|&w| {
            let d = g.bfs_distances(w);
            let ball: Vec<Vertex> = (0..n).filter(|&y| d[y].is_some_and(|x| x <= nc.radius)).collect();
            !sets.iter().any(|s| ball.iter().all(|&y| s[y]))
        })
        .collect()
}
