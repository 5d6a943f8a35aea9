//! Two-edge-disjoint cycle covers of 3-edge-connected graphs.
//!
//! Each experiment keeps every edge with probability `p = 1 − 1/(3D)` and
//! covers the sampled graph. For an edge `e = (u, v)` the shortest cycle
//! through `e` from each experiment is collected into `G_e`; two
//! edge-disjoint u–v paths in `G_e − e` plus `e` itself form the triple.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ceil_log2;
use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::optimal::optimal_edge_cycle_cover;

/// Unit-capacity max flow from `s` to `t` over the edges with `allowed[e]`,
/// stopping once `cap` units are routed. `flow[e]` is +1 when `e = (a, b)`
/// carries a unit from `a` to `b`, −1 for the reverse.
fn max_flow(g: &Graph, allowed: &[bool], s: Vertex, t: Vertex, cap: usize) -> (usize, Vec<i8>) {
    let mut flow = vec![0i8; g.m()];
    let mut value = 0;
    while value < cap {
        let mut prev: Vec<Option<(Vertex, EdgeId)>> = vec![None; g.n()];
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            if x == t {
                break;
            }
            for &(y, e) in g.neighbors(x) {
                if !allowed[e] || seen[y] {
                    continue;
                }
                let forward = g.edge(e).0 == x;
                let room = if forward { flow[e] < 1 } else { flow[e] > -1 };
                if room {
                    seen[y] = true;
                    prev[y] = Some((x, e));
                    q.push_back(y);
                }
            }
        }
        if !seen[t] {
            break;
        }
        let mut y = t;
        while let Some((x, e)) = prev[y] {
            flow[e] += if g.edge(e).0 == x { 1 } else { -1 };
            y = x;
        }
        value += 1;
    }
    (value, flow)
}

/// Splits a unit flow into edge-disjoint simple `s`–`t` paths.
fn decompose(g: &Graph, flow: &[i8], s: Vertex, t: Vertex, count: usize) -> Vec<Vec<EdgeId>> {
    let mut used = vec![false; g.m()];
    let out_arc = |x: Vertex, e: EdgeId| {
        let (a, _) = g.edge(e);
        (flow[e] == 1 && a == x) || (flow[e] == -1 && a != x)
    };
    let mut paths = Vec::new();
    for _ in 0..count {
        let mut stack: Vec<(Vertex, EdgeId)> = Vec::new();
        let mut x = s;
        while x != t {
            let Some(&(y, e)) = g.neighbors(x).iter().find(|&&(_, e)| !used[e] && out_arc(x, e)) else {
                break;
            };
            used[e] = true;
            if y == s {
                stack.clear();
            } else if let Some(pos) = stack.iter().position(|&(w, _)| w == y) {
                stack.truncate(pos + 1);
            } else {
                stack.push((y, e));
            }
            x = y;
        }
        paths.push(stack.into_iter().map(|(_, e)| e).collect());
    }
    paths
}

/// Number of edge-disjoint paths between `u` and `v`.
pub fn edge_connectivity_at(g: &Graph, u: Vertex, v: Vertex) -> Result<usize> {
    if u == v || u >= g.n() || v >= g.n() {
        return Err(Error::InvalidArgument(format!("need two distinct vertices, got {u} and {v}")));
    }
    Ok(max_flow(g, &vec![true; g.m()], u, v, usize::MAX).0)
}

/// Errors with the first pair `(0, v)` whose min cut is below 3.
pub fn check_three_edge_connected(g: &Graph) -> Result<()> {
    let all = vec![true; g.m()];
    for v in 1..g.n() {
        let (cut, _) = max_flow(g, &all, 0, v, 3);
        if cut < 3 {
            return Err(Error::NotThreeEdgeConnected { u: 0, v, cut });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisjointCoverResult {
    pub experiments: usize,
    pub sample_probability: f64,
    /// For each edge `e = (u, v)`: `[vec![e], p1, p2]`, each a u–v path.
    pub triples: Vec<Option<[Vec<EdgeId>; 3]>>,
    /// Edges without a triple, with the flow found in `G_e − e`.
    pub failures: Vec<(EdgeId, usize)>,
    /// Distinct cycles retained across experiments.
    pub union: Vec<Cycle>,
    /// Per-edge occurrences summed over every experiment's cover.
    pub congestion: Vec<usize>,
    pub inner_max_congestion: usize,
}

impl DisjointCoverResult {
    pub fn success_rate(&self) -> f64 {
        if self.triples.is_empty() {
            return 1.0;
        }
        1.0 - self.failures.len() as f64 / self.triples.len() as f64
    }

    pub fn max_path_len(&self) -> usize {
        self.triples.iter().flatten().flat_map(|t| t.iter().map(Vec::len)).max().unwrap_or(0)
    }
}

/// `⌈4·D²·log₂ n⌉`, the default experiment count.
pub fn default_experiments(g: &Graph) -> usize {
    let d = g.diameter().unwrap_or(1).max(1);
    4 * d * d * ceil_log2(g.n()).max(1)
}

pub fn two_edge_disjoint_cover(g: &Graph, experiments: usize, seed: u64) -> Result<DisjointCoverResult> {
    check_three_edge_connected(g)?;
    let d = g.diameter().unwrap_or(1).max(1);
    let p = (1.0 - 1.0 / (3.0 * d as f64)).clamp(0.5, 1.0 - f64::EPSILON);
    let m = g.m();
    let mut in_ge: Vec<Vec<bool>> = vec![Vec::new(); m];
    let mut union: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    let mut union_cycles = Vec::new();
    let mut congestion = vec![0usize; m];
    let mut inner_max = 0;
    for i in 0..experiments {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let keep: Vec<bool> = (0..m).map(|_| rng.gen_bool(p)).collect();
        let sub = g.edge_subgraph(&keep);
        let oc = optimal_edge_cycle_cover(&sub.graph, rng.gen())?;
        inner_max = inner_max.max(oc.cover.max_congestion());
        for c in &oc.cover.cycles {
            for &e in &c.edges {
                congestion[sub.edge_map[e]] += 1;
            }
        }
        for local in 0..sub.graph.m() {
            let Some(best) = oc.cover.shortest_through(local) else { continue };
            let ties: Vec<usize> = oc.cover.per_edge_index[local]
                .iter()
                .map(|&(ci, _)| ci)
                .filter(|&ci| oc.cover.cycles[ci].len() == best)
                .collect();
            let ci = ties[rng.gen_range(0..ties.len())];
            let c = &oc.cover.cycles[ci];
            let e = sub.edge_map[local];
            let mask = &mut in_ge[e];
            if mask.is_empty() {
                *mask = vec![false; m];
            }
            for &f in &c.edges {
                mask[sub.edge_map[f]] = true;
            }
            if union.insert(canonical(c, &sub.edge_map)) {
                union_cycles.push(Cycle {
                    vertices: c.vertices.clone(),
                    edges: c.edges.iter().map(|&f| sub.edge_map[f]).collect(),
                });
            }
        }
    }
    let mut triples = Vec::with_capacity(m);
    let mut failures = Vec::new();
    for e in 0..m {
        let (u, v) = g.edge(e);
        let mut mask = std::mem::take(&mut in_ge[e]);
        if mask.is_empty() {
            failures.push((e, 0));
            triples.push(None);
            continue;
        }
        mask[e] = false;
        let (value, flow) = max_flow(g, &mask, u, v, 2);
        if value < 2 {
            failures.push((e, value));
            triples.push(None);
            continue;
        }
        let mut ps = decompose(g, &flow, u, v, 2);
        let p2 = ps.pop().unwrap();
        let p1 = ps.pop().unwrap();
        triples.push(Some([vec![e], p1, p2]));
    }
    Ok(DisjointCoverResult {
        experiments,
        sample_probability: p,
        triples,
        failures,
        union: union_cycles,
        congestion,
        inner_max_congestion: inner_max,
    })
}

fn canonical(c: &Cycle, edge_map: &[EdgeId]) -> Vec<EdgeId> {
    let mut key: Vec<EdgeId> = c.edges.iter().map(|&f| edge_map[f]).collect();
    key.sort_unstable();
    key
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::verify::{edge_disjointness_check, is_walk_between};

    #[test]
    fn connectivity_values() {
        let t = generators::path(5);
        assert_eq!(edge_connectivity_at(&t, 1, 2).unwrap(), 1);
        assert_eq!(edge_connectivity_at(&generators::cycle(7), 0, 3).unwrap(), 2);
        let k5 = generators::complete(5);
        for u in 0..5 {
            for v in u + 1..5 {
                assert_eq!(edge_connectivity_at(&k5, u, v).unwrap(), 4);
            }
        }
        assert!(edge_connectivity_at(&k5, 2, 2).is_err());
    }

    #[test]
    fn precondition() {
        assert!(check_three_edge_connected(&generators::complete(4)).is_ok());
        assert!(matches!(
            two_edge_disjoint_cover(&generators::theta(), 4, 0),
            Err(Error::NotThreeEdgeConnected { cut: 2, .. })
        ));
    }

    #[test]
    fn decomposition_removes_loops() {
        let g = generators::complete(5);
        let (value, flow) = max_flow(&g, &vec![true; g.m()], 0, 4, usize::MAX);
        let ps = decompose(&g, &flow, 0, 4, value);
        assert!(edge_disjointness_check(&ps));
        for p in &ps {
            assert!(is_walk_between(&g, p, 0, 4));
        }
    }

    fn check(g: &Graph, r: &DisjointCoverResult) {
        for (e, t) in r.triples.iter().enumerate() {
            let Some(t) = t else { continue };
            let (u, v) = g.edge(e);
            assert_eq!(t[0], vec![e]);
            assert!(edge_disjointness_check(t));
            assert!(t.iter().all(|p| is_walk_between(g, p, u, v)));
        }
    }

    #[test]
    fn k4_short_triples() {
        let g = generators::complete(4);
        let r = two_edge_disjoint_cover(&g, 64, 1).unwrap();
        assert!(r.failures.is_empty());
        check(&g, &r);
        assert!(r.max_path_len() <= 3);
    }

    #[test]
    fn k33_succeeds() {
        let g = generators::complete_bipartite(3, 3);
        let r = two_edge_disjoint_cover(&g, default_experiments(&g), 5).unwrap();
        assert_eq!(r.failures, vec![]);
        check(&g, &r);
        let total: usize = r.congestion.iter().sum();
        assert!(r.congestion.iter().all(|&c| c <= r.experiments * r.inner_max_congestion));
        assert!(total > 0);
    }
}
