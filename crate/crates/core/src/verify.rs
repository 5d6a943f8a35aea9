//! Independent checks of cover properties.
//!
//! Nothing here reuses the constructors: edges are looked up through a
//! private endpoint map, distances come from a local BFS, and every count
//! is recomputed from the vertex sequences alone.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::graph::{EdgeId, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub cycles: usize,
    pub dilation: usize,
    pub max_congestion: usize,
    pub per_edge_congestion: Vec<usize>,
    pub uncovered: Vec<EdgeId>,
    /// Indices of closed walks that repeat a vertex or are shorter than 3.
    pub non_simple: Vec<usize>,
    /// Indices of sequences that are not closed walks of `g`, with a reason.
    pub invalid: Vec<(usize, String)>,
}

impl CoverReport {
    pub fn is_ok(&self) -> bool {
        self.uncovered.is_empty() && self.non_simple.is_empty() && self.invalid.is_empty()
    }

    pub fn to_text(&self) -> String {
        let list = |xs: &[usize]| {
            if xs.is_empty() {
                "none".to_string()
            } else {
                xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
            }
        };
        let mut s = String::new();
        writeln!(s, "cycles: {}", self.cycles).unwrap();
        writeln!(s, "dilation: {}", self.dilation).unwrap();
        writeln!(s, "max congestion: {}", self.max_congestion).unwrap();
        writeln!(s, "uncovered edges: {}", list(&self.uncovered)).unwrap();
        writeln!(s, "non-simple cycles: {}", list(&self.non_simple)).unwrap();
        if self.invalid.is_empty() {
            writeln!(s, "invalid cycles: none").unwrap();
        }
        for (i, why) in &self.invalid {
            writeln!(s, "invalid cycle {i}: {why}").unwrap();
        }
        writeln!(s, "status: {}", if self.is_ok() { "OK" } else { "VIOLATION" }).unwrap();
        s
    }
}

fn endpoint_map(g: &Graph) -> HashMap<(Vertex, Vertex), EdgeId> {
    let mut map = HashMap::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        map.insert((u, v), e);
        map.insert((v, u), e);
    }
    map
}

/// Checks closed walks given as vertex sequences whose last vertex equals
/// the first. `expected[e]` marks the edges that must be covered; when
/// `None`, every edge lying on some cycle of `g` is expected.
pub fn verify_cover(g: &Graph, walks: &[Vec<Vertex>], expected: Option<&[bool]>) -> CoverReport {
    let map = endpoint_map(g);
    let mut congestion = vec![0usize; g.m()];
    let mut non_simple = Vec::new();
    let mut invalid = Vec::new();
    let mut dilation = 0;
    for (i, w) in walks.iter().enumerate() {
        if w.len() < 2 || w.first() != w.last() {
            invalid.push((i, "not closed".to_string()));
            continue;
        }
        let mut ids = Vec::with_capacity(w.len() - 1);
        let mut bad = None;
        for pair in w.windows(2) {
            if pair[0] >= g.n() || pair[1] >= g.n() {
                bad = Some(format!("vertex out of range in step {} {}", pair[0], pair[1]));
                break;
            }
            match map.get(&(pair[0], pair[1])) {
                Some(&e) => ids.push(e),
                None => {
                    bad = Some(format!("{} and {} are not adjacent", pair[0], pair[1]));
                    break;
                }
            }
        }
        if let Some(why) = bad {
            invalid.push((i, why));
            continue;
        }
        for &e in &ids {
            congestion[e] += 1;
        }
        dilation = dilation.max(ids.len());
        let body = &w[..w.len() - 1];
        let distinct: HashSet<&Vertex> = body.iter().collect();
        if distinct.len() != body.len() || ids.len() < 3 {
            non_simple.push(i);
        }
    }
    let owned;
    let expected = match expected {
        Some(x) => x,
        None => {
            owned = (0..g.m()).map(|e| shortest_cycle_through(g, e).is_some()).collect::<Vec<_>>();
            &owned
        }
    };
    let uncovered = (0..g.m()).filter(|&e| expected[e] && congestion[e] == 0).collect();
    CoverReport {
        cycles: walks.len(),
        dilation,
        max_congestion: congestion.iter().copied().max().unwrap_or(0),
        per_edge_congestion: congestion,
        uncovered,
        non_simple,
        invalid,
    }
}

fn bfs_skip(g: &Graph, src: Vertex, skip: EdgeId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(x) = q.pop_front() {
        for &(y, e) in g.neighbors(x) {
            if e != skip && dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
        }
    }
    dist
}

/// Length of the shortest cycle containing `e`, or `None` for a bridge.
pub fn shortest_cycle_through(g: &Graph, e: EdgeId) -> Option<usize> {
    let (u, v) = g.edge(e);
    let d = bfs_skip(g, u, e)[v];
    (d != usize::MAX).then(|| d + 1)
}

/// Shortest simple cycle through each edge by exhaustive enumeration.
/// Exponential; intended for graphs with at most a dozen vertices.
pub fn brute_force_cycle_lengths(g: &Graph) -> Vec<Option<usize>> {
    let mut best: Vec<Option<usize>> = vec![None; g.m()];
    let n = g.n();
    fn dfs(
        g: &Graph,
        start: Vertex,
        x: Vertex,
        on: &mut Vec<bool>,
        path: &mut Vec<EdgeId>,
        best: &mut Vec<Option<usize>>,
    ) {
        for &(y, e) in g.neighbors(x) {
            if y == start && path.len() >= 2 && path[0] != e {
                let len = path.len() + 1;
                for &f in path.iter().chain(std::iter::once(&e)) {
                    if best[f].is_none_or(|b| len < b) {
                        best[f] = Some(len);
                    }
                }
            } else if y > start && !on[y] {
                on[y] = true;
                path.push(e);
                dfs(g, start, y, on, path, best);
                path.pop();
                on[y] = false;
            }
        }
    }
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        dfs(g, s, s, &mut on, &mut Vec::new(), &mut best);
    }
    best
}

/// True iff no edge occurs in two of the paths (or twice in one path).
pub fn edge_disjointness_check(paths: &[Vec<EdgeId>]) -> bool {
    let mut seen = HashSet::new();
    paths.iter().flatten().all(|&e| seen.insert(e))
}

/// Whether `edges` is a walk from `u` to `v` in `g`.
pub fn is_walk_between(g: &Graph, edges: &[EdgeId], u: Vertex, v: Vertex) -> bool {
    let mut x = u;
    for &e in edges {
        if e >= g.m() {
            return false;
        }
        let (a, b) = g.edge(e);
        x = if x == a {
            b
        } else if x == b {
            a
        } else {
            return false;
        };
    }
    x == v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn closed(seq: &[Vertex]) -> Vec<Vertex> {
        let mut s = seq.to_vec();
        s.push(seq[0]);
        s
    }

    #[test]
    fn cycle_graph_single_cycle() {
        let g = generators::cycle(6);
        let r = verify_cover(&g, &[closed(&[0, 1, 2, 3, 4, 5])], None);
        assert!(r.is_ok());
        assert_eq!((r.dilation, r.max_congestion), (6, 1));
    }

    #[test]
    fn broken_cover_names_uncovered_edges() {
        let g = generators::flower(2);
        let full = vec![closed(&[0, 1, 2]), closed(&[0, 3, 4])];
        assert!(verify_cover(&g, &full, None).is_ok());
        let r = verify_cover(&g, &full[..1], None);
        assert_eq!(r.uncovered, vec![3, 4, 5]);
        assert!(r.to_text().contains("status: VIOLATION"));
        let r = verify_cover(&g, &[closed(&[0, 1, 3])], None);
        assert_eq!(r.invalid.len(), 1);
        let r = verify_cover(&g, &[closed(&[0, 1, 2, 0, 3, 4])], None);
        assert_eq!(r.non_simple, vec![0]);
    }

    #[test]
    fn shortest_cycle_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let g = generators::erdos_renyi(rand::Rng::gen_range(&mut rng, 3..=12), 0.35, &mut rng);
            let brute = brute_force_cycle_lengths(&g);
            for e in 0..g.m() {
                assert_eq!(shortest_cycle_through(&g, e), brute[e]);
            }
        }
        let b = generators::barbell();
        let bridge = b.edge_between(2, 3).unwrap();
        assert_eq!(shortest_cycle_through(&b, bridge), None);
        assert_eq!(shortest_cycle_through(&generators::complete(3), 0), Some(3));
    }

    #[test]
    fn disjointness() {
        assert!(!edge_disjointness_check(&[vec![1, 2], vec![1, 2]]));
        assert!(edge_disjointness_check(&[vec![0, 1], vec![2, 3]]));
        let g = generators::flower(2);
        assert!(is_walk_between(&g, &[0, 2], 0, 2));
        assert!(!is_walk_between(&g, &[0, 3], 0, 3));
    }
}
