//! Undirected simple graphs with stable edge identifiers.
//!
//! Edge IDs are dense in `0..m` and assigned in insertion order, so an edge
//! list file always yields the same IDs. Adjacency lists are kept sorted by
//! neighbor ID, which makes every traversal in the crate deterministic.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    index: HashMap<(Vertex, Vertex), EdgeId>,
}

/// A subgraph together with the maps back into its host graph.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// Local vertex -> host vertex.
    pub vertex_map: Vec<Vertex>,
    /// Local edge -> host edge.
    pub edge_map: Vec<EdgeId>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            index: HashMap::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `{u, v}` and returns its ID.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        if self.index.contains_key(&key) {
            return Err(Error::DuplicateEdge(key.0, key.1));
        }
        let id = self.edges.len();
        self.edges.push(key);
        self.index.insert(key, id);
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            let pos = list.partition_point(|&(w, _)| w < b);
            list.insert(pos, (b, id));
        }
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints `(u, v)` with `u < v`.
    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn other_endpoint(&self, e: EdgeId, x: Vertex) -> Vertex {
        let (u, v) = self.edges[e];
        if x == u {
            v
        } else {
            debug_assert_eq!(x, v);
            u
        }
    }

    /// Neighbors of `v` with the connecting edge, sorted by neighbor ID.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    /// Hop distances from `src`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, src: Vertex) -> Vec<Option<usize>> {
        self.bfs_distances_avoiding(src, None)
    }

    /// Hop distances from `src` in the graph with edge `skip` removed.
    pub fn bfs_distances_avoiding(&self, src: Vertex, skip: Option<EdgeId>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &(y, e) in &self.adj[x] {
                if Some(e) == skip || dist[y].is_some() {
                    continue;
                }
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &(y, _) in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Largest finite eccentricity; `None` if the graph is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs_distances(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// All-pairs hop distances (`usize::MAX` when unreachable).
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|s| {
                self.bfs_distances(s)
                    .into_iter()
                    .map(|d| d.unwrap_or(usize::MAX))
                    .collect()
            })
            .collect()
    }

    /// The subgraph induced by `vertices` (duplicates ignored).
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Subgraph {
        let mut local = vec![usize::MAX; self.n];
        let mut vertex_map = Vec::new();
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            local[v] = vertex_map.len();
            vertex_map.push(v);
        }
        let mut graph = Graph::new(vertex_map.len());
        let mut edge_map = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if local[u] != usize::MAX && local[v] != usize::MAX {
                graph.add_edge(local[u], local[v]).expect("host graph is simple");
                edge_map.push(e);
            }
        }
        Subgraph { graph, vertex_map, edge_map }
    }

    /// The spanning subgraph keeping the edges with `keep[e]` set.
    pub fn edge_subgraph(&self, keep: &[bool]) -> Subgraph {
        let mut graph = Graph::new(self.n);
        let mut edge_map = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if keep[e] {
                graph.add_edge(u, v).expect("host graph is simple");
                edge_map.push(e);
            }
        }
        Subgraph {
            graph,
            vertex_map: (0..self.n).collect(),
            edge_map,
        }
    }

    /// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
    /// Blank lines and text after `#` are ignored; edge IDs follow file order.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut rows = text.lines().enumerate().filter_map(|(i, raw)| {
            let line = raw.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then_some((i + 1, line))
        });
        let parse_pair = |line_no: usize, line: &str| -> Result<(usize, usize)> {
            let mut it = line.split_whitespace();
            let mut next = || -> Result<usize> {
                it.next()
                    .ok_or_else(|| Error::Parse { line: line_no, message: "expected two integers".into() })?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse { line: line_no, message: e.to_string() })
            };
            let a = next()?;
            let b = next()?;
            if it.next().is_some() {
                return Err(Error::Parse { line: line_no, message: "trailing tokens".into() });
            }
            Ok((a, b))
        };
        let (hl, header) = rows
            .next()
            .ok_or(Error::Parse { line: 1, message: "missing header".into() })?;
        let (n, m) = parse_pair(hl, header)?;
        let mut g = Graph::new(n);
        let mut last_line = hl;
        for _ in 0..m {
            let (ln, line) = rows.next().ok_or(Error::Parse {
                line: last_line + 1,
                message: format!("expected {m} edges"),
            })?;
            last_line = ln;
            let (u, v) = parse_pair(ln, line)?;
            g.add_edge(u, v).map_err(|e| Error::Parse { line: ln, message: e.to_string() })?;
        }
        if let Some((ln, _)) = rows.next() {
            return Err(Error::Parse { line: ln, message: "more edges than declared".into() });
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }
}

/// Edges whose removal increases the number of connected components,
/// found with an iterative low-link search. Returned sorted by ID.
pub fn bridges(g: &Graph) -> Vec<EdgeId> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut timer = 0;
    // (vertex, edge used to enter it, next adjacency index)
    let mut stack: Vec<(Vertex, Option<EdgeId>, usize)> = Vec::new();
    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        stack.push((s, None, 0));
        while let Some(&mut (x, via, ref mut i)) = stack.last_mut() {
            if *i < g.neighbors(x).len() {
                let (y, e) = g.neighbors(x)[*i];
                *i += 1;
                if Some(e) == via {
                    continue;
                }
                if disc[y] == usize::MAX {
                    disc[y] = timer;
                    low[y] = timer;
                    timer += 1;
                    stack.push((y, Some(e), 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(p, _, _))) = (via, stack.last()) {
                    low[p] = low[p].min(low[x]);
                    if low[x] > disc[p] {
                        out.push(e);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn connected_without(g: &Graph, e: EdgeId) -> bool {
        let (u, v) = g.edge(e);
        g.bfs_distances_avoiding(u, Some(e))[v].is_some()
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(0, 0), Err(Error::SelfLoop(0)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(Error::DuplicateEdge(0, 1)));
        assert!(matches!(g.add_edge(0, 7), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn adjacency_sorted_and_consistent() {
        let g = Graph::from_edges(5, [(3, 1), (0, 4), (1, 0), (4, 3), (2, 1)]).unwrap();
        for v in 0..5 {
            let nb = g.neighbors(v);
            assert!(nb.windows(2).all(|w| w[0].0 < w[1].0));
            for &(w, e) in nb {
                let (a, b) = g.edge(e);
                assert!(a < b);
                assert!((a, b) == (v.min(w), v.max(w)));
            }
        }
        assert_eq!(g.edge(0), (1, 3));
    }

    #[test]
    fn bridges_on_cycles_paths_and_barbell() {
        assert!(bridges(&generators::cycle(7)).is_empty());
        let p = generators::path(6);
        assert_eq!(bridges(&p), (0..5).collect::<Vec<_>>());
        let b = generators::barbell();
        let oracle: Vec<EdgeId> = (0..b.m()).filter(|&e| !connected_without(&b, e)).collect();
        assert_eq!(bridges(&b), oracle);
        assert_eq!(oracle.len(), 1);
    }

    #[test]
    fn bridges_match_deletion_oracle_on_random_graphs() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let g = generators::erdos_renyi(25, 0.09, &mut rng);
            let oracle: Vec<EdgeId> = (0..g.m())
                .filter(|&e| {
                    let (u, v) = g.edge(e);
                    g.bfs_distances_avoiding(u, Some(e))[v].is_none()
                })
                .collect();
            assert_eq!(bridges(&g), oracle);
        }
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let text = "# triangle\n3 3\n0 1\n1 2 # back\n\n2 0\n";
        let g = Graph::parse_edge_list(text).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.edge(2), (0, 2));
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(matches!(Graph::parse_edge_list("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse_edge_list("3 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse_edge_list("2 1\n0 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse_edge_list("2 1\n0 1\n1 0\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn induced_subgraph_maps_back() {
        let g = generators::complete(5);
        let sub = g.induced_subgraph(&[4, 1, 3]);
        assert_eq!(sub.graph.n(), 3);
        assert_eq!(sub.graph.m(), 3);
        for (le, &ge) in sub.edge_map.iter().enumerate() {
            let (a, b) = sub.graph.edge(le);
            let (x, y) = g.edge(ge);
            assert_eq!((sub.vertex_map[a], sub.vertex_map[b]), (x, y));
        }
    }
}
