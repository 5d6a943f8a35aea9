//! Covering non-tree edges through block supergraphs.
//!
//! Each iteration partitions the tree into post-order blocks, contracts
//! every block to a super-node, extracts short super-cycles and expands
//! them back into closed walks using tree paths inside blocks. Edges left
//! uncovered are handled by the next iteration.
//!
//! The routine is generic over the edges being covered: they are given as
//! vertex pairs ("extra" edges) so the same code covers real non-tree
//! edges and the virtual edges built by the tree cover.


use serde::{Deserialize, Serialize};

use crate::ceil_log2;
use crate::cycle::{Cycle, CycleCover};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::partition::{partition_pairs, DEFAULT_DENSITY};
use crate::tree::RootedTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Tree(EdgeId),
    Extra(usize),
}

/// A directed traversal of one edge of a walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dart {
    pub from: Vertex,
    pub to: Vertex,
    pub label: Label,
}

pub type Walk = Vec<Dart>;

/// Contracted multigraph: one node per block, one edge per E′ edge.
#[derive(Debug, Clone)]
pub struct SuperGraph {
    pub nodes: usize,
    /// `(block_i, block_j)` per super-edge; self-loops allowed.
    pub edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    alive: Vec<bool>,
}

/// A super-cycle as `(super-edge, forward)` steps; `forward` means the edge
/// is traversed from its first block to its second.
pub type SuperCycle = Vec<(usize, bool)>;

impl SuperGraph {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); nodes];
        for (i, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((b, i));
            if a != b {
                adj[b].push((a, i));
            }
        }
        let alive = vec![true; edges.len()];
        SuperGraph { nodes, edges, adj, alive }
    }

    fn remove(&mut self, c: &SuperCycle) {
        for &(i, _) in c {
            self.alive[i] = false;
        }
    }

    /// Shortest cycle through `s` of length at most `limit`, using BFS with
    /// branch labels (the first edge leaving `s`).
    fn shortest_through(&self, s: usize, limit: usize, sc: &mut Scratch) -> Option<SuperCycle> {
        let depth_cap = limit.div_ceil(2);
        sc.reset(self.nodes);
        sc.visit(s, 0, UNSEEN, None);
        let mut head = 0;
        let mut best: Option<(usize, usize, usize, usize)> = None;
        while head < sc.touched.len() {
            let x = sc.touched[head];
            head += 1;
            for &(y, e) in &self.adj[x] {
                if !self.alive[e] || sc.par[x].map(|(pe, _)| pe) == Some(e) {
                    continue;
                }
                let len = if y == s {
                    sc.dist[x] + 1
                } else if sc.dist[y] == UNSEEN {
                    if sc.dist[x] < depth_cap {
                        let b = if x == s { e } else { sc.branch[x] };
                        sc.visit(y, sc.dist[x] + 1, b, Some((e, x)));
                    }
                    continue;
                } else if sc.branch[y] != sc.branch[x] {
                    sc.dist[x] + sc.dist[y] + 1
                } else {
                    continue;
                };
                if len <= limit && best.is_none_or(|b| len < b.0) {
                    best = Some((len, x, y, e));
                }
            }
        }
        let (_, x, y, e) = best?;
        let mut down = Vec::new();
        let mut z = x;
        while let Some((pe, p)) = sc.par[z] {
            down.push((pe, self.edges[pe].0 == p));
            z = p;
        }
        down.reverse();
        down.push((e, self.edges[e].0 == x));
        let mut z = y;
        while let Some((pe, p)) = sc.par[z] {
            down.push((pe, self.edges[pe].0 == z));
            z = p;
        }
        Some(down)
    }

    /// Removes cycles in order of increasing length (ties by smallest
    /// super-node), until no cycle of length at most `max_len` remains.
    pub fn extract_cycles(&mut self, max_len: usize) -> Vec<SuperCycle> {
        let mut out = Vec::new();
        let mut sc = Scratch::default();
        for limit in 1..=max_len {
            for s in 0..self.nodes {
                while let Some(c) = self.shortest_through(s, limit, &mut sc) {
                    self.remove(&c);
                    out.push(c);
                }
            }
        }
        out
    }
}

const UNSEEN: usize = usize::MAX;

/// BFS state reused across searches; `touched` doubles as the queue.
#[derive(Default)]
struct Scratch {
    dist: Vec<usize>,
    branch: Vec<usize>,
    par: Vec<Option<(usize, usize)>>,
    touched: Vec<usize>,
}

impl Scratch {
    fn reset(&mut self, nodes: usize) {
        if self.dist.len() != nodes {
            self.dist = vec![UNSEEN; nodes];
            self.branch = vec![UNSEEN; nodes];
            self.par = vec![None; nodes];
            self.touched.clear();
        }
        for &x in &self.touched {
            self.dist[x] = UNSEEN;
            self.branch[x] = UNSEEN;
            self.par[x] = None;
        }
        self.touched.clear();
    }

    fn visit(&mut self, x: usize, d: usize, b: usize, p: Option<(usize, usize)>) {
        self.dist[x] = d;
        self.branch[x] = b;
        self.par[x] = p;
        self.touched.push(x);
    }
}

/// A shortest super-cycle of length at most `max_len`, if any.
pub fn find_short_cycle(sg: &SuperGraph, max_len: usize) -> Option<SuperCycle> {
    let mut best: Option<SuperCycle> = None;
    let mut sc = Scratch::default();
    for s in 0..sg.nodes {
        if let Some(c) = sg.shortest_through(s, max_len, &mut sc) {
            if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                best = Some(c);
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonTreeParams {
    pub density: usize,
    pub max_len: usize,
    pub iteration_cap: usize,
}

impl NonTreeParams {
    /// Defaults for a host graph on `n` vertices.
    pub fn for_n(n: usize) -> Self {
        let lg = ceil_log2(n).max(1);
        NonTreeParams {
            density: DEFAULT_DENSITY,
            max_len: lg,
            iteration_cap: 4 * lg + 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationStat {
    pub remaining_before: usize,
    pub remaining_after: usize,
    pub blocks: usize,
    pub cycles: usize,
    /// Largest number of inserted tree paths using one tree edge.
    pub max_tree_load: usize,
}

impl IterationStat {
    pub fn halved(&self) -> bool {
        2 * self.remaining_after <= self.remaining_before
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonTreeStats {
    pub iterations: Vec<IterationStat>,
}

impl NonTreeStats {
    pub fn halving_violations(&self) -> usize {
        self.iterations.iter().filter(|s| !s.halved()).count()
    }

    pub fn extend(&mut self, other: NonTreeStats) {
        self.iterations.extend(other.iterations);
    }
}

fn push_tree_path(t: &RootedTree, from: Vertex, to: Vertex, walk: &mut Walk) {
    let vs = t.path_vertices(from, to);
    for w in vs.windows(2) {
        let e = if t.parent(w[0]) == Some(w[1]) { t.parent_edge(w[0]) } else { t.parent_edge(w[1]) };
        let e = e.unwrap();
        walk.push(Dart { from: w[0], to: w[1], label: Label::Tree(e) });
    }
}

/// Covers the `extra` edges (vertex pairs on members of `t`) with closed
/// walks made of extra edges and tree paths. Returned walks are split at
/// repeated vertices; pieces without any extra edge are dropped.
pub fn cover_extra_edges(
    t: &RootedTree,
    extra: &[(Vertex, Vertex)],
    params: NonTreeParams,
) -> Result<(Vec<Walk>, NonTreeStats)> {
    for &(x, y) in extra {
        if !t.contains(x) || !t.contains(y) {
            return Err(Error::InvalidArgument(format!("extra edge ({x}, {y}) leaves the tree")));
        }
    }
    let mut remaining: Vec<usize> = (0..extra.len()).collect();
    let mut walks = Vec::new();
    let mut stats = NonTreeStats::default();
    while !remaining.is_empty() {
        if stats.iterations.len() >= params.iteration_cap {
            return Err(Error::IterationCap { stage: "non-tree cover", cap: params.iteration_cap });
        }
        let pairs: Vec<(Vertex, Vertex)> = remaining.iter().map(|&i| extra[i]).collect();
        let part = partition_pairs(t, &pairs, params.density);
        let sedges = pairs
            .iter()
            .map(|&(x, y)| (part.block_of(t, x), part.block_of(t, y)))
            .collect();
        let mut sg = SuperGraph::new(part.len(), sedges);
        let found = sg.extract_cycles(params.max_len);
        let mut covered = vec![false; remaining.len()];
        let mut load = vec![0usize; t.host_n()];
        for sc in &found {
            let darts: Vec<Dart> = sc
                .iter()
                .map(|&(i, fwd)| {
                    covered[i] = true;
                    let (x, y) = pairs[i];
                    let (from, to) = if fwd { (x, y) } else { (y, x) };
                    Dart { from, to, label: Label::Extra(remaining[i]) }
                })
                .collect();
            let mut walk = Vec::new();
            for (j, d) in darts.iter().enumerate() {
                walk.push(*d);
                let next = darts[(j + 1) % darts.len()].from;
                let before = walk.len();
                push_tree_path(t, d.to, next, &mut walk);
                for dart in &walk[before..] {
                    if let Label::Tree(e) = dart.label {
                        let v = t.lower_endpoint(e).unwrap();
                        load[v] += 1;
                    }
                }
            }
            walks.extend(split_walk(walk));
        }
        let next: Vec<usize> = remaining
            .iter()
            .zip(&covered)
            .filter(|(_, &c)| !c)
            .map(|(&i, _)| i)
            .collect();
        stats.iterations.push(IterationStat {
            remaining_before: remaining.len(),
            remaining_after: next.len(),
            blocks: part.len(),
            cycles: found.len(),
            max_tree_load: load.into_iter().max().unwrap_or(0),
        });
        remaining = next;
    }
    Ok((walks, stats))
}

/// Splits a closed dart walk at its smallest repeated vertex until every
/// piece visits each vertex once. Pieces consisting only of tree darts
/// are dropped.
pub fn split_walk(walk: Walk) -> Vec<Walk> {
    let mut out = Vec::new();
    let mut stack = vec![walk];
    while let Some(w) = stack.pop() {
        let mut sorted: Vec<Vertex> = w.iter().map(|d| d.from).collect();
        sorted.sort_unstable();
        let Some(rep) = sorted.windows(2).find(|p| p[0] == p[1]).map(|p| p[0]) else {
            if w.iter().any(|d| matches!(d.label, Label::Extra(_))) {
                out.push(w);
            }
            continue;
        };
        let pos: Vec<usize> = (0..w.len()).filter(|&i| w[i].from == rep).collect();
        let k = w.len();
        let mut pieces = Vec::new();
        for (j, &start) in pos.iter().enumerate() {
            let end = if j + 1 < pos.len() { pos[j + 1] } else { pos[0] + k };
            pieces.push((start..end).map(|i| w[i % k]).collect::<Walk>());
        }
        stack.extend(pieces.into_iter().rev());
    }
    out
}

/// Converts a walk over real edges into a [`Cycle`], mapping extra labels
/// through `extra_ids`.
pub fn walk_to_cycle(walk: &[Dart], extra_ids: &[EdgeId]) -> Cycle {
    let mut vertices: Vec<Vertex> = walk.iter().map(|d| d.from).collect();
    vertices.push(walk[0].from);
    let edges = walk
        .iter()
        .map(|d| match d.label {
            Label::Tree(e) => e,
            Label::Extra(i) => extra_ids[i],
        })
        .collect();
    Cycle { vertices, edges }
}

#[derive(Debug, Clone)]
pub struct NonTreeCover {
    pub cover: CycleCover,
    pub stats: NonTreeStats,
}

/// Covers the non-tree edges `e1` of `g` with cycles built from `t`.
pub fn non_tree_cover(g: &Graph, t: &RootedTree, e1: &[EdgeId]) -> Result<NonTreeCover> {
    non_tree_cover_with(g, t, e1, NonTreeParams::for_n(g.n()))
}

pub fn non_tree_cover_with(g: &Graph, t: &RootedTree, e1: &[EdgeId], params: NonTreeParams) -> Result<NonTreeCover> {
    if let Some(&e) = e1.iter().find(|&&e| t.is_tree_edge(e)) {
        return Err(Error::TreeEdge(e));
    }
    let pairs: Vec<(Vertex, Vertex)> = e1.iter().map(|&e| g.edge(e)).collect();
    let (walks, stats) = cover_extra_edges(t, &pairs, params)?;
    let cycles = walks.iter().map(|w| walk_to_cycle(w, e1)).collect();
    Ok(NonTreeCover { cover: CycleCover::new(g.m(), cycles), stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::tree::bfs_tree;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive girth of a small multigraph by DFS over simple cycles.
    fn brute_girth(nodes: usize, edges: &[(usize, usize)]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a == b {
                return Some(1);
            }
            for (j, &(c, d)) in edges.iter().enumerate() {
                if i < j && (a.min(b), a.max(b)) == (c.min(d), c.max(d)) {
                    best = Some(best.map_or(2, |x: usize| x.min(2)));
                }
            }
        }
        if best.is_some() {
            return best;
        }
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        fn dfs(adj: &[Vec<usize>], start: usize, x: usize, depth: usize, seen: &mut Vec<bool>, best: &mut Option<usize>) {
            for &y in &adj[x] {
                if y == start && depth >= 3 {
                    *best = Some(best.map_or(depth, |b| b.min(depth)));
                } else if y > start && !seen[y] && best.is_none_or(|b| depth < b) {
                    seen[y] = true;
                    dfs(adj, start, y, depth + 1, seen, best);
                    seen[y] = false;
                }
            }
        }
        for s in 0..nodes {
            let mut seen = vec![false; nodes];
            seen[s] = true;
            dfs(&adj, s, s, 1, &mut seen, &mut best);
        }
        best
    }

    fn is_closed_super_walk(sg: &SuperGraph, c: &SuperCycle) -> bool {
        let ends: Vec<(usize, usize)> = c
            .iter()
            .map(|&(i, f)| if f { sg.edges[i] } else { (sg.edges[i].1, sg.edges[i].0) })
            .collect();
        let mut ids: Vec<usize> = c.iter().map(|&(i, _)| i).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len() == c.len() && (0..ends.len()).all(|j| ends[j].1 == ends[(j + 1) % ends.len()].0)
    }

    #[test]
    fn self_loops_and_parallel_edges() {
        let sg = SuperGraph::new(3, vec![(0, 1), (1, 2), (2, 2)]);
        assert_eq!(find_short_cycle(&sg, 5), Some(vec![(2, true)]));
        let sg = SuperGraph::new(3, vec![(0, 1), (1, 2), (2, 1)]);
        let c = find_short_cycle(&sg, 5).unwrap();
        assert_eq!(c.len(), 2);
        assert!(is_closed_super_walk(&sg, &c));
        let tree = SuperGraph::new(4, vec![(0, 1), (1, 2), (1, 3)]);
        assert_eq!(find_short_cycle(&tree, 10), None);
    }

    #[test]
    fn short_cycle_matches_exhaustive_girth() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..300 {
            let x = rng.gen_range(2..=30);
            let m = rng.gen_range(x / 2..=2 * x);
            let edges: Vec<(usize, usize)> =
                (0..m).map(|_| (rng.gen_range(0..x), rng.gen_range(0..x))).collect();
            let sg = SuperGraph::new(x, edges.clone());
            let want = brute_girth(x, &edges);
            let got = find_short_cycle(&sg, x + 1);
            assert_eq!(got.as_ref().map(Vec::len), want);
            if let Some(c) = got {
                assert!(is_closed_super_walk(&sg, &c));
            }
        }
    }

    #[test]
    fn dense_supergraphs_have_log_length_cycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let x = rng.gen_range(2..=30);
            let edges: Vec<(usize, usize)> =
                (0..2 * x).map(|_| (rng.gen_range(0..x), rng.gen_range(0..x))).collect();
            let sg = SuperGraph::new(x, edges);
            let bound = 4 * ceil_log2(x).max(1);
            assert!(find_short_cycle(&sg, bound).is_some());
        }
    }

    #[test]
    fn empty_input_gives_empty_cover() {
        let g = generators::cycle(5);
        let t = bfs_tree(&g, 0).unwrap();
        let out = non_tree_cover(&g, &t, &[]).unwrap();
        assert!(out.cover.cycles.is_empty());
    }

    #[test]
    fn c4_chord_gives_whole_cycle() {
        let g = generators::cycle(4);
        let t = bfs_tree(&g, 0).unwrap();
        let e1: Vec<EdgeId> = (0..4).filter(|&e| !t.is_tree_edge(e)).collect();
        let out = non_tree_cover(&g, &t, &e1).unwrap();
        assert_eq!(out.cover.cycles.len(), 1);
        assert_eq!(out.cover.cycles[0].len(), 4);
        assert!(out.cover.cycles[0].is_simple());
    }

    #[test]
    fn rejects_tree_edges() {
        let g = generators::cycle(4);
        let t = bfs_tree(&g, 0).unwrap();
        let te = t.edges()[0];
        assert_eq!(non_tree_cover(&g, &t, &[te]).unwrap_err(), Error::TreeEdge(te));
    }

    #[test]
    fn random_graphs_are_fully_covered() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let g = generators::random_two_edge_connected(60, 0.2, &mut rng);
            let t = bfs_tree(&g, 0).unwrap();
            let e1: Vec<EdgeId> = (0..g.m()).filter(|&e| !t.is_tree_edge(e)).collect();
            let params = NonTreeParams::for_n(g.n());
            let out = non_tree_cover(&g, &t, &e1).unwrap();
            let lg = ceil_log2(g.n());
            for &e in &e1 {
                assert!(out.cover.covers(e));
            }
            for c in &out.cover.cycles {
                assert!(c.is_simple());
                assert!(c.len() <= (2 * t.height() + 1) * lg);
                let extra = c.edges.iter().filter(|&&e| !t.is_tree_edge(e)).count();
                assert!(extra <= params.max_len);
            }
            assert_eq!(out.stats.halving_violations(), 0);
            for it in &out.stats.iterations {
                assert!(it.max_tree_load <= params.density);
            }
        }
    }
}
