//! Covering tree edges.
//!
//! Every tree edge `e = (p(v), v)` with a swap edge `(u′, s(v))` owns the
//! path `P_e = π(v, u′) ∘ swap(e)`. A greedy top-down scan picks the
//! independent set I(T) whose paths `e ∘ P_e` jointly cover the tree. The
//! recursion then splits the tree in two balanced halves and covers the
//! I(T) edges whose swap endpoint crosses to the other half, pairing them
//! with edge-disjoint tree paths and routing virtual edges through the
//! non-tree cover of the other half.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::ceil_log2;
use crate::cycle::{simplify_cycles, Cycle, CycleCover};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::nontree::{cover_extra_edges, Label, NonTreeParams, NonTreeStats};
use crate::tree::{balanced_tree_split, swap_edges, RootedTree, SwapMap};

/// The path `P_e` for a tree edge `e = (p(v), v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapPath {
    pub tree_edge: EdgeId,
    /// Vertices from `v` down to `u′`, then `s(v)`.
    pub vertices: Vec<Vertex>,
    /// Tree edges of π(v, u′) followed by the swap edge.
    pub edges: Vec<EdgeId>,
}

impl SwapPath {
    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn swap_edge(&self) -> EdgeId {
        *self.edges.last().unwrap()
    }

    /// The tree edges of the path (everything but the swap edge).
    pub fn tree_edges(&self) -> &[EdgeId] {
        &self.edges[..self.edges.len() - 1]
    }
}

#[derive(Debug, Clone)]
pub struct IndependentSet {
    /// Lower endpoints `v` of the chosen edges, in scan order.
    pub members: Vec<Vertex>,
    /// `P_e` for every tree edge with a swap edge, indexed by `v`.
    pub paths: Vec<Option<SwapPath>>,
}

impl IndependentSet {
    pub fn path(&self, v: Vertex) -> &SwapPath {
        self.paths[v].as_ref().expect("tree edge has no swap path")
    }
}

/// `P_e` for every coverable tree edge.
pub fn swap_paths(t: &RootedTree, swaps: &SwapMap) -> Vec<Option<SwapPath>> {
    (0..t.host_n())
        .map(|v| {
            let s = swaps.get(v)?;
            let mut vertices = t.path_vertices(v, s.inside);
            let mut edges = t.path_edges(v, s.inside);
            vertices.push(s.outside);
            edges.push(s.edge);
            Some(SwapPath { tree_edge: t.parent_edge(v).unwrap(), vertices, edges })
        })
        .collect()
}

/// Scans tree edges by non-decreasing depth (ties by vertex ID) and keeps
/// an edge unless an earlier member's `e′ ∘ P_e′` already contains it.
/// Tree edges without a swap edge are skipped.
pub fn build_independent_set(t: &RootedTree, swaps: &SwapMap) -> IndependentSet {
    let paths = swap_paths(t, swaps);
    let mut scan: Vec<Vertex> = t.order().iter().copied().filter(|&v| v != t.root()).collect();
    scan.sort_unstable_by_key(|&v| (t.depth(v), v));
    let mut covered = vec![false; t.host_n()];
    let mut members = Vec::new();
    for v in scan {
        let Some(p) = &paths[v] else { continue };
        if covered[v] {
            continue;
        }
        members.push(v);
        covered[v] = true;
        for &e in p.tree_edges() {
            covered[t.lower_endpoint(e).unwrap()] = true;
        }
    }
    IndependentSet { members, paths }
}

/// Pairs up the marked vertices so that the tree paths between partners
/// are pairwise edge-disjoint. Works leaf to root: each vertex pairs the
/// unmatched marked vertices reported by its children (and itself) and
/// passes at most one upward. Pairs are returned as `(min, max)`.
pub fn edge_disjoint_path_matching(t: &RootedTree, marked: &[Vertex]) -> Result<Vec<(Vertex, Vertex)>> {
    if marked.len() % 2 == 1 {
        return Err(Error::OddMarking(marked.len()));
    }
    let mut is_marked = vec![false; t.host_n()];
    for &v in marked {
        if !t.contains(v) {
            return Err(Error::InvalidArgument(format!("marked vertex {v} is not in the tree")));
        }
        is_marked[v] = true;
    }
    let mut carry: Vec<Option<Vertex>> = vec![None; t.host_n()];
    let mut pairs = Vec::new();
    for &x in t.order() {
        let mut pending: Vec<Vertex> = t.children(x).iter().filter_map(|&(c, _)| carry[c]).collect();
        if is_marked[x] {
            pending.push(x);
        }
        let mut it = pending.chunks_exact(2);
        for pr in &mut it {
            pairs.push((pr[0].min(pr[1]), pr[0].max(pr[1])));
        }
        carry[x] = it.remainder().first().copied();
    }
    debug_assert!(carry[t.root()].is_none());
    pairs.sort_unstable();
    Ok(pairs)
}

/// Directed conflict graph over matched pairs together with a 3-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    /// Arcs `(σ′, σ)`: the path of σ′ meets the `P_e` of an edge σ covers.
    pub arcs: Vec<(usize, usize)>,
    pub colors: Vec<usize>,
}

/// Builds the conflict graph. `pair_paths[i]` is the tree path of pair
/// `i`; `own[i]` lists the endpoints `v` of pair `i` whose edge `(p(v), v)`
/// lies on that path.
pub fn build_conflict_graph(
    pair_paths: &[Vec<EdgeId>],
    own: &[Vec<Vertex>],
    paths: &[Option<SwapPath>],
    m: usize,
) -> Result<ConflictGraph> {
    let mut owner = vec![usize::MAX; m];
    for (i, p) in pair_paths.iter().enumerate() {
        for &e in p {
            owner[e] = i;
        }
    }
    let mut arcs = BTreeSet::new();
    for (i, vs) in own.iter().enumerate() {
        for &v in vs {
            let p = paths[v].as_ref().expect("member without swap path");
            for &f in p.tree_edges() {
                let j = owner[f];
                if j != usize::MAX && j != i {
                    arcs.insert((j, i));
                }
            }
        }
    }
    let arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
    let k = pair_paths.len();
    let mut out_deg = vec![0usize; k];
    for &(a, _) in &arcs {
        out_deg[a] += 1;
    }
    if let Some(pair) = (0..k).find(|&i| out_deg[i] > 1) {
        return Err(Error::ConflictOutDegree { pair, degree: out_deg[pair] });
    }
    let colors = three_color(k, &arcs);
    Ok(ConflictGraph { arcs, colors })
}

/// Greedy coloring in smallest-last (degeneracy) order of the underlying
/// undirected graph.
fn three_color(k: usize, arcs: &[(usize, usize)]) -> Vec<usize> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for &(a, b) in arcs {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut deg: Vec<usize> = adj.iter().map(BTreeSet::len).collect();
    let mut removed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let x = (0..k).filter(|&i| !removed[i]).min_by_key(|&i| (deg[i], i)).unwrap();
        removed[x] = true;
        order.push(x);
        for &y in &adj[x] {
            if !removed[y] {
                deg[y] -= 1;
            }
        }
    }
    let mut colors = vec![usize::MAX; k];
    for &x in order.iter().rev() {
        let used: BTreeSet<usize> = adj[x].iter().map(|&y| colors[y]).collect();
        colors[x] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    colors
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseStat {
    pub marked: usize,
    pub matched_on_path: usize,
    pub pairs: usize,
    pub arcs: usize,
    pub colors: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCoverStats {
    pub independent_set: usize,
    pub phases: Vec<PhaseStat>,
    pub fundamental_cycles: usize,
    pub max_depth: usize,
    /// Phases where fewer than half of the matched marked vertices had
    /// their edge on their own pair's path.
    pub half_coverage_violations: usize,
    /// Covered edges `e ∘ P_e` whose tree edges did not appear exactly once
    /// in the translated cycle.
    pub exactly_once_violations: usize,
    /// Tree edges shared by two trees at the same recursion depth.
    pub same_level_overlaps: usize,
    pub nontree: NonTreeStats,
}

#[derive(Debug, Clone)]
pub struct TreeCover {
    pub cover: CycleCover,
    pub independent_set: Vec<Vertex>,
    /// Tree edges that are bridges of the host graph.
    pub uncoverable: Vec<EdgeId>,
    pub stats: TreeCoverStats,
}

type RealDart = (Vertex, Vertex, EdgeId);

struct Ctx<'a> {
    g: &'a Graph,
    t: &'a RootedTree,
    paths: Vec<Option<SwapPath>>,
    params: NonTreeParams,
    phase_cap: usize,
    cycles: Vec<Cycle>,
    stats: TreeCoverStats,
    level_marks: Vec<Vec<bool>>,
}

fn darts_of(vertices: &[Vertex], edges: &[EdgeId]) -> Vec<RealDart> {
    (0..edges.len()).map(|i| (vertices[i], vertices[i + 1], edges[i])).collect()
}

fn reversed(darts: Vec<RealDart>) -> Vec<RealDart> {
    darts.into_iter().rev().map(|(a, b, e)| (b, a, e)).collect()
}

fn cycle_of(darts: &[RealDart]) -> Cycle {
    let mut vertices: Vec<Vertex> = darts.iter().map(|d| d.0).collect();
    vertices.push(darts[0].0);
    Cycle { vertices, edges: darts.iter().map(|d| d.2).collect() }
}

impl<'a> Ctx<'a> {
    fn swap_end(&self, v: Vertex) -> Vertex {
        self.paths[v].as_ref().unwrap().end()
    }

    fn fundamental(&mut self, v: Vertex) {
        let p = self.paths[v].as_ref().unwrap();
        let (inside, outside) = (p.vertices[p.vertices.len() - 2], p.end());
        let vs = self.t.path_vertices(outside, inside);
        let es = self.t.path_edges(outside, inside);
        let mut darts = darts_of(&vs, &es);
        darts.push((inside, outside, p.swap_edge()));
        self.cycles.push(cycle_of(&darts));
        self.stats.fundamental_cycles += 1;
    }

    fn mark_level(&mut self, tp: &RootedTree, level: usize) {
        if self.level_marks.len() <= level {
            self.level_marks.push(vec![false; self.g.m()]);
        }
        self.stats.max_depth = self.stats.max_depth.max(level);
        for e in tp.edges() {
            if std::mem::replace(&mut self.level_marks[level][e], true) {
                self.stats.same_level_overlaps += 1;
            }
        }
    }

    fn rec(&mut self, tp: &RootedTree, r: Vec<Vertex>, level: usize) -> Result<()> {
        if r.is_empty() {
            return Ok(());
        }
        self.mark_level(tp, level);
        if tp.size() <= 2 {
            for v in r {
                self.fundamental(v);
            }
            return Ok(());
        }
        let (t1, t2) = balanced_tree_split(tp)?;
        let (mut r11, mut r22, mut x12, mut x21) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for v in r {
            let e = self.t.parent_edge(v).unwrap();
            let s = self.swap_end(v);
            if t1.is_tree_edge(e) {
                if t1.contains(s) { r11.push(v) } else { x12.push(v) }
            } else if t2.contains(s) {
                r22.push(v)
            } else {
                x21.push(v)
            }
        }
        self.cross(&t1, &t2, x12)?;
        self.cross(&t2, &t1, x21)?;
        self.rec(&t1, r11, level + 1)?;
        self.rec(&t2, r22, level + 1)
    }

    /// Covers edges `(p(v), v)` of `ta` whose swap endpoint lies in `tb`.
    fn cross(&mut self, ta: &RootedTree, tb: &RootedTree, mut x: Vec<Vertex>) -> Result<()> {
        x.sort_unstable();
        let mut phases = 0;
        while !x.is_empty() {
            phases += 1;
            if phases > self.phase_cap {
                return Err(Error::IterationCap { stage: "tree cover phases", cap: self.phase_cap });
            }
            if x.len() == 1 {
                self.fundamental(x[0]);
                break;
            }
            let marked: Vec<Vertex> = if x.len() % 2 == 1 { x[..x.len() - 1].to_vec() } else { x.clone() };
            let pairs = edge_disjoint_path_matching(ta, &marked)?;
            let pair_paths: Vec<Vec<EdgeId>> = pairs.iter().map(|&(a, b)| ta.path_edges(a, b)).collect();
            let own: Vec<Vec<Vertex>> = pairs
                .iter()
                .map(|&(a, b)| [a, b].into_iter().filter(|&v| !ta.in_subtree(if v == a { b } else { a }, v)).collect())
                .collect();
            let on_path: usize = own.iter().map(Vec::len).sum();
            let conflict = build_conflict_graph(&pair_paths, &own, &self.paths, self.g.m())?;
            let colors = conflict.colors.iter().copied().max().map_or(0, |c| c + 1);
            if colors > 3 {
                return Err(Error::InvalidArgument(format!("conflict graph needed {colors} colors")));
            }
            self.stats.phases.push(PhaseStat {
                marked: marked.len(),
                matched_on_path: on_path,
                pairs: pairs.len(),
                arcs: conflict.arcs.len(),
                colors,
            });
            if 2 * on_path < marked.len() {
                self.stats.half_coverage_violations += 1;
            }
            for c in 0..colors {
                let class: Vec<usize> = (0..pairs.len()).filter(|&i| conflict.colors[i] == c).collect();
                self.cover_class(ta, tb, &pairs, &own, &class)?;
            }
            let done: BTreeSet<Vertex> = own.iter().flatten().copied().collect();
            x.retain(|v| !done.contains(v));
        }
        Ok(())
    }

    /// Real darts replacing the virtual edge of pair `(v1, v2)` from `s(v1)` to `s(v2)`.
    fn virtual_darts(&self, ta: &RootedTree, v1: Vertex, v2: Vertex) -> Vec<RealDart> {
        let p1 = self.paths[v1].as_ref().unwrap();
        let p2 = self.paths[v2].as_ref().unwrap();
        let mut d = reversed(darts_of(&p1.vertices, &p1.edges));
        d.extend(darts_of(&ta.path_vertices(v1, v2), &ta.path_edges(v1, v2)));
        d.extend(darts_of(&p2.vertices, &p2.edges));
        d
    }

    fn check_exactly_once(&mut self, darts: &[RealDart], owners: &[Vertex]) {
        let mut count: HashMap<EdgeId, usize> = HashMap::new();
        for d in darts {
            *count.entry(d.2).or_default() += 1;
        }
        for &v in owners {
            let p = self.paths[v].as_ref().unwrap();
            let tree_part = p.tree_edges().iter().chain(std::iter::once(&p.tree_edge));
            for e in tree_part {
                if count.get(e).copied().unwrap_or(0) != 1 {
                    self.stats.exactly_once_violations += 1;
                }
            }
        }
    }

    fn cover_class(
        &mut self,
        ta: &RootedTree,
        tb: &RootedTree,
        pairs: &[(Vertex, Vertex)],
        own: &[Vec<Vertex>],
        class: &[usize],
    ) -> Result<()> {
        let mut extra = Vec::new();
        let mut extra_pair = Vec::new();
        for &i in class {
            let (v1, v2) = pairs[i];
            let (s1, s2) = (self.swap_end(v1), self.swap_end(v2));
            if s1 == s2 {
                let darts = self.virtual_darts(ta, v1, v2);
                self.check_exactly_once(&darts, &own[i]);
                self.cycles.push(cycle_of(&darts));
            } else {
                extra.push((s1, s2));
                extra_pair.push(i);
            }
        }
        if extra.is_empty() {
            return Ok(());
        }
        let (walks, stats) = cover_extra_edges(tb, &extra, self.params)?;
        self.stats.nontree.extend(stats);
        for w in walks {
            let mut darts = Vec::new();
            let mut owners = Vec::new();
            for d in &w {
                match d.label {
                    Label::Tree(e) => darts.push((d.from, d.to, e)),
                    Label::Extra(k) => {
                        let i = extra_pair[k];
                        let (v1, v2) = pairs[i];
                        owners.extend(&own[i]);
                        let fwd = self.virtual_darts(ta, v1, v2);
                        if d.from == extra[k].0 && d.to == extra[k].1 {
                            darts.extend(fwd);
                        } else {
                            darts.extend(reversed(fwd));
                        }
                    }
                }
            }
            self.check_exactly_once(&darts, &owners);
            self.cycles.push(cycle_of(&darts));
        }
        Ok(())
    }
}

/// Covers every non-bridge edge of the spanning tree `t`.
pub fn tree_cover(g: &Graph, t: &RootedTree) -> Result<TreeCover> {
    let swaps = swap_edges(g, t);
    let iset = build_independent_set(t, &swaps);
    let lg = ceil_log2(g.n()).max(1);
    let mut ctx = Ctx {
        g,
        t,
        paths: iset.paths.clone(),
        params: NonTreeParams::for_n(g.n()),
        phase_cap: 4 * lg + 8,
        cycles: Vec::new(),
        stats: TreeCoverStats { independent_set: iset.members.len(), ..Default::default() },
        level_marks: Vec::new(),
    };
    ctx.rec(t, iset.members.clone(), 0)?;
    let cycles = simplify_cycles(std::mem::take(&mut ctx.cycles));
    Ok(TreeCover {
        cover: CycleCover::new(g.m(), cycles),
        independent_set: iset.members,
        uncoverable: swaps.uncoverable,
        stats: ctx.stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::tree::bfs_tree;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(g: &Graph) -> (RootedTree, IndependentSet) {
        let t = bfs_tree(g, 0).unwrap();
        let sw = swap_edges(g, &t);
        let is = build_independent_set(&t, &sw);
        (t, is)
    }

    fn check_claim(g: &Graph, t: &RootedTree, is: &IndependentSet) {
        let mut tree_hits = vec![0usize; g.m()];
        let mut swap_dirs = BTreeSet::new();
        let mut covered = vec![false; g.m()];
        for &v in &is.members {
            let p = is.path(v);
            covered[p.tree_edge] = true;
            for &e in p.tree_edges() {
                tree_hits[e] += 1;
                covered[e] = true;
            }
            let n = p.vertices.len();
            assert!(swap_dirs.insert((p.vertices[n - 2], p.vertices[n - 1])), "swap edge reused in one direction");
        }
        assert!(tree_hits.iter().all(|&h| h <= 1));
        for e in t.edges() {
            assert!(covered[e]);
        }
    }

    #[test]
    fn c4_independent_set_is_top_edge() {
        let g = generators::cycle(4);
        let t = RootedTree::from_edges(&g, 0, &[0, 1, 2]).unwrap();
        let sw = swap_edges(&g, &t);
        let is = build_independent_set(&t, &sw);
        assert_eq!(is.members, vec![1]);
        assert_eq!(is.path(1).tree_edges(), &[1, 2]);
    }

    #[test]
    fn independent_set_claim_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..300 {
            let n = rand::Rng::gen_range(&mut rng, 3..=80);
            let g = generators::random_two_edge_connected(n, 0.04, &mut rng);
            let (t, is) = setup(&g);
            check_claim(&g, &t, &is);
        }
        let mut g = generators::star(8);
        for i in 0..4 {
            g.add_edge(1 + 2 * i, 2 + 2 * i).unwrap();
        }
        let (t, is) = setup(&g);
        check_claim(&g, &t, &is);
    }

    #[test]
    fn matching_small_cases() {
        let p = generators::path(5);
        let t = bfs_tree(&p, 0).unwrap();
        assert_eq!(edge_disjoint_path_matching(&t, &[0, 4]).unwrap(), vec![(0, 4)]);
        let s = generators::star(4);
        let t = bfs_tree(&s, 0).unwrap();
        let pairs = edge_disjoint_path_matching(&t, &[1, 2, 3, 4]).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(edge_disjoint_path_matching(&t, &[1, 2, 3]), Err(Error::OddMarking(3)));
    }

    #[test]
    fn matching_paths_are_edge_disjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let g = generators::random_tree(60, &mut rng);
            let t = bfs_tree(&g, 0).unwrap();
            for _ in 0..20 {
                let mut vs: Vec<Vertex> = (0..60).collect();
                vs.shuffle(&mut rng);
                let k = 2 * rand::Rng::gen_range(&mut rng, 1..=30);
                let marked = &vs[..k];
                let pairs = edge_disjoint_path_matching(&t, marked).unwrap();
                let mut seen = BTreeSet::new();
                let mut matched = BTreeSet::new();
                for &(a, b) in &pairs {
                    assert!(matched.insert(a) && matched.insert(b));
                    for e in t.path_edges(a, b) {
                        assert!(seen.insert(e));
                    }
                }
                assert_eq!(matched.len(), k);
            }
        }
    }

    #[test]
    fn conflict_gadget_has_one_arc() {
        // pair 0 owns v = 1 whose P-path uses edge 5; pair 1's path is edge 5
        let mut paths = vec![None; 2];
        paths[1] = Some(SwapPath { tree_edge: 0, vertices: vec![1, 9, 7], edges: vec![5, 6] });
        let cg = build_conflict_graph(&[vec![0], vec![5]], &[vec![1], vec![]], &paths, 8).unwrap();
        assert_eq!(cg.arcs, vec![(1, 0)]);
        assert_ne!(cg.colors[0], cg.colors[1]);
        let none = build_conflict_graph(&[vec![0], vec![4]], &[vec![1], vec![]], &paths, 8).unwrap();
        assert!(none.arcs.is_empty());
        assert_eq!(none.colors, vec![0, 0]);
    }

    #[test]
    fn three_coloring_of_functional_digraphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let k = rand::Rng::gen_range(&mut rng, 1..40);
            let arcs: Vec<(usize, usize)> = (0..k)
                .filter_map(|a| {
                    let b = rand::Rng::gen_range(&mut rng, 0..k);
                    (a != b && rand::Rng::gen_bool(&mut rng, 0.7)).then_some((a, b))
                })
                .collect();
            let colors = three_color(k, &arcs);
            assert!(colors.iter().all(|&c| c < 3));
            assert!(arcs.iter().all(|&(a, b)| colors[a] != colors[b]));
        }
    }

    #[test]
    fn cycle_graph_tree_cover() {
        let g = generators::cycle(9);
        let t = bfs_tree(&g, 0).unwrap();
        let tc = tree_cover(&g, &t).unwrap();
        for e in t.edges() {
            assert!(tc.cover.covers(e));
        }
        assert!(tc.cover.max_congestion() <= 4);
        assert!(tc.cover.cycles.iter().all(|c| c.len() == 9));
    }

    #[test]
    fn random_tree_covers_are_complete_and_clean() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let n = rand::Rng::gen_range(&mut rng, 3..=100);
            let g = generators::random_two_edge_connected(n, 0.03, &mut rng);
            let t = bfs_tree(&g, 0).unwrap();
            let tc = tree_cover(&g, &t).unwrap();
            for e in t.edges() {
                assert!(tc.cover.covers(e), "tree edge {e} uncovered");
            }
            assert!(tc.cover.cycles.iter().all(Cycle::is_simple));
            assert_eq!(tc.stats.half_coverage_violations, 0);
            assert_eq!(tc.stats.exactly_once_violations, 0);
            assert_eq!(tc.stats.same_level_overlaps, 0);
            assert_eq!(tc.stats.nontree.halving_violations(), 0);
        }
    }
}
