//! Rooted trees over a host graph: BFS trees, post-order numbering, tree
//! paths, swap edges and the balanced two-way split.
//!
//! A [`RootedTree`] may span only a subset of the host vertices. The tree
//! cover recursion works on such partial trees, and every query here is
//! answered relative to the tree's own root.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: Vertex,
    m: usize,
    in_tree: Vec<bool>,
    parent: Vec<Option<(Vertex, EdgeId)>>,
    depth: Vec<usize>,
    children: Vec<Vec<(Vertex, EdgeId)>>,
    post: Vec<usize>,
    min_post: Vec<usize>,
    order: Vec<Vertex>,
    lower: Vec<Vertex>,
}

impl RootedTree {
    /// Builds a tree from parent pointers. `parent[v]` must be set exactly
    /// for the non-root members, and every parent must itself be a member.
    fn from_parents(m: usize, root: Vertex, in_tree: Vec<bool>, parent: Vec<Option<(Vertex, EdgeId)>>) -> Self {
        let n = in_tree.len();
        let mut children = vec![Vec::new(); n];
        let mut lower = vec![NONE; m];
        for v in 0..n {
            if let Some((p, e)) = parent[v] {
                debug_assert!(in_tree[v] && in_tree[p]);
                children[p].push((v, e));
                lower[e] = v;
            }
        }
        for c in &mut children {
            c.sort_unstable();
        }
        let mut depth = vec![0; n];
        let mut post = vec![0; n];
        let mut min_post = vec![0; n];
        let mut order = Vec::new();
        // iterative post-order, children in ascending vertex ID
        let mut stack = vec![(root, 0usize)];
        let mut first = vec![0usize; n];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i == 0 {
                first[v] = order.len() + 1;
            }
            if *i < children[v].len() {
                let c = children[v][*i].0;
                *i += 1;
                depth[c] = depth[v] + 1;
                stack.push((c, 0));
            } else {
                stack.pop();
                order.push(v);
                post[v] = order.len();
                min_post[v] = first[v];
            }
        }
        RootedTree {
            root,
            m,
            in_tree,
            parent,
            depth,
            children,
            post,
            min_post,
            order,
            lower,
        }
    }

    /// The tree rooted at `root` formed by the given host edges.
    pub fn from_edges(g: &Graph, root: Vertex, edges: &[EdgeId]) -> Result<Self> {
        let n = g.n();
        let mut adj = vec![Vec::new(); n];
        for &e in edges {
            let (u, v) = g.edge(e);
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        let mut in_tree = vec![false; n];
        let mut parent = vec![None; n];
        in_tree[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            adj[x].sort_unstable();
            for &(y, e) in &adj[x] {
                if parent[x].map(|(_, pe)| pe) == Some(e) {
                    continue;
                }
                if in_tree[y] {
                    return Err(Error::InvalidArgument(format!("edge {e} closes a cycle")));
                }
                in_tree[y] = true;
                parent[y] = Some((x, e));
                reached += 1;
                queue.push_back(y);
            }
        }
        if reached != edges.len() + 1 {
            return Err(Error::InvalidArgument("tree edges are not connected".into()));
        }
        Ok(Self::from_parents(g.m(), root, in_tree, parent))
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    /// Number of vertices in the tree.
    pub fn size(&self) -> usize {
        self.order.len()
    }

    /// Vertex count of the host graph.
    pub fn host_n(&self) -> usize {
        self.in_tree.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.in_tree[v]
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v].map(|(p, _)| p)
    }

    pub fn parent_edge(&self, v: Vertex) -> Option<EdgeId> {
        self.parent[v].map(|(_, e)| e)
    }

    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    /// Maximum depth over all members.
    pub fn height(&self) -> usize {
        self.order.iter().map(|&v| self.depth[v]).max().unwrap_or(0)
    }

    pub fn children(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.children[v]
    }

    /// Post-order number N(v) in `1..=size`; 0 for non-members.
    pub fn post(&self, v: Vertex) -> usize {
        self.post[v]
    }

    /// Post-order range `[min_N(v), max_N(v)]` of the subtree T(v).
    /// The upper end always equals N(v).
    pub fn subtree_range(&self, v: Vertex) -> (usize, usize) {
        (self.min_post[v], self.post[v])
    }

    pub fn subtree_size(&self, v: Vertex) -> usize {
        self.post[v] + 1 - self.min_post[v]
    }

    /// Whether `u` lies in the subtree T(z).
    pub fn in_subtree(&self, u: Vertex, z: Vertex) -> bool {
        self.in_tree[u] && self.min_post[z] <= self.post[u] && self.post[u] <= self.post[z]
    }

    /// Members listed in post-order (`order()[i]` has N = i + 1).
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        e < self.m && self.lower[e] != NONE
    }

    /// For a tree edge `(p(v), v)`, the child endpoint `v`.
    pub fn lower_endpoint(&self, e: EdgeId) -> Option<Vertex> {
        (e < self.m && self.lower[e] != NONE).then(|| self.lower[e])
    }

    /// Tree edges in post-order of their lower endpoints.
    pub fn edges(&self) -> Vec<EdgeId> {
        self.order.iter().filter_map(|&v| self.parent_edge(v)).collect()
    }

    pub fn lca(&self, mut u: Vertex, mut v: Vertex) -> Vertex {
        while self.depth[u] > self.depth[v] {
            u = self.parent(u).unwrap();
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent(v).unwrap();
        }
        while u != v {
            u = self.parent(u).unwrap();
            v = self.parent(v).unwrap();
        }
        u
    }

    /// Vertex sequence of the tree path from `u` to `v`, both inclusive.
    pub fn path_vertices(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let a = self.lca(u, v);
        let mut up = vec![u];
        let mut x = u;
        while x != a {
            x = self.parent(x).unwrap();
            up.push(x);
        }
        let mut down = Vec::new();
        let mut y = v;
        while y != a {
            down.push(y);
            y = self.parent(y).unwrap();
        }
        up.extend(down.into_iter().rev());
        up
    }

    /// Edges of the tree path π(u, v), ordered from `u` to `v`.
    pub fn path_edges(&self, u: Vertex, v: Vertex) -> Vec<EdgeId> {
        let a = self.lca(u, v);
        let mut up = Vec::new();
        let mut x = u;
        while x != a {
            up.push(self.parent_edge(x).unwrap());
            x = self.parent(x).unwrap();
        }
        let mut down = Vec::new();
        let mut y = v;
        while y != a {
            down.push(self.parent_edge(y).unwrap());
            y = self.parent(y).unwrap();
        }
        up.extend(down.into_iter().rev());
        up
    }

    /// Restriction to `members`, re-rooted at `root`. Every member other
    /// than `root` must have its parent among the members.
    fn restrict(&self, root: Vertex, members: &[bool]) -> RootedTree {
        let parent = (0..members.len())
            .map(|v| if members[v] && v != root { self.parent[v] } else { None })
            .collect();
        Self::from_parents(self.m, root, members.to_vec(), parent)
    }
}

/// BFS tree rooted at `root`; ties are broken toward the smallest vertex ID.
pub fn bfs_tree(g: &Graph, root: Vertex) -> Result<RootedTree> {
    if root >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: g.n() });
    }
    let n = g.n();
    let mut in_tree = vec![false; n];
    let mut parent = vec![None; n];
    in_tree[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in g.neighbors(x) {
            if !in_tree[y] {
                in_tree[y] = true;
                parent[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    if let Some(v) = in_tree.iter().position(|&b| !b) {
        return Err(Error::Disconnected { root, unreachable: v });
    }
    Ok(RootedTree::from_parents(g.m(), root, in_tree, parent))
}

/// The edges of `tree_path` for a tree; convenience wrapper.
pub fn tree_path(t: &RootedTree, u: Vertex, v: Vertex) -> Vec<EdgeId> {
    t.path_edges(u, v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Swap {
    pub edge: EdgeId,
    /// Endpoint inside T(v), written u′.
    pub inside: Vertex,
    /// Endpoint outside T(v), written s(v).
    pub outside: Vertex,
}

#[derive(Debug, Clone)]
pub struct SwapMap {
    /// Indexed by the lower endpoint v of the tree edge (p(v), v).
    pub swap: Vec<Option<Swap>>,
    /// Tree edges with no swap edge (bridges of the host graph).
    pub uncoverable: Vec<EdgeId>,
}

impl SwapMap {
    pub fn get(&self, v: Vertex) -> Option<Swap> {
        self.swap[v]
    }
}

/// For every tree edge `(p(v), v)` the smallest-ID non-tree edge with
/// exactly one endpoint in T(v).
pub fn swap_edges(g: &Graph, t: &RootedTree) -> SwapMap {
    let n = g.n();
    let mut swap = vec![None; n];
    // up[v]: nearest ancestor-or-self of v that still lacks a swap edge
    let mut up: Vec<Vertex> = (0..n).collect();
    fn find(up: &mut [Vertex], v: Vertex) -> Vertex {
        let mut r = v;
        while up[r] != r {
            r = up[r];
        }
        let mut x = v;
        while up[x] != r {
            let next = up[x];
            up[x] = r;
            x = next;
        }
        r
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if t.is_tree_edge(e) || !t.contains(a) || !t.contains(b) {
            continue;
        }
        let l = t.lca(a, b);
        for (start, other) in [(a, b), (b, a)] {
            let mut x = find(&mut up, start);
            while t.depth(x) > t.depth(l) {
                swap[x] = Some(Swap { edge: e, inside: start, outside: other });
                let p = t.parent(x).unwrap();
                up[x] = p;
                x = find(&mut up, p);
            }
        }
    }
    let mut uncoverable: Vec<EdgeId> = t
        .order()
        .iter()
        .filter(|&&v| v != t.root() && swap[v].is_none())
        .map(|&v| t.parent_edge(v).unwrap())
        .collect();
    uncoverable.sort_unstable();
    SwapMap { swap, uncoverable }
}

/// Splits the tree into two edge-disjoint trees whose union is the whole
/// tree, each with at most ⌈2N/3⌉ vertices. Each part is rooted at its
/// vertex closest to the original root.
pub fn balanced_tree_split(t: &RootedTree) -> Result<(RootedTree, RootedTree)> {
    let size = t.size();
    if size < 2 {
        return Err(Error::TreeTooSmall(size));
    }
    let third = size.div_ceil(3);
    let two_thirds = (2 * size).div_ceil(3);
    let hi = two_thirds - 1;
    let width = two_thirds - third;

    let mut x = t.root();
    while let Some(&(c, _)) = t.children(x).iter().find(|&&(c, _)| t.subtree_size(c) > hi) {
        x = c;
    }
    let n = t.host_n();
    let mut in1 = vec![false; n];
    let root1;
    if let Some(&(c, _)) = t.children(x).iter().find(|&&(c, _)| t.subtree_size(c) > width) {
        root1 = c;
        mark_subtree(t, c, &mut in1);
    } else {
        root1 = x;
        in1[x] = true;
        let mut sum = 0;
        for &(c, _) in t.children(x) {
            if sum >= third {
                break;
            }
            sum += t.subtree_size(c);
            mark_subtree(t, c, &mut in1);
        }
    }
    let mut in2: Vec<bool> = (0..n).map(|v| t.contains(v) && !in1[v]).collect();
    in2[root1] = true;
    Ok((t.restrict(root1, &in1), t.restrict(t.root(), &in2)))
}

fn mark_subtree(t: &RootedTree, z: Vertex, mark: &mut [bool]) {
    let (lo, hi) = t.subtree_range(z);
    for &v in &t.order()[lo - 1..hi] {
        mark[v] = true;
    }
}
