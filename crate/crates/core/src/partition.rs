//! Consecutive post-order blocks with bounded E′-degree.

use crate::graph::{EdgeId, Graph, Vertex};
use crate::tree::RootedTree;

pub const DEFAULT_DENSITY: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    /// Inclusive post-order ranges `[lo, hi]`, consecutive from 1.
    pub blocks: Vec<(usize, usize)>,
    pub density_bound: usize,
    /// deg(B, E′) per block, counting both endpoints.
    pub densities: Vec<usize>,
    /// Block index of each post-order number (index 0 unused).
    block_of_post: Vec<usize>,
}

impl BlockPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, t: &RootedTree, v: Vertex) -> usize {
        self.block_of_post[t.post(v)]
    }
}

/// Greedy sweep over the post-order of `t`. `pairs` are the endpoints of
/// the E′ edges; every endpoint must be a member of `t`.
pub fn partition_pairs(t: &RootedTree, pairs: &[(Vertex, Vertex)], b: usize) -> BlockPartition {
    assert!(b >= 1, "density bound must be positive");
    let mut deg = vec![0usize; t.host_n()];
    for &(x, y) in pairs {
        deg[x] += 1;
        deg[y] += 1;
    }
    let mut blocks = Vec::new();
    let mut densities = Vec::new();
    let mut block_of_post = vec![0; t.size() + 1];
    let (mut lo, mut cur) = (1, 0);
    for (i, &u) in t.order().iter().enumerate() {
        let p = i + 1;
        if p > lo && cur + deg[u] > b {
            blocks.push((lo, p - 1));
            densities.push(cur);
            lo = p;
            cur = 0;
        }
        cur += deg[u];
        block_of_post[p] = blocks.len();
    }
    if t.size() > 0 {
        blocks.push((lo, t.size()));
        densities.push(cur);
    }
    BlockPartition { blocks, density_bound: b, densities, block_of_post }
}

/// Partition with respect to a set of host edges.
pub fn partition(g: &Graph, t: &RootedTree, eprime: &[EdgeId], b: usize) -> BlockPartition {
    let pairs: Vec<(Vertex, Vertex)> = eprime.iter().map(|&e| g.edge(e)).collect();
    partition_pairs(t, &pairs, b)
}

/// Upper bound on the block count: ⌈4|E′|/b⌉, and at least 1.
pub fn block_count_bound(eprime_len: usize, b: usize) -> usize {
    (4 * eprime_len).div_ceil(b).max(1)
}

/// Number of blocks containing two vertices whose tree path uses
/// `tree_edge`. A block is counted iff it meets both T(v) and its
/// complement, where `tree_edge = (p(v), v)`.
pub fn blocks_crossing(t: &RootedTree, p: &BlockPartition, tree_edge: EdgeId) -> usize {
    let v = t.lower_endpoint(tree_edge).expect("not a tree edge");
    let (slo, shi) = t.subtree_range(v);
    p.blocks
        .iter()
        .filter(|&&(lo, hi)| lo <= shi && slo <= hi && !(slo <= lo && hi <= shi))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::tree::bfs_tree;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn non_tree(g: &Graph, t: &RootedTree) -> Vec<EdgeId> {
        (0..g.m()).filter(|&e| !t.is_tree_edge(e)).collect()
    }

    #[test]
    fn empty_eprime_gives_one_block() {
        let g = generators::path(7);
        let t = bfs_tree(&g, 0).unwrap();
        let p = partition(&g, &t, &[], 16);
        assert_eq!(p.blocks, vec![(1, 7)]);
        assert_eq!(p.densities, vec![0]);
        for e in 1..6 {
            assert_eq!(blocks_crossing(&t, &p, e), 1);
        }
    }

    #[test]
    fn heavy_vertex_is_singleton() {
        let g = generators::complete(8);
        let t = bfs_tree(&g, 0).unwrap();
        let e = non_tree(&g, &t);
        // vertex 1 has 6 non-tree edges; with b = 5 it must stand alone
        let p = partition(&g, &t, &e, 5);
        let blk = p.block_of(&t, 1);
        let (lo, hi) = p.blocks[blk];
        assert_eq!(lo, hi);
        assert!(p.densities[blk] > 5);
    }

    #[test]
    fn properties_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let g = generators::random_two_edge_connected(80, 0.06, &mut rng);
            let t = bfs_tree(&g, 0).unwrap();
            let e = non_tree(&g, &t);
            let p = partition(&g, &t, &e, DEFAULT_DENSITY);
            assert!(p.len() <= block_count_bound(e.len(), DEFAULT_DENSITY));
            assert_eq!(p.densities.iter().sum::<usize>(), 2 * e.len());
            for (i, &(lo, hi)) in p.blocks.iter().enumerate() {
                if p.densities[i] > DEFAULT_DENSITY {
                    assert_eq!(lo, hi);
                }
            }
            for te in t.edges() {
                assert!(blocks_crossing(&t, &p, te) <= 2);
            }
            assert_eq!(partition(&g, &t, &e, DEFAULT_DENSITY), p);
        }
    }
}
