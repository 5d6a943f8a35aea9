//! The top-level cover: non-tree edges and tree edges of a BFS tree.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cycle::{simplify_cycles, Cycle, CycleCover};
use crate::error::Result;
use crate::graph::{bridges, EdgeId, Graph};
use crate::nontree::{non_tree_cover, NonTreeStats};
use crate::tree::bfs_tree;
use crate::treecover::{tree_cover, TreeCoverStats};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCoverStats {
    pub nontree: NonTreeStats,
    pub tree: TreeCoverStats,
    pub tree_depth: usize,
}

#[derive(Debug, Clone)]
pub struct GraphCover {
    pub cover: CycleCover,
    /// Edges on no cycle; they are reported instead of covered.
    pub bridges: Vec<EdgeId>,
    pub stats: GraphCoverStats,
}

/// Covers every non-bridge edge of a connected graph. The BFS tree is
/// rooted at vertex 0. Cycles with identical edge sets are kept once.
pub fn graph_cover(g: &Graph) -> Result<GraphCover> {
    let br = bridges(g);
    if g.n() == 0 {
        return Ok(GraphCover { cover: CycleCover::empty(0), bridges: br, stats: Default::default() });
    }
    let t = bfs_tree(g, 0)?;
    let e1: Vec<EdgeId> = (0..g.m()).filter(|&e| !t.is_tree_edge(e)).collect();
    let nt = non_tree_cover(g, &t, &e1)?;
    let tc = tree_cover(g, &t)?;
    let mut seen = HashSet::new();
    let cycles: Vec<Cycle> = simplify_cycles(nt.cover.cycles.into_iter().chain(tc.cover.cycles).collect())
        .into_iter()
        .filter(|c| {
            let mut key = c.edges.clone();
            key.sort_unstable();
            seen.insert(key)
        })
        .collect();
    Ok(GraphCover {
        cover: CycleCover::new(g.m(), cycles),
        bridges: br,
        stats: GraphCoverStats { nontree: nt.stats, tree: tc.stats, tree_depth: t.height() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn petersen_fully_covered() {
        let g = generators::petersen();
        let gc = graph_cover(&g).unwrap();
        assert!(gc.bridges.is_empty());
        assert!((0..15).all(|e| gc.cover.covers(e)));
        assert!(gc.cover.cycles.iter().all(|c| c.is_simple()));
    }

    #[test]
    fn nice_mode_reports_bridges() {
        let g = generators::barbell();
        let gc = graph_cover(&g).unwrap();
        assert_eq!(gc.bridges.len(), 1);
        for e in 0..g.m() {
            assert_eq!(gc.cover.covers(e), !gc.bridges.contains(&e));
        }
    }

    #[test]
    fn cycle_graph_cover_is_the_cycle() {
        let g = generators::cycle(8);
        let gc = graph_cover(&g).unwrap();
        assert_eq!(gc.cover.cycles.len(), 1);
        assert_eq!(gc.cover.cycles[0].len(), 8);
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert!(graph_cover(&g).is_err());
    }
}
