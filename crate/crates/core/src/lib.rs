//! Low-congestion cycle covers of bridgeless graphs, with verification
//! oracles and a round-based simulator for resilient message passing.

pub mod compilers;
pub mod cover;
pub mod coverfile;
pub mod cycle;
pub mod disjoint;
pub mod error;
pub mod generators;
pub mod graph;
pub mod ncover;
pub mod nontree;
pub mod optimal;
pub mod partition;
pub mod sim;
pub mod tree;
pub mod verify;
pub mod treecover;

pub use cover::{graph_cover, GraphCover};
pub use cycle::{simplify_cycles, Cycle, CycleCover};
pub use error::{Error, Result};
pub use graph::{bridges, EdgeId, Graph, Vertex};
pub use tree::{balanced_tree_split, bfs_tree, swap_edges, tree_path, RootedTree};

/// ⌈log₂ n⌉, with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}
