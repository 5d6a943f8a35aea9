//! Graph families used by tests, benchmarks and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{bridges, Graph, Vertex};

fn build(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced an invalid edge")
}

fn add_if_absent(g: &mut Graph, u: Vertex, v: Vertex) -> bool {
    u != v && g.edge_between(u, v).is_none() && g.add_edge(u, v).is_ok()
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// Star with center 0 and leaves `1..=k`.
pub fn star(k: usize) -> Graph {
    build(k + 1, (1..=k).map(|v| (0, v)))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    build(10, outer.chain(spokes).chain(inner))
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    build(rows * cols, edges)
}

/// Two triangles joined by a single edge.
pub fn barbell() -> Graph {
    build(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
}

/// Two vertices joined by three internally disjoint paths of length 2.
pub fn theta() -> Graph {
    build(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
}

/// Complete binary tree on `n` vertices (heap numbering).
pub fn binary_tree(n: usize) -> Graph {
    build(n, (1..n).map(|v| ((v - 1) / 2, v)))
}

/// `k` triangles sharing the hub vertex 0.
pub fn flower(k: usize) -> Graph {
    flower_with_stem(k, 0)
}

/// A flower with `k` triangle petals on hub 0, plus a stem of `stem`
/// triangles chained vertex-to-vertex away from the hub. The graph stays
/// bridgeless and every edge lies on a triangle, while the diameter grows
/// linearly with `stem`.
pub fn flower_with_stem(k: usize, stem: usize) -> Graph {
    let n = 1 + 2 * k + 2 * stem;
    let mut edges = Vec::new();
    for i in 0..k {
        let (a, b) = (1 + 2 * i, 2 + 2 * i);
        edges.extend([(0, a), (0, b), (a, b)]);
    }
    let mut joint = 0;
    for i in 0..stem {
        let (a, b) = (1 + 2 * k + 2 * i, 2 + 2 * k + 2 * i);
        edges.extend([(joint, a), (joint, b), (a, b)]);
        joint = b;
    }
    build(n, edges)
}

/// A flower whose extra path of `len` triangles starts and ends at the hub.
/// Joints are 0, then `2k+1 ..`; the ring of joint edges has length `len`.
pub fn flower_with_ring(k: usize, len: usize) -> Graph {
    assert!(len >= 3, "ring needs at least three triangles");
    let base = 1 + 2 * k;
    let n = base + 2 * len - 1;
    let mut edges: Vec<(Vertex, Vertex)> = flower(k).edges().to_vec();
    let joint = |i: usize| if i.is_multiple_of(len) { 0 } else { base + i - 1 };
    for i in 0..len {
        let (a, b, apex) = (joint(i), joint(i + 1), base + len - 1 + i);
        edges.extend([(a, b), (a, apex), (b, apex)]);
    }
    build(n, edges)
}

pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Uniformly random recursive tree: vertex `i` attaches to a random earlier vertex.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut labels: Vec<Vertex> = (0..n).collect();
    labels.shuffle(rng);
    build(n, (1..n).map(|i| (labels[rng.gen_range(0..i)], labels[i])))
}

/// Connected random graph: random tree plus each remaining pair with probability `p`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = random_tree(n, rng);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                add_if_absent(&mut g, u, v);
            }
        }
    }
    g
}

/// Connected bridgeless random graph. Starts from [`random_connected`] and
/// repairs each remaining bridge with a random edge across it.
pub fn random_two_edge_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    assert!(n >= 3);
    let mut g = random_connected(n, p, rng);
    loop {
        let br = bridges(&g);
        let Some(&e) = br.first() else { return g };
        let (u, _) = g.edge(e);
        let side: Vec<bool> = g
            .bfs_distances_avoiding(u, Some(e))
            .iter()
            .map(Option::is_some)
            .collect();
        let a: Vec<Vertex> = (0..n).filter(|&x| side[x]).collect();
        let b: Vec<Vertex> = (0..n).filter(|&x| !side[x]).collect();
        loop {
            let x = *a.choose(rng).unwrap();
            let y = *b.choose(rng).unwrap();
            if add_if_absent(&mut g, x, y) || a.len() * b.len() == 1 {
                break;
            }
        }
    }
}

/// Random 3-edge-connected graph: a random Hamiltonian cycle, a second
/// random Hamiltonian cycle, and extra edges with probability `p`,
/// resampled until the global edge connectivity is at least 3.
pub fn random_three_edge_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    assert!(n >= 4);
    loop {
        let mut g = Graph::new(n);
        for _ in 0..2 {
            let mut perm: Vec<Vertex> = (0..n).collect();
            perm.shuffle(rng);
            for i in 0..n {
                add_if_absent(&mut g, perm[i], perm[(i + 1) % n]);
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    add_if_absent(&mut g, u, v);
                }
            }
        }
        if crate::disjoint::check_three_edge_connected(&g).is_ok() {
            return g;
        }
    }
}

/// Random geometric graph in the unit square with connection radius `r`.
pub fn random_geometric<R: Rng + ?Sized>(n: usize, r: f64, rng: &mut R) -> Graph {
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (dx, dy) = (pts[u].0 - pts[v].0, pts[u].1 - pts[v].1);
            if dx * dx + dy * dy <= r * r {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn family_shapes() {
        assert_eq!(petersen().m(), 15);
        assert!((0..10).all(|v| petersen().degree(v) == 3));
        assert_eq!(grid(3, 4).m(), 17);
        let f = flower_with_stem(10, 5);
        assert!(bridges(&f).is_empty());
        assert_eq!(f.m(), 45);
        assert_eq!(f.diameter(), Some(6));
        let r = flower_with_ring(3, 10);
        assert!(bridges(&r).is_empty());
        assert_eq!((r.n(), r.m()), (26, 39));
        assert_eq!(r.diameter(), Some(6));
    }

    #[test]
    fn random_families_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [3, 5, 20, 60] {
            let g = random_two_edge_connected(n, 0.02, &mut rng);
            assert!(g.is_connected() && bridges(&g).is_empty());
        }
        for n in [4, 9, 30] {
            let g = random_three_edge_connected(n, 0.05, &mut rng);
            assert!(crate::disjoint::check_three_edge_connected(&g).is_ok());
        }
        let t = random_tree(50, &mut rng);
        assert!(t.is_connected() && t.m() == 49);
    }
}
