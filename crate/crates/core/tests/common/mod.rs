#![allow(dead_code)]

use maxplus_transience::{Graph, Matrix, Vector, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random irreducible integer matrix by rejection sampling.
pub fn irreducible(rng: &mut ChaCha8Rng, max_nodes: usize, lo: i64, hi: i64) -> Matrix {
    loop {
        let n = rng.gen_range(1..=max_nodes);
        let density: f64 = rng.gen_range(0.15..0.9);
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if rng.gen_bool(density) {
                            Weight::int(rng.gen_range(lo..=hi))
                        } else {
                            Weight::Bottom
                        }
                    })
                    .collect()
            })
            .collect();
        let a = Matrix::from_rows(rows).unwrap();
        let g = Graph::from_matrix(&a, None).unwrap();
        if g.is_nontrivial() && g.is_strongly_connected() {
            return a;
        }
    }
}

pub fn strongly_connected(rng: &mut ChaCha8Rng, max_nodes: usize) -> Graph {
    Graph::from_matrix(&irreducible(rng, max_nodes, -3, 3), None).unwrap()
}

pub fn finite_vector(rng: &mut ChaCha8Rng, n: usize, spread: i64) -> Vector {
    Vector::new((0..n).map(|_| Weight::int(rng.gen_range(0..=spread))).collect()).unwrap()
}

/// Random walk of the given length from a random node.
pub fn walk(rng: &mut ChaCha8Rng, g: &Graph, length: usize) -> Vec<usize> {
    let mut nodes = vec![rng.gen_range(0..g.node_count())];
    for _ in 0..length {
        let successors: Vec<usize> = g.successors(*nodes.last().unwrap()).collect();
        nodes.push(successors[rng.gen_range(0..successors.len())]);
    }
    nodes
}

/// Random spanning tree on `n` nodes with random edge orientations.
pub fn oriented_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    (1..n)
        .map(|k| {
            let parent = order[rng.gen_range(0..k)];
            let child = order[k];
            if rng.gen_bool(0.5) {
                (parent, child)
            } else {
                (child, parent)
            }
        })
        .collect()
}

/// Random weakly connected DAG: a random tree plus extra edges, all oriented along a
/// random topological order.
pub fn dag(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> Vec<(usize, usize)> {
    let mut rank: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        rank.swap(i, rng.gen_range(0..=i));
    }
    let orient = |a: usize, b: usize| if rank[a] < rank[b] { (a, b) } else { (b, a) };
    let mut edges: std::collections::BTreeSet<(usize, usize)> =
        oriented_tree(rng, n).into_iter().map(|(a, b)| orient(a, b)).collect();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(extra) {
                edges.insert(orient(a, b));
            }
        }
    }
    edges.into_iter().collect()
}
