#![allow(dead_code)]

use std::path::PathBuf;

use dirtruss::{load_edge_list_path, DirectedGraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn celegans() -> DirectedGraph {
    load_edge_list_path(&data_path("celegans.edges"), None).unwrap().0
}

pub fn bidirectional_complete(n: usize) -> DirectedGraph {
    let edges: Vec<_> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    DirectedGraph::from_edges(n, &edges).unwrap()
}

/// Each ordered pair present independently with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    DirectedGraph::from_edges(n, &edges).unwrap()
}

/// Random simple digraph on up to `max_n` nodes.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = DirectedGraph> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n)))
        .prop_map(|(n, bits)| {
            let edges: Vec<_> = (0..n * n)
                .filter(|&i| bits[i] && i / n != i % n)
                .map(|i| (i / n, i % n))
                .collect();
            DirectedGraph::from_edges(n, &edges).unwrap()
        })
}

/// Supports by scanning every ordered node triple against an adjacency matrix.
pub fn brute_force_supports(g: &DirectedGraph) -> (Vec<u32>, Vec<u32>) {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for &(s, t) in g.edges() {
        adj[s][t] = true;
    }
    let mut cycle = vec![0u32; g.edge_count()];
    let mut flow = vec![0u32; g.edge_count()];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                // cycle a->b->c->a, counted once per rotation class: require a smallest
                if a < b && a < c && adj[a][b] && adj[b][c] && adj[c][a] {
                    for (x, y) in [(a, b), (b, c), (c, a)] {
                        cycle[g.edge_index(x, y).unwrap()] += 1;
                    }
                }
                // flow with source a, middle b, sink c
                if adj[a][b] && adj[a][c] && adj[b][c] {
                    for (x, y) in [(a, b), (a, c), (b, c)] {
                        flow[g.edge_index(x, y).unwrap()] += 1;
                    }
                }
            }
        }
    }
    (cycle, flow)
}
