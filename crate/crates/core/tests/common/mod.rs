#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tokenalg::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The paw: a triangle 1-3-4 with the pendant edge 2-4.
pub fn paw() -> Graph {
    Graph::new(4, [(1, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
}

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = Graph::complete(n).edges().to_vec();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::new(n, edges).unwrap()
    })
}

/// Every labeled graph on 1..=max_n vertices.
pub fn corpus(max_n: usize) -> impl Iterator<Item = Graph> {
    (1..=max_n).flat_map(all_graphs)
}

/// Erdős–Rényi graph with edge probability 1/2.
pub fn random_graph(n: usize, rng: &mut impl Rng) -> Graph {
    let edges: Vec<(usize, usize)> = Graph::complete(n)
        .edges()
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::new(n, edges).unwrap()
}
