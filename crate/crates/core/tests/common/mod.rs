//! Shared corpus builders and independent oracles for the integration and
//! acceptance suites.

// Each test binary compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use packlab_core::graph::Graph;

/// Every labeled graph on `n` vertices (one per subset of the possible
/// edges). Keep `n` tiny; the count is `2^(n*(n-1)/2)`.
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..(1 << pairs.len()))
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::new(n, &edges).expect("edge subsets are simple")
        })
        .collect()
}

/// The random half of the corpus: 540 seeded G(n, p) samples with
/// n in 4..=12 and p in {0.1, 0.2, 0.3, 0.5}.
pub fn random_corpus() -> Vec<Graph> {
    let mut graphs = Vec::new();
    for n in 4..=12 {
        for (pi, &p) in [0.1, 0.2, 0.3, 0.5].iter().enumerate() {
            for rep in 0..15u64 {
                let seed = (n as u64) * 1000 + (pi as u64) * 100 + rep;
                graphs.push(Graph::random(n, p, seed).expect("valid probability"));
            }
        }
    }
    graphs
}

/// The full corpus used by the acceptance criteria: all 1024 labeled graphs
/// on five vertices plus the random corpus.
pub fn full_corpus() -> Vec<Graph> {
    let mut graphs = all_labeled_graphs(5);
    graphs.extend(random_corpus());
    graphs
}
