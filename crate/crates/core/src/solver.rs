//! Exact oracles for distance packing and matching numbers.
//!
//! A k-packing of `G` is an independent set of `G^k`, so every solve runs
//! through one branch-and-bound maximum-independent-set kernel. The kernel
//! prunes with a greedy clique cover of the remaining candidates (each clique
//! admits at most one solution vertex), which bites hard on the dense power
//! graphs this toolkit produces.
//!
//! Determinism contract: branch on the vertex of highest remaining degree
//! (ties to the lowest id), explore the include branch first, and keep the
//! first optimum encountered. Re-running a solve always returns the identical
//! certificate.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Search-node budget used when callers do not pick one.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// A k-packing together with the claim made about it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PackingCertificate {
    pub k: usize,
    /// Witness vertices, ascending.
    pub vertices: Vec<usize>,
    pub cardinality: usize,
    /// True for every certificate returned by a completed solve.
    pub optimal: bool,
}

/// A k-matching (edge set forming a k-packing of the line graph).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MatchingCertificate {
    pub k: usize,
    /// Witness edges, sorted lexicographically.
    pub edges: Vec<(usize, usize)>,
    pub cardinality: usize,
    pub optimal: bool,
}

/// Result of enumerating every maximum k-packing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingEnumeration {
    pub k: usize,
    pub cardinality: usize,
    /// All maximum k-packings in lexicographic order (possibly truncated).
    pub packings: Vec<Vec<usize>>,
    pub truncated: bool,
}

struct MisSearch<'a> {
    graph: &'a Graph,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl<'a> MisSearch<'a> {
    fn new(graph: &'a Graph, budget: u64) -> Self {
        MisSearch {
            graph,
            budget,
            nodes: 0,
            best: Vec::new(),
            current: Vec::new(),
        }
    }

    /// Greedy clique cover of the candidate set; the cover size bounds the
    /// independence number of the induced subgraph from above.
    fn clique_cover_bound(&self, candidates: &BitSet) -> usize {
        let mut cliques: Vec<BitSet> = Vec::new();
        for v in candidates.iter() {
            let nv = self.graph.neighbor_set(v);
            match cliques.iter_mut().find(|c| c.is_subset(nv)) {
                Some(clique) => clique.insert(v),
                None => {
                    let mut c = BitSet::new(self.graph.vertex_count());
                    c.insert(v);
                    cliques.push(c);
                }
            }
        }
        cliques.len()
    }

    fn recurse(&mut self, candidates: &BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget {
                budget: self.budget,
                best_lower_bound: self.best.len(),
            });
        }
        if candidates.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return Ok(());
        }
        if self.current.len() + self.clique_cover_bound(candidates) <= self.best.len() {
            return Ok(());
        }

        // Highest remaining degree, ties to the lowest id.
        let mut pivot = usize::MAX;
        let mut pivot_deg = 0;
        for v in candidates.iter() {
            let deg = self.graph.neighbor_set(v).intersection_len(candidates);
            if pivot == usize::MAX || deg > pivot_deg {
                pivot = v;
                pivot_deg = deg;
            }
        }

        let mut include = candidates.clone();
        include.and_not_assign(self.graph.neighbor_set(pivot));
        include.remove(pivot);
        self.current.push(pivot);
        self.recurse(&include)?;
        self.current.pop();

        let mut exclude = candidates.clone();
        exclude.remove(pivot);
        self.recurse(&exclude)
    }
}

/// Maximum independent set of `graph`, deterministic witness, ascending ids.
fn maximum_independent_set(graph: &Graph, budget: u64) -> Result<Vec<usize>> {
    let all = BitSet::from_iter_with_capacity(graph.vertex_count(), 0..graph.vertex_count());
    let mut search = MisSearch::new(graph, budget);
    search.recurse(&all)?;
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

/// Computes a maximum k-packing of `g` exactly.
///
/// Solved as a maximum independent set of `g^k`. `budget` caps the number of
/// search nodes; exceeding it yields [`Error::Budget`] carrying the best
/// lower bound proved before the cutoff.
pub fn max_k_packing(g: &Graph, k: usize, budget: u64) -> Result<PackingCertificate> {
    let power = g.power(k)?;
    let vertices = maximum_independent_set(&power, budget)?;
    Ok(PackingCertificate {
        k,
        cardinality: vertices.len(),
        vertices,
        optimal: true,
    })
}

/// Computes a maximum k-matching of `g` exactly: a maximum k-packing of the
/// line graph, mapped back to edges of `g`.
pub fn max_k_matching(g: &Graph, k: usize, budget: u64) -> Result<MatchingCertificate> {
    let (line, edge_map) = g.line_graph();
    let cert = max_k_packing(&line, k, budget)?;
    let mut edges: Vec<(usize, usize)> = cert.vertices.iter().map(|&i| edge_map[i]).collect();
    edges.sort_unstable();
    Ok(MatchingCertificate {
        k,
        cardinality: edges.len(),
        edges,
        optimal: true,
    })
}

/// Tests whether `set` is a k-packing of `g` (pairwise distances all
/// exceeding `k`). The empty set qualifies vacuously.
pub fn is_k_packing(g: &Graph, k: usize, set: &[usize]) -> Result<bool> {
    let mut members: Vec<usize> = set.to_vec();
    members.sort_unstable();
    members.dedup();
    for &v in &members {
        if v >= g.vertex_count() {
            return Err(Error::input(format!(
                "vertex {v} outside 0..{}",
                g.vertex_count()
            )));
        }
    }
    for (i, &u) in members.iter().enumerate() {
        let dist = g.bfs_distances(u);
        for &v in &members[i + 1..] {
            if let Some(d) = dist[v] {
                if d <= k {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Enumerates every maximum k-packing of `g` in lexicographic order,
/// stopping after `cap` sets (the result is then flagged as truncated).
///
/// Intended for small instances; the optimum itself is found first with the
/// default node budget.
pub fn enumerate_maximum_k_packings(g: &Graph, k: usize, cap: usize) -> Result<PackingEnumeration> {
    let power = g.power(k)?;
    let target = maximum_independent_set(&power, DEFAULT_NODE_BUDGET)?.len();
    let mut packings: Vec<Vec<usize>> = Vec::new();
    let mut truncated = false;
    let all = BitSet::from_iter_with_capacity(power.vertex_count(), 0..power.vertex_count());
    let mut current = Vec::new();
    enumerate_rec(
        &power,
        &all,
        &mut current,
        target,
        cap,
        &mut packings,
        &mut truncated,
    );
    Ok(PackingEnumeration {
        k,
        cardinality: target,
        packings,
        truncated,
    })
}

fn enumerate_rec(
    power: &Graph,
    candidates: &BitSet,
    current: &mut Vec<usize>,
    target: usize,
    cap: usize,
    out: &mut Vec<Vec<usize>>,
    truncated: &mut bool,
) {
    if *truncated {
        return;
    }
    if current.len() == target {
        if out.len() == cap {
            *truncated = true;
        } else {
            out.push(current.clone());
        }
        return;
    }
    if current.len() + candidates.len() < target {
        return;
    }
    for v in candidates.iter() {
        // Restrict to ids above v so each set appears exactly once, in
        // lexicographic order.
        let mut next = candidates.clone();
        for w in candidates.iter() {
            if w <= v {
                next.remove(w);
            } else {
                break;
            }
        }
        next.and_not_assign(power.neighbor_set(v));
        current.push(v);
        enumerate_rec(power, &next, current, target, cap, out, truncated);
        current.pop();
        if *truncated {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn p4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    /// Exhaustive subset oracle, independent of the branch-and-bound path.
    fn brute_force_rho(g: &Graph, k: usize) -> usize {
        let n = g.vertex_count();
        assert!(n <= 16);
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if set.len() > best && is_k_packing(g, k, &set).unwrap() {
                best = set.len();
            }
        }
        best
    }

    #[test]
    fn packing_examples() {
        assert_eq!(max_k_packing(&cycle(5), 1, 1000).unwrap().cardinality, 2);
        // The variable gadget (a 4-cycle) has 2-packing number 1.
        assert_eq!(max_k_packing(&cycle(4), 2, 1000).unwrap().cardinality, 1);
        let empty = max_k_packing(&Graph::empty(0), 1, 1000).unwrap();
        assert_eq!(empty.cardinality, 0);
        assert!(empty.optimal);
    }

    #[test]
    fn certificates_are_sound_and_deterministic() {
        for seed in 0..30 {
            let g = Graph::random(10, 0.3, seed).unwrap();
            for k in 1..=3 {
                let a = max_k_packing(&g, k, DEFAULT_NODE_BUDGET).unwrap();
                let b = max_k_packing(&g, k, DEFAULT_NODE_BUDGET).unwrap();
                assert_eq!(a, b);
                assert!(is_k_packing(&g, k, &a.vertices).unwrap());
                assert_eq!(a.cardinality, a.vertices.len());
            }
        }
    }

    #[test]
    fn agrees_with_subset_enumeration_up_to_n8() {
        for seed in 0..40 {
            let n = 4 + (seed as usize % 5);
            let g = Graph::random(n, 0.35, seed).unwrap();
            for k in 1..=3 {
                assert_eq!(
                    max_k_packing(&g, k, DEFAULT_NODE_BUDGET)
                        .unwrap()
                        .cardinality,
                    brute_force_rho(&g, k),
                    "mismatch seed={seed} k={k}"
                );
            }
        }
    }

    #[test]
    fn packing_monotone_in_k() {
        for seed in 0..25 {
            let g = Graph::random(11, 0.25, seed).unwrap();
            let mut prev = usize::MAX;
            for k in 1..=4 {
                let rho = max_k_packing(&g, k, DEFAULT_NODE_BUDGET)
                    .unwrap()
                    .cardinality;
                assert!(rho <= prev);
                prev = rho;
            }
        }
    }

    #[test]
    fn power_identity_small() {
        for seed in 0..20 {
            let g = Graph::random(10, 0.3, seed).unwrap();
            for k1 in 1..=3usize {
                for k2 in 1..=3usize {
                    let lhs = max_k_packing(&g.power(k2).unwrap(), k1, DEFAULT_NODE_BUDGET)
                        .unwrap()
                        .cardinality;
                    let rhs = max_k_packing(&g, k1 * k2, DEFAULT_NODE_BUDGET)
                        .unwrap()
                        .cardinality;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn matching_examples() {
        assert_eq!(max_k_matching(&p4(), 1, 1000).unwrap().cardinality, 2);
        assert_eq!(max_k_matching(&p4(), 2, 1000).unwrap().cardinality, 1);
        // Two triangles sharing vertex 2: brute force over edge subsets gives 2.
        let bowtie = Graph::new(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let cert = max_k_matching(&bowtie, 2, 10_000).unwrap();
        assert_eq!(cert.cardinality, 2);
        assert_eq!(cert.edges, vec![(0, 1), (3, 4)]);
    }

    /// Independent maximum-matching oracle: branch over the first remaining
    /// edge (take it or drop it).
    fn brute_force_matching(edges: &[(usize, usize)]) -> usize {
        fn rec(edges: &[(usize, usize)]) -> usize {
            match edges.first() {
                None => 0,
                Some(&(u, v)) => {
                    let without = rec(&edges[1..]);
                    let rest: Vec<(usize, usize)> = edges[1..]
                        .iter()
                        .copied()
                        .filter(|&(a, b)| a != u && a != v && b != u && b != v)
                        .collect();
                    (1 + rec(&rest)).max(without)
                }
            }
        }
        rec(edges)
    }

    #[test]
    fn matching_number_cross_checked_against_independent_oracle() {
        let mut checked = 0;
        for seed in 0..110 {
            let n = 4 + (seed as usize % 6);
            let g = Graph::random(n, 0.4, seed + 1000).unwrap();
            let nu = max_k_matching(&g, 1, DEFAULT_NODE_BUDGET)
                .unwrap()
                .cardinality;
            assert_eq!(nu, brute_force_matching(g.edges()), "seed={seed}");
            checked += 1;
        }
        assert!(checked >= 100);
    }

    #[test]
    fn enumerate_examples() {
        let k3 = Graph::complete(3);
        let e = enumerate_maximum_k_packings(&k3, 2, 100).unwrap();
        assert_eq!(e.packings, vec![vec![0], vec![1], vec![2]]);
        assert!(!e.truncated);

        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let e = enumerate_maximum_k_packings(&star, 1, 100).unwrap();
        assert_eq!(e.packings, vec![vec![1, 2, 3]]);

        let e = enumerate_maximum_k_packings(&cycle(4), 1, 100).unwrap();
        assert_eq!(e.packings, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn enumerate_respects_cap() {
        let e = enumerate_maximum_k_packings(&Graph::complete(4), 1, 2).unwrap();
        assert_eq!(e.packings, vec![vec![0], vec![1]]);
        assert!(e.truncated);
    }

    #[test]
    fn is_k_packing_examples() {
        assert!(!is_k_packing(&cycle(4), 2, &[0, 2]).unwrap());
        assert!(is_k_packing(&cycle(6), 2, &[0, 3]).unwrap());
        assert!(is_k_packing(&cycle(6), 2, &[]).unwrap());
        assert!(matches!(
            is_k_packing(&cycle(4), 1, &[0, 9]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn budget_error_carries_lower_bound() {
        let g = Graph::random(18, 0.15, 3).unwrap();
        match max_k_packing(&g, 1, 4) {
            Err(Error::Budget {
                budget,
                best_lower_bound,
            }) => {
                assert_eq!(budget, 4);
                let alpha = max_k_packing(&g, 1, DEFAULT_NODE_BUDGET)
                    .unwrap()
                    .cardinality;
                assert!(best_lower_bound <= alpha);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
