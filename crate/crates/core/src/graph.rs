//! Immutable simple undirected graphs with dense 0-based vertex ids, plus the
//! metric and structural primitives everything else is built on: BFS
//! distances, graph powers, line graphs, simplicial vertices and twin
//! classes.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// An immutable simple undirected graph.
///
/// Vertices are `0..vertex_count`. The edge list is kept sorted
/// lexicographically with `u < v`, so identical graphs always produce
/// identical output.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list over vertices `0..n`.
    ///
    /// Rejects loops, duplicate edges and out-of-range endpoints with
    /// [`Error::Input`]. Endpoint order within a pair does not matter.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut rows = vec![BitSet::new(n); n];
        let mut canonical = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::input(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::input(format!("loop edge at vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if rows[u].contains(v) {
                return Err(Error::input(format!("duplicate edge ({u}, {v})")));
            }
            rows[u].insert(v);
            rows[v].insert(u);
            canonical.push((u, v));
        }
        canonical.sort_unstable();
        Ok(Graph {
            n,
            rows,
            edges: canonical,
        })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![BitSet::new(n); n],
            edges: Vec::new(),
        }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete graph is simple")
    }

    /// G(n, p) sample, deterministic for a given seed.
    pub fn random(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::input(format!("edge probability {p} not in [0, 1]")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted lexicographically, each with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && u != v && self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    /// Open neighborhood of `v` as a bitset row.
    pub fn neighbor_set(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter()
    }

    /// Closed neighborhood `N[v]` as a fresh bitset.
    pub fn closed_neighborhood(&self, v: usize) -> BitSet {
        let mut s = self.rows[v].clone();
        s.insert(v);
        s
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        debug_assert!(source < self.n);
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.rows[u].iter() {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs BFS distances.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        DistanceMatrix {
            dist: (0..self.n).map(|v| self.bfs_distances(v)).collect(),
        }
    }

    /// Distance between `u` and `v`; `None` when in different components.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs_distances(u)[v]
    }

    /// The k-th power: same vertices, edges between distinct vertices at
    /// distance at most `k`. Unreachable pairs stay non-adjacent.
    pub fn power(&self, k: usize) -> Result<Graph> {
        if k == 0 {
            return Err(Error::input("graph power requires k >= 1"));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let mut edges = Vec::new();
        for u in 0..self.n {
            // Truncated BFS to depth k suffices for the row of u.
            let dist = self.bfs_distances(u);
            for (v, d) in dist.iter().enumerate() {
                if v > u {
                    if let Some(d) = d {
                        if *d <= k {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
        Graph::new(self.n, &edges)
    }

    /// The line graph together with the map from line-graph vertex id back to
    /// the original edge. Line-graph vertices follow the lexicographic edge
    /// order, so ids are reproducible.
    pub fn line_graph(&self) -> (Graph, Vec<(usize, usize)>) {
        let m = self.edges.len();
        let mut line_edges = Vec::new();
        for i in 0..m {
            let (a, b) = self.edges[i];
            for (j, &(c, d)) in self.edges.iter().enumerate().skip(i + 1) {
                if a == c || a == d || b == c || b == d {
                    line_edges.push((i, j));
                }
            }
        }
        let g = Graph::new(m, &line_edges).expect("line graph is simple");
        (g, self.edges.clone())
    }

    /// Vertices whose closed neighborhood induces a clique. Isolated vertices
    /// are simplicial.
    pub fn simplicial_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| {
                self.rows[v]
                    .iter()
                    .all(|u| self.rows[v].is_subset(&self.closed_neighborhood(u)))
            })
            .collect()
    }

    /// Partition of the simplicial vertices into closed-twin classes.
    ///
    /// Twin detection sorts closed-neighborhood bitset signatures and groups
    /// equal runs.
    pub fn twin_classes(&self) -> TwinClassPartition {
        let mut signed: Vec<(BitSet, usize)> = self
            .simplicial_vertices()
            .into_iter()
            .map(|v| (self.closed_neighborhood(v), v))
            .collect();
        signed.sort();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut prev: Option<&BitSet> = None;
        for (sig, v) in &signed {
            if prev == Some(sig) {
                classes.last_mut().unwrap().push(*v);
            } else {
                classes.push(vec![*v]);
            }
            prev = Some(sig);
        }
        classes.sort_by_key(|c| c[0]);
        TwinClassPartition { classes }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    /// Largest BFS eccentricity; `None` on the empty graph or when
    /// disconnected.
    pub fn diameter(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let mut best = 0;
        for v in 0..self.n {
            for d in self.bfs_distances(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Subgraph induced by `vertices`, with local ids assigned in ascending
    /// order of global id. Returns the subgraph and the local-to-global map.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut globals: Vec<usize> = vertices.to_vec();
        globals.sort_unstable();
        globals.dedup();
        let local_of: std::collections::HashMap<usize, usize> = globals
            .iter()
            .enumerate()
            .map(|(local, &g)| (g, local))
            .collect();
        let mut edges = Vec::new();
        for (li, &g) in globals.iter().enumerate() {
            for h in self.rows[g].iter() {
                if h > g {
                    if let Some(&lj) = local_of.get(&h) {
                        edges.push((li, lj));
                    }
                }
            }
        }
        let sub = Graph::new(globals.len(), &edges).expect("induced subgraph is simple");
        (sub, globals)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, edges={:?})",
            self.n,
            self.edges.len(),
            self.edges
        )
    }
}

/// All-pairs distance table; `None` marks vertex pairs in different
/// components (never a large sentinel integer).
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    dist: Vec<Vec<Option<usize>>>,
}

impl DistanceMatrix {
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.dist[u][v]
    }

    pub fn vertex_count(&self) -> usize {
        self.dist.len()
    }
}

/// The partition of the simplicial vertices into maximal sets of pairwise
/// closed twins. Classes are sorted by their smallest member; members are
/// ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinClassPartition {
    classes: Vec<Vec<usize>>,
}

/// Which member a transversal picks from each twin class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    LowestId,
    HighestId,
}

impl TwinClassPartition {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// One vertex per class, ascending. The result is always an independent
    /// set (adjacent simplicial vertices are twins).
    pub fn transversal(&self, tie_break: TieBreak) -> Vec<usize> {
        let mut t: Vec<usize> = self
            .classes
            .iter()
            .map(|c| match tie_break {
                TieBreak::LowestId => c[0],
                TieBreak::HighestId => *c.last().unwrap(),
            })
            .collect();
        t.sort_unstable();
        t
    }

    /// All transversals (cartesian product of the classes), sorted. Intended
    /// for small instances; the count is the product of class sizes.
    pub fn all_transversals(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for class in &self.classes {
            let mut next = Vec::with_capacity(out.len() * class.len());
            for partial in &out {
                for &v in class {
                    let mut p = partial.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        for t in &mut out {
            t.sort_unstable();
        }
        out.sort();
        out
    }
}
