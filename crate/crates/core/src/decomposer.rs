//! Constructive structure extraction for graphs whose k-matching and
//! 2k-matching numbers coincide: a decomposition into k-units glued at
//! boundary vertices, its inverse, and recognition of the star / triangle /
//! bipartite-core shape that characterizes the k = 1 case.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, TieBreak};
use crate::recognizer::recognize_matching_equality;
use crate::solver::{max_k_matching, DEFAULT_NODE_BUDGET};

/// A connected graph with k-matching number 1, a distinguished root edge,
/// and the set of vertices at distance exactly k from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KUnit {
    /// The unit subgraph over local vertex ids.
    pub graph: Graph,
    /// Root edge in local ids, `u < v`.
    pub root_edge: (usize, usize),
    /// Local vertices at distance exactly k from the root edge, ascending.
    pub boundary: Vec<usize>,
}

impl KUnit {
    /// Distance of each unit vertex from the root edge, inside the unit.
    pub fn root_distances(&self) -> Vec<Option<usize>> {
        let from_a = self.graph.bfs_distances(self.root_edge.0);
        let from_b = self.graph.bfs_distances(self.root_edge.1);
        from_a
            .into_iter()
            .zip(from_b)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (Some(a), None) => Some(a),
                (None, Some(b)) => Some(b),
                (None, None) => None,
            })
            .collect()
    }

    /// Verifies the defining properties of a k-unit; used by tests and by
    /// consumers that load decompositions from disk.
    pub fn check_invariants(&self, k: usize) -> Result<()> {
        if !self.graph.is_connected() {
            return Err(Error::Validation("unit graph is not connected".into()));
        }
        let (u, v) = self.root_edge;
        if !self.graph.has_edge(u, v) {
            return Err(Error::Validation(format!(
                "root edge ({u}, {v}) is not an edge of the unit"
            )));
        }
        let nu = max_k_matching(&self.graph, k, DEFAULT_NODE_BUDGET)?.cardinality;
        if nu != 1 {
            return Err(Error::Validation(format!(
                "unit has k-matching number {nu}, expected 1"
            )));
        }
        let dist = self.root_distances();
        let mut expected_boundary = Vec::new();
        for (w, d) in dist.iter().enumerate() {
            match d {
                Some(d) if *d > k => {
                    return Err(Error::Validation(format!(
                        "vertex {w} is at distance {d} > {k} from the root edge"
                    )))
                }
                Some(d) if *d == k => expected_boundary.push(w),
                Some(_) => {}
                None => {
                    return Err(Error::Validation(format!(
                        "vertex {w} cannot reach the root edge"
                    )))
                }
            }
        }
        if expected_boundary != self.boundary {
            return Err(Error::Validation(format!(
                "stored boundary {:?} differs from recomputed {:?}",
                self.boundary, expected_boundary
            )));
        }
        for (i, &a) in self.boundary.iter().enumerate() {
            for &b in &self.boundary[i + 1..] {
                if self.graph.has_edge(a, b) {
                    return Err(Error::Validation(format!(
                        "boundary vertices {a} and {b} are adjacent"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A graph expressed as k-units glued at boundary vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KUnitDecomposition {
    pub k: usize,
    /// Vertex count of the glued graph (covers isolated vertices, which
    /// belong to no unit).
    pub vertex_count: usize,
    pub units: Vec<KUnit>,
    /// `identification[i][local]` is the glued-graph vertex that local
    /// vertex of unit `i` maps to.
    pub identification: Vec<Vec<usize>>,
}

/// Decomposes `g` into its k-units.
///
/// Requires `recognize_matching_equality(g, k)` to hold; the units are the
/// closed neighborhoods of one transversal in the k-th power of the line
/// graph, so the unit count always equals the k-matching number.
pub fn decompose_into_k_units(g: &Graph, k: usize) -> Result<KUnitDecomposition> {
    let report = recognize_matching_equality(g, k)?;
    if !report.equal {
        return Err(Error::Precondition(format!(
            "matching numbers at k={k} and {} differ: {}",
            2 * k,
            report
                .violation
                .unwrap_or_else(|| "recognition failed".into())
        )));
    }

    let (line, edge_map) = g.line_graph();
    let line_power = line.power(k)?;
    let roots = line_power.twin_classes().transversal(TieBreak::LowestId);

    let mut units = Vec::with_capacity(roots.len());
    let mut identification = Vec::with_capacity(roots.len());
    for &root in &roots {
        let edge_ids = line_power.closed_neighborhood(root).to_vec();
        let mut vertices: Vec<usize> = Vec::new();
        for &e in &edge_ids {
            let (a, b) = edge_map[e];
            vertices.push(a);
            vertices.push(b);
        }
        let (unit_graph, globals) = g.induced_subgraph(&vertices);
        // The induced subgraph may contain edges outside this unit's edge
        // class; keep exactly the class edges.
        let local_of: BTreeMap<usize, usize> =
            globals.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        let mut local_edges: Vec<(usize, usize)> = edge_ids
            .iter()
            .map(|&e| {
                let (a, b) = edge_map[e];
                let (la, lb) = (local_of[&a], local_of[&b]);
                if la < lb {
                    (la, lb)
                } else {
                    (lb, la)
                }
            })
            .collect();
        local_edges.sort_unstable();
        let unit_graph = Graph::new(unit_graph.vertex_count(), &local_edges)
            .expect("unit edges are a subset of a simple graph");

        let (ra, rb) = edge_map[root];
        let root_local = (local_of[&ra], local_of[&rb]);
        let root_edge = (
            root_local.0.min(root_local.1),
            root_local.0.max(root_local.1),
        );

        let mut unit = KUnit {
            graph: unit_graph,
            root_edge,
            boundary: Vec::new(),
        };
        unit.boundary = unit
            .root_distances()
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == Some(k))
            .map(|(v, _)| v)
            .collect();
        units.push(unit);
        identification.push(globals);
    }

    Ok(KUnitDecomposition {
        k,
        vertex_count: g.vertex_count(),
        units,
        identification,
    })
}

/// Glues the units of a decomposition back together.
///
/// Vertices shared between units must lie in the boundary of every unit they
/// appear in; anything else is rejected, as is an identification that maps
/// two distinct local vertices of one unit to the same place.
pub fn reassemble(d: &KUnitDecomposition) -> Result<Graph> {
    if d.identification.len() != d.units.len() {
        return Err(Error::input(format!(
            "identification covers {} units, decomposition has {}",
            d.identification.len(),
            d.units.len()
        )));
    }
    let mut owners: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, (unit, map)) in d.units.iter().zip(&d.identification).enumerate() {
        if map.len() != unit.graph.vertex_count() {
            return Err(Error::input(format!(
                "unit {i} has {} vertices but its identification lists {}",
                unit.graph.vertex_count(),
                map.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for (local, &global) in map.iter().enumerate() {
            if global >= d.vertex_count {
                return Err(Error::input(format!(
                    "unit {i} maps local vertex {local} to {global}, outside 0..{}",
                    d.vertex_count
                )));
            }
            if !seen.insert(global) {
                return Err(Error::input(format!(
                    "unit {i} maps two local vertices to global vertex {global}"
                )));
            }
            owners.entry(global).or_default().push((i, local));
        }
    }
    for (global, appearances) in &owners {
        if appearances.len() < 2 {
            continue;
        }
        for &(i, local) in appearances {
            if !d.units[i].boundary.contains(&local) {
                return Err(Error::input(format!(
                    "global vertex {global} identifies non-boundary vertex {local} of unit {i}"
                )));
            }
        }
    }

    let mut edges = Vec::new();
    for (unit, map) in d.units.iter().zip(&d.identification) {
        for &(a, b) in unit.graph.edges() {
            edges.push((map[a], map[b]));
        }
    }
    // Duplicate edges mean two units overlap; the constructor reports them.
    Graph::new(d.vertex_count, &edges)
}

// ---------------------------------------------------------------------------
// JSON form of a decomposition
// ---------------------------------------------------------------------------

#[derive(serde::Serialize, serde::Deserialize)]
struct UnitDto {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    root_edge: (usize, usize),
    boundary: Vec<usize>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct DecompositionDto {
    k: usize,
    vertex_count: usize,
    units: Vec<UnitDto>,
    identification: Vec<Vec<usize>>,
}

impl serde::Serialize for KUnitDecomposition {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        DecompositionDto {
            k: self.k,
            vertex_count: self.vertex_count,
            units: self
                .units
                .iter()
                .map(|u| UnitDto {
                    vertex_count: u.graph.vertex_count(),
                    edges: u.graph.edges().to_vec(),
                    root_edge: u.root_edge,
                    boundary: u.boundary.clone(),
                })
                .collect(),
            identification: self.identification.clone(),
        }
        .serialize(serializer)
    }
}

impl KUnitDecomposition {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("decomposition serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: DecompositionDto = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        let mut units = Vec::with_capacity(dto.units.len());
        for u in dto.units {
            units.push(KUnit {
                graph: Graph::new(u.vertex_count, &u.edges)?,
                root_edge: u.root_edge,
                boundary: u.boundary,
            });
        }
        Ok(KUnitDecomposition {
            k: dto.k,
            vertex_count: dto.vertex_count,
            units,
            identification: dto.identification,
        })
    }
}

// ---------------------------------------------------------------------------
// Cameron-Walker structure
// ---------------------------------------------------------------------------

/// Shape classes of connected graphs whose matching number equals their
/// induced matching number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum CwShape {
    /// A star, including the one- and two-vertex graphs.
    Star,
    /// A single triangle.
    Triangle,
    /// Two or more pendant triangles sharing one common vertex and nothing
    /// else. The bipartite-core description misses this shape, but these
    /// graphs are exactly the multi-unit gluings without any star unit.
    TriangleStar,
    /// A connected bipartite core with leaves on one side and pendant
    /// triangles allowed on the other.
    Composite,
}

/// Structural report for the matching-equality recognition at k = 1.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CameronWalkerReport {
    pub is_cw: bool,
    pub shape: Option<CwShape>,
    /// Core vertices carrying at least one leaf.
    pub leaf_side: Vec<usize>,
    /// Remaining core vertices; pendant triangles may attach only here.
    pub triangle_side: Vec<usize>,
    /// Leaves attached to each leaf-side vertex.
    pub leaves: BTreeMap<usize, Vec<usize>>,
    /// Pendant triangles attached to each triangle-side vertex, as the pair
    /// of degree-2 vertices.
    pub pendant_triangles: BTreeMap<usize, Vec<(usize, usize)>>,
    pub violation: Option<String>,
}

impl CameronWalkerReport {
    fn accepted(shape: CwShape) -> Self {
        CameronWalkerReport {
            is_cw: true,
            shape: Some(shape),
            leaf_side: Vec::new(),
            triangle_side: Vec::new(),
            leaves: BTreeMap::new(),
            pendant_triangles: BTreeMap::new(),
            violation: None,
        }
    }

    fn rejected(violation: String) -> Self {
        CameronWalkerReport {
            is_cw: false,
            shape: None,
            leaf_side: Vec::new(),
            triangle_side: Vec::new(),
            leaves: BTreeMap::new(),
            pendant_triangles: BTreeMap::new(),
            violation: Some(violation),
        }
    }
}

fn is_star(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    g.edge_count() == n - 1 && (0..n).any(|v| g.degree(v) == n - 1)
}

/// Recognizes whether a connected graph has equal matching and induced
/// matching numbers, by structure alone.
///
/// Pendant triangles are identified first (adjacent degree-2 pairs closing a
/// triangle), then leaves; what remains must be a connected bipartite core
/// with every leaf-bearing vertex on one side and all triangle attachments
/// on the other. A triangle with a leaf attached is therefore classified via
/// the composite rule, not as a triangle.
pub fn recognize_cameron_walker(g: &Graph) -> Result<CameronWalkerReport> {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return Err(Error::input(
            "Cameron-Walker recognition requires a non-empty connected graph",
        ));
    }
    if is_star(g) {
        return Ok(CameronWalkerReport::accepted(CwShape::Star));
    }
    if n == 3 && g.edge_count() == 3 {
        return Ok(CameronWalkerReport::accepted(CwShape::Triangle));
    }

    // Pendant triangles: an edge whose two endpoints both have degree 2 and
    // share their remaining neighbor.
    let mut pendant: Vec<(usize, usize, usize)> = Vec::new();
    for &(u, v) in g.edges() {
        if g.degree(u) == 2 && g.degree(v) == 2 {
            let mut common = g.neighbor_set(u).clone();
            common.and_assign(g.neighbor_set(v));
            if let Some(w) = common.first() {
                pendant.push((u, v, w));
            }
        }
    }
    let leaf_list: Vec<(usize, usize)> = (0..n)
        .filter(|&v| g.degree(v) == 1)
        .map(|v| (v, g.neighbors(v).next().unwrap()))
        .collect();

    let mut stripped = vec![false; n];
    for &(u, v, _) in &pendant {
        stripped[u] = true;
        stripped[v] = true;
    }
    for &(leaf, _) in &leaf_list {
        stripped[leaf] = true;
    }
    let core: Vec<usize> = (0..n).filter(|&v| !stripped[v]).collect();
    if core.is_empty() {
        return Ok(CameronWalkerReport::rejected(
            "stripping leaves and pendant triangles removed every vertex".into(),
        ));
    }

    let mut leaves: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(leaf, attach) in &leaf_list {
        leaves.entry(attach).or_default().push(leaf);
    }
    let mut triangles: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for &(u, v, w) in &pendant {
        triangles.entry(w).or_default().push((u, v));
    }

    let leaf_side: Vec<usize> = leaves.keys().copied().collect();
    let triangle_side: Vec<usize> = core
        .iter()
        .copied()
        .filter(|v| !leaves.contains_key(v))
        .collect();

    for &attach in triangles.keys() {
        if leaves.contains_key(&attach) {
            return Ok(CameronWalkerReport::rejected(format!(
                "pendant triangle attaches to vertex {attach}, which also carries a leaf"
            )));
        }
    }

    if leaf_side.is_empty() {
        if core.len() == 1 && !triangles.is_empty() {
            let mut report = CameronWalkerReport::accepted(CwShape::TriangleStar);
            report.triangle_side = triangle_side;
            report.pendant_triangles = triangles;
            return Ok(report);
        }
        return Ok(CameronWalkerReport::rejected(
            "no leaves, and the stripped core is not a single shared triangle vertex".into(),
        ));
    }
    if triangle_side.is_empty() {
        return Ok(CameronWalkerReport::rejected(
            "every core vertex carries a leaf, leaving no opposite side for the core".into(),
        ));
    }

    let (core_graph, core_globals) = g.induced_subgraph(&core);
    if !core_graph.is_connected() {
        return Ok(CameronWalkerReport::rejected(
            "the stripped core is disconnected".into(),
        ));
    }
    let on_leaf_side: Vec<bool> = core_globals
        .iter()
        .map(|v| leaves.contains_key(v))
        .collect();
    for &(a, b) in core_graph.edges() {
        if on_leaf_side[a] == on_leaf_side[b] {
            return Ok(CameronWalkerReport::rejected(format!(
                "core edge ({}, {}) joins two vertices of the same side",
                core_globals[a], core_globals[b]
            )));
        }
    }

    let mut report = CameronWalkerReport::accepted(CwShape::Composite);
    report.leaf_side = leaf_side;
    report.triangle_side = triangle_side;
    for v in leaves.values_mut() {
        v.sort_unstable();
    }
    report.leaves = leaves;
    report.pendant_triangles = triangles;
    Ok(report)
}
