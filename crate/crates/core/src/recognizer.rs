//! Polynomial-time recognition of graphs with equal distance packing (or
//! matching) numbers at parameters k and 2k, plus the widely separated
//! parameter regime where equality forces both numbers to 1.
//!
//! The packing recognizer works on the k-th power `H`: pick one transversal
//! of the twin classes of the simplicial vertices of `H` and test whether
//! the chosen closed neighborhoods partition the vertex set. If one
//! transversal passes, the partition is into cliques of `H`, which pins both
//! packing numbers to the transversal size; if the numbers are equal, every
//! transversal passes. The exact solver is never consulted.

use crate::error::{Error, Result};
use crate::graph::{Graph, TieBreak};

/// Outcome of a packing-equality recognition run.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RecognitionReport {
    pub equal: bool,
    pub k: usize,
    /// The transversal that was tested, ascending vertex ids.
    pub transversal: Vec<usize>,
    /// When equal: the closed neighborhoods (in the power graph) that
    /// partition the vertex set, one per transversal vertex.
    pub partition_witness: Option<Vec<Vec<usize>>>,
    /// When equal: the common packing number at k and 2k.
    pub common_value: Option<usize>,
    /// When not equal: which condition failed.
    pub violation: Option<String>,
}

/// Like [`RecognitionReport`] but phrased over the edges of the original
/// graph.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MatchingRecognitionReport {
    pub equal: bool,
    pub k: usize,
    pub transversal_edges: Vec<(usize, usize)>,
    pub partition_witness: Option<Vec<Vec<(usize, usize)>>>,
    pub common_value: Option<usize>,
    pub violation: Option<String>,
}

/// Report of the widely separated regime check.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GapRegimeReport {
    pub equal: bool,
    pub k1: usize,
    pub k2: usize,
    /// `Some(1)` when equal; equality in this regime forces both numbers
    /// to 1.
    pub value: Option<usize>,
}

/// Decides whether the k-packing and 2k-packing numbers of `g` coincide, in
/// polynomial time.
pub fn recognize_packing_equality(g: &Graph, k: usize) -> Result<RecognitionReport> {
    recognize_packing_equality_with(g, k, TieBreak::LowestId)
}

/// Recognition with an explicit transversal tie-break. Both tie-breaks give
/// the same verdict; equal graphs even yield the same partition of the
/// vertex set.
pub fn recognize_packing_equality_with(
    g: &Graph,
    k: usize,
    tie_break: TieBreak,
) -> Result<RecognitionReport> {
    let power = g.power(k)?;
    let transversal = power.twin_classes().transversal(tie_break);

    let mut cover_count = vec![0usize; g.vertex_count()];
    for &u in &transversal {
        for v in power.closed_neighborhood(u).iter() {
            cover_count[v] += 1;
        }
    }

    let violation = cover_count.iter().enumerate().find_map(|(v, &c)| match c {
        0 => Some(format!(
            "vertex {v} is covered by no closed neighborhood of the transversal"
        )),
        1 => None,
        c => Some(format!(
            "vertex {v} is covered by {c} closed neighborhoods of the transversal"
        )),
    });

    match violation {
        Some(violation) => Ok(RecognitionReport {
            equal: false,
            k,
            transversal,
            partition_witness: None,
            common_value: None,
            violation: Some(violation),
        }),
        None => {
            let witness = transversal
                .iter()
                .map(|&u| power.closed_neighborhood(u).to_vec())
                .collect();
            Ok(RecognitionReport {
                equal: true,
                k,
                common_value: Some(transversal.len()),
                partition_witness: Some(witness),
                transversal,
                violation: None,
            })
        }
    }
}

/// Decides whether the k-matching and 2k-matching numbers of `g` coincide:
/// the packing recognizer applied to the line graph, reported over edges.
pub fn recognize_matching_equality(g: &Graph, k: usize) -> Result<MatchingRecognitionReport> {
    let (line, edge_map) = g.line_graph();
    let report = recognize_packing_equality(&line, k)?;
    let map_edges = |ids: &[usize]| -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = ids.iter().map(|&i| edge_map[i]).collect();
        edges.sort_unstable();
        edges
    };
    Ok(MatchingRecognitionReport {
        equal: report.equal,
        k,
        transversal_edges: map_edges(&report.transversal),
        partition_witness: report
            .partition_witness
            .as_ref()
            .map(|parts| parts.iter().map(|p| map_edges(p)).collect()),
        common_value: report.common_value,
        violation: report.violation,
    })
}

/// For `k2 > 2*k1` on a connected graph, the two packing numbers are equal
/// exactly when both are 1, i.e. when the diameter is at most `k1`.
pub fn check_gap_regime(g: &Graph, k1: usize, k2: usize) -> Result<GapRegimeReport> {
    if k1 == 0 {
        return Err(Error::input("gap regime check requires k1 >= 1"));
    }
    if k2 <= 2 * k1 {
        return Err(Error::input(format!(
            "gap regime check requires k2 > 2*k1, got k1={k1}, k2={k2}"
        )));
    }
    if g.vertex_count() == 0 || !g.is_connected() {
        return Err(Error::input(
            "gap regime check requires a non-empty connected graph",
        ));
    }
    let equal = g
        .diameter()
        .expect("connected non-empty graph has a diameter")
        <= k1;
    Ok(GapRegimeReport {
        equal,
        k1,
        k2,
        value: equal.then_some(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{max_k_packing, DEFAULT_NODE_BUDGET};

    fn k3() -> Graph {
        Graph::complete(3)
    }

    fn star13() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn p4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn recognize_examples() {
        let r = recognize_packing_equality(&k3(), 1).unwrap();
        assert!(r.equal);
        assert_eq!(r.transversal, vec![0]);
        assert_eq!(r.common_value, Some(1));

        // Star: three leaf classes whose closed neighborhoods all contain the
        // center.
        let r = recognize_packing_equality(&star13(), 1).unwrap();
        assert!(!r.equal);
        assert!(r.violation.as_deref().unwrap().contains("vertex 0"));

        // Two triangles 012 / 345 joined by the bridge 2-3.
        let g = Graph::new(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap();
        let r = recognize_packing_equality(&g, 1).unwrap();
        assert!(r.equal);
        assert_eq!(r.transversal, vec![0, 4]);
        assert_eq!(r.common_value, Some(2));

        // No simplicial vertices at all: the empty transversal covers nothing.
        let r = recognize_packing_equality(&c4(), 1).unwrap();
        assert!(!r.equal);
        assert_eq!(r.transversal, Vec::<usize>::new());
    }

    #[test]
    fn empty_graph_is_equal_with_value_zero() {
        let r = recognize_packing_equality(&Graph::empty(0), 1).unwrap();
        assert!(r.equal);
        assert_eq!(r.common_value, Some(0));
        assert_eq!(r.partition_witness, Some(vec![]));
    }

    #[test]
    fn verdict_matches_exact_solver_on_random_graphs() {
        for seed in 0..80 {
            let g = Graph::random(4 + seed as usize % 7, 0.35, seed).unwrap();
            for k in 1..=2 {
                let claim = recognize_packing_equality(&g, k).unwrap();
                let a = max_k_packing(&g, k, DEFAULT_NODE_BUDGET)
                    .unwrap()
                    .cardinality;
                let b = max_k_packing(&g, 2 * k, DEFAULT_NODE_BUDGET)
                    .unwrap()
                    .cardinality;
                assert_eq!(claim.equal, a == b, "seed={seed} k={k}");
                if claim.equal {
                    assert_eq!(claim.common_value, Some(a));
                }
            }
        }
    }

    #[test]
    fn tie_break_does_not_change_the_partition() {
        for seed in 0..60 {
            let g = Graph::random(9, 0.35, seed).unwrap();
            let low = recognize_packing_equality_with(&g, 1, TieBreak::LowestId).unwrap();
            let high = recognize_packing_equality_with(&g, 1, TieBreak::HighestId).unwrap();
            assert_eq!(low.equal, high.equal);
            if low.equal {
                let normalize = |w: Option<Vec<Vec<usize>>>| {
                    let mut parts = w.unwrap();
                    parts.sort();
                    parts
                };
                assert_eq!(
                    normalize(low.partition_witness),
                    normalize(high.partition_witness)
                );
            }
        }
    }

    #[test]
    fn matching_recognition_examples() {
        let r = recognize_matching_equality(&k3(), 1).unwrap();
        assert!(r.equal);
        assert_eq!(r.common_value, Some(1));

        let r = recognize_matching_equality(&p4(), 1).unwrap();
        assert!(!r.equal);

        let r = recognize_matching_equality(&Graph::empty(5), 2).unwrap();
        assert!(r.equal);
        assert_eq!(r.common_value, Some(0));
    }

    #[test]
    fn gap_regime_examples() {
        let r = check_gap_regime(&k3(), 1, 3).unwrap();
        assert!(r.equal);
        assert_eq!(r.value, Some(1));

        let r = check_gap_regime(&p4(), 1, 3).unwrap();
        assert!(!r.equal);
        assert_eq!(r.value, None);

        let disconnected = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(
            check_gap_regime(&disconnected, 1, 3),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            check_gap_regime(&k3(), 2, 4),
            Err(Error::Input(_))
        ));
    }
}
