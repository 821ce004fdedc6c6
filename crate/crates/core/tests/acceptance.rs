//! Acceptance suite: one test per claim the toolkit ships with. Every
//! threshold is exact (zero mismatches allowed); each test prints a PASS
//! line with the corpus size it covered (visible with `--nocapture`).

mod common;

use std::sync::OnceLock;

use common::{all_labeled_graphs, full_corpus, random_corpus};
use packlab_core::decomposer::{
    decompose_into_k_units, reassemble, recognize_cameron_walker, KUnit, KUnitDecomposition,
};
use packlab_core::recognizer::{
    check_gap_regime, recognize_matching_equality, recognize_packing_equality,
};
use packlab_core::sat::{
    brute_force_sat, build_reduction, validate_reduction_distances, verify_reduction, Assignment,
    CnfFormula, Literal, VerificationReport,
};
use packlab_core::solver::{
    enumerate_maximum_k_packings, max_k_matching, max_k_packing, DEFAULT_NODE_BUDGET,
};
use packlab_core::Graph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rho(g: &Graph, k: usize) -> usize {
    max_k_packing(g, k, DEFAULT_NODE_BUDGET)
        .expect("exact solve within default budget")
        .cardinality
}

fn nu(g: &Graph, k: usize) -> usize {
    max_k_matching(g, k, DEFAULT_NODE_BUDGET)
        .expect("exact solve within default budget")
        .cardinality
}

#[test]
fn criterion_01_recognizer_matches_exact_equality_at_k1() {
    let corpus = full_corpus();
    assert!(corpus.len() >= 1024 + 500);
    for (idx, g) in corpus.iter().enumerate() {
        let claim = recognize_packing_equality(g, 1).unwrap();
        let truth = rho(g, 1) == rho(g, 2);
        assert_eq!(claim.equal, truth, "mismatch on corpus graph {idx}: {g:?}");
        if claim.equal {
            assert_eq!(claim.common_value, Some(rho(g, 1)));
        }
    }
    println!(
        "criterion 1 PASS: recognizer agrees with the exact solver at k=1 on {} graphs",
        corpus.len()
    );
}

#[test]
fn criterion_02_recognizer_matches_exact_equality_at_k2_k3() {
    let corpus = full_corpus();
    for k in [2usize, 3] {
        for (idx, g) in corpus.iter().enumerate() {
            let claim = recognize_packing_equality(g, k).unwrap();
            let truth = rho(g, k) == rho(g, 2 * k);
            assert_eq!(
                claim.equal, truth,
                "mismatch k={k} corpus graph {idx}: {g:?}"
            );
        }
    }
    println!(
        "criterion 2 PASS: recognizer agrees with the exact solver at k=2,3 on {} graphs",
        corpus.len()
    );
}

#[test]
fn criterion_03_maximum_2_packings_are_exactly_the_transversals() {
    let corpus: Vec<Graph> = full_corpus()
        .into_iter()
        .filter(|g| g.vertex_count() <= 10)
        .collect();
    let mut equal_cases = 0;
    for g in &corpus {
        if rho(g, 1) != rho(g, 2) {
            continue;
        }
        equal_cases += 1;
        let enumeration = enumerate_maximum_k_packings(g, 2, 1_000_000).unwrap();
        assert!(!enumeration.truncated);
        let transversals = g.twin_classes().all_transversals();
        assert_eq!(
            enumeration.packings, transversals,
            "packings and transversals differ on {g:?}"
        );
    }
    assert!(equal_cases > 100);
    println!(
        "criterion 3 PASS: packing/transversal set equality on {equal_cases} equality graphs (of {})",
        corpus.len()
    );
}

#[test]
fn criterion_04_power_identity() {
    let mut checked = 0;
    for seed in 0..200u64 {
        let n = 4 + (seed as usize % 9);
        let p = [0.15, 0.3, 0.5][seed as usize % 3];
        let g = Graph::random(n, p, 40_000 + seed).unwrap();
        for k1 in 1..=3usize {
            for k2 in 1..=3usize {
                let lhs = rho(&g.power(k2).unwrap(), k1);
                let rhs = rho(&g, k1 * k2);
                assert_eq!(
                    lhs, rhs,
                    "power identity failed seed={seed} k1={k1} k2={k2}"
                );
            }
        }
        checked += 1;
    }
    assert_eq!(checked, 200);
    println!("criterion 4 PASS: power identity on {checked} random graphs, k1,k2 in 1..=3");
}

#[test]
fn criterion_05_gap_regime_matches_exact_equality() {
    let corpus: Vec<Graph> = full_corpus()
        .into_iter()
        .filter(|g| g.vertex_count() > 0 && g.is_connected())
        .collect();
    for (k1, k2) in [(1usize, 3usize), (1, 4), (2, 5)] {
        for g in &corpus {
            let claim = check_gap_regime(g, k1, k2).unwrap();
            let r1 = rho(g, k1);
            let r2 = rho(g, k2);
            assert_eq!(claim.equal, r1 == r2, "gap check mismatch on {g:?}");
            if claim.equal {
                assert_eq!((r1, r2), (1, 1), "equality away from 1 on {g:?}");
                assert_eq!(claim.value, Some(1));
            }
        }
    }
    println!(
        "criterion 5 PASS: gap regime check on {} connected graphs and three (k1,k2) pairs",
        corpus.len()
    );
}

// ---------------------------------------------------------------------------
// Criterion 6: generated k-unit gluings
// ---------------------------------------------------------------------------

fn random_one_unit(rng: &mut ChaCha8Rng, k: usize) -> KUnit {
    let unit = match k {
        1 => {
            // Every 1-unit is a star or a triangle; sample directly.
            if rng.random_bool(0.4) {
                KUnit {
                    graph: Graph::complete(3),
                    root_edge: (0, 1),
                    boundary: vec![2],
                }
            } else {
                let leaves = rng.random_range(2..=4);
                let edges: Vec<(usize, usize)> = (1..=leaves).map(|l| (0, l)).collect();
                KUnit {
                    graph: Graph::new(leaves + 1, &edges).unwrap(),
                    root_edge: (0, 1),
                    boundary: (2..=leaves).collect(),
                }
            }
        }
        2 => loop {
            let n = rng.random_range(4..=6);
            let p = rng.random_range(0.35..0.8);
            let g = Graph::random(n, p, rng.random()).unwrap();
            if !g.is_connected() || g.edge_count() == 0 {
                continue;
            }
            if max_k_matching(&g, 2, DEFAULT_NODE_BUDGET)
                .unwrap()
                .cardinality
                != 1
            {
                continue;
            }
            let root = g.edges()[rng.random_range(0..g.edge_count())];
            let mut unit = KUnit {
                graph: g,
                root_edge: root,
                boundary: Vec::new(),
            };
            unit.boundary = unit
                .root_distances()
                .iter()
                .enumerate()
                .filter(|(_, d)| **d == Some(2))
                .map(|(v, _)| v)
                .collect();
            if !unit.boundary.is_empty() {
                break unit;
            }
        },
        _ => unreachable!("generator covers k in {{1, 2}}"),
    };
    unit.check_invariants(k)
        .expect("generated unit is a k-unit");
    unit
}

/// Glues units by identifying boundary vertices across units; the first
/// boundary vertex of every unit after the first always merges somewhere.
fn glue_units(rng: &mut ChaCha8Rng, k: usize, units: Vec<KUnit>) -> KUnitDecomposition {
    let mut next_global = 0usize;
    let mut identification: Vec<Vec<usize>> = Vec::new();
    let mut placed_boundary: Vec<usize> = Vec::new();
    for (i, unit) in units.iter().enumerate() {
        let mut map = vec![usize::MAX; unit.graph.vertex_count()];
        let mut taken: Vec<usize> = Vec::new();
        for (pos, &bv) in unit.boundary.iter().enumerate() {
            let merge = i > 0 && (pos == 0 || rng.random_bool(0.35));
            let available: Vec<usize> = placed_boundary
                .iter()
                .copied()
                .filter(|t| !taken.contains(t))
                .collect();
            if merge && !available.is_empty() {
                let target = available[rng.random_range(0..available.len())];
                map[bv] = target;
                taken.push(target);
            }
        }
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = next_global;
                next_global += 1;
            }
        }
        for &bv in &unit.boundary {
            if !placed_boundary.contains(&map[bv]) {
                placed_boundary.push(map[bv]);
            }
        }
        identification.push(map);
    }
    KUnitDecomposition {
        k,
        vertex_count: next_global,
        units,
        identification,
    }
}

fn assert_edge_partition(g: &Graph, d: &KUnitDecomposition) {
    let mut mapped: Vec<(usize, usize)> = Vec::new();
    for (unit, map) in d.units.iter().zip(&d.identification) {
        for &(a, b) in unit.graph.edges() {
            let (x, y) = (map[a], map[b]);
            mapped.push((x.min(y), x.max(y)));
        }
    }
    mapped.sort_unstable();
    assert_eq!(
        mapped,
        g.edges(),
        "unit edges do not partition the edge set"
    );
}

fn assert_shared_vertices_are_boundary(d: &KUnitDecomposition) {
    let mut owners: std::collections::BTreeMap<usize, Vec<(usize, usize)>> = Default::default();
    for (i, map) in d.identification.iter().enumerate() {
        for (local, &global) in map.iter().enumerate() {
            owners.entry(global).or_default().push((i, local));
        }
    }
    for (global, appearances) in owners {
        if appearances.len() < 2 {
            continue;
        }
        for (i, local) in appearances {
            assert!(
                d.units[i].boundary.contains(&local),
                "shared vertex {global} is interior to unit {i}"
            );
        }
    }
}

#[test]
fn criterion_06_k_unit_gluing_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for case in 0..100 {
        let k = 1 + case % 2;
        let count = rng.random_range(2..=6);
        let units: Vec<KUnit> = (0..count).map(|_| random_one_unit(&mut rng, k)).collect();
        let construction = glue_units(&mut rng, k, units);
        let glued = reassemble(&construction).expect("construction glues at boundaries");

        let recognition = recognize_matching_equality(&glued, k).unwrap();
        assert!(recognition.equal, "case {case}: glued graph not recognized");

        let exact_nu = nu(&glued, k);
        assert_eq!(
            exact_nu, count,
            "case {case}: gluing changed the matching number"
        );

        let decomposition = decompose_into_k_units(&glued, k).unwrap();
        assert_eq!(decomposition.units.len(), exact_nu, "case {case}");
        for unit in &decomposition.units {
            unit.check_invariants(k).unwrap();
        }
        assert_edge_partition(&glued, &decomposition);
        assert_shared_vertices_are_boundary(&decomposition);
        assert_eq!(reassemble(&decomposition).unwrap(), glued, "case {case}");
    }
    println!("criterion 6 PASS: 100 k-unit gluings decomposed and reassembled exactly");
}

#[test]
fn criterion_07_cameron_walker_matches_exact_matching_numbers() {
    let corpus: Vec<Graph> = full_corpus()
        .into_iter()
        .filter(|g| g.vertex_count() > 0 && g.vertex_count() <= 8 && g.is_connected())
        .collect();
    assert!(
        corpus.len() >= 300,
        "connected corpus too small: {}",
        corpus.len()
    );
    for g in &corpus {
        let report = recognize_cameron_walker(g).unwrap();
        let truth = nu(g, 1) == nu(g, 2);
        assert_eq!(report.is_cw, truth, "shape verdict mismatch on {g:?}");
    }
    println!(
        "criterion 7 PASS: Cameron-Walker recognition on {} connected graphs",
        corpus.len()
    );
}

// ---------------------------------------------------------------------------
// Criteria 8-10: reduction instances
// ---------------------------------------------------------------------------

fn literal(variable: usize, negated: bool) -> Literal {
    Literal { variable, negated }
}

fn tautology() -> CnfFormula {
    CnfFormula::new(1, vec![[literal(1, false); 3]]).unwrap()
}

fn contradiction() -> CnfFormula {
    CnfFormula::new(1, vec![[literal(1, false); 3], [literal(1, true); 3]]).unwrap()
}

fn random_formula(rng: &mut ChaCha8Rng, n: usize, m: usize) -> CnfFormula {
    let clauses = (0..m)
        .map(|_| [(); 3].map(|_| literal(rng.random_range(1..=n), rng.random_bool(0.5))))
        .collect();
    CnfFormula::new(n, clauses).unwrap()
}

struct ReductionCase {
    formula: CnfFormula,
    k1: usize,
    k2: usize,
    report: VerificationReport,
}

fn base_reduction_cases() -> &'static [ReductionCase] {
    static CASES: OnceLock<Vec<ReductionCase>> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(808);
        let mut formulas = vec![tautology(), contradiction()];
        for _ in 0..30 {
            let n = rng.random_range(2..=4);
            let m = rng.random_range(2..=4);
            formulas.push(random_formula(&mut rng, n, m));
        }
        formulas
            .into_iter()
            .map(|formula| {
                let report = verify_reduction(&formula, 2, 3, DEFAULT_NODE_BUDGET)
                    .expect("base reduction verifies within budget");
                ReductionCase {
                    formula,
                    k1: 2,
                    k2: 3,
                    report,
                }
            })
            .collect()
    })
}

fn stretched_reduction_cases() -> &'static [ReductionCase] {
    static CASES: OnceLock<Vec<ReductionCase>> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(909);
        let mut formulas = vec![tautology(), contradiction()];
        for _ in 0..10 {
            let n = rng.random_range(1..=3);
            let m = rng.random_range(1..=2);
            formulas.push(random_formula(&mut rng, n, m));
        }
        let mut cases = Vec::new();
        for (k1, k2) in [(3usize, 4usize), (4, 5)] {
            for formula in &formulas {
                let artifact = build_reduction(formula, k1, k2).unwrap();
                validate_reduction_distances(&artifact, formula)
                    .expect("every stretched artifact passes the distance checks");
                let report = verify_reduction(formula, k1, k2, DEFAULT_NODE_BUDGET)
                    .expect("stretched reduction verifies within budget");
                cases.push(ReductionCase {
                    formula: formula.clone(),
                    k1,
                    k2,
                    report,
                });
            }
        }
        cases
    })
}

#[test]
fn criterion_08_reduction_base_case() {
    let cases = base_reduction_cases();
    assert!(cases.len() >= 32);
    let mut satisfiable = 0;
    for (idx, case) in cases.iter().enumerate() {
        let expected = case.formula.variable_count() + 2 * case.formula.clause_count();
        assert_eq!(case.report.expected, expected);
        assert_eq!(
            case.report.rho_k1, expected,
            "case {idx}: rho_2 must always reach n + 2m"
        );
        assert_eq!(
            case.report.rho_k2 == expected,
            case.report.satisfiable,
            "case {idx}: biconditional failed"
        );
        assert!(case.report.biconditional_holds, "case {idx}");
        if case.report.satisfiable {
            satisfiable += 1;
        }
    }
    assert!(
        satisfiable >= 1 && satisfiable < cases.len(),
        "both directions exercised"
    );
    println!(
        "criterion 8 PASS: {} base instances ({} satisfiable), zero biconditional failures",
        cases.len(),
        satisfiable
    );
}

#[test]
fn criterion_09_reduction_stretched_parameters() {
    let cases = stretched_reduction_cases();
    assert!(cases.len() >= 20);
    for (idx, case) in cases.iter().enumerate() {
        let expected = case.formula.variable_count() + 2 * case.formula.clause_count();
        assert_eq!(
            case.report.rho_k1, expected,
            "case {idx} (k1={}, k2={})",
            case.k1, case.k2
        );
        assert_eq!(
            case.report.rho_k2 == expected,
            case.report.satisfiable,
            "case {idx} (k1={}, k2={}): biconditional failed",
            case.k1,
            case.k2
        );
        assert!(case.report.biconditional_holds, "case {idx}");
    }
    println!(
        "criterion 9 PASS: {} stretched instances across (3,4) and (4,5), all distance checks green",
        cases.len()
    );
}

#[test]
fn criterion_10_extraction_soundness() {
    let mut extracted = 0;
    for case in base_reduction_cases()
        .iter()
        .chain(stretched_reduction_cases())
    {
        // Reaching this point means verify_reduction returned Ok, so no
        // extraction error was raised anywhere in the pipeline.
        if case.report.rho_k2 == case.report.expected {
            let values = case
                .report
                .extracted_assignment
                .clone()
                .expect("certificate extraction must be present when rho_k2 hits the target");
            let assignment = Assignment::new(values);
            assert!(
                case.formula.evaluate(&assignment),
                "extracted assignment does not satisfy its formula"
            );
            extracted += 1;
        } else {
            assert!(case.report.extracted_assignment.is_none());
        }
        // Cross-check the satisfiability verdict once more.
        assert_eq!(
            brute_force_sat(&case.formula).unwrap().is_some(),
            case.report.satisfiable
        );
    }
    assert!(extracted >= 1);
    println!(
        "criterion 10 PASS: {extracted} certificate extractions, all satisfying, zero extraction errors"
    );
}

// Keep the corpus helpers honest.
#[test]
fn corpus_sizes_are_as_promised() {
    assert_eq!(all_labeled_graphs(5).len(), 1024);
    assert!(random_corpus().len() >= 500);
}
