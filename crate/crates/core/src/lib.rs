//! Exact computation of distance packing and matching numbers, recognition
//! of the graphs where the numbers at k and 2k coincide, decomposition of
//! such graphs into glued k-units, and generation of 3SAT-based instances on
//! which deciding the equality is hard.
//!
//! All types are immutable after construction and every operation is a pure
//! function of its inputs, so values can be shared freely across threads.

pub mod bitset;
pub mod codec;
pub mod decomposer;
pub mod error;
pub mod graph;
pub mod recognizer;
pub mod sat;
pub mod solver;

pub use codec::GraphFormat;
pub use decomposer::{
    decompose_into_k_units, reassemble, recognize_cameron_walker, CameronWalkerReport, CwShape,
    KUnit, KUnitDecomposition,
};
pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph, TieBreak, TwinClassPartition};
pub use recognizer::{
    check_gap_regime, recognize_matching_equality, recognize_packing_equality, GapRegimeReport,
    MatchingRecognitionReport, RecognitionReport,
};
pub use sat::{
    assignment_to_packing, brute_force_sat, build_reduction, format_dimacs, packing_to_assignment,
    parse_dimacs, validate_reduction_distances, verify_artifact, verify_reduction, Assignment,
    CnfFormula, Literal, ReductionArtifact, ReductionSidecar, VerificationReport,
};
pub use solver::{
    enumerate_maximum_k_packings, is_k_packing, max_k_matching, max_k_packing, MatchingCertificate,
    PackingCertificate, PackingEnumeration, DEFAULT_NODE_BUDGET,
};
