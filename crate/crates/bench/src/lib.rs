//! Fixture builders shared by the benchmark targets.

use packlab_core::sat::{CnfFormula, Literal};

/// A fixed satisfiable 3-CNF over four variables; its base reduction graph
/// has 68 vertices, the largest size the acceptance corpus reaches.
pub fn benchmark_formula() -> CnfFormula {
    let lit = |v: i64| Literal {
        variable: v.unsigned_abs() as usize,
        negated: v < 0,
    };
    CnfFormula::new(
        4,
        vec![
            [lit(1), lit(-2), lit(4)],
            [lit(-1), lit(3), lit(-4)],
            [lit(2), lit(3), lit(4)],
            [lit(-1), lit(-2), lit(-3)],
        ],
    )
    .expect("fixture formula is well-formed")
}
