//! 3SAT machinery: DIMACS parsing, a brute-force satisfiability oracle, and
//! the reduction that turns a 3-CNF formula into a graph whose k2-packing
//! number reaches `n + 2m` exactly when the formula is satisfiable.
//!
//! Construction outline, for parameters `k1 < k2` with
//! `ceil((3*k2+1)/2) <= 2*k1+1`:
//!
//! * per variable, a cycle `x - xbar - x' - xbar' - x` whose two arcs
//!   `x..xbar'` and `xbar..x'` are stretched to length `ceil(k2/2) - 1`;
//! * per clause, a gadget consisting of a path of length `k2` from `a` to
//!   `b`, three branches of length `floor(k2/2)` from `b` to the literal
//!   vertices (each carrying a prime vertex), and three hub vertices `u`,
//!   `v`, `w` each adjacent to two literal vertices and all three primes;
//! * one connector per literal from the clause prime vertex to the cycle
//!   prime vertex matching the literal's polarity.
//!
//! After stretching, the labels `lit[j][t]` designate the neighbors of
//! `b[j]` on the three branches (the vertices a maximum packing may pick),
//! while the original literal vertices keep the name `oldlit[j][t]`. With
//! `(k1, k2) = (2, 3)` nothing is stretched and the two labels coincide.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{is_k_packing, max_k_packing, DEFAULT_NODE_BUDGET};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

/// A literal over 1-based variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Literal {
    pub variable: usize,
    pub negated: bool,
}

impl Literal {
    pub fn positive(variable: usize) -> Self {
        Literal {
            variable,
            negated: false,
        }
    }

    pub fn negative(variable: usize) -> Self {
        Literal {
            variable,
            negated: true,
        }
    }

    pub fn from_dimacs(value: i64) -> Result<Self> {
        if value == 0 {
            return Err(Error::input("literal 0 is reserved as clause terminator"));
        }
        Ok(Literal {
            variable: value.unsigned_abs() as usize,
            negated: value < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.variable as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }
}

/// A truth assignment over variables `1..=variable_count`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn variable_count(&self) -> usize {
        self.values.len()
    }

    /// Value of a 1-based variable.
    pub fn value(&self, variable: usize) -> bool {
        self.values[variable - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn satisfies_literal(&self, literal: Literal) -> bool {
        self.value(literal.variable) != literal.negated
    }
}

/// A CNF formula with exactly three literals per clause (repeats allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: usize,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            for lit in clause {
                if lit.variable == 0 || lit.variable > variable_count {
                    return Err(Error::input(format!(
                        "clause {} uses variable {} outside 1..={variable_count}",
                        j + 1,
                        lit.variable
                    )));
                }
            }
        }
        Ok(CnfFormula {
            variable_count,
            clauses,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn evaluate(&self, assignment: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|clause| clause.iter().any(|&l| assignment.satisfies_literal(l)))
    }
}

// ---------------------------------------------------------------------------
// DIMACS codec
// ---------------------------------------------------------------------------

/// Parses DIMACS CNF text. Clauses must carry exactly three literals.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, 0, "duplicate `p cnf` header"));
            }
            let mut parts = line.split_whitespace();
            let (p, kind) = (parts.next(), parts.next());
            if p != Some("p") || kind != Some("cnf") {
                return Err(Error::parse(line_no, 0, "header must be `p cnf <n> <m>`"));
            }
            let n = parts
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| Error::parse(line_no, 6, "bad variable count in header"))?;
            let m = parts
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| Error::parse(line_no, 8, "bad clause count in header"))?;
            if parts.next().is_some() {
                return Err(Error::parse(line_no, 0, "trailing tokens after header"));
            }
            header = Some((n, m));
            continue;
        }
        if header.is_none() {
            return Err(Error::parse(
                line_no,
                0,
                "clause data before the `p cnf` header",
            ));
        }
        for token in line.split_whitespace() {
            let offset = raw.find(token).unwrap_or(0);
            let value: i64 = token
                .parse()
                .map_err(|_| Error::parse(line_no, offset, format!("bad literal {token:?}")))?;
            if value == 0 {
                let clause: [Literal; 3] = pending.as_slice().try_into().map_err(|_| {
                    Error::input(format!(
                        "clause {} has {} literals, 3SAT requires exactly 3",
                        clauses.len() + 1,
                        pending.len()
                    ))
                })?;
                clauses.push(clause);
                pending.clear();
            } else {
                pending.push(Literal::from_dimacs(value)?);
            }
        }
    }

    let (n, m) = header.ok_or_else(|| Error::parse(1, 0, "missing `p cnf` header"))?;
    if !pending.is_empty() {
        return Err(Error::input(format!(
            "clause {} has {} literals and no terminating 0",
            clauses.len() + 1,
            pending.len()
        )));
    }
    if clauses.len() != m {
        return Err(Error::input(format!(
            "header announces {m} clauses, found {}",
            clauses.len()
        )));
    }
    CnfFormula::new(n, clauses)
}

/// Canonical DIMACS text: header line, then one clause per line.
pub fn format_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.variable_count(), f.clause_count());
    for clause in f.clauses() {
        out.push_str(&format!(
            "{} {} {} 0\n",
            clause[0].to_dimacs(),
            clause[1].to_dimacs(),
            clause[2].to_dimacs()
        ));
    }
    out
}

/// Lexicographically first satisfying assignment (false before true, first
/// variable most significant), or `None`. Guarded at 20 variables.
pub fn brute_force_sat(f: &CnfFormula) -> Result<Option<Assignment>> {
    let n = f.variable_count();
    if n > 20 {
        return Err(Error::Budget {
            budget: 1 << 20,
            best_lower_bound: 0,
        });
    }
    for code in 0u64..(1u64 << n) {
        let values: Vec<bool> = (0..n).map(|i| (code >> (n - 1 - i)) & 1 == 1).collect();
        let assignment = Assignment::new(values);
        if f.evaluate(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Label names
// ---------------------------------------------------------------------------

/// Structured vertex names used in reduction label maps. Indices are
/// 1-based throughout.
pub mod labels {
    pub fn x(i: usize) -> String {
        format!("x[{i}]")
    }
    pub fn xbar(i: usize) -> String {
        format!("xbar[{i}]")
    }
    pub fn x_prime(i: usize) -> String {
        format!("x'[{i}]")
    }
    pub fn xbar_prime(i: usize) -> String {
        format!("xbar'[{i}]")
    }
    /// Cycle arc subdivision vertex `s` (counted from the `x`/`xbar` end) on
    /// arc 1 (`x..xbar'`) or arc 2 (`xbar..x'`).
    pub fn cycle_sub(i: usize, arc: usize, s: usize) -> String {
        format!("cycsub[{i}][{arc}][{s}]")
    }
    pub fn a(j: usize) -> String {
        format!("a[{j}]")
    }
    pub fn apath(j: usize, s: usize) -> String {
        format!("apath[{j}][{s}]")
    }
    pub fn p(j: usize) -> String {
        format!("p[{j}]")
    }
    pub fn q(j: usize) -> String {
        format!("q[{j}]")
    }
    pub fn b(j: usize) -> String {
        format!("b[{j}]")
    }
    pub fn lit(j: usize, t: usize) -> String {
        format!("lit[{j}][{t}]")
    }
    pub fn branch(j: usize, t: usize, s: usize) -> String {
        format!("branch[{j}][{t}][{s}]")
    }
    pub fn oldlit(j: usize, t: usize) -> String {
        format!("oldlit[{j}][{t}]")
    }
    pub fn prime(j: usize, t: usize) -> String {
        format!("prime[{j}][{t}]")
    }
    pub fn hub_u(j: usize) -> String {
        format!("u[{j}]")
    }
    pub fn hub_v(j: usize) -> String {
        format!("v[{j}]")
    }
    pub fn hub_w(j: usize) -> String {
        format!("w[{j}]")
    }
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// Output of the 3SAT reduction: the graph, its parameters, and the label
/// map tying structured names to vertex ids.
///
/// The label map is injective except that `lit[j][t]` and `oldlit[j][t]`
/// name the same vertex when the branch stretch is zero (k2 = 3).
#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    pub graph: Graph,
    pub k1: usize,
    pub k2: usize,
    pub variable_count: usize,
    pub clause_count: usize,
    pub labels: BTreeMap<String, usize>,
}

/// The JSON sidecar shipped next to a reduction graph file.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ReductionSidecar {
    pub k1: usize,
    pub k2: usize,
    pub n: usize,
    pub m: usize,
    pub labels: BTreeMap<String, usize>,
    pub expected_packing: usize,
}

impl ReductionArtifact {
    /// The cardinality `n + 2m` that every admissible instance attains at k1
    /// and that satisfiable instances attain at k2.
    pub fn expected_packing(&self) -> usize {
        self.variable_count + 2 * self.clause_count
    }

    pub fn label(&self, name: &str) -> Option<usize> {
        self.labels.get(name).copied()
    }

    fn vertex(&self, name: &str) -> Result<usize> {
        self.label(name)
            .ok_or_else(|| Error::Validation(format!("label {name:?} missing from artifact")))
    }

    /// All vertices of the cycle built for variable `i`.
    pub fn variable_cycle_vertices(&self, i: usize) -> Result<Vec<usize>> {
        let mut out = vec![
            self.vertex(&labels::x(i))?,
            self.vertex(&labels::xbar(i))?,
            self.vertex(&labels::x_prime(i))?,
            self.vertex(&labels::xbar_prime(i))?,
        ];
        let stretch = self.k2.div_ceil(2) - 2;
        for arc in 1..=2 {
            for s in 1..=stretch {
                out.push(self.vertex(&labels::cycle_sub(i, arc, s))?);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn sidecar(&self) -> ReductionSidecar {
        ReductionSidecar {
            k1: self.k1,
            k2: self.k2,
            n: self.variable_count,
            m: self.clause_count,
            labels: self.labels.clone(),
            expected_packing: self.expected_packing(),
        }
    }

    /// Rebuilds an artifact from a graph file and its sidecar.
    pub fn from_parts(graph: Graph, sidecar: ReductionSidecar) -> Result<Self> {
        if sidecar.expected_packing != sidecar.n + 2 * sidecar.m {
            return Err(Error::input(format!(
                "sidecar expected_packing {} differs from n + 2m = {}",
                sidecar.expected_packing,
                sidecar.n + 2 * sidecar.m
            )));
        }
        for (name, &id) in &sidecar.labels {
            if id >= graph.vertex_count() {
                return Err(Error::input(format!(
                    "label {name:?} points at vertex {id}, graph has {}",
                    graph.vertex_count()
                )));
            }
        }
        Ok(ReductionArtifact {
            graph,
            k1: sidecar.k1,
            k2: sidecar.k2,
            variable_count: sidecar.n,
            clause_count: sidecar.m,
            labels: sidecar.labels,
        })
    }
}

/// Smallest admissible k1 for a given k2, if any.
fn admissible_k1(k2: usize) -> Option<std::ops::RangeInclusive<usize>> {
    let needed = (3 * k2 + 1).div_ceil(2);
    // 2*k1 + 1 >= needed  =>  k1 >= ceil((needed - 1) / 2)
    let lo = (needed - 1).div_ceil(2);
    let hi = k2.checked_sub(1)?;
    if lo > hi {
        None
    } else {
        Some(lo..=hi)
    }
}

struct GadgetBuilder {
    next: usize,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<String, usize>,
}

impl GadgetBuilder {
    fn new() -> Self {
        GadgetBuilder {
            next: 0,
            edges: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    fn vertex(&mut self, name: String) -> usize {
        let id = self.next;
        self.next += 1;
        self.labels.insert(name, id);
        id
    }

    fn alias(&mut self, name: String, id: usize) {
        self.labels.insert(name, id);
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    /// Connects `from` to `to` through the given interior vertices in order.
    fn chain(&mut self, from: usize, interior: &[usize], to: usize) {
        let mut prev = from;
        for &v in interior {
            self.edge(prev, v);
            prev = v;
        }
        self.edge(prev, to);
    }

    fn add_variable_cycle(&mut self, i: usize, k2: usize) {
        let x = self.vertex(labels::x(i));
        let xbar = self.vertex(labels::xbar(i));
        let xp = self.vertex(labels::x_prime(i));
        let xbarp = self.vertex(labels::xbar_prime(i));
        self.edge(x, xbar);
        self.edge(xp, xbarp);
        let stretch = k2.div_ceil(2) - 2;
        let arc1: Vec<usize> = (1..=stretch)
            .map(|s| self.vertex(labels::cycle_sub(i, 1, s)))
            .collect();
        self.chain(x, &arc1, xbarp);
        let arc2: Vec<usize> = (1..=stretch)
            .map(|s| self.vertex(labels::cycle_sub(i, 2, s)))
            .collect();
        self.chain(xbar, &arc2, xp);
    }

    fn add_clause_gadget(&mut self, j: usize, k2: usize) {
        let a = self.vertex(labels::a(j));
        let apath: Vec<usize> = (1..=k2 - 3)
            .map(|s| self.vertex(labels::apath(j, s)))
            .collect();
        let p = self.vertex(labels::p(j));
        let q = self.vertex(labels::q(j));
        let b = self.vertex(labels::b(j));
        self.chain(a, &apath, p);
        self.edge(p, q);
        self.edge(q, b);

        let branch_stretch = k2 / 2 - 1;
        let mut old = [0usize; 3];
        let mut primes = [0usize; 3];
        for t in 1..=3 {
            let oldlit = self.vertex(labels::oldlit(j, t));
            let prime = self.vertex(labels::prime(j, t));
            if branch_stretch == 0 {
                self.edge(b, oldlit);
                self.alias(labels::lit(j, t), oldlit);
            } else {
                let lit = self.vertex(labels::lit(j, t));
                let rest: Vec<usize> = (2..=branch_stretch)
                    .map(|s| self.vertex(labels::branch(j, t, s)))
                    .collect();
                let mut interior = vec![lit];
                interior.extend(rest);
                self.chain(b, &interior, oldlit);
            }
            self.edge(oldlit, prime);
            old[t - 1] = oldlit;
            primes[t - 1] = prime;
        }

        // Hubs: u misses the third literal, v the second, w the first; all
        // three see every prime.
        let hub_u = self.vertex(labels::hub_u(j));
        let hub_v = self.vertex(labels::hub_v(j));
        let hub_w = self.vertex(labels::hub_w(j));
        for (hub, miss) in [(hub_u, 2), (hub_v, 1), (hub_w, 0)] {
            for (t, &lit_vertex) in old.iter().enumerate() {
                if t != miss {
                    self.edge(hub, lit_vertex);
                }
            }
            for &prime in &primes {
                self.edge(hub, prime);
            }
        }
    }

    fn add_connectors(&mut self, j: usize, clause: &[Literal; 3]) {
        for (t, lit) in clause.iter().enumerate() {
            let prime = self.labels[&labels::prime(j, t + 1)];
            let target = if lit.negated {
                self.labels[&labels::xbar_prime(lit.variable)]
            } else {
                self.labels[&labels::x_prime(lit.variable)]
            };
            self.edge(prime, target);
        }
    }

    fn finish(self) -> Result<(Graph, BTreeMap<String, usize>)> {
        Ok((Graph::new(self.next, &self.edges)?, self.labels))
    }
}

/// Builds the reduction graph for `f` at parameters `(k1, k2)`.
pub fn build_reduction(f: &CnfFormula, k1: usize, k2: usize) -> Result<ReductionArtifact> {
    if k1 == 0 || k1 >= k2 || (3 * k2 + 1).div_ceil(2) > 2 * k1 + 1 {
        let admissible = match admissible_k1(k2) {
            Some(range) => format!(
                "admissible k1 for k2={k2}: {}..={}",
                range.start(),
                range.end()
            ),
            None => format!("no k1 is admissible for k2={k2}"),
        };
        return Err(Error::Parameter(format!(
            "(k1, k2) = ({k1}, {k2}) violates k1 < k2 and ceil((3*k2+1)/2) <= 2*k1+1; {admissible}"
        )));
    }

    let mut builder = GadgetBuilder::new();
    for i in 1..=f.variable_count() {
        builder.add_variable_cycle(i, k2);
    }
    for (idx, clause) in f.clauses().iter().enumerate() {
        let j = idx + 1;
        builder.add_clause_gadget(j, k2);
        builder.add_connectors(j, clause);
    }
    let (graph, labels) = builder.finish()?;
    Ok(ReductionArtifact {
        graph,
        k1,
        k2,
        variable_count: f.variable_count(),
        clause_count: f.clause_count(),
        labels,
    })
}

/// One variable cycle in isolation (used by the distance validator).
fn standalone_variable_cycle(k2: usize) -> Graph {
    let mut builder = GadgetBuilder::new();
    builder.add_variable_cycle(1, k2);
    builder.finish().expect("cycle is simple").0
}

/// One clause gadget in isolation, without connectors.
fn standalone_clause_gadget(k2: usize) -> Graph {
    let mut builder = GadgetBuilder::new();
    builder.add_clause_gadget(1, k2);
    builder.finish().expect("gadget is simple").0
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// Summary of a passed distance validation.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DistanceValidation {
    pub checks_passed: usize,
}

/// Re-derives every distance the reduction argument relies on and checks the
/// two gadget packing numbers. Any failure is reported with the clause and
/// literal it concerns. This is the guard against a mistranscribed gadget.
pub fn validate_reduction_distances(
    artifact: &ReductionArtifact,
    f: &CnfFormula,
) -> Result<DistanceValidation> {
    let k2 = artifact.k2;
    let g = &artifact.graph;
    let mut failures: Vec<String> = Vec::new();
    let mut passed = 0usize;
    let mut check = |what: String, actual: Option<usize>, expected: usize| {
        if actual == Some(expected) {
            passed += 1;
        } else {
            failures.push(format!("{what}: expected {expected}, got {actual:?}"));
        }
    };

    let arc_len = k2.div_ceil(2) - 1;
    for i in 1..=artifact.variable_count {
        let x = artifact.vertex(&labels::x(i))?;
        let xbar = artifact.vertex(&labels::xbar(i))?;
        let xp = artifact.vertex(&labels::x_prime(i))?;
        let xbarp = artifact.vertex(&labels::xbar_prime(i))?;
        check(
            format!("variable {i}: arc x..xbar'"),
            g.distance(x, xbarp),
            arc_len,
        );
        check(
            format!("variable {i}: arc xbar..x'"),
            g.distance(xbar, xp),
            arc_len,
        );
    }

    for (idx, clause) in f.clauses().iter().enumerate() {
        let j = idx + 1;
        let a = artifact.vertex(&labels::a(j))?;
        let b = artifact.vertex(&labels::b(j))?;
        check(format!("clause {j}: d(a, b)"), g.distance(a, b), k2);
        for (t_idx, lit) in clause.iter().enumerate() {
            let t = t_idx + 1;
            let lit_v = artifact.vertex(&labels::lit(j, t))?;
            let old_v = artifact.vertex(&labels::oldlit(j, t))?;
            check(
                format!("clause {j} literal {t}: d(b, lit)"),
                g.distance(b, lit_v),
                1,
            );
            check(
                format!("clause {j} literal {t}: d(b, oldlit)"),
                g.distance(b, old_v),
                k2 / 2,
            );
            let (true_name, false_name) = if lit.negated {
                (labels::xbar(lit.variable), labels::x(lit.variable))
            } else {
                (labels::x(lit.variable), labels::xbar(lit.variable))
            };
            check(
                format!("clause {j} literal {t}: d(lit, false-setting vertex)"),
                g.distance(lit_v, artifact.vertex(&false_name)?),
                k2,
            );
            check(
                format!("clause {j} literal {t}: d(lit, true-setting vertex)"),
                g.distance(lit_v, artifact.vertex(&true_name)?),
                k2 + 1,
            );
        }
    }

    if artifact.variable_count > 0 {
        let cycle = standalone_variable_cycle(k2);
        let rho = max_k_packing(&cycle, k2, DEFAULT_NODE_BUDGET)?.cardinality;
        check("variable cycle alone: rho_k2".into(), Some(rho), 1);
    }
    if artifact.clause_count > 0 {
        let gadget = standalone_clause_gadget(k2);
        let rho = max_k_packing(&gadget, artifact.k1, DEFAULT_NODE_BUDGET)?.cardinality;
        check("clause gadget alone: rho_k1".into(), Some(rho), 2);
    }

    if failures.is_empty() {
        Ok(DistanceValidation {
            checks_passed: passed,
        })
    } else {
        Err(Error::Validation(failures.join("; ")))
    }
}

// ---------------------------------------------------------------------------
// Packings and assignments
// ---------------------------------------------------------------------------

/// Turns a satisfying assignment into a k2-packing of size `n + 2m`: each
/// clause contributes `a[j]` and the lit vertex of its first true literal,
/// each variable cycle contributes `x[i]` or `xbar[i]`.
pub fn assignment_to_packing(
    artifact: &ReductionArtifact,
    f: &CnfFormula,
    assignment: &Assignment,
) -> Result<Vec<usize>> {
    if assignment.variable_count() != artifact.variable_count {
        return Err(Error::input(format!(
            "assignment covers {} variables, artifact has {}",
            assignment.variable_count(),
            artifact.variable_count
        )));
    }
    if !f.evaluate(assignment) {
        return Err(Error::input(
            "assignment does not satisfy the source formula",
        ));
    }
    let mut packing = Vec::with_capacity(artifact.expected_packing());
    for i in 1..=artifact.variable_count {
        let name = if assignment.value(i) {
            labels::x(i)
        } else {
            labels::xbar(i)
        };
        packing.push(artifact.vertex(&name)?);
    }
    for (idx, clause) in f.clauses().iter().enumerate() {
        let j = idx + 1;
        packing.push(artifact.vertex(&labels::a(j))?);
        let t = clause
            .iter()
            .position(|&l| assignment.satisfies_literal(l))
            .expect("satisfying assignment has a true literal per clause")
            + 1;
        packing.push(artifact.vertex(&labels::lit(j, t))?);
    }
    packing.sort_unstable();
    if !is_k_packing(&artifact.graph, artifact.k2, &packing)? {
        return Err(Error::Validation(
            "constructed vertex set is not a k2-packing; the artifact is inconsistent".into(),
        ));
    }
    Ok(packing)
}

/// Reads a truth assignment out of a maximum k2-packing: variable `i` is
/// true exactly when the packing meets its cycle in the single vertex
/// `x[i]`. The result is verified against `f`; a verification failure is an
/// [`Error::Extraction`] and must never occur for genuine packings.
pub fn packing_to_assignment(
    artifact: &ReductionArtifact,
    f: &CnfFormula,
    packing: &[usize],
) -> Result<Assignment> {
    for &v in packing {
        if v >= artifact.graph.vertex_count() {
            return Err(Error::input(format!(
                "packing vertex {v} outside 0..{}",
                artifact.graph.vertex_count()
            )));
        }
    }
    if packing.len() != artifact.expected_packing() {
        return Err(Error::input(format!(
            "packing has {} vertices, expected n + 2m = {}",
            packing.len(),
            artifact.expected_packing()
        )));
    }
    if !is_k_packing(&artifact.graph, artifact.k2, packing)? {
        return Err(Error::input(format!(
            "vertex set is not a {}-packing",
            artifact.k2
        )));
    }
    let in_packing: std::collections::BTreeSet<usize> = packing.iter().copied().collect();
    let mut values = Vec::with_capacity(artifact.variable_count);
    for i in 1..=artifact.variable_count {
        let cycle = artifact.variable_cycle_vertices(i)?;
        let hits: Vec<usize> = cycle
            .iter()
            .copied()
            .filter(|v| in_packing.contains(v))
            .collect();
        let x = artifact.vertex(&labels::x(i))?;
        values.push(hits == [x]);
    }
    let assignment = Assignment::new(values);
    if !f.evaluate(&assignment) {
        return Err(Error::Extraction(format!(
            "assignment {:?} read from the packing does not satisfy the formula",
            assignment.values()
        )));
    }
    Ok(assignment)
}

// ---------------------------------------------------------------------------
// End-to-end verification
// ---------------------------------------------------------------------------

/// Everything a reduction run claims, checked exactly.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct VerificationReport {
    pub k1: usize,
    pub k2: usize,
    pub rho_k1: usize,
    pub rho_k2: usize,
    pub expected: usize,
    pub satisfiable: bool,
    pub biconditional_holds: bool,
    /// Packing built from the brute-force assignment, when satisfiable.
    pub packing: Option<Vec<usize>>,
    /// Assignment extracted from the solver certificate, when the k2 number
    /// reaches the expected value.
    pub extracted_assignment: Option<Vec<bool>>,
}

/// Builds the reduction for `f` and verifies the whole claim with the exact
/// solver and the brute-force oracle.
pub fn verify_reduction(
    f: &CnfFormula,
    k1: usize,
    k2: usize,
    budget: u64,
) -> Result<VerificationReport> {
    let artifact = build_reduction(f, k1, k2)?;
    verify_artifact(&artifact, f, budget)
}

/// Verification against an existing artifact (for instances loaded from
/// disk).
pub fn verify_artifact(
    artifact: &ReductionArtifact,
    f: &CnfFormula,
    budget: u64,
) -> Result<VerificationReport> {
    if artifact.variable_count != f.variable_count() || artifact.clause_count != f.clause_count() {
        return Err(Error::input(format!(
            "artifact was built for n={}, m={}, formula has n={}, m={}",
            artifact.variable_count,
            artifact.clause_count,
            f.variable_count(),
            f.clause_count()
        )));
    }
    let expected = artifact.expected_packing();
    let rho_k1 = max_k_packing(&artifact.graph, artifact.k1, budget)?.cardinality;
    let cert_k2 = max_k_packing(&artifact.graph, artifact.k2, budget)?;
    let rho_k2 = cert_k2.cardinality;
    let satisfying = brute_force_sat(f)?;

    let packing = match &satisfying {
        Some(assignment) => Some(assignment_to_packing(artifact, f, assignment)?),
        None => None,
    };
    let extracted_assignment = if rho_k2 == expected {
        Some(
            packing_to_assignment(artifact, f, &cert_k2.vertices)?
                .values()
                .to_vec(),
        )
    } else {
        None
    };

    let satisfiable = satisfying.is_some();
    Ok(VerificationReport {
        k1: artifact.k1,
        k2: artifact.k2,
        rho_k1,
        rho_k2,
        expected,
        satisfiable,
        biconditional_holds: rho_k1 == expected && ((rho_k2 == expected) == satisfiable),
        packing,
        extracted_assignment,
    })
}
