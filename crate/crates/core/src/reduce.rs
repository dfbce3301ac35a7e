//! Hardness-reduction instance generators and small oracles for their source
//! problems.
//!
//! Vertex numbering is deterministic: the star vertex `s` first, then
//! variable gadgets in variable order, clause gadgets in clause order, then
//! any further vertices in creation order. Every generator records a role for
//! each vertex in [`ReductionOutput::legend`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Connection, GraphError, Label, StaticGraph, TemporalGraph, TimeEdge, Vertex};

/// Largest variable count accepted by [`sat_bruteforce`].
pub const SAT_BRUTEFORCE_LIMIT: u32 = 20;

/// Largest vertex count accepted by [`multicut_dag_bruteforce`].
pub const MULTICUT_BRUTEFORCE_LIMIT: u32 = 15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReduceError {
    #[error("clause {clause} is empty")]
    EmptyClause { clause: usize },
    #[error("clause {clause} has {len} literals, at most 3 allowed")]
    ClauseTooLong { clause: usize, len: usize },
    #[error("clause {clause} has {len} literals, the gadget needs exactly 3")]
    ClauseNotTernary { clause: usize, len: usize },
    #[error("literal {literal} refers to no variable in 1..={num_vars}")]
    LiteralOutOfRange { literal: i32, num_vars: u32 },
    #[error("vertex {vertex} not in 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: u32 },
    #[error("arc ({0}, {1}) is a self-loop")]
    SelfLoop(Vertex, Vertex),
    #[error("digraph contains a directed cycle")]
    NotAcyclic,
    #[error("terminal pairs violate the multicut preconditions")]
    Preconditions,
    #[error("labels {t}..={last} exceed the lifetime {tau}")]
    LifetimeOverflow { t: Label, last: Label, tau: Label },
    #[error("{size} exceeds the brute-force limit of {limit}")]
    GuardExceeded { size: u32, limit: u32 },
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Formula in conjunctive normal form. A literal is `+i` for `x_i`, `-i` for
/// its negation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Vec<i32>>) -> Result<Self, ReduceError> {
        for (ci, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(ReduceError::EmptyClause { clause: ci + 1 });
            }
            if clause.len() > 3 {
                return Err(ReduceError::ClauseTooLong {
                    clause: ci + 1,
                    len: clause.len(),
                });
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() > num_vars {
                    return Err(ReduceError::LiteralOutOfRange { literal: lit, num_vars });
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Short clauses filled up to three literals by repeating the last one.
    pub fn padded(&self) -> CnfFormula {
        let clauses = self
            .clauses
            .iter()
            .map(|c| {
                let mut c = c.clone();
                let last = *c.last().expect("clauses are non-empty");
                c.resize(3, last);
                c
            })
            .collect();
        CnfFormula {
            num_vars: self.num_vars,
            clauses,
        }
    }

    /// `assignment[i]` is the value of `x_{i+1}`.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&lit| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0))
        })
    }

    fn require_ternary(&self) -> Result<(), ReduceError> {
        match self.clauses.iter().position(|c| c.len() != 3) {
            Some(ci) => Err(ReduceError::ClauseNotTernary {
                clause: ci + 1,
                len: self.clauses[ci].len(),
            }),
            None => Ok(()),
        }
    }
}

/// Directed acyclic graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    n: u32,
    arcs: Vec<(Vertex, Vertex)>,
}

impl Dag {
    /// Rejects out-of-range endpoints, self-loops and directed cycles.
    /// Repeated arcs are collapsed.
    pub fn new(n: u32, arcs: &[(Vertex, Vertex)]) -> Result<Self, ReduceError> {
        for &(a, b) in arcs {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(ReduceError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(ReduceError::SelfLoop(a, b));
            }
        }
        let dag = Dag {
            n,
            arcs: arcs.iter().copied().unique().collect(),
        };
        acyclic_ordering(&dag)?;
        Ok(dag)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    /// Vertices reachable from `from` without entering `blocked`.
    fn reachable(&self, from: Vertex, blocked: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &(a, b) in &self.arcs {
                if a == x && !blocked.contains(&b) && seen.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        seen
    }
}

/// Source/sink pairs `(s_i, t_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TerminalPairs {
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl TerminalPairs {
    pub fn new(pairs: Vec<(Vertex, Vertex)>) -> Self {
        TerminalPairs { pairs }
    }

    pub fn terminals(&self) -> BTreeSet<Vertex> {
        self.pairs.iter().flat_map(|&(s, t)| [s, t]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: TemporalGraph,
    pub k: usize,
    /// Role of every vertex, e.g. `s`, `v2^T`, `w1^3`.
    pub legend: BTreeMap<Vertex, String>,
}

/// Incremental vertex/edge collector shared by the generators.
#[derive(Debug, Default)]
struct Builder {
    legend: BTreeMap<Vertex, String>,
    triples: Vec<(Vertex, Vertex, Label)>,
}

impl Builder {
    fn vertex(&mut self, role: impl Into<String>) -> Vertex {
        let v = self.legend.len() as Vertex + 1;
        self.legend.insert(v, role.into());
        v
    }

    fn edge(&mut self, a: Vertex, b: Vertex, t: Label) {
        self.triples.push((a, b, t));
    }

    fn finish(self, tau: Label, k: usize) -> Result<ReductionOutput, ReduceError> {
        let graph = TemporalGraph::from_triples(self.legend.len() as u32, tau, &self.triples)?;
        Ok(ReductionOutput {
            graph,
            k,
            legend: self.legend,
        })
    }
}

struct VariableGadget {
    v: Vertex,
    t: Vertex,
    f: Vertex,
}

struct ClauseGadget {
    w: Vertex,
    slots: [Vertex; 3],
}

fn gadget_vertices(b: &mut Builder, phi: &CnfFormula) -> (Vertex, Vec<VariableGadget>, Vec<ClauseGadget>) {
    let s = b.vertex("s");
    let vars = (1..=phi.num_vars)
        .map(|i| VariableGadget {
            v: b.vertex(format!("v{i}")),
            t: b.vertex(format!("v{i}^T")),
            f: b.vertex(format!("v{i}^F")),
        })
        .collect();
    let clauses = (1..=phi.clauses.len())
        .map(|j| ClauseGadget {
            w: b.vertex(format!("w{j}")),
            slots: [1, 2, 3].map(|z| b.vertex(format!("w{j}^{z}"))),
        })
        .collect();
    (s, vars, clauses)
}

fn literal_terminal(vars: &[VariableGadget], lit: i32) -> Vertex {
    let g = &vars[lit.unsigned_abs() as usize - 1];
    if lit > 0 {
        g.t
    } else {
        g.f
    }
}

/// Strict-model instance with `tau = 8` and budget `n + 2m`; satisfiable iff
/// the instance has a solution within budget.
pub fn sat_to_strict(phi: &CnfFormula) -> Result<ReductionOutput, ReduceError> {
    phi.require_ternary()?;
    let mut b = Builder::default();
    let (s, vars, clauses) = gadget_vertices(&mut b, phi);
    for g in &vars {
        b.edge(g.v, g.t, 2);
        b.edge(g.v, g.f, 3);
        b.edge(g.t, g.f, 1);
        b.edge(s, g.v, 1);
    }
    for (c, lits) in clauses.iter().zip(&phi.clauses) {
        let [w1, w2, w3] = c.slots;
        b.edge(w1, w2, 1);
        b.edge(w2, w3, 2);
        b.edge(c.w, w1, 7);
        b.edge(c.w, w2, 6);
        b.edge(c.w, w3, 5);
        for (&slot, &lit) in c.slots.iter().zip(lits) {
            b.edge(slot, literal_terminal(&vars, lit), 4);
        }
        b.edge(s, c.w, 8);
    }
    b.finish(8, (phi.num_vars as usize) + 2 * phi.clauses.len())
}

/// Non-strict instance with `tau = 3` and budget `n + 2m`. Each
/// variable-to-clause connector is subdivided by a fresh middle vertex.
pub fn sat_to_nonstrict(phi: &CnfFormula) -> Result<ReductionOutput, ReduceError> {
    phi.require_ternary()?;
    let mut b = Builder::default();
    let (s, vars, clauses) = gadget_vertices(&mut b, phi);
    for g in &vars {
        b.edge(g.t, g.f, 1);
        b.edge(g.t, g.v, 2);
        b.edge(g.v, g.f, 2);
        b.edge(s, g.v, 1);
    }
    for (j, (c, lits)) in clauses.iter().zip(&phi.clauses).enumerate() {
        let [w1, w2, w3] = c.slots;
        b.edge(w1, w2, 1);
        b.edge(w2, w3, 1);
        for (z, (&slot, &lit)) in c.slots.iter().zip(lits).enumerate() {
            b.edge(c.w, slot, 3);
            let mid = b.vertex(format!("m{}^{}", j + 1, z + 1));
            b.edge(literal_terminal(&vars, lit), mid, 2);
            b.edge(mid, slot, 3);
        }
        b.edge(s, c.w, 3);
    }
    b.finish(3, (phi.num_vars as usize) + 2 * phi.clauses.len())
}

/// Fresh vertices and time-edges of one heavy time-edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeavyTimeEdge {
    /// `v^1, w^1, v^2, w^2, ...`
    pub vertices: Vec<Vertex>,
    pub edges: Vec<TimeEdge>,
}

/// `k + 1` disjoint paths `a - v^i - w^i - b` labelled `t, t+1, t+2`, using
/// fresh vertices numbered from `first_fresh`. Traversable from `a` to `b`
/// only.
pub fn heavy_time_edge(
    a: Vertex,
    b: Vertex,
    t: Label,
    k: usize,
    first_fresh: Vertex,
    tau: Label,
) -> Result<HeavyTimeEdge, ReduceError> {
    if t == 0 || t + 2 > tau {
        return Err(ReduceError::LifetimeOverflow { t, last: t + 2, tau });
    }
    let mut out = HeavyTimeEdge {
        vertices: Vec::with_capacity(2 * (k + 1)),
        edges: Vec::with_capacity(3 * (k + 1)),
    };
    for i in 0..=k as u32 {
        let v = first_fresh + 2 * i;
        let w = v + 1;
        out.vertices.extend([v, w]);
        out.edges.extend([
            TimeEdge::new(a, v, t)?,
            TimeEdge::new(v, w, t + 1)?,
            TimeEdge::new(w, b, t + 2)?,
        ]);
    }
    Ok(out)
}

fn add_heavy(b: &mut Builder, from: Vertex, to: Vertex, t: Label, k: usize, tau: Label) -> Result<(), ReduceError> {
    let first = b.legend.len() as Vertex + 1;
    let h = heavy_time_edge(from, to, t, k, first, tau)?;
    for (i, pair) in h.vertices.chunks(2).enumerate() {
        b.vertex(format!("h({from}->{to})v{}", i + 1));
        b.vertex(format!("h({from}->{to})w{}", i + 1));
        debug_assert_eq!(pair, [first + 2 * i as u32, first + 2 * i as u32 + 1]);
    }
    for e in h.edges {
        b.edge(e.conn.u(), e.conn.v(), e.t);
    }
    Ok(())
}

/// Position `pi(v)` in `1..=n` for each vertex, indexed by `v - 1`. Among
/// available sources the smallest index goes first.
pub fn acyclic_ordering(dag: &Dag) -> Result<Vec<u32>, ReduceError> {
    let n = dag.n as usize;
    let mut indeg = vec![0usize; n];
    for &(_, b) in &dag.arcs {
        indeg[b as usize - 1] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut pi = vec![0u32; n];
    let mut next = 1;
    while let Some(v) = ready.pop_first() {
        pi[v] = next;
        next += 1;
        for &(a, b) in &dag.arcs {
            if a as usize - 1 == v {
                indeg[b as usize - 1] -= 1;
                if indeg[b as usize - 1] == 0 {
                    ready.insert(b as usize - 1);
                }
            }
        }
    }
    if next as usize != n + 1 {
        return Err(ReduceError::NotAcyclic);
    }
    Ok(pi)
}

/// Terminals pairwise distinct and in range, no arc into a source, no arc
/// out of a sink.
pub fn check_multicut_preconditions(dag: &Dag, pairs: &TerminalPairs) -> bool {
    let all: Vec<Vertex> = pairs.pairs.iter().flat_map(|&(s, t)| [s, t]).collect();
    if all.iter().any(|&v| v == 0 || v > dag.n) || all.iter().unique().count() != all.len() {
        return false;
    }
    let sources: BTreeSet<Vertex> = pairs.pairs.iter().map(|p| p.0).collect();
    let sinks: BTreeSet<Vertex> = pairs.pairs.iter().map(|p| p.1).collect();
    dag.arcs
        .iter()
        .all(|(a, b)| !sources.contains(b) && !sinks.contains(a))
}

/// Arcs become heavy time-edges, nonterminals are split by a single
/// deletable time-edge, and each pair is closed by a heavy back-edge. The
/// budget carries over unchanged.
pub fn multicut_dag_to_tfes(dag: &Dag, pairs: &TerminalPairs, k: usize) -> Result<ReductionOutput, ReduceError> {
    if !check_multicut_preconditions(dag, pairs) {
        return Err(ReduceError::Preconditions);
    }
    let pi = acyclic_ordering(dag)?;
    let terminals = pairs.terminals();
    let back_t = 4 * (dag.n + 1);
    let tau = back_t + 2;

    let mut b = Builder::default();
    // (in, out) endpoint for each DAG vertex
    let mut ends = Vec::with_capacity(dag.n as usize);
    for v in 1..=dag.n {
        if terminals.contains(&v) {
            let x = b.vertex(format!("d{v}"));
            ends.push((x, x));
        } else {
            let vin = b.vertex(format!("d{v}^in"));
            let vout = b.vertex(format!("d{v}^out"));
            b.edge(vin, vout, 4 * pi[v as usize - 1]);
            ends.push((vin, vout));
        }
    }
    for &(v, w) in &dag.arcs {
        let from = ends[v as usize - 1].1;
        let to = ends[w as usize - 1].0;
        add_heavy(&mut b, from, to, 4 * pi[v as usize - 1] + 1, k, tau)?;
    }
    for &(s, t) in &pairs.pairs {
        add_heavy(&mut b, ends[t as usize - 1].0, ends[s as usize - 1].0, back_t, k, tau)?;
    }
    b.finish(tau, k)
}

/// Every edge of `g` at labels 1, 2 and 3.
pub fn static_to_three_layers(g: &StaticGraph) -> TemporalGraph {
    let edges = g
        .edges()
        .iter()
        .flat_map(|&conn| (1..=3).map(move |t| TimeEdge { conn, t }));
    TemporalGraph::new(g.n(), 3, edges).expect("labels 1..=3 fit tau = 3")
}

pub fn sat_bruteforce(phi: &CnfFormula) -> Result<bool, ReduceError> {
    if phi.num_vars > SAT_BRUTEFORCE_LIMIT {
        return Err(ReduceError::GuardExceeded {
            size: phi.num_vars,
            limit: SAT_BRUTEFORCE_LIMIT,
        });
    }
    let n = phi.num_vars as usize;
    let mut assignment = vec![false; n];
    for bits in 0u32..1 << n {
        for (i, a) in assignment.iter_mut().enumerate() {
            *a = bits >> i & 1 == 1;
        }
        if phi.satisfied_by(&assignment) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Some set of at most `k` nonterminal vertices meets every `s_i -> t_i`
/// path.
pub fn multicut_dag_bruteforce(dag: &Dag, pairs: &TerminalPairs, k: usize) -> Result<bool, ReduceError> {
    if dag.n > MULTICUT_BRUTEFORCE_LIMIT {
        return Err(ReduceError::GuardExceeded {
            size: dag.n,
            limit: MULTICUT_BRUTEFORCE_LIMIT,
        });
    }
    let terminals = pairs.terminals();
    let candidates: Vec<Vertex> = (1..=dag.n).filter(|v| !terminals.contains(v)).collect();
    for size in 0..=k.min(candidates.len()) {
        for z in candidates.iter().copied().combinations(size) {
            let blocked: BTreeSet<Vertex> = z.into_iter().collect();
            if pairs
                .pairs
                .iter()
                .all(|&(s, t)| !dag.reachable(s, &blocked).contains(&t))
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Each `(pair, label)` slot present independently with probability `p`.
pub fn random_temporal_graph(n: u32, tau: Label, p: f64, seed: u64) -> Result<TemporalGraph, ReduceError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ReduceError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for conn in all_pairs(n) {
        for t in 1..=tau {
            if rng.gen_bool(p) {
                edges.push(TimeEdge { conn, t });
            }
        }
    }
    Ok(TemporalGraph::new(n, tau, edges)?)
}

/// Each pair present with probability `p`, carrying one uniform label.
pub fn random_simple_temporal_graph(n: u32, tau: Label, p: f64, seed: u64) -> Result<TemporalGraph, ReduceError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ReduceError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for conn in all_pairs(n) {
        if tau > 0 && rng.gen_bool(p) {
            edges.push(TimeEdge {
                conn,
                t: rng.gen_range(1..=tau),
            });
        }
    }
    Ok(TemporalGraph::new(n, tau, edges)?)
}

/// `m` clauses of three literals over distinct variables (`num_vars >= 3`),
/// fewer distinct variables otherwise.
pub fn random_cnf(num_vars: u32, m: usize, seed: u64) -> Result<CnfFormula, ReduceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let vars = rand::seq::index::sample(&mut rng, num_vars as usize, 3.min(num_vars as usize));
            vars.into_iter()
                .map(|v| {
                    let lit = v as i32 + 1;
                    if rng.gen_bool(0.5) {
                        lit
                    } else {
                        -lit
                    }
                })
                .collect()
        })
        .collect();
    Ok(CnfFormula::new(num_vars, clauses)?.padded())
}

fn all_pairs(n: u32) -> impl Iterator<Item = Connection> {
    (1..=n).tuple_combinations().map(|(a, b)| Connection::new(a, b).expect("a < b"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{solve_branch, ProblemVariant};
    use crate::reach::{has_cycle, PathModel};

    fn cnf(n: u32, c: &[&[i32]]) -> CnfFormula {
        CnfFormula::new(n, c.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn strict_sizes() {
        let phi = cnf(3, &[&[1, 2, 3]]);
        let out = sat_to_strict(&phi).unwrap();
        // n counts variables: 3 + 2 * 1
        assert_eq!(out.k, 5);
        assert_eq!(out.graph.n(), 1 + 9 + 4);
        assert_eq!(out.graph.num_edges(), 4 * 3 + 9);
        assert_eq!(out.graph.tau(), 8);
        assert!(out.graph.is_simple());
        assert_eq!(out.legend.len(), out.graph.n() as usize);
        assert_eq!(out.legend[&1], "s");
        assert_eq!(out.legend[&3], "v1^T");
    }

    #[test]
    fn nonstrict_sizes() {
        let phi = cnf(2, &[&[1, -2]]).padded();
        let out = sat_to_nonstrict(&phi).unwrap();
        assert_eq!(out.k, 4);
        assert_eq!(out.graph.tau(), 3);
        // one middle vertex and two time-edges per literal occurrence
        assert_eq!(out.graph.n(), 1 + 6 + 4 + 3);
        assert_eq!(out.graph.num_edges(), 4 * 2 + 6 + 6);
        assert!(out.graph.is_simple());
    }

    #[test]
    fn generators_require_three_literals() {
        let phi = cnf(2, &[&[1, -2]]);
        assert_eq!(sat_to_strict(&phi), Err(ReduceError::ClauseNotTernary { clause: 1, len: 2 }));
        assert!(sat_to_nonstrict(&phi).is_err());
        assert_eq!(phi.padded().clauses()[0], vec![1, -2, -2]);
        assert!(CnfFormula::new(4, vec![vec![1, 2, 3, 4]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![3]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![]]).is_err());
    }

    #[test]
    fn single_clause_is_yes() {
        let phi = cnf(3, &[&[1, 2, 3]]);
        let out = sat_to_strict(&phi).unwrap();
        assert!(solve_branch(&out.graph, out.k, ProblemVariant::STFES).is_some());
        assert!(solve_branch(&out.graph, out.k - 1, ProblemVariant::STFES).is_none());
    }

    #[test]
    fn heavy_edge_shape() {
        let h = heavy_time_edge(1, 2, 1, 2, 3, 3).unwrap();
        assert_eq!(h.vertices, vec![3, 4, 5, 6, 7, 8]);
        assert_eq!(h.edges.len(), 9);
        let h0 = heavy_time_edge(1, 2, 4, 0, 3, 6).unwrap();
        assert_eq!(h0.edges.len(), 3);
        assert!(heavy_time_edge(1, 2, 5, 0, 3, 6).is_err());
    }

    #[test]
    fn heavy_edge_is_one_way() {
        let h = heavy_time_edge(1, 2, 1, 0, 3, 3).unwrap();
        let g = TemporalGraph::new(4, 3, h.edges).unwrap();
        for model in [PathModel::Strict, PathModel::NonStrict] {
            let m = crate::reach::reachability_matrix(&g, 3, model).unwrap();
            assert!(m[0][1]);
            assert!(!m[1][0]);
        }
    }

    #[test]
    fn chain_dag_labels() {
        let dag = Dag::new(3, &[(1, 2), (2, 3)]).unwrap();
        let pairs = TerminalPairs::new(vec![(1, 3)]);
        assert_eq!(acyclic_ordering(&dag).unwrap(), vec![1, 2, 3]);
        let out = multicut_dag_to_tfes(&dag, &pairs, 1).unwrap();
        let g = &out.graph;
        assert_eq!(g.tau(), 18);
        assert!(g.is_simple());
        let labels = |t: Label| g.layer(t).unwrap().len();
        // two parallel paths per heavy edge at k = 1
        for t in [5, 6, 7, 9, 10, 11, 16, 17, 18] {
            assert_eq!(labels(t), 2, "label {t}");
        }
        assert_eq!(labels(8), 1);
        assert_eq!(g.layer(8).unwrap().edges().iter().next().unwrap(), &Connection::new(2, 3).unwrap());
        for t in [1, 2, 3, 4, 12, 13, 14, 15] {
            assert_eq!(labels(t), 0);
        }
        assert!(has_cycle(g, PathModel::Strict));
    }

    #[test]
    fn zero_budget_single_arc() {
        let dag = Dag::new(2, &[(1, 2)]).unwrap();
        let out = multicut_dag_to_tfes(&dag, &TerminalPairs::new(vec![(1, 2)]), 0).unwrap();
        // two heavy edges with one path each
        assert_eq!(out.graph.n(), 2 + 4);
        assert_eq!(out.graph.num_edges(), 6);
    }

    #[test]
    fn ordering_rules() {
        assert_eq!(acyclic_ordering(&Dag::new(3, &[]).unwrap()).unwrap(), vec![1, 2, 3]);
        let d = Dag::new(3, &[(3, 1), (2, 1)]).unwrap();
        assert_eq!(acyclic_ordering(&d).unwrap(), vec![3, 1, 2]);
        assert_eq!(Dag::new(2, &[(1, 2), (2, 1)]), Err(ReduceError::NotAcyclic));
    }

    #[test]
    fn preconditions() {
        let d = Dag::new(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(check_multicut_preconditions(&d, &TerminalPairs::new(vec![(1, 3)])));
        let d4 = Dag::new(4, &[(1, 2), (2, 3), (2, 4)]).unwrap();
        assert!(!check_multicut_preconditions(&d4, &TerminalPairs::new(vec![(1, 3), (1, 4)])));
        let into_source = Dag::new(3, &[(3, 1), (1, 2)]).unwrap();
        assert!(!check_multicut_preconditions(&into_source, &TerminalPairs::new(vec![(1, 2)])));
        assert!(multicut_dag_to_tfes(&into_source, &TerminalPairs::new(vec![(1, 2)]), 1).is_err());
    }

    #[test]
    fn multicut_oracle() {
        let d = Dag::new(3, &[(1, 2), (2, 3)]).unwrap();
        let p = TerminalPairs::new(vec![(1, 3)]);
        assert!(multicut_dag_bruteforce(&d, &p, 1).unwrap());
        assert!(!multicut_dag_bruteforce(&d, &p, 0).unwrap());
        let direct = Dag::new(2, &[(1, 2)]).unwrap();
        assert!(!multicut_dag_bruteforce(&direct, &TerminalPairs::new(vec![(1, 2)]), 5).unwrap());
        assert!(multicut_dag_bruteforce(&direct, &TerminalPairs::default(), 0).unwrap());
        assert!(multicut_dag_bruteforce(&Dag::new(16, &[]).unwrap(), &TerminalPairs::default(), 0).is_err());
    }

    #[test]
    fn sat_oracle() {
        assert!(!sat_bruteforce(&cnf(1, &[&[1], &[-1]])).unwrap());
        assert!(sat_bruteforce(&cnf(2, &[&[1, 2]])).unwrap());
        assert!(sat_bruteforce(&cnf(0, &[])).unwrap());
        assert!(sat_bruteforce(&cnf(21, &[])).is_err());
    }

    #[test]
    fn three_layers() {
        let tri = StaticGraph::from_pairs(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let g = static_to_three_layers(&tri);
        assert_eq!((g.num_edges(), g.tau()), (9, 3));
        assert_eq!(solve_branch(&g, 1, ProblemVariant::STFCS).map(|s| s.size()), Some(1));
        assert!(solve_branch(&g, 0, ProblemVariant::STFCS).is_none());
        assert_eq!(static_to_three_layers(&StaticGraph::new(2, []).unwrap()).num_edges(), 0);
    }

    #[test]
    fn random_graphs() {
        assert_eq!(random_temporal_graph(4, 3, 0.0, 1).unwrap().num_edges(), 0);
        assert_eq!(random_temporal_graph(4, 3, 1.0, 1).unwrap().num_edges(), 18);
        assert_eq!(random_temporal_graph(5, 3, 0.4, 9), random_temporal_graph(5, 3, 0.4, 9));
        assert!(random_temporal_graph(5, 3, 1.5, 9).is_err());
        let s = random_simple_temporal_graph(5, 3, 1.0, 2).unwrap();
        assert!(s.is_simple());
        assert_eq!(s.num_edges(), 10);
        let phi = random_cnf(4, 3, 7).unwrap();
        assert!(phi.clauses().iter().all(|c| c.len() == 3));
    }
}
