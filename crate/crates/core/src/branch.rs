//! Search-tree solver: find a shortest temporal cycle, branch on its
//! time-edges (or connections), recurse with one less unit of budget.
//!
//! Every feedback set must hit the cycle, and deleting edges never creates
//! cycles, so with a cycle length bound `L` the tree has at most `L^k`
//! leaves. Minimality comes from iterative deepening over the budget.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::{Connection, TemporalGraph, TimeEdge};
use crate::reach::{shortest_cycle_masked, PathModel};

/// What a solution deletes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    EdgeSet,
    ConnectionSet,
}

/// One of TFES, STFES, TFCS, STFCS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProblemVariant {
    pub target: Target,
    pub model: PathModel,
}

impl ProblemVariant {
    pub const TFES: ProblemVariant = ProblemVariant {
        target: Target::EdgeSet,
        model: PathModel::NonStrict,
    };
    pub const STFES: ProblemVariant = ProblemVariant {
        target: Target::EdgeSet,
        model: PathModel::Strict,
    };
    pub const TFCS: ProblemVariant = ProblemVariant {
        target: Target::ConnectionSet,
        model: PathModel::NonStrict,
    };
    pub const STFCS: ProblemVariant = ProblemVariant {
        target: Target::ConnectionSet,
        model: PathModel::Strict,
    };

    pub const ALL: [ProblemVariant; 4] = [Self::TFES, Self::STFES, Self::TFCS, Self::STFCS];

    pub fn name(self) -> &'static str {
        match (self.target, self.model) {
            (Target::EdgeSet, PathModel::NonStrict) => "tfes",
            (Target::EdgeSet, PathModel::Strict) => "stfes",
            (Target::ConnectionSet, PathModel::NonStrict) => "tfcs",
            (Target::ConnectionSet, PathModel::Strict) => "stfcs",
        }
    }
}

impl fmt::Display for ProblemVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A feedback edge set or feedback connection set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Edges(BTreeSet<TimeEdge>),
    Connections(BTreeSet<Connection>),
}

impl Solution {
    pub fn empty(target: Target) -> Self {
        match target {
            Target::EdgeSet => Solution::Edges(BTreeSet::new()),
            Target::ConnectionSet => Solution::Connections(BTreeSet::new()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Solution::Edges(s) => s.len(),
            Solution::Connections(s) => s.len(),
        }
    }

    pub fn target(&self) -> Target {
        match self {
            Solution::Edges(_) => Target::EdgeSet,
            Solution::Connections(_) => Target::ConnectionSet,
        }
    }

    /// Checks the solution against the verifier for `model`.
    pub fn is_feasible(&self, g: &TemporalGraph, model: PathModel) -> bool {
        match self {
            Solution::Edges(s) => crate::reach::verify_feedback_edge_set(g, s, model).unwrap_or(false),
            Solution::Connections(s) => crate::reach::verify_feedback_connection_set(g, s, model).unwrap_or(false),
        }
    }
}

/// Result of a budgeted search plus the number of search-tree nodes visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchOutcome {
    pub solution: Option<Solution>,
    pub nodes: u64,
    /// Length of the shortest cycle at the root, if any.
    pub root_cycle_len: Option<usize>,
}

/// Configurable search-tree solver.
///
/// Protected connections are never branched on; used to pin gadget edges.
#[derive(Debug, Clone)]
pub struct BranchSolver {
    variant: ProblemVariant,
    protected: BTreeSet<Connection>,
}

impl BranchSolver {
    pub fn new(variant: ProblemVariant) -> Self {
        BranchSolver {
            variant,
            protected: BTreeSet::new(),
        }
    }

    pub fn protect(mut self, conns: impl IntoIterator<Item = Connection>) -> Self {
        self.protected.extend(conns);
        self
    }

    /// A minimum solution of size at most `k`, if one exists.
    pub fn solve(&self, g: &TemporalGraph, k: usize) -> BranchOutcome {
        let mut search = Search::new(g, self.variant, &self.protected);
        let root_cycle_len = search.root_cycle_len();
        for budget in 0..=k {
            if let Some(items) = search.run(budget) {
                return BranchOutcome {
                    solution: Some(search.to_solution(items)),
                    nodes: search.nodes,
                    root_cycle_len,
                };
            }
        }
        BranchOutcome {
            solution: None,
            nodes: search.nodes,
            root_cycle_len,
        }
    }

    /// Some solution of size at most `k`; a single depth-first pass without
    /// the minimality guarantee of [`BranchSolver::solve`].
    pub fn decide(&self, g: &TemporalGraph, k: usize) -> BranchOutcome {
        let mut search = Search::new(g, self.variant, &self.protected);
        let root_cycle_len = search.root_cycle_len();
        let solution = search.run(k).map(|items| search.to_solution(items));
        BranchOutcome {
            solution,
            nodes: search.nodes,
            root_cycle_len,
        }
    }

    /// Minimum solution. `None` only if protected connections make every
    /// feedback set impossible.
    pub fn optimum(&self, g: &TemporalGraph) -> Option<Solution> {
        let mut search = Search::new(g, self.variant, &self.protected);
        let limit = match self.variant.target {
            Target::EdgeSet => g.num_edges(),
            Target::ConnectionSet => g.underlying().len(),
        };
        (0..=limit).find_map(|budget| search.run(budget).map(|items| search.to_solution(items)))
    }
}

/// Minimum feedback set of size at most `k` under `variant`.
pub fn solve_branch(g: &TemporalGraph, k: usize, variant: ProblemVariant) -> Option<Solution> {
    BranchSolver::new(variant).solve(g, k).solution
}

/// Minimum feedback set under `variant`.
pub fn solve_branch_optimum(g: &TemporalGraph, variant: ProblemVariant) -> Solution {
    BranchSolver::new(variant)
        .optimum(g)
        .expect("deleting everything is always feasible")
}

struct Search<'a> {
    n: u32,
    edges: Vec<TimeEdge>,
    alive: Vec<bool>,
    model: PathModel,
    target: Target,
    protected: &'a BTreeSet<Connection>,
    by_conn: BTreeMap<Connection, Vec<usize>>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(g: &TemporalGraph, variant: ProblemVariant, protected: &'a BTreeSet<Connection>) -> Self {
        let edges: Vec<TimeEdge> = g.edges().iter().copied().collect();
        let mut by_conn: BTreeMap<Connection, Vec<usize>> = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            by_conn.entry(e.conn).or_default().push(i);
        }
        Search {
            n: g.n(),
            alive: vec![true; edges.len()],
            edges,
            model: variant.model,
            target: variant.target,
            protected,
            by_conn,
            nodes: 0,
        }
    }

    fn root_cycle_len(&self) -> Option<usize> {
        shortest_cycle_masked(self.n, &self.edges, &self.alive, self.model).map(|c| c.len())
    }

    /// Depth-first search with `budget`; returns deleted edge indices
    /// (edge sets) or the first edge index of each deleted connection.
    fn run(&mut self, budget: usize) -> Option<Vec<usize>> {
        self.nodes += 1;
        let cycle = match shortest_cycle_masked(self.n, &self.edges, &self.alive, self.model) {
            None => return Some(Vec::new()),
            Some(c) => c,
        };
        if budget == 0 {
            return None;
        }
        match self.target {
            Target::EdgeSet => {
                for step in cycle.steps() {
                    if self.protected.contains(&step.conn) {
                        continue;
                    }
                    let idx = self.index_of(step);
                    self.alive[idx] = false;
                    let found = self.run(budget - 1);
                    self.alive[idx] = true;
                    if let Some(mut items) = found {
                        items.push(idx);
                        return Some(items);
                    }
                }
            }
            Target::ConnectionSet => {
                let mut seen = BTreeSet::new();
                for step in cycle.steps() {
                    // cycles visit each vertex once, so connections never repeat
                    debug_assert!(!seen.contains(&step.conn));
                    if !seen.insert(step.conn) || self.protected.contains(&step.conn) {
                        continue;
                    }
                    let group = self.by_conn[&step.conn].clone();
                    for &i in &group {
                        self.alive[i] = false;
                    }
                    let found = self.run(budget - 1);
                    for &i in &group {
                        self.alive[i] = true;
                    }
                    if let Some(mut items) = found {
                        items.push(group[0]);
                        return Some(items);
                    }
                }
            }
        }
        None
    }

    fn index_of(&self, e: &TimeEdge) -> usize {
        self.edges
            .binary_search(e)
            .expect("cycle edges come from the edge list")
    }

    fn to_solution(&self, items: Vec<usize>) -> Solution {
        match self.target {
            Target::EdgeSet => Solution::Edges(items.into_iter().map(|i| self.edges[i]).collect()),
            Target::ConnectionSet => Solution::Connections(items.into_iter().map(|i| self.edges[i].conn).collect()),
        }
    }
}
