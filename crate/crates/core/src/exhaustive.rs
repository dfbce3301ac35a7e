//! Brute-force oracles: try every subset in order of increasing size.
//!
//! These are test infrastructure. Both entry points refuse instances with
//! more than [`ENUMERATION_LIMIT`] candidate items unless the guard is
//! explicitly lifted.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::branch::Solution;
use crate::graph::{Connection, TemporalGraph, TimeEdge};
use crate::reach::{shortest_cycle_masked, PathModel};

pub const ENUMERATION_LIMIT: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExhaustiveError {
    #[error("{items} candidates exceed the enumeration limit of {limit}")]
    TooLarge { items: usize, limit: usize },
}

/// Subset-enumeration oracle.
#[derive(Debug, Clone, Copy)]
pub struct ExhaustiveSolver {
    pub model: PathModel,
    /// Stop after this cardinality and report `None`.
    pub cap: Option<usize>,
    /// Lift the [`ENUMERATION_LIMIT`] guard.
    pub unguarded: bool,
}

impl ExhaustiveSolver {
    pub fn new(model: PathModel) -> Self {
        ExhaustiveSolver {
            model,
            cap: None,
            unguarded: false,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = Some(cap);
        self
    }

    pub fn unguarded(mut self) -> Self {
        self.unguarded = true;
        self
    }

    fn check(&self, items: usize) -> Result<(), ExhaustiveError> {
        if !self.unguarded && items > ENUMERATION_LIMIT {
            return Err(ExhaustiveError::TooLarge {
                items,
                limit: ENUMERATION_LIMIT,
            });
        }
        Ok(())
    }

    /// Minimum feedback edge set, first in lexicographic subset order.
    pub fn edges(&self, g: &TemporalGraph) -> Result<Option<Solution>, ExhaustiveError> {
        let edges: Vec<TimeEdge> = g.edges().iter().copied().collect();
        self.check(edges.len())?;
        let groups: Vec<Vec<usize>> = (0..edges.len()).map(|i| vec![i]).collect();
        Ok(self
            .first_feasible(g.n(), &edges, &groups)
            .map(|chosen| Solution::Edges(chosen.into_iter().map(|i| edges[i]).collect())))
    }

    /// Minimum feedback connection set over the underlying edges.
    pub fn connections(&self, g: &TemporalGraph) -> Result<Option<Solution>, ExhaustiveError> {
        let edges: Vec<TimeEdge> = g.edges().iter().copied().collect();
        let conns: Vec<Connection> = g.underlying().edges().iter().copied().collect();
        self.check(conns.len())?;
        let groups: Vec<Vec<usize>> = conns
            .iter()
            .map(|c| (0..edges.len()).filter(|&i| edges[i].conn == *c).collect())
            .collect();
        Ok(self
            .first_feasible(g.n(), &edges, &groups)
            .map(|chosen| Solution::Connections(chosen.into_iter().map(|i| conns[i]).collect::<BTreeSet<_>>())))
    }

    /// Smallest set of group indices whose removal kills every cycle.
    fn first_feasible(&self, n: u32, edges: &[TimeEdge], groups: &[Vec<usize>]) -> Option<Vec<usize>> {
        let max = self.cap.unwrap_or(groups.len()).min(groups.len());
        let mut alive = vec![true; edges.len()];
        for size in 0..=max {
            for chosen in (0..groups.len()).combinations(size) {
                for &gi in &chosen {
                    for &e in &groups[gi] {
                        alive[e] = false;
                    }
                }
                let acyclic = shortest_cycle_masked(n, edges, &alive, self.model).is_none();
                alive.iter_mut().for_each(|a| *a = true);
                if acyclic {
                    return Some(chosen);
                }
            }
        }
        None
    }
}

/// Minimum feedback edge set; `None` if it exceeds `cap`.
pub fn solve_exhaustive_edges(
    g: &TemporalGraph,
    model: PathModel,
    cap: Option<usize>,
) -> Result<Option<Solution>, ExhaustiveError> {
    ExhaustiveSolver { cap, ..ExhaustiveSolver::new(model) }.edges(g)
}

/// Minimum feedback connection set; `None` if it exceeds `cap`.
pub fn solve_exhaustive_connections(
    g: &TemporalGraph,
    model: PathModel,
    cap: Option<usize>,
) -> Result<Option<Solution>, ExhaustiveError> {
    ExhaustiveSolver { cap, ..ExhaustiveSolver::new(model) }.connections(g)
}
