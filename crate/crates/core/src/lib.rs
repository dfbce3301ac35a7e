//! Exact solvers for the temporal feedback edge set and temporal feedback
//! connection set problems, in the strict and non-strict path models.
//!
//! * [`graph`]: temporal graphs, time-edges and connections.
//! * [`reach`]: temporal paths, shortest temporal cycles, verification.
//! * [`branch`]: bounded search tree branching on shortest cycles.
//! * [`dp`]: connectivity-matrix dynamic program for the edge-set problems.
//! * [`exhaustive`]: subset-enumeration oracles.
//! * [`reduce`]: hardness-reduction instance generators.

pub mod branch;
pub mod dp;
pub mod exhaustive;
pub mod graph;
pub mod reach;
pub mod reduce;

pub use branch::{solve_branch, solve_branch_optimum, BranchSolver, ProblemVariant, Solution, Target};
pub use dp::{dp_decide, dp_solve, ConnectivityMatrix};
pub use exhaustive::{solve_exhaustive_connections, solve_exhaustive_edges};
pub use graph::{Connection, GraphError, Label, StaticGraph, TemporalGraph, TimeEdge, Vertex};
pub use reach::{has_cycle, shortest_cycle, PathModel, TemporalWalk};
