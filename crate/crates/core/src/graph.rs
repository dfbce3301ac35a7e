//! Temporal graphs, their layers, and edge removal.
//!
//! Vertices are the dense range `1..=n`. A [`TimeEdge`] is an undirected
//! vertex pair plus a time-label in `1..=tau`. Several labels may sit on the
//! same pair; [`TemporalGraph::is_simple`] reports whether that happens.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// 1-based vertex index.
pub type Vertex = u32;

/// Time-label; valid labels are `1..=tau`.
pub type Label = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: u32 },
    #[error("time-label {label} out of range 1..={tau}")]
    LabelOutOfRange { label: Label, tau: u32 },
    #[error("time {t} out of range 0..={tau}")]
    TimeOutOfRange { t: u32, tau: u32 },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate time-edge {0}")]
    DuplicateEdge(TimeEdge),
    #[error("time-edge {0} is not in the graph")]
    NotAnEdge(TimeEdge),
    #[error("connection {0} is not in the underlying graph")]
    NotAConnection(Connection),
}

/// Unordered vertex pair stored as `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Connection {
    u: Vertex,
    v: Vertex,
}

impl Connection {
    /// Normalizes the pair. Fails on `a == b`.
    pub fn new(a: Vertex, b: Vertex) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            Ordering::Less => Ok(Connection { u: a, v: b }),
            Ordering::Greater => Ok(Connection { u: b, v: a }),
            Ordering::Equal => Err(GraphError::SelfLoop(a)),
        }
    }

    pub fn u(self) -> Vertex {
        self.u
    }

    pub fn v(self) -> Vertex {
        self.v
    }

    /// The endpoint opposite to `x`, if `x` is an endpoint.
    pub fn other(self, x: Vertex) -> Option<Vertex> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn contains(self, x: Vertex) -> bool {
        x == self.u || x == self.v
    }
}

impl fmt::Display for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// A connection carrying a time-label.
///
/// Ordered by `(t, u, v)`, which is also the canonical serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeEdge {
    pub conn: Connection,
    pub t: Label,
}

impl TimeEdge {
    pub fn new(a: Vertex, b: Vertex, t: Label) -> Result<Self, GraphError> {
        Ok(TimeEdge {
            conn: Connection::new(a, b)?,
            t,
        })
    }
}

impl Ord for TimeEdge {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.t, self.conn).cmp(&(other.t, other.conn))
    }
}

impl PartialOrd for TimeEdge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TimeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.conn, self.t)
    }
}

/// A static undirected graph on `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StaticGraph {
    n: u32,
    edges: BTreeSet<Connection>,
}

impl StaticGraph {
    pub fn new(n: u32, edges: impl IntoIterator<Item = Connection>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for c in edges {
            check_vertex(c.v, n)?;
            set.insert(c);
        }
        Ok(StaticGraph { n, edges: set })
    }

    /// Builds from raw pairs; convenient for tests and generators.
    pub fn from_pairs(n: u32, pairs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let conns = pairs
            .iter()
            .map(|&(a, b)| Connection::new(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, conns)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Connection> {
        &self.edges
    }

    pub fn contains(&self, c: Connection) -> bool {
        self.edges.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// `(V, E, tau)` with `V = 1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TemporalGraph {
    n: u32,
    tau: u32,
    edges: BTreeSet<TimeEdge>,
}

impl TemporalGraph {
    /// Validates ranges and rejects duplicates.
    pub fn new(
        n: u32,
        tau: u32,
        edges: impl IntoIterator<Item = TimeEdge>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for e in edges {
            check_vertex(e.conn.v, n)?;
            if e.t == 0 || e.t > tau {
                return Err(GraphError::LabelOutOfRange { label: e.t, tau });
            }
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e));
            }
        }
        Ok(TemporalGraph { n, tau, edges: set })
    }

    /// Builds from `(a, b, t)` triples.
    pub fn from_triples(n: u32, tau: u32, triples: &[(Vertex, Vertex, Label)]) -> Result<Self, GraphError> {
        let edges = triples
            .iter()
            .map(|&(a, b, t)| TimeEdge::new(a, b, t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, tau, edges)
    }

    pub fn edgeless(n: u32, tau: u32) -> Self {
        TemporalGraph {
            n,
            tau,
            edges: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    /// Time-edges in `(t, u, v)` order.
    pub fn edges(&self) -> &BTreeSet<TimeEdge> {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: &TimeEdge) -> bool {
        self.edges.contains(e)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        check_vertex(v, self.n)
    }

    /// Static graph of all edges labeled `t`.
    pub fn layer(&self, t: Label) -> Result<StaticGraph, GraphError> {
        if t == 0 || t > self.tau {
            return Err(GraphError::LabelOutOfRange {
                label: t,
                tau: self.tau,
            });
        }
        Ok(StaticGraph {
            n: self.n,
            edges: self.layer_edges(t).collect(),
        })
    }

    pub(crate) fn layer_edges(&self, t: Label) -> impl Iterator<Item = Connection> + '_ {
        let lo = TimeEdge {
            conn: Connection { u: 0, v: 0 },
            t,
        };
        self.edges
            .range(lo..)
            .take_while(move |e| e.t == t)
            .map(|e| e.conn)
    }

    /// The first `t` layers, with lifetime `t`.
    pub fn prefix(&self, t: u32) -> Result<TemporalGraph, GraphError> {
        if t > self.tau {
            return Err(GraphError::TimeOutOfRange { t, tau: self.tau });
        }
        Ok(TemporalGraph {
            n: self.n,
            tau: t,
            edges: self.edges.iter().filter(|e| e.t <= t).copied().collect(),
        })
    }

    /// Underlying static graph: labels dropped, multi-edges collapsed.
    pub fn underlying(&self) -> StaticGraph {
        StaticGraph {
            n: self.n,
            edges: self.edges.iter().map(|e| e.conn).collect(),
        }
    }

    /// `G - E'`. Every element of `removal` must be a time-edge of the graph.
    pub fn remove_time_edges<'a>(
        &self,
        removal: impl IntoIterator<Item = &'a TimeEdge>,
    ) -> Result<TemporalGraph, GraphError> {
        let mut edges = self.edges.clone();
        for e in removal {
            if !edges.remove(e) && !self.edges.contains(e) {
                return Err(GraphError::NotAnEdge(*e));
            }
        }
        Ok(TemporalGraph {
            n: self.n,
            tau: self.tau,
            edges,
        })
    }

    /// Drops every label of every listed connection. Absent connections are ignored.
    pub fn remove_connections(&self, removal: &BTreeSet<Connection>) -> TemporalGraph {
        TemporalGraph {
            n: self.n,
            tau: self.tau,
            edges: self
                .edges
                .iter()
                .filter(|e| !removal.contains(&e.conn))
                .copied()
                .collect(),
        }
    }

    /// At most one time-edge per vertex pair.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert(e.conn))
    }
}

fn check_vertex(v: Vertex, n: u32) -> Result<(), GraphError> {
    if v == 0 || v > n {
        Err(GraphError::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}
