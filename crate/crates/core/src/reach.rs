//! Temporal paths and cycles under the strict and non-strict models.
//!
//! The workhorse is a hop-bounded relaxation: round `h` holds, for every
//! vertex, the earliest time at which a walk of at most `h` hops can leave it
//! again. The first round that reaches the target yields a minimum-hop walk,
//! and a minimum-hop temporal walk never repeats a vertex, so it is a path.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{Connection, GraphError, Label, TemporalGraph, TimeEdge, Vertex};

/// Whether consecutive labels must strictly increase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathModel {
    Strict,
    NonStrict,
}

impl PathModel {
    /// Earliest label usable right after traversing an edge labeled `t`.
    #[inline]
    pub(crate) fn next_ready(self, t: Label) -> u32 {
        match self {
            PathModel::Strict => t + 1,
            PathModel::NonStrict => t,
        }
    }
}

impl fmt::Display for PathModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathModel::Strict => f.write_str("strict"),
            PathModel::NonStrict => f.write_str("non-strict"),
        }
    }
}

/// A temporal path or cycle: `vertices[i]` and `vertices[i + 1]` are the
/// endpoints of `steps[i]`, in traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalWalk {
    steps: Vec<TimeEdge>,
    vertices: Vec<Vertex>,
}

impl TemporalWalk {
    pub fn steps(&self) -> &[TimeEdge] {
        &self.steps
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of time-edges.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Checks the walk shape: steps connect consecutive vertices and labels
    /// respect `model`. Vertex distinctness is checked separately.
    pub fn is_temporal(&self, model: PathModel) -> bool {
        if self.vertices.len() != self.steps.len() + 1 {
            return false;
        }
        let linked = self.steps.iter().enumerate().all(|(i, e)| {
            Connection::new(self.vertices[i], self.vertices[i + 1]) == Ok(e.conn)
        });
        let ordered = self.steps.windows(2).all(|w| match model {
            PathModel::Strict => w[0].t < w[1].t,
            PathModel::NonStrict => w[0].t <= w[1].t,
        });
        linked && ordered
    }

    /// Temporal, with all vertices distinct.
    pub fn is_path(&self, model: PathModel) -> bool {
        let distinct: BTreeSet<_> = self.vertices.iter().collect();
        self.is_temporal(model) && distinct.len() == self.vertices.len()
    }

    /// Temporal, length at least three, closed, and otherwise vertex-distinct.
    pub fn is_cycle(&self, model: PathModel) -> bool {
        let k = self.vertices.len();
        if self.steps.len() < 3 || !self.is_temporal(model) || self.vertices[0] != self.vertices[k - 1] {
            return false;
        }
        let distinct: BTreeSet<_> = self.vertices[..k - 1].iter().collect();
        distinct.len() == k - 1
    }
}

const UNREACHED: u32 = u32::MAX;

/// Minimum-hop path search over `edges` (sorted by label) restricted to
/// indices where `alive` holds.
#[allow(clippy::too_many_arguments)]
pub(crate) fn min_hop_path_masked(
    n: u32,
    edges: &[TimeEdge],
    alive: &[bool],
    src: Vertex,
    dst: Vertex,
    earliest_start: Label,
    model: PathModel,
    forbidden: Option<Connection>,
    max_hops: usize,
) -> Option<TemporalWalk> {
    let size = n as usize + 1;
    let first = edges.partition_point(|e| e.t < earliest_start);
    let mut ready = vec![UNREACHED; size];
    ready[src as usize] = earliest_start;
    // preds[h][v]: edge index and tail used to improve v in round h + 1
    let mut preds: Vec<Vec<Option<(usize, Vertex)>>> = Vec::new();

    for _ in 0..max_hops {
        let mut next = ready.clone();
        let mut pred = vec![None; size];
        let mut changed = false;
        for (idx, e) in edges.iter().enumerate().skip(first) {
            if !alive[idx] || Some(e.conn) == forbidden {
                continue;
            }
            for (x, y) in [(e.conn.u(), e.conn.v()), (e.conn.v(), e.conn.u())] {
                let rx = ready[x as usize];
                if rx != UNREACHED && e.t >= rx {
                    let ry = model.next_ready(e.t);
                    if ry < next[y as usize] {
                        next[y as usize] = ry;
                        pred[y as usize] = Some((idx, x));
                        changed = true;
                    }
                }
            }
        }
        preds.push(pred);
        ready = next;
        if ready[dst as usize] != UNREACHED {
            return Some(rebuild(edges, &preds, src, dst));
        }
        if !changed {
            return None;
        }
    }
    None
}

fn rebuild(edges: &[TimeEdge], preds: &[Vec<Option<(usize, Vertex)>>], src: Vertex, dst: Vertex) -> TemporalWalk {
    let mut steps = Vec::new();
    let mut vertices = vec![dst];
    let mut at = dst;
    for round in preds.iter().rev() {
        if let Some((idx, from)) = round[at as usize] {
            steps.push(edges[idx]);
            vertices.push(from);
            at = from;
        }
    }
    debug_assert_eq!(at, src);
    steps.reverse();
    vertices.reverse();
    TemporalWalk { steps, vertices }
}

/// Shortest temporal cycle among the alive edges.
///
/// Every cycle's first edge carries its minimum label, so each alive edge is
/// tried as the first edge in both orientations; the connection of the anchor
/// is forbidden for the return path, which forces length at least three.
/// Ties keep the first anchor in `(label, connection)` order, lower endpoint first.
pub(crate) fn shortest_cycle_masked(
    n: u32,
    edges: &[TimeEdge],
    alive: &[bool],
    model: PathModel,
) -> Option<TemporalWalk> {
    let mut best: Option<TemporalWalk> = None;
    for (idx, anchor) in edges.iter().enumerate() {
        if !alive[idx] {
            continue;
        }
        let (a, b) = (anchor.conn.u(), anchor.conn.v());
        for (v, w) in [(a, b), (b, a)] {
            // a cycle on n vertices has at most n edges; beat the incumbent strictly
            let hop_cap = match &best {
                Some(c) => c.len() - 2,
                None => n as usize - 1,
            };
            if hop_cap < 2 {
                continue;
            }
            let start = model.next_ready(anchor.t);
            if let Some(path) = min_hop_path_masked(n, edges, alive, w, v, start, model, Some(anchor.conn), hop_cap) {
                let mut steps = Vec::with_capacity(path.len() + 1);
                steps.push(*anchor);
                steps.extend_from_slice(&path.steps);
                let mut vertices = Vec::with_capacity(path.vertices.len() + 1);
                vertices.push(v);
                vertices.extend_from_slice(&path.vertices);
                best = Some(TemporalWalk { steps, vertices });
            }
        }
        if best.as_ref().is_some_and(|c| c.len() == 3) {
            break;
        }
    }
    best
}

/// Minimum-hop temporal path from `src` to `dst` whose first label is at
/// least `earliest_start`, avoiding every time-edge on `forbidden`.
pub fn min_hop_path(
    g: &TemporalGraph,
    src: Vertex,
    dst: Vertex,
    earliest_start: Label,
    model: PathModel,
    forbidden: Option<Connection>,
) -> Result<Option<TemporalWalk>, GraphError> {
    g.check_vertex(src)?;
    g.check_vertex(dst)?;
    if src == dst {
        return Err(GraphError::SelfLoop(src));
    }
    let edges: Vec<TimeEdge> = g.edges().iter().copied().collect();
    let alive = vec![true; edges.len()];
    let start = earliest_start.max(1);
    Ok(min_hop_path_masked(
        g.n(),
        &edges,
        &alive,
        src,
        dst,
        start,
        model,
        forbidden,
        g.n() as usize,
    ))
}

/// A temporal cycle with the fewest time-edges, or `None` if there is none.
pub fn shortest_cycle(g: &TemporalGraph, model: PathModel) -> Option<TemporalWalk> {
    let edges: Vec<TimeEdge> = g.edges().iter().copied().collect();
    let alive = vec![true; edges.len()];
    shortest_cycle_masked(g.n(), &edges, &alive, model)
}

pub fn has_cycle(g: &TemporalGraph, model: PathModel) -> bool {
    shortest_cycle(g, model).is_some()
}

/// True iff removing `sol` leaves no temporal cycle.
pub fn verify_feedback_edge_set(
    g: &TemporalGraph,
    sol: &BTreeSet<TimeEdge>,
    model: PathModel,
) -> Result<bool, GraphError> {
    let rest = g.remove_time_edges(sol)?;
    Ok(!has_cycle(&rest, model))
}

/// True iff removing every label of every connection in `sol` leaves no
/// temporal cycle.
pub fn verify_feedback_connection_set(
    g: &TemporalGraph,
    sol: &BTreeSet<Connection>,
    model: PathModel,
) -> Result<bool, GraphError> {
    let under = g.underlying();
    if let Some(c) = sol.iter().find(|c| !under.contains(**c)) {
        return Err(GraphError::NotAConnection(*c));
    }
    Ok(!has_cycle(&g.remove_connections(sol), model))
}

/// Row-major `n x n` reachability in the first `t` layers.
///
/// Entry `(i, j)` for `i != j` is true iff a temporal path leads from vertex
/// `i + 1` to `j + 1`; entry `(i, i)` is true iff a temporal cycle starts and
/// ends at vertex `i + 1`.
pub fn reachability_matrix(g: &TemporalGraph, t: u32, model: PathModel) -> Result<Vec<Vec<bool>>, GraphError> {
    let p = g.prefix(t)?;
    let n = p.n() as usize;
    let edges: Vec<TimeEdge> = p.edges().iter().copied().collect();
    let alive = vec![true; edges.len()];
    let mut out = vec![vec![false; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        let src = i as Vertex + 1;
        let ready = foremost_ready(p.n(), &edges, src, model);
        for (j, cell) in row.iter_mut().enumerate() {
            if j != i {
                *cell = ready[j + 1] != UNREACHED;
            }
        }
        row[i] = edges.iter().filter(|e| e.conn.contains(src)).any(|e| {
            let w = e.conn.other(src).unwrap_or(src);
            min_hop_path_masked(
                p.n(),
                &edges,
                &alive,
                w,
                src,
                model.next_ready(e.t),
                model,
                Some(e.conn),
                n,
            )
            .is_some()
        });
    }
    Ok(out)
}

/// Earliest re-departure time at every vertex reachable from `src`.
fn foremost_ready(n: u32, edges: &[TimeEdge], src: Vertex, model: PathModel) -> Vec<u32> {
    let mut ready = vec![UNREACHED; n as usize + 1];
    ready[src as usize] = 1;
    loop {
        let mut changed = false;
        for e in edges {
            for (x, y) in [(e.conn.u(), e.conn.v()), (e.conn.v(), e.conn.u())] {
                let rx = ready[x as usize];
                if rx != UNREACHED && e.t >= rx && y != src {
                    let ry = model.next_ready(e.t);
                    if ry < ready[y as usize] {
                        ready[y as usize] = ry;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return ready;
        }
    }
}
