//! Connectivity-matrix dynamic program for (S)TFES, exponential only in `n`.
//!
//! A [`ConnectivityMatrix`] constrains which temporal paths may exist: a ZERO
//! at `(i, j)` forbids any temporal path from `v_i` to `v_j` (any temporal
//! cycle through `v_i` on the diagonal); ANY leaves the pair unconstrained.
//! `T(A, t)` is the fewest deletions in the first `t` layers that realize
//! `A`, with `T(A, 0) = 0` and
//!
//! ```text
//! T(A, t) = min_B  T(B, t - 1) + cost(layer t, B, A)
//! ```
//!
//! where the per-layer cost is [`srd`] (strict) or [`nrd`] (non-strict).
//!
//! [`dp_table`] evaluates this recurrence forward without touching all
//! `2^(n^2)` matrices per column. Two facts make that exact:
//!
//! * `T` and both costs are monotone: turning a ZERO of `B` into ANY never
//!   lowers the cost of a transition, and turning a ZERO of `A` into ANY never
//!   raises it. A column therefore only needs its Pareto frontier of
//!   (ANY-set, cost) pairs; every other entry is read off a dominating state.
//! * Given `B` and the set of layer edges that survive, each entry of the
//!   most-constrained reachable `A` can be decided on its own. Enumerating
//!   surviving edge sets instead of target matrices yields every frontier
//!   state, each carrying its deleted edges as the back-pointer payload.
//!
//! [`full_table`] runs the recurrence verbatim over every matrix pair and is
//! kept as an independent reference for small `n`.
//!
//! On graphs with parallel time-edges a pair `{u, v}` used twice forms a
//! closed walk of length two. The matrices cannot tell that walk from a
//! cycle, so results are exact for simple temporal graphs only.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::graph::{Connection, Label, StaticGraph, TemporalGraph, TimeEdge, Vertex};
use crate::reach::PathModel;

/// Largest vertex count whose matrices fit the 64-bit encoding.
pub const MAX_DP_VERTICES: u32 = 8;

/// Largest vertex count accepted by [`full_table`].
pub const MAX_FULL_TABLE_VERTICES: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpError {
    #[error("{n} vertices exceed the dynamic program limit of {max}")]
    TooManyVertices { n: u32, max: u32 },
    #[error("matrix dimension {matrix} does not match {expected} vertices")]
    DimensionMismatch { matrix: u32, expected: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    Any,
}

/// `n x n` grid over {ZERO, ANY}, bit `i * n + j` set iff entry `(i, j)` is ANY.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectivityMatrix {
    n: u32,
    any: u64,
}

impl ConnectivityMatrix {
    pub fn all_zero(n: u32) -> Result<Self, DpError> {
        Self::from_bits(n, 0)
    }

    pub fn all_any(n: u32) -> Result<Self, DpError> {
        Self::from_bits(n, full_mask(n))
    }

    /// Diagonal ZERO, everything else ANY: forbids every temporal cycle and
    /// nothing else.
    pub fn target(n: u32) -> Result<Self, DpError> {
        let mut m = Self::all_any(n)?;
        for i in 0..n {
            m.set(i, i, Entry::Zero);
        }
        Ok(m)
    }

    /// Bits beyond `n * n` are dropped.
    pub fn from_bits(n: u32, any: u64) -> Result<Self, DpError> {
        if n > MAX_DP_VERTICES {
            return Err(DpError::TooManyVertices {
                n,
                max: MAX_DP_VERTICES,
            });
        }
        Ok(ConnectivityMatrix {
            n,
            any: any & full_mask(n),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.any
    }

    /// 0-based indices.
    pub fn get(&self, i: u32, j: u32) -> Entry {
        if self.any >> (i * self.n + j) & 1 == 1 {
            Entry::Any
        } else {
            Entry::Zero
        }
    }

    pub fn is_zero(&self, i: u32, j: u32) -> bool {
        self.get(i, j) == Entry::Zero
    }

    pub fn set(&mut self, i: u32, j: u32, e: Entry) {
        let bit = 1u64 << (i * self.n + j);
        match e {
            Entry::Any => self.any |= bit,
            Entry::Zero => self.any &= !bit,
        }
    }

    /// Columns `k` with entry `(i, k)` ANY, as a vertex bitmask.
    fn row_any(&self, i: u32) -> u32 {
        ((self.any >> (i * self.n)) & ((1u64 << self.n) - 1)) as u32
    }

    /// Every ANY entry of `self` is ANY in `other`.
    pub fn any_subset_of(&self, other: &ConnectivityMatrix) -> bool {
        self.any & !other.any == 0
    }

    /// True iff `reach` (row-major, as from
    /// [`reachability_matrix`](crate::reach::reachability_matrix)) violates
    /// no ZERO entry.
    pub fn admits(&self, reach: &[Vec<bool>]) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| !(self.is_zero(i, j) && reach[i as usize][j as usize])))
    }

    /// All `2^(n^2)` matrices of dimension `n`.
    pub fn enumerate(n: u32) -> impl Iterator<Item = ConnectivityMatrix> {
        let count = if n * n >= 64 { u64::MAX } else { 1u64 << (n * n) };
        (0..count).map(move |any| ConnectivityMatrix { n, any })
    }
}

impl fmt::Debug for ConnectivityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "|")?;
            }
            for j in 0..self.n {
                f.write_str(if self.is_zero(i, j) { "0" } else { "?" })?;
            }
        }
        write!(f, "]")
    }
}

fn full_mask(n: u32) -> u64 {
    let bits = n * n;
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Per-layer deletion requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RequiredDeletions {
    /// `B` already allows a path that `A` forbids.
    Infinite,
    Finite(BTreeSet<Connection>),
}

impl RequiredDeletions {
    pub fn count(&self) -> Option<usize> {
        match self {
            RequiredDeletions::Infinite => None,
            RequiredDeletions::Finite(s) => Some(s.len()),
        }
    }
}

fn check_dims(layer: &StaticGraph, b: &ConnectivityMatrix, a: &ConnectivityMatrix) -> Result<(), DpError> {
    for m in [b, a] {
        if m.n != layer.n() {
            return Err(DpError::DimensionMismatch {
                matrix: m.n,
                expected: layer.n(),
            });
        }
    }
    Ok(())
}

/// Terminal pairs `(k, j)`, 0-based: some `i` has `a_ij = 0` and either
/// `b_ik = ANY` or `i = k`.
fn terminal_pairs(b: &ConnectivityMatrix, a: &ConnectivityMatrix) -> BTreeSet<(u32, u32)> {
    let n = a.n;
    let mut pairs = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if !a.is_zero(i, j) {
                continue;
            }
            for k in 0..n {
                if k == i || b.get(i, k) == Entry::Any {
                    pairs.insert((k, j));
                }
            }
        }
    }
    pairs
}

/// Strict required deletions: every layer edge `{v_k, v_j}` that would extend
/// a possibly existing path `v_i -> v_k` (or start at `v_k = v_i`) into a
/// forbidden `v_i -> v_j`.
pub fn srd(layer: &StaticGraph, b: &ConnectivityMatrix, a: &ConnectivityMatrix) -> Result<RequiredDeletions, DpError> {
    check_dims(layer, b, a)?;
    if !b.any_subset_of(a) {
        return Ok(RequiredDeletions::Infinite);
    }
    let pairs = terminal_pairs(b, a);
    let deleted = layer
        .edges()
        .iter()
        .filter(|c| {
            let (x, y) = (c.u() - 1, c.v() - 1);
            pairs.contains(&(x, y)) || pairs.contains(&(y, x))
        })
        .copied()
        .collect();
    Ok(RequiredDeletions::Finite(deleted))
}

/// Non-strict required deletions: a minimum edge cut of the layer separating
/// every terminal pair `(v_k, v_j)`, `k != j`; a pair `(v_x, v_x)` demands
/// that `v_x` lies on no cycle of the layer after the cut. Found by trying
/// edge subsets in order of increasing size, lexicographically.
pub fn nrd(layer: &StaticGraph, b: &ConnectivityMatrix, a: &ConnectivityMatrix) -> Result<RequiredDeletions, DpError> {
    check_dims(layer, b, a)?;
    if !b.any_subset_of(a) {
        return Ok(RequiredDeletions::Infinite);
    }
    let pairs = terminal_pairs(b, a);
    let edges: Vec<Connection> = layer.edges().iter().copied().collect();
    for size in 0..=edges.len() {
        for cut in itertools::Itertools::combinations(0..edges.len(), size) {
            let kept: Vec<Connection> = (0..edges.len())
                .filter(|i| !cut.contains(i))
                .map(|i| edges[i])
                .collect();
            let view = LayerView::new(layer.n(), kept.iter().map(|c| (c.u() - 1, c.v() - 1)));
            let ok = pairs.iter().all(|&(k, j)| {
                if k == j {
                    view.on_cycle & (1 << j) == 0
                } else {
                    view.comp[j as usize] & (1 << k) == 0
                }
            });
            if ok {
                return Ok(RequiredDeletions::Finite(cut.into_iter().map(|i| edges[i]).collect()));
            }
        }
    }
    unreachable!("cutting every edge separates all pairs")
}

/// Adjacency, components and on-cycle vertices of a small static graph, as
/// vertex bitmasks (0-based).
struct LayerView {
    adj: [u32; MAX_DP_VERTICES as usize],
    comp: [u32; MAX_DP_VERTICES as usize],
    on_cycle: u32,
}

impl LayerView {
    fn new(n: u32, edges: impl Iterator<Item = (u32, u32)>) -> Self {
        let mut adj = [0u32; MAX_DP_VERTICES as usize];
        let list: Vec<(u32, u32)> = edges.collect();
        for &(x, y) in &list {
            adj[x as usize] |= 1 << y;
            adj[y as usize] |= 1 << x;
        }
        let mut comp = [0u32; MAX_DP_VERTICES as usize];
        for (v, slot) in comp.iter_mut().enumerate().take(n as usize) {
            *slot = closure(&adj, 1 << v);
        }
        // x is on a cycle iff some incident edge is not a bridge
        let mut on_cycle = 0u32;
        for &(x, y) in &list {
            if on_cycle & (1 << x) != 0 && on_cycle & (1 << y) != 0 {
                continue;
            }
            let mut cut = adj;
            cut[x as usize] &= !(1 << y);
            cut[y as usize] &= !(1 << x);
            if closure(&cut, 1 << x) & (1 << y) != 0 {
                on_cycle |= (1 << x) | (1 << y);
            }
        }
        LayerView { adj, comp, on_cycle }
    }
}

fn closure(adj: &[u32], seed: u32) -> u32 {
    let mut seen = seed;
    let mut frontier = seed;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen
}

/// Deleted connections per layer, linked back to earlier layers.
#[derive(Debug)]
struct Chain {
    layer: Label,
    deleted: Vec<Connection>,
    parent: Option<Rc<Chain>>,
}

#[derive(Debug, Clone)]
struct DpState {
    matrix: ConnectivityMatrix,
    cost: usize,
    chain: Option<Rc<Chain>>,
}

/// Pareto frontier of one time column.
#[derive(Debug, Clone)]
pub struct DpTable {
    n: u32,
    t: u32,
    states: Vec<DpState>,
}

impl DpTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Time column this table describes.
    pub fn time(&self) -> u32 {
        self.t
    }

    /// Frontier size.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Frontier matrices with their costs.
    pub fn frontier(&self) -> impl Iterator<Item = (ConnectivityMatrix, usize)> + '_ {
        self.states.iter().map(|s| (s.matrix, s.cost))
    }

    fn best_for(&self, a: &ConnectivityMatrix) -> &DpState {
        assert_eq!(a.n, self.n, "matrix dimension must match the graph");
        self.states
            .iter()
            .filter(|s| s.matrix.any_subset_of(a))
            .min_by_key(|s| s.cost)
            .expect("the all-zero matrix is always realizable")
    }

    /// `T(A, t)`.
    pub fn cost(&self, a: &ConnectivityMatrix) -> usize {
        self.best_for(a).cost
    }

    /// Time-edges deleted along an optimal chain for `A`.
    pub fn witness(&self, a: &ConnectivityMatrix) -> BTreeSet<TimeEdge> {
        let mut out = BTreeSet::new();
        let mut link = self.best_for(a).chain.clone();
        while let Some(node) = link {
            out.extend(node.deleted.iter().map(|&conn| TimeEdge { conn, t: node.layer }));
            link = node.parent.clone();
        }
        out
    }
}

/// Forward evaluation of the recurrence, retaining one column at a time.
pub fn dp_table(g: &TemporalGraph, model: PathModel) -> Result<DpTable, DpError> {
    let n = g.n();
    let mut column = vec![DpState {
        // the all-zero matrix dominates every other state at time 0
        matrix: ConnectivityMatrix::all_zero(n)?,
        cost: 0,
        chain: None,
    }];
    for t in 1..=g.tau() {
        let layer: Vec<(u32, u32)> = g.layer_edges(t).map(|c| (c.u() - 1, c.v() - 1)).collect();
        if layer.is_empty() {
            continue;
        }
        column = advance(n, t, &layer, &column, model);
    }
    Ok(DpTable {
        n,
        t: g.tau(),
        states: column,
    })
}

fn advance(n: u32, t: Label, layer: &[(u32, u32)], column: &[DpState], model: PathModel) -> Vec<DpState> {
    let m = layer.len();
    let views: Vec<LayerView> = (0..1u32 << m)
        .map(|kept| {
            LayerView::new(
                n,
                layer.iter().enumerate().filter(|(i, _)| kept >> i & 1 == 1).map(|(_, &e)| e),
            )
        })
        .collect();
    let full = (1u32 << m) - 1;

    // candidate (matrix bits) -> (cost, predecessor index, deleted mask)
    let mut best: HashMap<u64, (usize, usize, u32)> = HashMap::new();
    for (pi, prev) in column.iter().enumerate() {
        for (kept, view) in views.iter().enumerate() {
            let deleted = full & !(kept as u32);
            let cost = prev.cost + deleted.count_ones() as usize;
            let a = most_constrained(n, &prev.matrix, view, model);
            debug_assert!(prev.matrix.any_subset_of(&a));
            let slot = best.entry(a.any).or_insert((usize::MAX, 0, 0));
            if (cost, pi, deleted) < *slot {
                *slot = (cost, pi, deleted);
            }
        }
    }

    let mut cands: Vec<(usize, u64, usize, u32)> = best.into_iter().map(|(any, (c, p, d))| (c, any, p, d)).collect();
    cands.sort_unstable();
    let mut kept_states: Vec<DpState> = Vec::new();
    for (cost, any, pi, deleted) in cands {
        if kept_states.iter().any(|s| s.matrix.any & !any == 0) {
            continue;
        }
        let removed: Vec<Connection> = layer
            .iter()
            .enumerate()
            .filter(|(i, _)| deleted >> i & 1 == 1)
            .map(|(_, &(x, y))| Connection::new(x + 1, y + 1).expect("layer edges are proper pairs"))
            .collect();
        let chain = if removed.is_empty() {
            column[pi].chain.clone()
        } else {
            Some(Rc::new(Chain {
                layer: t,
                deleted: removed,
                parent: column[pi].chain.clone(),
            }))
        };
        kept_states.push(DpState {
            matrix: ConnectivityMatrix { n, any },
            cost,
            chain,
        });
    }
    kept_states
}

/// The matrix with the most ZERO entries reachable from `b` when exactly
/// the edges of `view` survive in the layer.
fn most_constrained(n: u32, b: &ConnectivityMatrix, view: &LayerView, model: PathModel) -> ConnectivityMatrix {
    let mut a = ConnectivityMatrix { n, any: full_mask(n) };
    for i in 0..n {
        let sources = b.row_any(i) | (1 << i);
        for j in 0..n {
            if !b.is_zero(i, j) {
                continue;
            }
            let blocked = match model {
                PathModel::Strict => view.adj[j as usize] & sources == 0,
                PathModel::NonStrict if i == j => {
                    view.comp[j as usize] & sources & !(1 << j) == 0 && view.on_cycle & (1 << j) == 0
                }
                PathModel::NonStrict => view.comp[j as usize] & sources == 0,
            };
            if blocked {
                a.set(i, j, Entry::Zero);
            }
        }
    }
    a
}

/// Optimum and a witness of that size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpSolution {
    pub minimum: usize,
    pub witness: BTreeSet<TimeEdge>,
}

/// `T(A*, tau)` with a deletion set realizing it.
pub fn dp_solve(g: &TemporalGraph, model: PathModel) -> Result<DpSolution, DpError> {
    let table = dp_table(g, model)?;
    let target = ConnectivityMatrix::target(g.n())?;
    Ok(DpSolution {
        minimum: table.cost(&target),
        witness: table.witness(&target),
    })
}

pub fn dp_decide(g: &TemporalGraph, k: usize, model: PathModel) -> Result<bool, DpError> {
    Ok(dp_solve(g, model)?.minimum <= k)
}

/// The recurrence evaluated verbatim: entry `A.bits()` holds `T(A, tau)`.
/// Only for `n <= MAX_FULL_TABLE_VERTICES`.
pub fn full_table(g: &TemporalGraph, model: PathModel) -> Result<Vec<usize>, DpError> {
    let n = g.n();
    if n > MAX_FULL_TABLE_VERTICES {
        return Err(DpError::TooManyVertices {
            n,
            max: MAX_FULL_TABLE_VERTICES,
        });
    }
    let size = 1usize << (n * n);
    let mut table = vec![0usize; size];
    for t in 1..=g.tau() {
        let layer = g.layer(t).expect("t within lifetime");
        let mut next = vec![usize::MAX; size];
        for (ai, slot) in next.iter_mut().enumerate() {
            let a = ConnectivityMatrix { n, any: ai as u64 };
            for (bi, &prev) in table.iter().enumerate() {
                let b = ConnectivityMatrix { n, any: bi as u64 };
                let step = match model {
                    PathModel::Strict => srd(&layer, &b, &a)?,
                    PathModel::NonStrict => nrd(&layer, &b, &a)?,
                };
                if let Some(c) = step.count() {
                    *slot = (*slot).min(prev + c);
                }
            }
        }
        table = next;
    }
    Ok(table)
}

/// Vertex `v` (1-based) as a 0-based matrix index.
pub fn index_of(v: Vertex) -> u32 {
    v - 1
}
