use std::collections::BTreeSet;

use proptest::prelude::*;

use tfes_core::branch::{BranchSolver, ProblemVariant, Solution, Target};
use tfes_core::dp::{dp_solve, dp_table, full_table, nrd, srd, ConnectivityMatrix, Entry, RequiredDeletions};
use tfes_core::exhaustive::{solve_exhaustive_connections, solve_exhaustive_edges};
use tfes_core::graph::{Connection, StaticGraph, TemporalGraph, TimeEdge};
use tfes_core::reach::{has_cycle, shortest_cycle, verify_feedback_edge_set, PathModel};
use tfes_core::reduce::{acyclic_ordering, heavy_time_edge, Dag};

fn model() -> impl Strategy<Value = PathModel> {
    prop_oneof![Just(PathModel::Strict), Just(PathModel::NonStrict)]
}

/// Arbitrary (possibly non-simple) temporal graph.
fn temporal(max_n: u32, max_tau: u32, max_edges: usize) -> impl Strategy<Value = TemporalGraph> {
    (2..=max_n, 1..=max_tau).prop_flat_map(move |(n, tau)| {
        proptest::collection::btree_set((1..=n, 1..=n, 1..=tau), 0..=max_edges).prop_map(move |raw| {
            let edges: BTreeSet<TimeEdge> = raw
                .into_iter()
                .filter(|(a, b, _)| a != b)
                .map(|(a, b, t)| TimeEdge::new(a, b, t).unwrap())
                .collect();
            TemporalGraph::new(n, tau, edges).unwrap()
        })
    })
}

fn simple(max_n: u32, max_tau: u32) -> impl Strategy<Value = TemporalGraph> {
    temporal(max_n, max_tau, 10).prop_map(|g| {
        let mut seen = BTreeSet::new();
        let kept: Vec<TimeEdge> = g.edges().iter().filter(|e| seen.insert(e.conn)).copied().collect();
        TemporalGraph::new(g.n(), g.tau(), kept).unwrap()
    })
}

fn layer_and_matrices(n: u32) -> impl Strategy<Value = (StaticGraph, ConnectivityMatrix, ConnectivityMatrix)> {
    let pairs: Vec<(u32, u32)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    (proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()), any::<u64>(), any::<u64>(), any::<bool>()).prop_map(
        move |(edges, b, a, nested)| {
            let layer = StaticGraph::from_pairs(n, &edges).unwrap();
            let b = ConnectivityMatrix::from_bits(n, b).unwrap();
            let a = ConnectivityMatrix::from_bits(n, if nested { a | b.bits() } else { a }).unwrap();
            (layer, b, a)
        },
    )
}

fn edge_variant(model: PathModel) -> ProblemVariant {
    ProblemVariant {
        target: Target::EdgeSet,
        model,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn layers_partition_edges(g in temporal(6, 5, 20)) {
        let total: usize = (1..=g.tau()).map(|t| g.layer(t).unwrap().len()).sum();
        prop_assert_eq!(total, g.num_edges());
        prop_assert!(g.underlying().len() <= g.num_edges());
        prop_assert_eq!(g.is_simple(), g.underlying().len() == g.num_edges());
        prop_assert_eq!(g.prefix(g.tau()).unwrap(), g.clone());
    }

    #[test]
    fn removal_shrinks(g in temporal(5, 4, 15), mask in any::<u32>()) {
        let chosen: BTreeSet<TimeEdge> = g.edges().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
        let h = g.remove_time_edges(&chosen).unwrap();
        prop_assert_eq!(h.num_edges() + chosen.len(), g.num_edges());
        let conns: BTreeSet<Connection> = chosen.iter().map(|e| e.conn).collect();
        let c = g.remove_connections(&conns);
        prop_assert!(c.edges().iter().all(|e| !conns.contains(&e.conn)));
    }

    #[test]
    fn shortest_cycle_is_a_cycle(g in temporal(6, 5, 18), m in model()) {
        match shortest_cycle(&g, m) {
            Some(c) => {
                prop_assert!(c.is_cycle(m));
                prop_assert!(c.len() >= 3 && c.len() <= g.n() as usize);
                if m == PathModel::Strict {
                    prop_assert!(c.len() <= g.tau() as usize);
                }
            }
            None => prop_assert!(verify_feedback_edge_set(&g, &BTreeSet::new(), m).unwrap()),
        }
    }

    #[test]
    fn strict_cycles_are_nonstrict(g in temporal(6, 4, 18)) {
        if has_cycle(&g, PathModel::Strict) {
            prop_assert!(has_cycle(&g, PathModel::NonStrict));
        }
    }

    #[test]
    fn branch_matches_exhaustive(g in temporal(5, 3, 10), m in model()) {
        let ex = solve_exhaustive_edges(&g, m, None).unwrap().unwrap();
        let br = BranchSolver::new(edge_variant(m)).optimum(&g).unwrap();
        prop_assert_eq!(br.size(), ex.size());
        prop_assert!(br.is_feasible(&g, m));
        let cs = ProblemVariant { target: Target::ConnectionSet, model: m };
        let exc = solve_exhaustive_connections(&g, m, None).unwrap().unwrap();
        prop_assert_eq!(BranchSolver::new(cs).optimum(&g).unwrap().size(), exc.size());
        // the connections of any edge solution form a connection solution
        prop_assert!(exc.size() <= ex.size());
    }

    #[test]
    fn strict_needs_no_more_than_nonstrict(g in temporal(5, 3, 10)) {
        let s = solve_exhaustive_edges(&g, PathModel::Strict, None).unwrap().unwrap();
        let ns = solve_exhaustive_edges(&g, PathModel::NonStrict, None).unwrap().unwrap();
        prop_assert!(s.size() <= ns.size());
    }

    #[test]
    fn search_tree_size_bound(g in temporal(6, 4, 14), m in model(), k in 0usize..4) {
        let outcome = BranchSolver::new(edge_variant(m)).decide(&g, k);
        // every branching cycle has at most n edges
        let l = g.n() as u64;
        let bound: u64 = (0..=k as u32).map(|i| l.pow(i)).sum();
        prop_assert!(outcome.nodes <= bound, "{} nodes > {}", outcome.nodes, bound);
        let exact = solve_exhaustive_edges(&g, m, None).unwrap().unwrap().size();
        prop_assert_eq!(outcome.solution.is_some(), exact <= k);
    }

    #[test]
    fn protected_edges_never_chosen(g in temporal(5, 3, 10), m in model(), pick in any::<prop::sample::Index>()) {
        let conns: Vec<Connection> = g.underlying().edges().iter().copied().collect();
        prop_assume!(!conns.is_empty());
        let pinned = conns[pick.index(conns.len())];
        if let Some(Solution::Edges(es)) = BranchSolver::new(edge_variant(m)).protect([pinned]).optimum(&g) {
            prop_assert!(es.iter().all(|e| e.conn != pinned));
            prop_assert!(verify_feedback_edge_set(&g, &es, m).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_exact_on_simple_graphs(g in simple(5, 4), m in model()) {
        let dp = dp_solve(&g, m).unwrap();
        let ex = solve_exhaustive_edges(&g, m, None).unwrap().unwrap();
        prop_assert_eq!(dp.minimum, ex.size());
        prop_assert_eq!(dp.witness.len(), dp.minimum);
        prop_assert!(verify_feedback_edge_set(&g, &dp.witness, m).unwrap());
    }

    #[test]
    fn dp_never_undercounts(g in temporal(4, 3, 12), m in model()) {
        let dp = dp_solve(&g, m).unwrap();
        let ex = solve_exhaustive_edges(&g, m, None).unwrap().unwrap();
        prop_assert!(dp.minimum >= ex.size());
        prop_assert_eq!(dp.witness.len(), dp.minimum);
        prop_assert!(verify_feedback_edge_set(&g, &dp.witness, m).unwrap());
    }

    #[test]
    fn frontier_matches_full_recurrence(g in temporal(3, 3, 9), m in model()) {
        let full = full_table(&g, m).unwrap();
        let table = dp_table(&g, m).unwrap();
        for a in ConnectivityMatrix::enumerate(g.n()) {
            prop_assert_eq!(table.cost(&a), full[a.bits() as usize]);
        }
    }

    #[test]
    fn relaxing_never_costs_more(g in temporal(4, 3, 12), m in model(), bits in any::<u64>(), at in 0u32..16) {
        let table = dp_table(&g, m).unwrap();
        let n = g.n();
        let a = ConnectivityMatrix::from_bits(n, bits).unwrap();
        let mut relaxed = a;
        relaxed.set(at % n, at / n % n, Entry::Any);
        prop_assert!(table.cost(&relaxed) <= table.cost(&a));
    }

    #[test]
    fn srd_matches_set_builder((layer, b, a) in layer_and_matrices(5)) {
        let n = 5;
        let incompatible = (0..n).any(|i| (0..n).any(|j| b.get(i, j) == Entry::Any && a.get(i, j) == Entry::Zero));
        let got = srd(&layer, &b, &a).unwrap();
        if incompatible {
            prop_assert_eq!(got, RequiredDeletions::Infinite);
        } else {
            // {v_k, v_j} in the layer with a_ij = 0 and (b_ik = ANY or i = k), either orientation
            let mut want = BTreeSet::new();
            for c in layer.edges() {
                for (k, j) in [(c.u() - 1, c.v() - 1), (c.v() - 1, c.u() - 1)] {
                    if (0..n).any(|i| a.get(i, j) == Entry::Zero && (b.get(i, k) == Entry::Any || i == k)) {
                        want.insert(*c);
                    }
                }
            }
            prop_assert_eq!(got, RequiredDeletions::Finite(want));
        }
    }

    #[test]
    fn nrd_cut_is_valid_and_minimal((layer, b, a) in layer_and_matrices(4)) {
        let got = nrd(&layer, &b, &a).unwrap();
        let RequiredDeletions::Finite(cut) = got else {
            prop_assert!(!b.any_subset_of(&a));
            return Ok(());
        };
        prop_assert!(b.any_subset_of(&a));
        let ok = |cut: &BTreeSet<Connection>| {
            let kept: Vec<(u32, u32)> = layer.edges().iter().filter(|c| !cut.contains(c)).map(|c| (c.u() - 1, c.v() - 1)).collect();
            let connected = |x: u32, y: u32, skip: Option<usize>| {
                let mut seen = vec![x];
                let mut i = 0;
                while i < seen.len() {
                    let v = seen[i];
                    for (ei, &(p, q)) in kept.iter().enumerate() {
                        if Some(ei) == skip { continue; }
                        for (from, to) in [(p, q), (q, p)] {
                            if from == v && !seen.contains(&to) { seen.push(to); }
                        }
                    }
                    i += 1;
                }
                seen.contains(&y)
            };
            // x is on a cycle iff some incident kept edge lies on a cycle
            let on_cycle = |x: u32| kept.iter().enumerate().any(|(ei, &(p, q))| (p == x || q == x) && connected(p, q, Some(ei)));
            (0..4).all(|i| (0..4).all(|j| {
                if a.get(i, j) == Entry::Any { return true; }
                (0..4).filter(|&k| k == i || b.get(i, k) == Entry::Any).all(|k| {
                    if k == j { !on_cycle(j) } else { !connected(k, j, None) }
                })
            }))
        };
        prop_assert!(ok(&cut));
        let edges: Vec<Connection> = layer.edges().iter().copied().collect();
        for mask in 0u32..1 << edges.len() {
            if (mask.count_ones() as usize) < cut.len() {
                let smaller: BTreeSet<Connection> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
                prop_assert!(!ok(&smaller));
            }
        }
    }

    #[test]
    fn heavy_edges_are_never_needed(base in simple(4, 6), m in model(), k in 1usize..3) {
        // the gadget realizes 1 -> 2 over labels 2..4
        let h = heavy_time_edge(1, 2, 2, k, base.n() + 1, base.tau().max(4)).unwrap();
        let mut edges: BTreeSet<TimeEdge> = base.edges().clone();
        edges.extend(h.edges.iter().copied());
        let g = TemporalGraph::new(base.n() + h.vertices.len() as u32, base.tau().max(4), edges).unwrap();
        let internal: Vec<Connection> = h.edges.iter().map(|e| e.conn).collect();
        let free = BranchSolver::new(edge_variant(m)).solve(&g, k).solution;
        if let Some(free) = free {
            let pinned = BranchSolver::new(edge_variant(m)).protect(internal).solve(&g, k).solution;
            prop_assert_eq!(pinned.map(|s| s.size()), Some(free.size()));
        }
    }

    #[test]
    fn ordering_respects_arcs(n in 1u32..8, raw in proptest::collection::vec((1u32..8, 1u32..8), 0..12)) {
        // orient every arc from smaller to larger index, then relabel by reversal
        let arcs: Vec<(u32, u32)> = raw.into_iter().filter(|&(a, b)| a != b && a <= n && b <= n).map(|(a, b)| (a.max(b), a.min(b))).collect();
        let dag = Dag::new(n, &arcs).unwrap();
        let pi = acyclic_ordering(&dag).unwrap();
        let mut sorted = pi.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (1..=n).collect::<Vec<_>>());
        for (a, b) in arcs {
            prop_assert!(pi[a as usize - 1] < pi[b as usize - 1]);
        }
    }
}
