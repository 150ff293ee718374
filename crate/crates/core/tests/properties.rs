use std::collections::BTreeSet;
use std::ops::ControlFlow;

use minconn::bench::{read_csv, to_csv, BenchMode, RunReport};
use minconn::connecting::{
    connecting_supersets_parallel, contract_terminal_edges, enumerate_connecting_supersets,
    enumerate_minimal_connecting, is_minimal_connecting, ConnectingOptions, McsMode,
};
use minconn::dcs::{self, DcsInstance, SolveOptions, Strategy as DcsStrategy};
use minconn::io::{parse_instance, write_instance, Instance};
use minconn::paths::{branch_depth, enumerate_induced_paths, max_leaves, InducedPath};
use minconn::sink::Collect;
use minconn::{oracle, Graph, VertexSet};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn subset(g: &Graph, mask: u64) -> VertexSet {
    VertexSet::with_ids(g.n(), (0..g.n()).filter(|v| mask >> v & 1 == 1))
}

fn graph_and_set(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    (graph(max_n), any::<u64>()).prop_map(|(g, mask)| {
        let s = subset(&g, mask);
        (g, s)
    })
}

fn minimal_sets(g: &Graph, t: &VertexSet, mode: McsMode) -> Vec<Vec<usize>> {
    let mut out = Collect::default();
    enumerate_minimal_connecting(g, t, &ConnectingOptions { mode, jobs: 1 }, &mut out).unwrap();
    out.0.iter().map(VertexSet::to_vec).collect()
}

fn raw_family(g: &Graph, t: &VertexSet, mode: McsMode) -> Vec<VertexSet> {
    let mut out = Collect::default();
    enumerate_connecting_supersets(g, t, mode, &mut out).unwrap();
    out.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn neighborhoods((g, s) in graph_and_set(12)) {
        let closed = g.closed_neighborhood(&s).unwrap();
        let open = g.open_neighborhood(&s).unwrap();
        prop_assert!(open.is_disjoint(&s));
        prop_assert_eq!(open.union(&s), closed.clone());
        for v in open.iter() {
            prop_assert!(g.neighbors(v).intersection_len(&s) > 0);
        }
        for v in closed.complement().iter() {
            prop_assert!(g.neighbors(v).is_disjoint(&s));
        }
    }

    #[test]
    fn components_partition((g, s) in graph_and_set(12)) {
        let parts = g.components(&s).unwrap();
        let mut union = g.empty_set();
        for (i, p) in parts.iter().enumerate() {
            prop_assert!(!p.is_empty());
            prop_assert!(g.is_connected(p).unwrap());
            prop_assert!(p.is_disjoint(&union));
            union.union_with(p);
            for q in &parts[i + 1..] {
                prop_assert!(g.open_neighborhood(p).unwrap().is_disjoint(q));
            }
        }
        prop_assert_eq!(union, s.clone());
        prop_assert_eq!(g.is_connected(&s).unwrap(), parts.len() <= 1);
    }

    #[test]
    fn edge_contraction_keeps_adjacency(g in graph(10), pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let (h, map) = g.contract_edge(u, v).unwrap();
        prop_assert_eq!(h.n(), g.n() - 1);
        prop_assert_eq!(map.image(u), map.image(v));
        for (a, b) in g.edges() {
            let (x, y) = (map.image(a), map.image(b));
            prop_assert!(x == y || h.has_edge(x, y));
        }
        for (x, y) in h.edges() {
            let linked = map.block(x).iter().any(|a| g.neighbors(a).intersection_len(map.block(y)) > 0);
            prop_assert!(linked);
        }
        for w in 1..h.n() {
            prop_assert!(h.label(w - 1) < h.label(w));
        }
    }

    #[test]
    fn path_counts_respect_leaf_bound(g in graph(12), v in 0usize..12, rmask in any::<u64>(), limit in 0usize..12) {
        prop_assume!(v < g.n());
        let near = g.closed_neighborhood(&g.set([v]).unwrap()).unwrap();
        let r = subset(&g, rmask).difference(&near);
        prop_assume!(!r.is_empty());
        let mut out = Collect::default();
        enumerate_induced_paths(&g, v, &r, Some(limit), &mut out).unwrap();
        prop_assert!(num_bigint::BigUint::from(out.0.len()) <= max_leaves(limit as u64));
        for p in &out.0 {
            prop_assert!(p.branch_depth <= limit);
            prop_assert_eq!(branch_depth(&g, &p.seq).unwrap(), p.branch_depth as i64);
        }
    }

    #[test]
    fn paths_match_oracle(g in graph(10), v in 0usize..10, rmask in any::<u64>()) {
        prop_assume!(v < g.n());
        let near = g.closed_neighborhood(&g.set([v]).unwrap()).unwrap();
        let r = subset(&g, rmask).difference(&near);
        prop_assume!(!r.is_empty());
        let mut seqs = Vec::new();
        let mut collect = |p: &InducedPath| { seqs.push(p.seq.clone()); ControlFlow::Continue(()) };
        enumerate_induced_paths(&g, v, &r, None, &mut collect).unwrap();
        let mut sorted = seqs.clone();
        sorted.sort();
        prop_assert_eq!(&seqs, &sorted, "children in ascending label order");
        let found: BTreeSet<_> = seqs.into_iter().collect();
        prop_assert_eq!(found, oracle::induced_paths(&g, v, &r).unwrap());
    }

    #[test]
    fn terminal_contraction_is_a_bijection((g, t) in graph_and_set(10)) {
        prop_assume!(!t.is_empty());
        let (h, ht, map) = contract_terminal_edges(&g, &t).unwrap();
        prop_assert!(ht.iter().all(|x| h.neighbors(x).is_disjoint(&ht)));
        let lifted: BTreeSet<Vec<usize>> = oracle::minimal_connecting(&h, &ht)
            .unwrap()
            .into_iter()
            .map(|s| map.expand(&VertexSet::with_ids(h.n(), s)).to_vec())
            .collect();
        prop_assert_eq!(lifted, oracle::minimal_connecting(&g, &t).unwrap());
    }

    #[test]
    fn minimal_sets_match_oracle((g, t) in graph_and_set(11)) {
        let rebuild = minimal_sets(&g, &t, McsMode::Rebuild);
        let incremental = minimal_sets(&g, &t, McsMode::Incremental);
        prop_assert_eq!(&rebuild, &incremental);
        let found: BTreeSet<Vec<usize>> = rebuild.iter().cloned().collect();
        prop_assert_eq!(found.len(), rebuild.len(), "no repeats");
        for s in &rebuild {
            prop_assert!(oracle::is_minimal_literal(&g, &t, &g.set(s.iter().copied()).unwrap()).unwrap());
        }
        prop_assert_eq!(found, oracle::minimal_connecting(&g, &t).unwrap());
    }

    #[test]
    fn raw_family_covers_minimal_sets((g, t) in graph_and_set(11)) {
        let raw = raw_family(&g, &t, McsMode::Rebuild);
        prop_assert_eq!(&raw, &raw_family(&g, &t, McsMode::Incremental));
        let (par, _) = connecting_supersets_parallel(&g, &t, McsMode::Rebuild, 3).unwrap();
        prop_assert_eq!(&raw, &par);
        for s in &raw {
            prop_assert!(t.is_subset(s));
            prop_assert!(g.is_connected(s).unwrap());
        }
        let raw: BTreeSet<Vec<usize>> = raw.iter().map(VertexSet::to_vec).collect();
        for m in oracle::minimal_connecting(&g, &t).unwrap() {
            prop_assert!(raw.contains(&m));
        }
    }

    #[test]
    fn minimality_characterizations_agree((g, t) in graph_and_set(12), smask in any::<u64>()) {
        let s = subset(&g, smask).union(&t);
        prop_assert_eq!(
            is_minimal_connecting(&g, &t, &s).unwrap(),
            oracle::is_minimal_literal(&g, &t, &s).unwrap()
        );
    }

    #[test]
    fn dcs_witnesses_are_valid(g in graph(10), order in any::<u64>(), a in 1usize..=3, b in 1usize..=3) {
        prop_assume!(g.n() >= a + b && g.is_connected(&g.vertices()).unwrap());
        let mut ids: Vec<usize> = (0..g.n()).collect();
        ids.sort_by_key(|&v| (v as u64).wrapping_mul(order | 1).rotate_left(7));
        let z1 = g.set(ids[..a].iter().copied()).unwrap();
        let z2 = g.set(ids[a..a + b].iter().copied()).unwrap();
        let expected = oracle::two_dcs(&g, &z1, &z2).unwrap();
        let inst = DcsInstance::new(g, z1, z2).unwrap();
        for strategy in [DcsStrategy::EnumerateMinimal, DcsStrategy::SubsetLoop] {
            let out = dcs::solve_with(&inst, &SolveOptions { strategy: Some(strategy), count_all: false });
            prop_assert_eq!(out.witness.is_some(), expected);
            if let Some(w) = &out.witness {
                prop_assert!(dcs::verify_witness(&inst, w));
            }
        }
    }

    #[test]
    fn instance_text_round_trip((g, t) in graph_and_set(12)) {
        let mut inst = Instance::new(g);
        inst.sets.insert("T".into(), t.to_vec());
        inst.meta.push("generator=proptest".into());
        prop_assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn csv_round_trip(
        rows in proptest::collection::vec(
            (
                "[a-z0-9 ,\"/._-]{0,12}",
                0usize..100,
                any::<u64>(),
                proptest::option::of(-1e6f64..1e6),
                proptest::option::of(any::<bool>()),
                0f64..1e5,
                "[a-z: ]{0,10}",
                0usize..4,
            ),
            0..6,
        )
    ) {
        let modes = [BenchMode::Mcs, BenchMode::Paths, BenchMode::Dcs, BenchMode::Brute];
        let reports: Vec<RunReport> = rows
            .into_iter()
            .map(|(instance, n, emitted, bound_ln, within_bound, wall_ms, status, mode)| RunReport {
                instance,
                n,
                m: n / 2,
                terminals: n / 3,
                mode: modes[mode],
                emitted,
                raw: emitted.saturating_add(1),
                bound_ln,
                within_bound,
                wall_ms,
                nodes: emitted / 2,
                status,
            })
            .collect();
        prop_assert_eq!(read_csv(&to_csv(&reports)).unwrap(), reports);
    }
}
