//! Minimal terminal-connecting sets.
//!
//! A set `S ⊇ T` is *T-connecting* when `G[S]` is connected, and *minimal*
//! when no strict subset of `S` containing `T` is T-connecting.
//!
//! [`enumerate_connecting_supersets`] is the raw branching procedure. Each
//! recursion node holds a connector `C` and an exclusion set `X`. When
//! `G[T ∪ C]` is connected the node reports `T ∪ C`; otherwise it contracts
//! the component `C_u` of `G[T ∪ C]` holding the pivot terminal `u` into `u`,
//! deletes `X`, and asks the induced path enumerator for every path from `u`
//! to the neighborhood of the terminals still outside `C_u`. Each such path
//! `(u, v2, .., vq)` spawns a child with connector `C ∪ {v2, .., vq}` and
//! exclusion set `X ∪ {w ∈ N(C_u) : label(w) < label(v2)}`. The family it
//! reports contains every minimal T-connecting set, possibly together with
//! duplicates and non-minimal sets.
//!
//! [`enumerate_minimal_connecting`] wraps it into an exact enumerator:
//! terminal-terminal edges are contracted first (this is a bijection on the
//! minimal sets), instances with many terminals fall back to subset brute
//! force, and raw reports are filtered for minimality and deduplicated.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rayon::prelude::*;
use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};
use crate::graph::{ContractionMap, Graph};
use crate::paths::{self, InducedPath};
use crate::set::VertexSet;
use crate::sink::{Collect, Sink};

/// How a recursion node builds the graph handed to the path enumerator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum McsMode {
    /// Materialize the contracted graph with `X` removed at every node.
    #[default]
    Rebuild,
    /// Walk the original graph, treating `C_u` as one vertex and skipping `X`.
    Incremental,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct McsStats {
    /// Sets reported, duplicates included.
    pub emitted: u64,
    /// Recursion nodes.
    pub calls: u64,
    /// Search nodes visited by the inner path enumerations.
    pub path_nodes: u64,
    pub completed: bool,
}

impl McsStats {
    fn absorb(&mut self, other: &McsStats) {
        self.emitted += other.emitted;
        self.calls += other.calls;
        self.path_nodes += other.path_nodes;
        self.completed &= other.completed;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectingStrategy {
    /// Answer read off directly: empty, single or already connected terminal set,
    /// or terminals in different components.
    Trivial,
    Branching,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConnectingStats {
    /// Minimal sets reported.
    pub emitted: u64,
    /// Candidates produced before filtering.
    pub raw: u64,
    pub strategy: ConnectingStrategy,
    /// Vertex and terminal counts after contracting terminal-terminal edges.
    pub reduced_n: usize,
    pub reduced_terminals: usize,
    pub mcs: McsStats,
    pub completed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConnectingOptions {
    pub mode: McsMode,
    /// Worker threads for the first level of the branching. `0` and `1` run
    /// on the calling thread and stream results as they appear; more workers
    /// buffer the raw family before filtering, in the same order.
    pub jobs: usize,
}

impl Default for ConnectingOptions {
    fn default() -> Self {
        ConnectingOptions { mode: McsMode::Rebuild, jobs: 1 }
    }
}

/// Contracts every edge with both endpoints in `T` until `T` is independent.
/// Each component of `G[T]` collapses into its lowest-label vertex. Returns the
/// reduced graph, the reduced terminal set and the map back to `g`.
pub fn contract_terminal_edges(g: &Graph, t: &VertexSet) -> Result<(Graph, VertexSet, ContractionMap)> {
    g.check_set(t)?;
    let merges: Vec<(VertexSet, usize)> = g
        .components(t)?
        .into_iter()
        .filter(|block| block.len() > 1)
        .map(|block| {
            let rep = block.first().expect("non-empty component");
            (block, rep)
        })
        .collect();
    let (reduced, map) = g.quotient(&merges);
    let terminals = map.project(t);
    Ok((reduced, terminals, map))
}

/// Whether `s` is a minimal T-connecting set: `T ⊆ S`, `G[S]` connected, and
/// deleting any non-terminal of `S` leaves `T` split over several components.
/// An empty terminal set has no minimal connecting sets.
pub fn is_minimal_connecting(g: &Graph, t: &VertexSet, s: &VertexSet) -> Result<bool> {
    g.check_set(t)?;
    g.check_set(s)?;
    Ok(minimal_within(g, t, s))
}

pub(crate) fn minimal_within(g: &Graph, t: &VertexSet, s: &VertexSet) -> bool {
    let Some(anchor) = t.first() else {
        return false;
    };
    if !t.is_subset(s) || !g.connected_within(s) {
        return false;
    }
    let mut rest = s.clone();
    for v in s.difference(t).iter() {
        rest.remove(v);
        let reach = g.reach_within(&rest, anchor);
        rest.insert(v);
        if t.is_subset(&reach) {
            return false;
        }
    }
    true
}

fn terminals_share_component(g: &Graph, t: &VertexSet) -> bool {
    match t.first() {
        None => true,
        Some(v) => t.is_subset(&g.reach_within(&g.vertices(), v)),
    }
}

struct Mcs<'a, S: ?Sized> {
    g: &'a Graph,
    terminals: &'a VertexSet,
    pivot: usize,
    mode: McsMode,
    stats: McsStats,
    sink: &'a mut S,
}

impl<'a, S: Sink<VertexSet> + ?Sized> Mcs<'a, S> {
    fn new(g: &'a Graph, terminals: &'a VertexSet, mode: McsMode, sink: &'a mut S) -> Self {
        Mcs {
            g,
            terminals,
            pivot: terminals.first().expect("non-empty terminal set"),
            mode,
            stats: McsStats { completed: true, ..McsStats::default() },
            sink,
        }
    }

    fn call(&mut self, c: &VertexSet, x: &VertexSet) -> ControlFlow<()> {
        self.stats.calls += 1;
        let s = self.terminals.union(c);
        if self.g.connected_within(&s) {
            self.stats.emitted += 1;
            return self.sink.accept(&s);
        }
        self.branch(&s, c, x, |this, c2, x2| this.call(&c2, &x2))
    }

    /// Runs the path enumeration of a node whose `T ∪ C` is disconnected and
    /// hands each child `(C', X')` to `next`.
    fn branch<F>(&mut self, s: &VertexSet, c: &VertexSet, x: &VertexSet, mut next: F) -> ControlFlow<()>
    where
        F: FnMut(&mut Self, VertexSet, VertexSet) -> ControlFlow<()>,
    {
        let g = self.g;
        let pivot = self.pivot;
        let cu = g.reach_within(s, pivot);
        let rest = self.terminals.difference(&cu);
        let boundary = g.open_nbhd(&cu);
        debug_assert!(!rest.is_empty());
        debug_assert!(x.is_disjoint(self.terminals), "excluded set meets the terminals");
        debug_assert!(c.is_subset(&cu));
        debug_assert!(boundary.is_disjoint(&rest), "pivot component touches an outside terminal");

        let mut on_path = |this: &mut Self, tail: &[usize]| {
            let v2 = tail[0];
            let mut c2 = c.clone();
            for &v in tail {
                c2.insert(v);
            }
            let mut x2 = x.clone();
            for w in boundary.iter().take_while(|&w| g.label(w) < g.label(v2)) {
                x2.insert(w);
            }
            next(this, c2, x2)
        };

        match self.mode {
            McsMode::Incremental => {
                let mut target = g.open_nbhd(&rest);
                target.difference_with(x);
                let mut tail = Vec::new();
                let mut sink = |p: &InducedPath| {
                    tail.clear();
                    tail.extend_from_slice(&p.seq[1..]);
                    on_path(self, &tail)
                };
                let stats = paths::walk(g, &cu, pivot, &target, x, None, &mut sink);
                self.stats.path_nodes += stats.nodes;
                if stats.completed {
                    ControlFlow::Continue(())
                } else {
                    ControlFlow::Break(())
                }
            }
            McsMode::Rebuild => {
                let (merged, map) = g.contract_set(&cu, pivot).expect("pivot component is connected");
                let kept = map.project(x).complement();
                let (view, to_merged) = merged.induced_subgraph(&kept).expect("same universe");
                let mut from_merged = vec![usize::MAX; merged.n()];
                for (i, &v) in to_merged.iter().enumerate() {
                    from_merged[v] = i;
                }
                let source = from_merged[map.image(pivot)];
                let targets = VertexSet::with_ids(view.n(), rest.iter().map(|v| from_merged[map.image(v)]));
                let mut tail = Vec::new();
                let mut sink = |p: &InducedPath| {
                    tail.clear();
                    tail.extend(p.seq[1..].iter().map(|&v| map.representative(to_merged[v])));
                    on_path(self, &tail)
                };
                let stats = paths::enumerate_induced_paths(&view, source, &targets, None, &mut sink)
                    .expect("contracted pivot is not adjacent to outside terminals");
                self.stats.path_nodes += stats.nodes;
                if stats.completed {
                    ControlFlow::Continue(())
                } else {
                    ControlFlow::Break(())
                }
            }
        }
    }
}

/// Runs the raw branching procedure from the empty connector and streams every
/// set it reports, in original vertex ids. The family contains every minimal
/// T-connecting set but may repeat sets and include non-minimal ones.
///
/// An empty terminal set reports nothing; terminals spread over several
/// components of `g` report nothing.
pub fn enumerate_connecting_supersets<S>(g: &Graph, t: &VertexSet, mode: McsMode, sink: &mut S) -> Result<McsStats>
where
    S: Sink<VertexSet> + ?Sized,
{
    g.check_set(t)?;
    if t.is_empty() || !terminals_share_component(g, t) {
        return Ok(McsStats { completed: true, ..McsStats::default() });
    }
    let mut mcs = Mcs::new(g, t, mode, sink);
    let empty = g.empty_set();
    let _ = mcs.call(&empty, &empty);
    Ok(mcs.stats)
}

/// Same family as [`enumerate_connecting_supersets`], in the same order, with
/// the first-level branches explored on `jobs` worker threads.
pub fn connecting_supersets_parallel(
    g: &Graph,
    t: &VertexSet,
    mode: McsMode,
    jobs: usize,
) -> Result<(Vec<VertexSet>, McsStats)> {
    g.check_set(t)?;
    if t.is_empty() || !terminals_share_component(g, t) {
        return Ok((Vec::new(), McsStats { completed: true, ..McsStats::default() }));
    }
    let empty = g.empty_set();
    let mut root_out = Collect::default();
    let mut root = Mcs::new(g, t, mode, &mut root_out);
    root.stats.calls += 1;
    if g.connected_within(t) {
        root.stats.emitted += 1;
        let stats = root.stats;
        return Ok((vec![t.clone()], stats));
    }
    let mut children = Vec::new();
    let _ = root.branch(t, &empty, &empty, |_, c, x| {
        children.push((c, x));
        ControlFlow::Continue(())
    });
    let mut stats = root.stats;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    let parts: Vec<(Vec<VertexSet>, McsStats)> = pool.install(|| {
        children
            .par_iter()
            .map(|(c, x)| {
                let mut out = Collect::default();
                let mut mcs = Mcs::new(g, t, mode, &mut out);
                let _ = mcs.call(c, x);
                let stats = mcs.stats;
                (out.0, stats)
            })
            .collect()
    });
    let mut sets = Vec::new();
    for (part, part_stats) in parts {
        sets.extend(part);
        stats.absorb(&part_stats);
    }
    Ok((sets, stats))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BruteStats {
    pub emitted: u64,
    /// Candidate subsets tested.
    pub examined: u64,
    pub completed: bool,
}

/// Tests `T ∪ A` for every `A ⊆ V \ T` and streams the minimal ones.
pub fn brute_force_connecting<S>(g: &Graph, t: &VertexSet, sink: &mut S) -> Result<BruteStats>
where
    S: Sink<VertexSet> + ?Sized,
{
    g.check_set(t)?;
    let mut stats = BruteStats { completed: true, ..BruteStats::default() };
    if t.is_empty() {
        return Ok(stats);
    }
    let free: Vec<usize> = t.complement().to_vec();
    let mut s = t.clone();
    loop {
        stats.examined += 1;
        if minimal_within(g, t, &s) {
            stats.emitted += 1;
            if sink.accept(&s).is_break() {
                stats.completed = false;
                return Ok(stats);
            }
        }
        // binary increment over the free vertices
        let Some(i) = free.iter().position(|&v| !s.contains(v)) else {
            return Ok(stats);
        };
        for &v in &free[..i] {
            s.remove(v);
        }
        s.insert(free[i]);
    }
}

/// Streams exactly the minimal T-connecting sets of `g`, each once, in
/// original vertex ids.
///
/// An empty `T` yields nothing and a single terminal yields `{T}`. Terminals in
/// different components yield nothing. Otherwise terminal-terminal edges are
/// contracted; if more than a third of the reduced vertices are terminals the
/// reduced instance is solved by subset brute force, else by the branching
/// procedure followed by a minimality filter and deduplication.
pub fn enumerate_minimal_connecting<S>(
    g: &Graph,
    t: &VertexSet,
    opts: &ConnectingOptions,
    sink: &mut S,
) -> Result<ConnectingStats>
where
    S: Sink<VertexSet> + ?Sized,
{
    g.check_set(t)?;
    let mut stats = ConnectingStats {
        emitted: 0,
        raw: 0,
        strategy: ConnectingStrategy::Trivial,
        reduced_n: g.n(),
        reduced_terminals: t.len(),
        mcs: McsStats { completed: true, ..McsStats::default() },
        completed: true,
    };
    if t.is_empty() || !terminals_share_component(g, t) {
        return Ok(stats);
    }
    let (reduced, rt, map) = contract_terminal_edges(g, t)?;
    stats.reduced_n = reduced.n();
    stats.reduced_terminals = rt.len();
    if rt.len() == 1 {
        stats.raw = 1;
        stats.emitted = 1;
        stats.completed = sink.accept(t).is_continue();
        return Ok(stats);
    }

    if 3 * rt.len() > reduced.n() {
        stats.strategy = ConnectingStrategy::BruteForce;
        let mut expand = |s: &VertexSet| sink.accept(&map.expand(s));
        let brute = brute_force_connecting(&reduced, &rt, &mut expand)?;
        stats.raw = brute.emitted;
        stats.emitted = brute.emitted;
        stats.completed = brute.completed;
        return Ok(stats);
    }

    stats.strategy = ConnectingStrategy::Branching;
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut raw = 0u64;
    let mut emitted = 0u64;
    let mut filter = |s: &VertexSet| {
        raw += 1;
        if minimal_within(&reduced, &rt, s) && !seen.contains(s) {
            seen.insert(s.clone());
            emitted += 1;
            return sink.accept(&map.expand(s));
        }
        ControlFlow::Continue(())
    };
    if opts.jobs > 1 {
        let (sets, mcs) = connecting_supersets_parallel(&reduced, &rt, opts.mode, opts.jobs)?;
        stats.mcs = mcs;
        stats.completed = sets.iter().try_for_each(&mut filter).is_continue();
    } else {
        stats.mcs = enumerate_connecting_supersets(&reduced, &rt, opts.mode, &mut filter)?;
        stats.completed = stats.mcs.completed;
    }
    stats.raw = raw;
    stats.emitted = emitted;
    Ok(stats)
}

/// Upper bound `C(n - t, t - 2) * 3^((n - t) / 3)` on the number of minimal
/// connecting sets for `t` terminals in an `n`-vertex graph, valid for
/// `2 <= t <= n / 3`.
#[derive(Clone, Debug, PartialEq)]
pub struct SetBound {
    /// Natural logarithm of the bound.
    pub ln: f64,
    /// The bound itself when it is an integer that fits in 128 bits.
    pub exact: Option<u128>,
}

pub fn connecting_set_bound(n: usize, t: usize) -> Result<SetBound> {
    if t < 2 || 3 * t > n {
        return Err(Error::Precondition(format!("terminal count {t} outside 2..=n/3 for n = {n}")));
    }
    let rest = (n - t) as u64;
    let ln = ln_binomial(rest, (t - 2) as u64) + rest as f64 / 3.0 * 3f64.ln();
    let exact = rest
        .is_multiple_of(3)
        .then(|| binomial(rest, (t - 2) as u64) * Pow::pow(&BigUint::from(3u32), rest / 3))
        .and_then(|v| u128::try_from(v).ok());
    Ok(SetBound { ln, exact })
}

/// Log of `C(non_terminals, t - 2) * 3^(r / 3)`, the cap on raw reports `S`
/// with `|N[S] \ T| <= r`.
pub fn emission_bound_ln(non_terminals: usize, t: usize, r: usize) -> f64 {
    assert!(t >= 2, "needs at least two terminals");
    ln_binomial(non_terminals as u64, (t - 2) as u64) + r as f64 / 3.0 * 3f64.ln()
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}
