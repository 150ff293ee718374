//! Induced paths from a source vertex to the neighborhood of a target set.
//!
//! The enumerator is a backtracking search. From a subpath `(v1, .., vi)`
//! whose last vertex is not yet adjacent to the target set `R`, the next
//! vertex is chosen among `N(vi) \ N[{v1, .., v(i-1)}]`; a subpath that
//! reaches `N(R)` is reported and not extended. Every child of a search node
//! is a distinct vertex, so no path is reported twice.
//!
//! The number of search leaves whose branch depth is at most `t` is bounded
//! by [`max_leaves`]`(t)`, the largest product of positive integers summing
//! to at most `t`.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;
use crate::sink::Sink;

/// A reported path together with its branch depth,
/// `|N[{v1, .., v(q-1)}]| - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InducedPath {
    pub seq: Vec<usize>,
    pub branch_depth: usize,
}

/// Outcome of one enumeration call.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PathStats {
    /// Paths handed to the sink.
    pub paths: u64,
    /// Search nodes visited, leaves included.
    pub nodes: u64,
    /// False when the sink stopped the enumeration early.
    pub completed: bool,
}

/// Maximum leaf count of a rooted tree whose root-to-leaf child counts sum to
/// at most `t`: 1 for `t <= 1`, otherwise `3^i`, `4 * 3^(i-1)` or `2 * 3^i` for
/// `t = 3i`, `3i + 1`, `3i + 2`.
pub fn max_leaves(t: u64) -> BigUint {
    let three = BigUint::from(3u32);
    if t <= 1 {
        return BigUint::one();
    }
    let i = t / 3;
    match t % 3 {
        0 => Pow::pow(&three, i),
        1 => BigUint::from(4u32) * Pow::pow(&three, i - 1),
        _ => BigUint::from(2u32) * Pow::pow(&three, i),
    }
}

/// `|N[{v1, .., v(q-1)}]| - 1` for a path `seq` of `g`. A single vertex gives
/// `-1`, the value of the formula on the empty prefix.
pub fn branch_depth(g: &Graph, seq: &[usize]) -> Result<i64> {
    if seq.is_empty() {
        return Err(Error::NotAPath("empty sequence".into()));
    }
    for &v in seq {
        g.check_vertex(v)?;
    }
    if let Some(w) = seq.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        return Err(Error::NotAPath(format!("{} and {} are not adjacent", w[0], w[1])));
    }
    let prefix = VertexSet::with_ids(g.n(), seq[..seq.len() - 1].iter().copied());
    Ok(g.closed_nbhd(&prefix).len() as i64 - 1)
}

/// Streams every induced path `(v1, .., vq)` with `vq` in `N(R)`, no earlier
/// vertex in `N[R]`, and branch depth at most `t_limit` (unbounded when
/// `None`). Children are explored in ascending label order.
///
/// Requires `R` non-empty and disjoint from `N[v1]`.
pub fn enumerate_induced_paths<S>(
    g: &Graph,
    v1: usize,
    r: &VertexSet,
    t_limit: Option<usize>,
    sink: &mut S,
) -> Result<PathStats>
where
    S: Sink<InducedPath> + ?Sized,
{
    g.check_vertex(v1)?;
    g.check_set(r)?;
    if r.is_empty() {
        return Err(Error::Precondition("target set is empty".into()));
    }
    if r.contains(v1) || g.neighbors(v1).intersection_len(r) > 0 {
        return Err(Error::Precondition(format!("target set meets the closed neighborhood of source {v1}")));
    }
    let source = VertexSet::with_ids(g.n(), [v1]);
    let target = g.open_nbhd(r);
    Ok(walk(g, &source, v1, &target, &g.empty_set(), t_limit, sink))
}

/// Enumerates induced paths leaving the connected set `source`, treated as
/// if it were contracted into the single vertex `rep`. Vertices in `blocked`
/// are never entered. A path is reported once its last vertex lies in
/// `target`. Reported sequences start with `rep`; reported branch depths are
/// measured in the contracted graph.
pub(crate) fn walk<S>(
    g: &Graph,
    source: &VertexSet,
    rep: usize,
    target: &VertexSet,
    blocked: &VertexSet,
    t_limit: Option<usize>,
    sink: &mut S,
) -> PathStats
where
    S: Sink<InducedPath> + ?Sized,
{
    debug_assert!(source.is_disjoint(target));
    let mut w = Walker {
        g,
        target,
        blocked,
        offset: source.len(),
        t_limit,
        path: InducedPath { seq: vec![rep], branch_depth: 0 },
        stats: PathStats { completed: true, ..PathStats::default() },
        sink,
    };
    w.stats.nodes += 1;
    let mut closed = g.closed_nbhd(source);
    closed.difference_with(blocked);
    if !w.within_limit(&closed) {
        return w.stats;
    }
    let mut first = g.open_nbhd(source);
    first.difference_with(blocked);
    for v in &first {
        if w.visit(&closed, v).is_break() {
            w.stats.completed = false;
            break;
        }
    }
    w.stats
}

struct Walker<'a, S: ?Sized> {
    g: &'a Graph,
    target: &'a VertexSet,
    blocked: &'a VertexSet,
    /// Size of the source set; branch depth is `|closed| - offset`.
    offset: usize,
    t_limit: Option<usize>,
    path: InducedPath,
    stats: PathStats,
    sink: &'a mut S,
}

impl<S: Sink<InducedPath> + ?Sized> Walker<'_, S> {
    fn within_limit(&self, closed: &VertexSet) -> bool {
        match self.t_limit {
            Some(t) => closed.len() - self.offset <= t,
            None => true,
        }
    }

    /// `prev_closed` is the closed neighborhood of the path before `v`.
    fn visit(&mut self, prev_closed: &VertexSet, v: usize) -> ControlFlow<()> {
        self.stats.nodes += 1;
        self.path.seq.push(v);
        let flow = if self.target.contains(v) {
            self.path.branch_depth = prev_closed.len() - self.offset;
            self.stats.paths += 1;
            self.sink.progress(self.stats.nodes);
            self.sink.accept(&self.path)
        } else {
            self.descend(prev_closed, v)
        };
        self.path.seq.pop();
        flow
    }

    fn descend(&mut self, prev_closed: &VertexSet, v: usize) -> ControlFlow<()> {
        let nb = self.g.neighbors(v);
        let mut closed = prev_closed.clone();
        closed.union_with(nb);
        closed.insert(v);
        closed.difference_with(self.blocked);
        if !self.within_limit(&closed) {
            return ControlFlow::Continue(());
        }
        let mut next = nb.difference(prev_closed);
        next.difference_with(self.blocked);
        for w in &next {
            self.visit(&closed, w)?;
        }
        ControlFlow::Continue(())
    }
}
