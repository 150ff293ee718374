//! Instance generators: the layered tight family, seeded random graphs and a
//! few named graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

/// Column layout of a layered instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LayerVariant {
    /// `columns` columns of width 3: `3^columns` paths.
    Exact,
    /// The first column widened to 4: `4 * 3^(columns - 1)` paths.
    PlusOne,
    /// An extra width-2 column before the target set: `2 * 3^columns` paths.
    PlusTwo,
}

impl LayerVariant {
    pub fn name(self) -> &'static str {
        match self {
            LayerVariant::Exact => "exact3i",
            LayerVariant::PlusOne => "plus1",
            LayerVariant::PlusTwo => "plus2",
        }
    }
}

impl std::str::FromStr for LayerVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact3i" | "exact" => Ok(LayerVariant::Exact),
            "plus1" => Ok(LayerVariant::PlusOne),
            "plus2" => Ok(LayerVariant::PlusTwo),
            other => Err(Error::Precondition(format!("unknown layered variant {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LayeredSpec {
    /// Number of width-3 columns, at least 1.
    pub columns: usize,
    /// Size of the target set, at least 1.
    pub target_size: usize,
    pub variant: LayerVariant,
}

/// A generated layered instance: the graph, its source `v` and target set `R`.
#[derive(Clone, Debug)]
pub struct Layered {
    pub graph: Graph,
    pub source: usize,
    pub targets: VertexSet,
}

impl Layered {
    /// `{v} ∪ R`.
    pub fn terminals(&self) -> VertexSet {
        let mut t = self.targets.clone();
        t.insert(self.source);
        t
    }
}

/// The tight family for induced path enumeration.
///
/// Vertex 0 is the source `v`. It is joined to every vertex of the first
/// column, each column is joined completely to the next, and the last column
/// is joined to the first target vertex. The targets form a path and come last
/// in label order. Columns are independent sets, so every choice of one vertex
/// per column is an induced path from `v` to `N(R)`.
pub fn layered(spec: LayeredSpec) -> Result<Layered> {
    if spec.columns == 0 || spec.target_size == 0 {
        return Err(Error::Precondition("layered instances need at least one column and one target".into()));
    }
    let mut widths = vec![3; spec.columns];
    match spec.variant {
        LayerVariant::Exact => {}
        LayerVariant::PlusOne => widths[0] = 4,
        LayerVariant::PlusTwo => widths.push(2),
    }
    let mut next = 1;
    let columns: Vec<Vec<usize>> = widths
        .iter()
        .map(|&w| {
            let col = (next..next + w).collect();
            next += w;
            col
        })
        .collect();
    let targets: Vec<usize> = (next..next + spec.target_size).collect();
    let n = next + spec.target_size;

    let mut edges = Vec::new();
    edges.extend(columns[0].iter().map(|&k| (0, k)));
    for pair in columns.windows(2) {
        for &a in &pair[0] {
            edges.extend(pair[1].iter().map(|&b| (a, b)));
        }
    }
    let last = columns.last().expect("at least one column");
    edges.extend(last.iter().map(|&k| (k, targets[0])));
    edges.extend(targets.windows(2).map(|w| (w[0], w[1])));

    let graph = Graph::from_edges(n, edges)?;
    let targets = VertexSet::with_ids(n, targets);
    Ok(Layered { graph, source: 0, targets })
}

/// Each of the `n(n-1)/2` possible edges is present independently with
/// probability `edge_prob`. The same arguments always give the same graph.
pub fn random(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::Precondition(format!("edge probability {edge_prob} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedKind {
    Path,
    Cycle,
    /// Center 0 joined to `n - 1` leaves.
    Star,
    Complete,
}

impl std::str::FromStr for NamedKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(NamedKind::Path),
            "cycle" => Ok(NamedKind::Cycle),
            "star" => Ok(NamedKind::Star),
            "complete" => Ok(NamedKind::Complete),
            other => Err(Error::Precondition(format!("unknown graph kind {other:?}"))),
        }
    }
}

pub fn named(kind: NamedKind, n: usize) -> Result<Graph> {
    let min = if kind == NamedKind::Cycle { 3 } else { 1 };
    if n < min {
        return Err(Error::Precondition(format!("{kind:?} needs at least {min} vertices")));
    }
    match kind {
        NamedKind::Path => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
        NamedKind::Cycle => Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))),
        NamedKind::Star => Graph::from_edges(n, (1..n).map(|i| (0, i))),
        NamedKind::Complete => Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))),
    }
}
