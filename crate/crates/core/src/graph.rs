//! Undirected simple graphs with bitset adjacency.
//!
//! Vertices are dense ids `0..n`. Every vertex also carries a label that
//! fixes the total order used by the enumerators. A freshly built graph labels
//! vertex `v` with `v + 1`; graphs derived by taking induced subgraphs or by
//! contraction keep the labels of the surviving vertices, so labels always
//! increase with the id and "ascending label" and "ascending id" coincide.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Vec<usize>,
    edges: usize,
}

/// Records which original vertices were merged into each vertex of a
/// contracted graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    /// Block of original vertices behind each new vertex.
    blocks: Vec<VertexSet>,
    /// Original id that survived as each new vertex.
    reps: Vec<usize>,
    /// New vertex holding each original vertex.
    image: Vec<usize>,
}

impl ContractionMap {
    /// The identity map on `n` vertices.
    pub fn identity(n: usize) -> Self {
        ContractionMap {
            blocks: (0..n).map(|v| VertexSet::with_ids(n, [v])).collect(),
            reps: (0..n).collect(),
            image: (0..n).collect(),
        }
    }

    pub fn original_len(&self) -> usize {
        self.image.len()
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Original vertices merged into `v`.
    pub fn block(&self, v: usize) -> &VertexSet {
        &self.blocks[v]
    }

    /// The original vertex that survived as `v`.
    pub fn representative(&self, v: usize) -> usize {
        self.reps[v]
    }

    /// The contracted vertex that absorbed original vertex `orig`.
    pub fn image(&self, orig: usize) -> usize {
        self.image[orig]
    }

    /// Maps a set of contracted vertices back to the union of their blocks.
    pub fn expand(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.original_len());
        for v in s {
            out.union_with(&self.blocks[v]);
        }
        out
    }

    /// Image of a set of original vertices.
    pub fn project(&self, s: &VertexSet) -> VertexSet {
        VertexSet::with_ids(self.len(), s.iter().map(|v| self.image[v]))
    }

    /// The map of `self` followed by `next`, where `next` contracts the graph
    /// `self` produced.
    pub fn then(&self, next: &ContractionMap) -> ContractionMap {
        let blocks: Vec<VertexSet> = (0..next.len()).map(|v| self.expand(next.block(v))).collect();
        let reps = (0..next.len()).map(|v| self.reps[next.representative(v)]).collect();
        let image = self.image.iter().map(|&mid| next.image(mid)).collect();
        ContractionMap { blocks, reps, image }
    }
}

impl Graph {
    /// A graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![VertexSet::new(n); n], labels: (1..=n).collect(), edges: 0 }
    }

    /// Builds a graph from 0-based edge pairs. Self-loops, duplicate edges and
    /// out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Err(Error::DuplicateEdge(u, v));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edges += 1;
        Ok(())
    }

    fn from_parts(adj: Vec<VertexSet>, labels: Vec<usize>) -> Self {
        let degree_sum: usize = adj.iter().map(VertexSet::len).sum();
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        Graph { adj, labels, edges: degree_sum / 2 }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.adj[u].iter().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n())
    }

    /// A vertex set over this graph, validating ids.
    pub fn set<I: IntoIterator<Item = usize>>(&self, ids: I) -> Result<VertexSet> {
        VertexSet::try_with_ids(self.n(), ids)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() == self.n() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch { expected: self.n(), found: s.universe() })
        }
    }

    /// `N[S]`: vertices in `s` or adjacent to a vertex of `s`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        Ok(self.closed_nbhd(s))
    }

    /// `N(S) = N[S] \ S`.
    pub fn open_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        Ok(self.open_nbhd(s))
    }

    pub(crate) fn closed_nbhd(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.clone();
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out
    }

    pub(crate) fn open_nbhd(&self, s: &VertexSet) -> VertexSet {
        let mut out = self.closed_nbhd(s);
        out.difference_with(s);
        out
    }

    /// `G[s]`, re-indexed densely in ascending id order. The second value maps
    /// each new id to its id in `self`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(s)?;
        let keep = s.to_vec();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| VertexSet::with_ids(keep.len(), self.adj[v].iter().filter(|&w| s.contains(w)).map(|w| new_id[w])))
            .collect();
        let labels = keep.iter().map(|&v| self.labels[v]).collect();
        Ok((Graph::from_parts(adj, labels), keep))
    }

    /// Vertices of `s` reachable from `start` inside `G[s]`.
    pub(crate) fn reach_within(&self, s: &VertexSet, start: usize) -> VertexSet {
        let mut seen = VertexSet::new(self.n());
        if !s.contains(start) {
            return seen;
        }
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in &self.adj[v] {
                if s.contains(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub(crate) fn connected_within(&self, s: &VertexSet) -> bool {
        match s.first() {
            None => true,
            Some(v) => self.reach_within(s, v).len() == s.len(),
        }
    }

    /// Whether `G[s]` is connected. Sets of at most one vertex count as
    /// connected.
    pub fn is_connected(&self, s: &VertexSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(self.connected_within(s))
    }

    /// Connected components of `G[s]`, ordered by their smallest label.
    pub fn components(&self, s: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(s)?;
        let mut rest = s.clone();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let block = self.reach_within(&rest, v);
            rest.difference_with(&block);
            out.push(block);
        }
        Ok(out)
    }

    /// Contracts edge `uv` into `v`: `u` disappears and `v` adopts its
    /// neighbors.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<(Graph, ContractionMap)> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        Ok(self.quotient(&[(VertexSet::with_ids(self.n(), [u, v]), v)]))
    }

    /// Merges the connected set `s` into `rep`. In the result the open
    /// neighborhood of `rep` is exactly `N(s)`.
    pub fn contract_set(&self, s: &VertexSet, rep: usize) -> Result<(Graph, ContractionMap)> {
        self.check_set(s)?;
        self.check_vertex(rep)?;
        if !s.contains(rep) {
            return Err(Error::Precondition(format!("representative {rep} not in the contracted set")));
        }
        if !self.connected_within(s) {
            return Err(Error::Disconnected);
        }
        Ok(self.quotient(&[(s.clone(), rep)]))
    }

    /// Merges each `(block, rep)` into `rep`. Blocks must be pairwise
    /// disjoint and connected; vertices outside every block stay as they are.
    pub(crate) fn quotient(&self, merges: &[(VertexSet, usize)]) -> (Graph, ContractionMap) {
        let n = self.n();
        let mut owner: Vec<usize> = (0..n).collect();
        for (block, rep) in merges {
            debug_assert!(block.contains(*rep));
            for v in block {
                owner[v] = *rep;
            }
        }
        let reps: Vec<usize> = (0..n).filter(|&v| owner[v] == v).collect();
        let mut new_id = vec![usize::MAX; n];
        for (i, &r) in reps.iter().enumerate() {
            new_id[r] = i;
        }
        let image: Vec<usize> = (0..n).map(|v| new_id[owner[v]]).collect();
        let k = reps.len();
        let mut blocks = vec![VertexSet::new(n); k];
        for v in 0..n {
            blocks[image[v]].insert(v);
        }
        let adj = blocks
            .iter()
            .enumerate()
            .map(|(i, block)| {
                let mut nb = VertexSet::new(k);
                for v in block {
                    for w in &self.adj[v] {
                        if image[w] != i {
                            nb.insert(image[w]);
                        }
                    }
                }
                nb
            })
            .collect();
        let labels = reps.iter().map(|&r| self.labels[r]).collect();
        (Graph::from_parts(adj, labels), ContractionMap { blocks, reps, image })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn set(g: &Graph, ids: &[usize]) -> VertexSet {
        g.set(ids.iter().copied()).unwrap()
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::from_edges(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(1, 0)));
        assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn closed_neighborhood_examples() {
        let p3 = path(3);
        assert_eq!(p3.closed_neighborhood(&set(&p3, &[0])).unwrap().to_vec(), vec![0, 1]);
        assert!(p3.closed_neighborhood(&p3.empty_set()).unwrap().is_empty());
        let k3 = complete(3);
        assert_eq!(k3.closed_neighborhood(&set(&k3, &[0])).unwrap().to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn open_neighborhood_examples() {
        let p3 = path(3);
        assert_eq!(p3.open_neighborhood(&set(&p3, &[1])).unwrap().to_vec(), vec![0, 2]);
        assert!(p3.open_neighborhood(&p3.vertices()).unwrap().is_empty());
        let c4 = cycle(4);
        assert_eq!(c4.open_neighborhood(&set(&c4, &[0])).unwrap().to_vec(), vec![1, 3]);
    }

    #[test]
    fn neighborhood_rejects_foreign_sets() {
        let g = path(3);
        let foreign = VertexSet::new(5);
        assert_eq!(g.closed_neighborhood(&foreign), Err(Error::UniverseMismatch { expected: 3, found: 5 }));
    }

    #[test]
    fn induced_subgraph_examples() {
        let c4 = cycle(4);
        let (p, map) = c4.induced_subgraph(&set(&c4, &[0, 1, 2])).unwrap();
        assert_eq!(p, path(3));
        assert_eq!(map, vec![0, 1, 2]);
        let (e, _) = c4.induced_subgraph(&c4.empty_set()).unwrap();
        assert_eq!(e.n(), 0);
        let k4 = complete(4);
        let (pair, map) = k4.induced_subgraph(&set(&k4, &[1, 3])).unwrap();
        assert_eq!(pair.edge_count(), 1);
        assert_eq!((pair.label(0), pair.label(1)), (2, 4));
        assert_eq!(map, vec![1, 3]);
    }

    #[test]
    fn connectivity_examples() {
        let c4 = cycle(4);
        assert!(!c4.is_connected(&set(&c4, &[0, 2])).unwrap());
        assert!(c4.is_connected(&set(&c4, &[3])).unwrap());
        assert!(c4.is_connected(&c4.empty_set()).unwrap());
        let p4 = path(4);
        assert!(p4.is_connected(&p4.vertices()).unwrap());
    }

    #[test]
    fn components_examples() {
        let p4 = path(4);
        let comps = p4.components(&set(&p4, &[0, 2])).unwrap();
        assert_eq!(comps.iter().map(VertexSet::to_vec).collect::<Vec<_>>(), vec![vec![0], vec![2]]);
        assert_eq!(p4.components(&p4.vertices()).unwrap().len(), 1);
        assert!(p4.components(&p4.empty_set()).unwrap().is_empty());
    }

    #[test]
    fn contract_edge_examples() {
        // a-b-c, contract ab into b
        let (g, map) = path(3).contract_edge(0, 1).unwrap();
        assert_eq!(g, Graph { labels: vec![2, 3], ..path(2) });
        assert_eq!(map.block(0).to_vec(), vec![0, 1]);
        assert_eq!(map.representative(0), 1);

        let (g, _) = complete(3).contract_edge(2, 0).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 1));

        // star center 0 with leaves 1,2,3; contract 0-1 into 1
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let (g, map) = star.contract_edge(0, 1).unwrap();
        let x = map.image(1);
        assert_eq!(g.degree(x), 2);
        assert_eq!(g.edge_count(), 2);

        assert_eq!(path(3).contract_edge(0, 2), Err(Error::NotAnEdge(0, 2)));
    }

    #[test]
    fn contract_set_examples() {
        let p4 = path(4);
        let (g, map) = p4.contract_set(&set(&p4, &[1, 2]), 1).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(map.block(1).to_vec(), vec![1, 2]);

        let (same, _) = p4.contract_set(&set(&p4, &[2]), 2).unwrap();
        assert_eq!(same, p4);

        let c5 = cycle(5);
        let s = set(&c5, &[0, 1, 2]);
        let (g, map) = c5.contract_set(&s, 1).unwrap();
        let rep = map.image(1);
        let expected = c5.open_neighborhood(&s).unwrap();
        assert_eq!(map.expand(g.neighbors(rep)), expected);
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);

        assert_eq!(p4.contract_set(&set(&p4, &[0, 2]), 0), Err(Error::Disconnected));
        assert!(matches!(p4.contract_set(&set(&p4, &[0, 1]), 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn contraction_maps_compose() {
        let p4 = path(4);
        let (g1, m1) = p4.contract_edge(0, 1).unwrap();
        let (g2, m2) = g1.contract_edge(m1.image(2), m1.image(1)).unwrap();
        let m = m1.then(&m2);
        assert_eq!(g2.n(), 2);
        assert_eq!(m.block(m.image(0)).to_vec(), vec![0, 1, 2]);
        assert_eq!(m.representative(m.image(0)), 1);
        assert_eq!(m.expand(&VertexSet::with_ids(2, [1])).to_vec(), vec![3]);
    }
}
