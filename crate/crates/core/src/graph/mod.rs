//! Finite simple graphs and their exact base invariants.
//!
//! A [`Graph`] is an immutable value: every operation that "modifies" a
//! graph returns a new one, so graphs can be shared freely between the
//! parallel counting workers.

mod bitset;
pub mod coloring;
pub mod matching;

pub use bitset::VertexSet;
pub(crate) use bitset::{mask_iter, words_for, BitIter};
pub use coloring::{chromatic_number, count_proper_colorings, enumerate_proper_colorings, k_colorable};
pub use matching::matching_number;

use crate::error::{Error, Result};

/// Largest pattern handled by the mask-based pattern algorithms.
pub const PATTERN_LIMIT: usize = 64;
/// Largest host accepted for construction and counting.
pub const HOST_LIMIT: usize = 10_000;

pub type Edge = (usize, usize);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edge_list())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices with the given edges. Duplicate pairs collapse.
    pub fn build(n: usize, edges: &[Edge]) -> Result<Graph> {
        if n > HOST_LIMIT {
            return Err(Error::SizeCeiling {
                what: "vertex count",
                size: n,
                limit: HOST_LIMIT,
            });
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![VertexSet::new(n); n],
            edges: 0,
        }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        Ok(())
    }

    // construction-time mutation; never exposed
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.edges += 1;
        }
    }

    pub(crate) fn remove_edge_mut(&mut self, u: usize, v: usize) {
        if self.adj[u].contains(v) {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
            self.edges -= 1;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn isolated_vertices(&self) -> usize {
        (0..self.n).filter(|&v| self.adj[v].is_empty()).count()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edge_list(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edges);
        for u in 0..self.n {
            out.extend(self.adj[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Join `G + H`: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.insert_edge(u, self.n + v);
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edge_list() {
            g.insert_edge(u, v);
        }
        for (u, v) in other.edge_list() {
            g.insert_edge(self.n + u, self.n + v);
        }
        g
    }

    /// `k · G`, the disjoint union of `k` copies.
    pub fn scalar_union(&self, k: usize) -> Graph {
        (0..k).fold(Graph::empty(0), |acc, _| acc.disjoint_union(self))
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> Result<Graph> {
        for &v in keep {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if u == v {
                    return Err(Error::invalid(format!("vertex {u} listed twice")));
                }
                if self.has_edge(u, v) {
                    g.insert_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// `G - S`; surviving vertices keep their relative order.
    pub fn delete_vertices(&self, remove: &[usize]) -> Result<Graph> {
        let mut gone = VertexSet::new(self.n);
        for &v in remove {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            gone.insert(v);
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone.contains(v)).collect();
        self.induced(&keep)
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.insert_edge(u, v);
        Ok(g)
    }

    pub fn add_edges(&self, edges: &[Edge]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.remove_edge_mut(u, v);
        Ok(g)
    }

    pub fn delete_edges(&self, edges: &[Edge]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            if !g.has_edge(u, v) {
                return Err(Error::MissingEdge(u, v));
            }
            g.remove_edge_mut(u, v);
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.insert_edge(u, v);
                }
            }
        }
        g
    }

    /// Image of the graph under `perm`: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length differs from vertex count"));
        }
        let mut seen = VertexSet::new(self.n);
        for &p in perm {
            if p >= self.n || seen.contains(p) {
                return Err(Error::invalid("not a permutation"));
            }
            seen.insert(p);
        }
        let edges: Vec<Edge> = self.edge_list().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::build(self.n, &edges)
    }

    /// Adjacency as one word per vertex, for pattern-side algorithms.
    pub fn masks(&self) -> Result<Vec<u64>> {
        if self.n > PATTERN_LIMIT {
            return Err(Error::SizeCeiling {
                what: "pattern vertex count",
                size: self.n,
                limit: PATTERN_LIMIT,
            });
        }
        Ok(self.adj.iter().map(VertexSet::as_mask).collect())
    }

    pub fn is_stable(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

/// Full mask of the low `n` bits.
#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{elementary, kneser, Elementary};

    #[test]
    fn build_collapses_duplicates_and_rejects_bad_pairs() {
        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(Graph::build(4, &[]).unwrap().edge_count(), 0);
        assert_eq!(Graph::build(4, &[(0, 1), (0, 1), (1, 0)]).unwrap().edge_count(), 1);
        assert_eq!(
            Graph::build(3, &[(0, 3)]).unwrap_err(),
            Error::VertexOutOfRange { vertex: 3, n: 3 }
        );
        assert_eq!(Graph::build(3, &[(1, 1)]).unwrap_err(), Error::Loop(1));
    }

    #[test]
    fn joins_and_unions() {
        let i2 = Graph::empty(2);
        assert_eq!(i2.join(&i2).edge_count(), 4);
        let k3 = Graph::complete(3);
        let two = k3.disjoint_union(&k3);
        assert_eq!((two.n(), two.edge_count()), (6, 6));
        assert_eq!(k3.scalar_union(3).edge_count(), 9);
        let c4 = elementary(Elementary::Cycle(4)).unwrap();
        assert_eq!(Graph::complete(1).join(&c4).edge_count(), 8);
    }

    #[test]
    fn derived_graphs() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.induced(&[0, 1, 2]).unwrap(), Graph::complete(3));
        let p = kneser(5, 2).unwrap();
        for v in 0..10 {
            let g = p.delete_vertices(&[v]).unwrap();
            assert_eq!((g.n(), g.edge_count()), (9, 12));
        }
        assert_eq!(Graph::complete(5).complement(), Graph::empty(5));
        let k4_minus = k4.delete_edge(0, 1).unwrap();
        assert_eq!(k4_minus.edge_count(), 5);
        assert_eq!(k4.edge_count(), 6, "original untouched");
        assert_eq!(k4_minus.delete_edge(0, 1).unwrap_err(), Error::MissingEdge(0, 1));
        assert_eq!(k4_minus.add_edge(1, 0).unwrap(), k4);
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let p = kneser(6, 2).unwrap();
        let sum: usize = (0..p.n()).map(|v| p.degree(v)).sum();
        assert_eq!(sum, 2 * p.edge_count());
        for v in 0..p.n() {
            assert!(!p.has_edge(v, v));
            for u in p.neighbors(v).iter() {
                assert!(p.has_edge(u, v));
            }
        }
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let g = Graph::complete(3);
        assert!(g.relabel(&[0, 0, 1]).is_err());
        assert!(g.relabel(&[0, 1]).is_err());
        assert_eq!(g.relabel(&[2, 0, 1]).unwrap(), g);
    }
}
