//! Immutable simple graphs on at most 64 vertices.
//!
//! Adjacency is one `u64` row per vertex. Every "mutation" returns a new
//! graph; vertex deletion compacts indices to `0..n'` and hands back the
//! relabeling map.

mod canon;
mod graph6;

pub use canon::{canonical_form, canonical_labeling, is_isomorphic, CanonicalForm};
pub use graph6::{from_graph6, to_graph6};

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Largest supported vertex count (one machine word per adjacency row).
pub const N_MAX: usize = 64;

/// Iterator over the set bits of a `u64`, lowest first.
#[derive(Debug, Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Bitset of the given vertices.
pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > N_MAX {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
            m: 0,
        })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n > N_MAX {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Self::from_rows_unchecked(adj))
    }

    /// Builds a graph from adjacency rows, validating symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Graph> {
        let n = rows.len();
        if n > N_MAX {
            return Err(Error::TooManyVertices(n));
        }
        let valid = low_mask(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & !valid != 0 {
                let vertex = (row & !valid).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            if row & bit(u) != 0 {
                return Err(Error::Loop(u));
            }
            for v in Bits(row) {
                if rows[v] & bit(u) == 0 {
                    return Err(Error::param(format!("asymmetric adjacency between {u} and {v}")));
                }
            }
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Graph {
        debug_assert!(adj.len() <= N_MAX);
        let m = adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        Graph { n: adj.len(), adj, m }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn adj(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Neighbors of `v` inside the vertex set `within`.
    #[inline]
    pub fn degree_in(&self, v: usize, within: u64) -> usize {
        (self.adj[v] & within).count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.adj[v])
    }

    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: u64) -> usize {
        Bits(s).map(|v| self.degree_in(v, s)).sum::<usize>() / 2
    }

    /// Subgraph induced by the vertex set `s`, plus the map from new to old
    /// indices (new vertex `i` is the `i`-th lowest member of `s`).
    pub fn induced_subgraph(&self, s: u64) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = Bits(s & self.vertex_mask()).collect();
        let rows = keep
            .iter()
            .map(|&old| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.adj[old] & bit(w) != 0)
                    .fold(0u64, |row, (j, _)| row | bit(j))
            })
            .collect();
        (Self::from_rows_unchecked(rows), keep)
    }

    /// `G - S`, with the old-to-new relabeling map (`None` for deleted vertices).
    pub fn delete_vertices(&self, s: u64) -> (Graph, Vec<Option<usize>>) {
        let (g, keep) = self.induced_subgraph(self.vertex_mask() & !s);
        let mut map = vec![None; self.n];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = Some(new);
        }
        (g, map)
    }

    pub fn with_edges_removed(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut rows = self.adj.clone();
        for &(u, v) in edges {
            self.check_pair(u, v)?;
            rows[u] &= !bit(v);
            rows[v] &= !bit(u);
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    pub fn with_edges_added(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut rows = self.adj.clone();
        for &(u, v) in edges {
            self.check_pair(u, v)?;
            rows[u] |= bit(v);
            rows[v] |= bit(u);
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    /// Appends one vertex adjacent to `neighbors`.
    pub fn with_vertex(&self, neighbors: u64) -> Result<Graph> {
        if self.n + 1 > N_MAX {
            return Err(Error::TooManyVertices(self.n + 1));
        }
        if neighbors & !self.vertex_mask() != 0 {
            let vertex = (neighbors & !self.vertex_mask()).trailing_zeros() as usize;
            return Err(Error::VertexOutOfRange { vertex, n: self.n });
        }
        let new = self.n;
        let mut rows = self.adj.clone();
        for v in Bits(neighbors) {
            rows[v] |= bit(new);
        }
        rows.push(neighbors);
        Ok(Self::from_rows_unchecked(rows))
    }

    /// Relabels so that new vertex `i` is old vertex `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        debug_assert_eq!(order.len(), self.n);
        let mut pos = vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let rows = order
            .iter()
            .map(|&old| Bits(self.adj[old]).fold(0u64, |r, w| r | bit(pos[w])))
            .collect();
        Self::from_rows_unchecked(rows)
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let rows = (0..self.n).map(|v| all & !self.adj[v] & !bit(v)).collect();
        Self::from_rows_unchecked(rows)
    }

    /// Vertices reachable from `start` using only vertices of `within`.
    pub fn reach_within(&self, start: usize, within: u64) -> u64 {
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v] & within;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Connected components as vertex bitsets, ordered by lowest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            let c = self.reach_within(v, self.vertex_mask());
            out.push(c);
            left &= !c;
        }
        out
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
}

/// A proper 2-coloring of the whole vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Bipartition {
    pub x: u64,
    pub y: u64,
}

impl Bipartition {
    pub fn x_vertices(&self) -> Vec<usize> {
        Bits(self.x).collect()
    }

    pub fn y_vertices(&self) -> Vec<usize> {
        Bits(self.y).collect()
    }

    /// Checks disjointness, coverage and that no edge stays inside a side.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.x & self.y == 0
            && self.x | self.y == g.vertex_mask()
            && g.edges_within(self.x) == 0
            && g.edges_within(self.y) == 0
    }
}

/// 2-coloring of `g`, or `None` if `g` has an odd cycle. In each component
/// the lowest-index vertex goes to `X`.
pub fn bipartition(g: &Graph) -> Option<Bipartition> {
    bipartition_within(g, g.vertex_mask())
}

/// Same as [`bipartition`] restricted to the induced subgraph on `alive`;
/// the sides only contain vertices of `alive`.
pub fn bipartition_within(g: &Graph, alive: u64) -> Option<Bipartition> {
    let mut side = [0u64; 2];
    let mut left = alive;
    let mut queue = VecDeque::new();
    while left != 0 {
        let root = left.trailing_zeros() as usize;
        left &= !bit(root);
        side[0] |= bit(root);
        queue.push_back((root, 0usize));
        while let Some((v, s)) = queue.pop_front() {
            let nb = g.adj(v) & alive;
            if nb & side[s] != 0 {
                return None;
            }
            for w in Bits(nb & left) {
                left &= !bit(w);
                side[1 - s] |= bit(w);
                queue.push_back((w, 1 - s));
            }
        }
    }
    Some(Bipartition {
        x: side[0],
        y: side[1],
    })
}
