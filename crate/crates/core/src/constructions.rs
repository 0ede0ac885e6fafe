//! Extremal constructions and their edge thresholds.
//!
//! Vertex numbering is fixed: bipartite sides first (larger side first),
//! then the remaining clique vertices in block order. graph6 output of every
//! constructor is therefore reproducible byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, N_MAX};

/// `C(n, 2)`.
pub const fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn complete(n: usize) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::build(n, &edges)
}

/// Cycle `0 - 1 - ... - (n-1) - 0`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::build(n, &edges)
}

pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::build(n, &edges)
}

/// Outer 5-cycle `0..5`, spokes `i - (i+5)`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::build(10, &edges).expect("petersen edges are valid")
}

/// `K_{a,b}` with side `0..a` and side `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::build(a + b, &edges)
}

/// Turán graph `T_r(n)`: complete `r`-partite, part sizes `floor(n/r)` or
/// `ceil(n/r)`, larger parts first.
pub fn turan(n: usize, r: usize) -> Result<Graph> {
    if r < 1 || r > n {
        return Err(Error::param(format!("turan needs 1 <= r <= n, got n = {n}, r = {r}")));
    }
    let mut part = Vec::with_capacity(n);
    for p in 0..r {
        let size = n / r + usize::from(p < n % r);
        part.extend(std::iter::repeat_n(p, size));
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| part[u] != part[v])
        .collect();
    Graph::build(n, &edges)
}

/// Adds a clique on `members` to an edge list.
fn push_clique(edges: &mut Vec<(usize, usize)>, members: &[usize]) {
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            edges.push((u, v));
        }
    }
}

/// Complete bipartite block on `0..size`, larger side first.
fn bipartite_block(size: usize) -> Vec<(usize, usize)> {
    let large = size.div_ceil(2);
    (0..large).flat_map(|u| (large..size).map(move |v| (u, v))).collect()
}

/// `T*(r, n)`: `K_{floor((n-r+1)/2), ceil((n-r+1)/2)}` and `K_r` sharing
/// vertex 0, which sits in the larger bipartite side. The clique's other
/// vertices are `n-r+1..n`.
pub fn t_star(r: usize, n: usize) -> Result<Graph> {
    if r < 3 || n < r + 3 {
        return Err(Error::param(format!("t_star needs r >= 3 and n >= r + 3, got r = {r}, n = {n}")));
    }
    if n > N_MAX {
        return Err(Error::TooManyVertices(n));
    }
    let block = n - r + 1;
    let mut edges = bipartite_block(block);
    let clique: Vec<usize> = std::iter::once(0).chain(block..n).collect();
    push_clique(&mut edges, &clique);
    Graph::build(n, &edges)
}

/// `T**(2k+b, n)` as a chain of three blocks: bipartite, `K_{2k}`, `K_b`.
///
/// The bipartite block `K_{floor((n-r+2)/2), ceil((n-r+2)/2)}` occupies
/// `0..n-r+2` with cut vertex `u = 0` in the larger side. `K_{2k}` is `u`
/// plus the next `2k - 1` vertices; its first new vertex `w = n-r+2` is the
/// cut vertex shared with `K_b`, whose remaining `b - 1` vertices come last.
pub fn t_star_star(k: usize, b: usize, n: usize) -> Result<Graph> {
    if k < 2 || b < 3 || b > 2 * k {
        return Err(Error::param(format!("t_star_star needs k >= 2 and 3 <= b <= 2k, got k = {k}, b = {b}")));
    }
    let r = 2 * k + b;
    if n < r {
        return Err(Error::param(format!(
            "t_star_star needs n >= r = {r} so both bipartite sides are non-empty, got n = {n}"
        )));
    }
    if n > N_MAX {
        return Err(Error::TooManyVertices(n));
    }
    let block = n - r + 2;
    let mut edges = bipartite_block(block);
    let big: Vec<usize> = std::iter::once(0).chain(block..block + 2 * k - 1).collect();
    push_clique(&mut edges, &big);
    let w = block;
    let small: Vec<usize> = std::iter::once(w).chain(block + 2 * k - 1..n).collect();
    push_clique(&mut edges, &small);
    Graph::build(n, &edges)
}

/// `floor((n-r+1)^2 / 4) + C(r, 2)`, the edge count of `T*(r, n)`.
pub fn edge_threshold(n: usize, r: usize) -> usize {
    let s = (n + 1).saturating_sub(r);
    s * s / 4 + choose2(r)
}

/// `floor((n-r+2)^2 / 4) + C(2k, 2) + C(b, 2)` with `r = 2k + b`.
pub fn conj_threshold(n: usize, k: usize, b: usize) -> usize {
    let s = (n + 2).saturating_sub(2 * k + b);
    s * s / 4 + choose2(2 * k) + choose2(b)
}

/// `C(floor(r/2), 2) + C(ceil(r/2), 2)`: edges lost by the best split of `K_r`.
pub fn clique_gamma2(r: usize) -> usize {
    choose2(r / 2) + choose2(r.div_ceil(2))
}

/// `2 C(k, 2) + C(floor(b/2), 2) + C(ceil(b/2), 2)`.
pub fn conj_gamma2_bound(k: usize, b: usize) -> usize {
    2 * choose2(k) + clique_gamma2(b)
}

/// A named construction with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ConstructionSpec {
    CompleteBipartite { a: usize, b: usize },
    Turan { n: usize, r: usize },
    TStar { r: usize, n: usize },
    TStarStar { k: usize, b: usize, n: usize },
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            ConstructionSpec::CompleteBipartite { a, b } => complete_bipartite(a, b),
            ConstructionSpec::Turan { n, r } => turan(n, r),
            ConstructionSpec::TStar { r, n } => t_star(r, n),
            ConstructionSpec::TStarStar { k, b, n } => t_star_star(k, b, n),
        }
    }
}
