//! Canonical labeling by color refinement and individualization.
//!
//! The search tree individualizes a vertex of the first non-singleton cell
//! and refines to an equitable partition. Each leaf is a vertex ordering; the
//! canonical form is the largest relabeled adjacency over all leaves. Leaves
//! that produce the same relabeled graph yield automorphisms, and sibling
//! branches in the same orbit of the pointwise stabilizer of the current
//! prefix are skipped.

use std::fmt;

use super::{bit, to_graph6, Bits, Graph};

/// graph6 string of the canonically relabeled graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let order = canonical_labeling(g);
    CanonicalForm(to_graph6(&g.permuted(&order)))
}

/// Canonical ordering: position `i` holds the original vertex placed at `i`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mut search = Search {
        g,
        best: None,
        first: None,
        automorphisms: Vec::new(),
    };
    let mut cells = vec![g.vertex_mask()];
    refine(g, &mut cells);
    search.explore(cells, &mut Vec::new());
    search.best.expect("non-empty graph has at least one leaf").1
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.m() != h.m() || g.degree_sequence() != h.degree_sequence() {
        return false;
    }
    canonical_form(g) == canonical_form(h)
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    first: Option<(Vec<u64>, Vec<usize>)>,
    /// Each entry maps vertex `v` to `perm[v]`.
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn explore(&mut self, cells: Vec<u64>, prefix: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for v in Bits(cells[target]) {
            if !explored.is_empty() {
                let orbits = self.stabilizer_orbits(prefix);
                let rep = find(&orbits, v);
                if explored.iter().any(|&u| find(&orbits, u) == rep) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(bit(v));
            child.push(cells[target] & !bit(v));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.g, &mut child);
            prefix.push(v);
            self.explore(child, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let key = self.g.permuted(&order).rows().to_vec();
        for known in [&self.first, &self.best].into_iter().flatten() {
            if known.0 == key {
                // known.1[i] and order[i] sit at the same position
                let mut perm = vec![0usize; order.len()];
                for (i, &v) in order.iter().enumerate() {
                    perm[v] = known.1[i];
                }
                if perm.iter().enumerate().any(|(v, &w)| v != w) {
                    self.automorphisms.push(perm);
                }
                return;
            }
        }
        if self.first.is_none() {
            self.first = Some((key.clone(), order.clone()));
        }
        if self.best.as_ref().is_none_or(|(b, _)| key > *b) {
            self.best = Some((key, order));
        }
    }

    /// Union-find parents for the orbits of the group generated by the known
    /// automorphisms that fix every vertex of `prefix`.
    fn stabilizer_orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        for perm in &self.automorphisms {
            if prefix.iter().all(|&p| perm[p] == p) {
                for (v, &w) in perm.iter().enumerate() {
                    union(&mut parent, v, w);
                }
            }
        }
        parent
    }
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

/// Refines an ordered partition to the coarsest equitable refinement. Cells
/// split by neighbor count into each splitter cell, smaller counts first, so
/// the result is invariant under relabeling.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let mut s = 0;
    while s < cells.len() {
        let splitter = cells[s];
        let mut next = Vec::with_capacity(cells.len());
        let mut split_any = false;
        for &cell in cells.iter() {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            let mut groups: Vec<(u32, u64)> = Vec::new();
            for v in Bits(cell) {
                let c = (g.adj(v) & splitter).count_ones();
                match groups.iter_mut().find(|(k, _)| *k == c) {
                    Some((_, m)) => *m |= bit(v),
                    None => groups.push((c, bit(v))),
                }
            }
            if groups.len() > 1 {
                split_any = true;
                groups.sort_unstable_by_key(|&(k, _)| k);
            }
            next.extend(groups.into_iter().map(|(_, m)| m));
        }
        *cells = next;
        // a split may unbalance earlier splitters, so start over
        s = if split_any { 0 } else { s + 1 };
    }
}
