//! Exact `d2` (vertex deletions to bipartite) and `gamma2` (edge deletions to
//! bipartite).
//!
//! `gamma2 = e(G) - maxcut(G)`, with the cut found by branch-and-bound.
//! `d2` uses iterative deepening, branching on the vertices of a shortest odd
//! cycle of the surviving graph.

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Ticker};
use crate::cycles::shortest_odd_cycle_within;
use crate::error::Result;
use crate::graph::{bipartition_within, bit, low_mask, Bipartition, Bits, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletionKind {
    Vertex,
    Edge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Removed {
    Vertices(Vec<usize>),
    Edges(Vec<(usize, usize)>),
}

impl Removed {
    pub fn len(&self) -> usize {
        match self {
            Removed::Vertices(v) => v.len(),
            Removed::Edges(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartizationResult {
    pub kind: DeletionKind,
    pub removed: Removed,
    pub size: usize,
    /// Sides of the residual graph, in original vertex labels. Deleted
    /// vertices belong to neither side.
    pub resulting_partition: Bipartition,
}

impl BipartizationResult {
    /// Checks that deleting `removed` from `g` leaves `resulting_partition`
    /// as a proper 2-coloring.
    pub fn validate(&self, g: &Graph) -> bool {
        let p = self.resulting_partition;
        if p.x & p.y != 0 || self.size != self.removed.len() {
            return false;
        }
        match &self.removed {
            Removed::Vertices(vs) => {
                let gone = vs.iter().fold(0u64, |m, &v| m | bit(v));
                vs.iter().all(|&v| v < g.n())
                    && gone.count_ones() as usize == vs.len()
                    && p.x | p.y == g.vertex_mask() & !gone
                    && g.edges_within(p.x) == 0
                    && g.edges_within(p.y) == 0
            }
            Removed::Edges(es) => match g.with_edges_removed(es) {
                Ok(h) => h.m() + es.len() == g.m() && p.is_valid_for(&h),
                Err(_) => false,
            },
        }
    }
}

/// Maximum cut value and a witness split whose `x` side contains vertex 0.
///
/// Among optimal splits the witness has the lexicographically least
/// characteristic vector `(x_0, ..., x_{n-1})` of the `y` side, i.e. vertices
/// stay with vertex 0 whenever an optimum allows it.
///
/// Suffixes `v..n` are solved from the back, and each solved suffix value
/// bounds the unassigned part of the larger problems.
pub fn max_cut(g: &Graph, budget: Budget) -> Result<(usize, Bipartition)> {
    let n = g.n();
    if n == 0 {
        return Ok((0, Bipartition { x: 0, y: 0 }));
    }
    let mut bb = CutSearch {
        g,
        n,
        suffix: vec![0; n + 1],
        best: 0,
        best_y: 0,
        ticker: budget.ticker(),
    };
    for s in (0..n).rev() {
        let within = g.vertex_mask() & !low_mask(s);
        let d = g.degree_in(s, within);
        let floor = bb.suffix[s + 1] + d.div_ceil(2);
        let start = floor.max(local_search_cut(g, within));
        bb.best = start - usize::from(start > 0);
        bb.best_y = 0;
        bb.branch(s + 1, bit(s), 0, 0)?;
        bb.suffix[s] = bb.best;
    }
    let y = bb.best_y;
    Ok((bb.suffix[0], Bipartition { x: g.vertex_mask() & !y, y }))
}

/// Greedy assignment in index order followed by single-vertex flips,
/// restricted to `within`.
fn local_search_cut(g: &Graph, within: u64) -> usize {
    let mut y = 0u64;
    let mut x = 0u64;
    for v in Bits(within) {
        if (g.adj(v) & x).count_ones() >= (g.adj(v) & y).count_ones() {
            y |= bit(v);
        } else {
            x |= bit(v);
        }
    }
    loop {
        let mut improved = false;
        for v in Bits(within) {
            let (own, other) = if y & bit(v) != 0 { (y, x) } else { (x, y) };
            if (g.adj(v) & own).count_ones() > (g.adj(v) & other).count_ones() {
                y ^= bit(v);
                x ^= bit(v);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    Bits(x).map(|v| (g.adj(v) & y).count_ones() as usize).sum()
}

struct CutSearch<'a> {
    g: &'a Graph,
    n: usize,
    /// `suffix[v]` is the maximum cut of the subgraph induced by `v..n`.
    suffix: Vec<usize>,
    best: usize,
    best_y: u64,
    ticker: Ticker,
}

impl CutSearch<'_> {
    fn branch(&mut self, v: usize, x: u64, y: u64, cut: usize) -> Result<()> {
        self.ticker.tick()?;
        if v == self.n {
            if cut > self.best {
                self.best = cut;
                self.best_y = y;
            }
            return Ok(());
        }
        let rest = self.g.vertex_mask() & !low_mask(v);
        let mut bound = cut + self.suffix[v];
        for u in Bits(rest) {
            let a = (self.g.adj(u) & x).count_ones() as usize;
            let b = (self.g.adj(u) & y).count_ones() as usize;
            bound += a.max(b);
        }
        if bound <= self.best {
            return Ok(());
        }
        let to_x = (self.g.adj(v) & y).count_ones() as usize;
        let to_y = (self.g.adj(v) & x).count_ones() as usize;
        self.branch(v + 1, x | bit(v), y, cut + to_x)?;
        self.branch(v + 1, x, y | bit(v), cut + to_y)
    }
}

/// Minimum edge deletion to bipartite; the removed edges are those inside a
/// side of the [`max_cut`] witness.
pub fn gamma2(g: &Graph, budget: Budget) -> Result<BipartizationResult> {
    let (_, split) = max_cut(g, budget)?;
    let removed: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| (split.x & bit(u) != 0) == (split.x & bit(v) != 0))
        .collect();
    Ok(BipartizationResult {
        kind: DeletionKind::Edge,
        size: removed.len(),
        removed: Removed::Edges(removed),
        resulting_partition: split,
    })
}

/// Minimum vertex deletion to bipartite. Among optimal sets the sorted vertex
/// list is lexicographically least.
pub fn d2(g: &Graph, budget: Budget) -> Result<BipartizationResult> {
    let mut ticker = budget.ticker();
    let all = g.vertex_mask();
    for size in 0..=g.n() {
        let mut found: Option<u64> = None;
        deepen(g, all, size, 0, &mut found, &mut ticker)?;
        if let Some(gone) = found {
            let alive = all & !gone;
            let part = bipartition_within(g, alive).expect("leaf is bipartite");
            let removed: Vec<usize> = Bits(gone).collect();
            return Ok(BipartizationResult {
                kind: DeletionKind::Vertex,
                size: removed.len(),
                removed: Removed::Vertices(removed),
                resulting_partition: part,
            });
        }
    }
    unreachable!("deleting every vertex leaves a bipartite graph")
}

fn lex_less(a: u64, b: u64) -> bool {
    Bits(a).lt(Bits(b))
}

fn deepen(g: &Graph, alive: u64, left: usize, gone: u64, found: &mut Option<u64>, ticker: &mut Ticker) -> Result<()> {
    ticker.tick()?;
    let Some(c) = shortest_odd_cycle_within(g, alive) else {
        if found.is_none_or(|f| lex_less(gone, f)) {
            *found = Some(gone);
        }
        return Ok(());
    };
    if left == 0 {
        return Ok(());
    }
    let mut vs = c.vertices().to_vec();
    vs.sort_unstable();
    for v in vs {
        deepen(g, alive & !bit(v), left - 1, gone | bit(v), found, ticker)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, complete_bipartite, cycle, petersen, t_star};

    fn b() -> Budget {
        Budget::default()
    }

    /// Every split with vertex 0 on side `x`.
    fn naive_cut(g: &Graph) -> usize {
        let n = g.n();
        (0..1u64 << n.saturating_sub(1))
            .map(|bits| {
                let y = bits << 1;
                Bits(g.vertex_mask() & !y).map(|v| (g.adj(v) & y).count_ones() as usize).sum()
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn max_cut_small() {
        assert_eq!(max_cut(&complete(4).unwrap(), b()).unwrap().0, 4);
        assert_eq!(max_cut(&cycle(5).unwrap(), b()).unwrap().0, 4);
        assert_eq!(max_cut(&complete_bipartite(3, 3).unwrap(), b()).unwrap().0, 9);
        assert_eq!(max_cut(&petersen(), b()).unwrap().0, naive_cut(&petersen()));
    }

    #[test]
    fn max_cut_witness_is_lex_least() {
        // C5: optimal splits keep vertex 1 with vertex 0 first
        let (_, split) = max_cut(&cycle(5).unwrap(), b()).unwrap();
        assert_eq!(split.y_vertices(), vec![2, 4]);
    }

    #[test]
    fn gamma2_values() {
        assert_eq!(gamma2(&cycle(5).unwrap(), b()).unwrap().size, 1);
        assert_eq!(gamma2(&complete(5).unwrap(), b()).unwrap().size, 4);
        let t = t_star(4, 12).unwrap();
        let r = gamma2(&t, b()).unwrap();
        assert_eq!(r.size, 2);
        assert!(r.validate(&t));
    }

    #[test]
    fn d2_values() {
        assert_eq!(d2(&complete_bipartite(3, 4).unwrap(), b()).unwrap().size, 0);
        let k5 = d2(&complete(5).unwrap(), b()).unwrap();
        assert_eq!(k5.removed, Removed::Vertices(vec![0, 1, 2]));
        assert_eq!(d2(&cycle(5).unwrap(), b()).unwrap().size, 1);
        let t = t_star(5, 16).unwrap();
        let r = d2(&t, b()).unwrap();
        assert_eq!(r.size, 3);
        assert!(r.validate(&t));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(max_cut(&petersen(), Budget(3)).is_err());
        assert!(d2(&complete(9).unwrap(), Budget(3)).is_err());
    }

    #[test]
    fn validate_rejects_bad_results() {
        let c5 = cycle(5).unwrap();
        let mut r = d2(&c5, b()).unwrap();
        r.removed = Removed::Vertices(vec![]);
        r.size = 0;
        assert!(!r.validate(&c5));
    }

    #[test]
    fn json_shape() {
        let r = d2(&cycle(5).unwrap(), b()).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["kind"], "vertex");
        assert_eq!(j["removed"], serde_json::json!([0]));
    }
}
