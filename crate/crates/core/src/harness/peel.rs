//! Minimum-degree peeling: delete a vertex of degree below `2(n-i)/(5r)` at
//! step `i` until none is left.
//!
//! Thresholds are compared by cross-multiplication, `5r * deg < 2(n-i)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, Bits, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    pub step: usize,
    /// Original label of the deleted vertex.
    pub vertex: usize,
    pub degree: usize,
    /// The threshold is `threshold_num / threshold_den`.
    pub threshold_num: usize,
    pub threshold_den: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelTrace {
    pub n: usize,
    pub r: usize,
    pub deleted: Vec<PeelStep>,
    /// Surviving vertices in original labels; the core is induced on them.
    pub core_vertices: Vec<usize>,
    #[serde(skip)]
    pub core: Graph,
}

pub fn min_degree_peel(g: &Graph, r: usize) -> Result<PeelTrace> {
    if r < 3 {
        return Err(Error::param(format!("peeling needs r >= 3, got {r}")));
    }
    let n = g.n();
    let mut alive = g.vertex_mask();
    let mut deleted = Vec::new();
    loop {
        let i = deleted.len();
        let num = 2 * (n - i);
        let den = 5 * r;
        let pick = Bits(alive)
            .map(|v| (g.degree_in(v, alive), v))
            .min()
            .filter(|&(d, _)| d * den < num);
        let Some((degree, vertex)) = pick else { break };
        deleted.push(PeelStep {
            step: i,
            vertex,
            degree,
            threshold_num: num,
            threshold_den: den,
        });
        alive &= !bit(vertex);
    }
    let (core, map) = g.induced_subgraph(alive);
    Ok(PeelTrace {
        n,
        r,
        deleted,
        core_vertices: map,
        core,
    })
}

impl PeelTrace {
    pub fn deleted_vertices(&self) -> Vec<usize> {
        self.deleted.iter().map(|s| s.vertex).collect()
    }

    /// Replays the trace on `g` and reports the first broken invariant.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        let n = g.n();
        if self.n != n {
            return Err(format!("trace is for n = {}, graph has {n}", self.n));
        }
        let den = 5 * self.r;
        let mut alive = g.vertex_mask();
        for (i, s) in self.deleted.iter().enumerate() {
            if s.step != i || s.vertex >= n || alive & bit(s.vertex) == 0 {
                return Err(format!("step {i}: bad vertex {}", s.vertex));
            }
            let degree = (g.adj(s.vertex) & alive).count_ones() as usize;
            if degree != s.degree {
                return Err(format!("step {i}: recorded degree {} but actual {degree}", s.degree));
            }
            if s.threshold_num != 2 * (n - i) || s.threshold_den != den || degree * den >= 2 * (n - i) {
                return Err(format!("step {i}: degree {degree} is not below 2({n}-{i})/{den}"));
            }
            alive &= !bit(s.vertex);
        }
        let left = n - self.deleted.len();
        for v in Bits(alive) {
            let degree = (g.adj(v) & alive).count_ones() as usize;
            if degree * den < 2 * left {
                return Err(format!("core vertex {v} has degree {degree} below 2({n}-{})/{den}", self.deleted.len()));
            }
        }
        let expected: Vec<usize> = Bits(alive).collect();
        if expected != self.core_vertices || self.core.n() != left {
            return Err("core does not match the surviving vertices".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_bipartite, t_star};

    #[test]
    fn t_star_sheds_its_triangle() {
        let g = t_star(3, 20).unwrap();
        let t = min_degree_peel(&g, 3).unwrap();
        assert_eq!(t.deleted_vertices(), vec![18, 19]);
        assert_eq!(t.deleted[0].degree, 2);
        assert_eq!(t.deleted[1].degree, 1);
        assert_eq!(t.deleted[1].threshold_num, 38);
        assert_eq!(t.core.m(), 81);
        t.check(&g).unwrap();
    }

    #[test]
    fn dense_bipartite_is_untouched() {
        let g = complete_bipartite(10, 10).unwrap();
        let t = min_degree_peel(&g, 3).unwrap();
        assert!(t.deleted.is_empty());
        assert_eq!(t.core, g);
    }

    #[test]
    fn star_loses_three_leaves() {
        // thresholds 20/15, 18/15, 16/15 admit leaf degree 1; 14/15 does not
        let g = complete_bipartite(1, 9).unwrap();
        let t = min_degree_peel(&g, 3).unwrap();
        assert_eq!(t.deleted_vertices(), vec![1, 2, 3]);
        assert_eq!(t.core_vertices, vec![0, 4, 5, 6, 7, 8, 9]);
        assert_eq!(t.core.m(), 6);
        t.check(&g).unwrap();
    }

    #[test]
    fn tampered_trace_is_rejected() {
        let g = complete_bipartite(1, 9).unwrap();
        let mut t = min_degree_peel(&g, 3).unwrap();
        t.deleted.pop();
        assert!(t.check(&g).is_err());
        assert!(min_degree_peel(&g, 2).is_err());
    }
}
