//! Per-instance predicates for the long-odd-cycle theorem and its stability
//! version. Both only guarantee their conclusions for very large `n`; on
//! small graphs they are measuring instruments.

use serde::{Deserialize, Serialize};

use crate::bipartization::{d2, gamma2};
use crate::budget::Budget;
use crate::constructions::{clique_gamma2, edge_threshold, t_star};
use crate::cycles::{is_c2kplus1_free, shortest_r_admissible, Cycle};
use crate::error::{Error, Result};
use crate::graph::{is_isomorphic, Graph};

pub(crate) fn check_kr(k: usize, r: usize) -> Result<()> {
    if k < 2 || r < 3 || r > 2 * k {
        return Err(Error::param(format!("need k >= 2 and 3 <= r <= 2k, got k = {k}, r = {r}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum MainOutcome {
    HypothesisUnmet { reason: String },
    ConclusionHolds,
    Violation { witness: Cycle },
}

/// Edge count at least `edge_threshold(n, r)` and no `C_{2k+1}` imply no odd
/// cycle longer than `r`. A violation carries a shortest odd cycle longer
/// than `r`.
pub fn check_main_theorem_instance(g: &Graph, k: usize, r: usize, budget: Budget) -> Result<MainOutcome> {
    check_kr(k, r)?;
    let need = edge_threshold(g.n(), r);
    if g.m() < need {
        return Ok(MainOutcome::HypothesisUnmet {
            reason: format!("{} edges, threshold {need}", g.m()),
        });
    }
    if !is_c2kplus1_free(g, k, budget)? {
        return Ok(MainOutcome::HypothesisUnmet {
            reason: format!("contains a cycle of length {}", 2 * k + 1),
        });
    }
    Ok(match shortest_r_admissible(g, r, budget)? {
        Some(witness) => MainOutcome::Violation { witness },
        None => MainOutcome::ConclusionHolds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub edges: usize,
    pub edge_threshold: usize,
    pub c2kplus1_free: bool,
    pub hypothesis_met: bool,
    pub d2: usize,
    pub d2_bound: usize,
    pub gamma2: usize,
    pub gamma2_bound: usize,
    pub d2_within: bool,
    pub gamma2_within: bool,
    pub d2_equal: bool,
    pub gamma2_equal: bool,
    /// `None` when `T*(r, n)` is undefined for this `n`.
    pub isomorphic_to_t_star: Option<bool>,
}

impl StabilityReport {
    /// Both equalities hold exactly when `G` is `T*(r, n)`.
    pub fn equality_characterized(&self) -> bool {
        (self.d2_equal && self.gamma2_equal) == self.isomorphic_to_t_star.unwrap_or(false)
    }

    /// Whether the stability statement is contradicted by this instance.
    pub fn is_violation(&self) -> bool {
        self.hypothesis_met && !(self.d2_within && self.gamma2_within && self.equality_characterized())
    }
}

pub fn check_stability_instance(g: &Graph, k: usize, r: usize, budget: Budget) -> Result<StabilityReport> {
    check_kr(k, r)?;
    let n = g.n();
    let threshold = edge_threshold(n, r);
    let free = is_c2kplus1_free(g, k, budget)?;
    let d = d2(g, budget)?.size;
    let e = gamma2(g, budget)?.size;
    let d2_bound = r - 2;
    let gamma2_bound = clique_gamma2(r);
    let iso = match t_star(r, n) {
        Ok(t) => Some(is_isomorphic(g, &t)),
        Err(_) => None,
    };
    Ok(StabilityReport {
        n,
        k,
        r,
        edges: g.m(),
        edge_threshold: threshold,
        c2kplus1_free: free,
        hypothesis_met: free && g.m() >= threshold,
        d2: d,
        d2_bound,
        gamma2: e,
        gamma2_bound,
        d2_within: d <= d2_bound,
        gamma2_within: e <= gamma2_bound,
        d2_equal: d == d2_bound,
        gamma2_equal: e == gamma2_bound,
        isomorphic_to_t_star: iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, complete_bipartite};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn main_theorem_examples() {
        let t = t_star(3, 10).unwrap();
        assert_eq!(check_main_theorem_instance(&t, 2, 3, b()).unwrap(), MainOutcome::ConclusionHolds);
        let k55 = complete_bipartite(5, 5).unwrap();
        assert_eq!(check_main_theorem_instance(&k55, 2, 3, b()).unwrap(), MainOutcome::ConclusionHolds);
        let k6 = complete(6).unwrap();
        assert!(matches!(
            check_main_theorem_instance(&k6, 2, 3, b()).unwrap(),
            MainOutcome::HypothesisUnmet { .. }
        ));
        assert!(check_main_theorem_instance(&k6, 2, 5, b()).is_err());
    }

    #[test]
    fn stability_at_t_star() {
        let t = t_star(4, 12).unwrap();
        let s = check_stability_instance(&t, 2, 4, b()).unwrap();
        assert!(s.hypothesis_met);
        assert_eq!((s.d2, s.gamma2), (2, 2));
        assert!(s.d2_equal && s.gamma2_equal);
        assert_eq!(s.isomorphic_to_t_star, Some(true));
        assert!(!s.is_violation());
    }

    #[test]
    fn stability_on_bipartite_graph() {
        let s = check_stability_instance(&complete_bipartite(6, 6).unwrap(), 2, 4, b()).unwrap();
        assert_eq!((s.d2, s.gamma2), (0, 0));
        assert!(s.d2_within && s.gamma2_within && !s.d2_equal);
        assert_eq!(s.isomorphic_to_t_star, Some(false));
        assert!(s.equality_characterized());
    }

    #[test]
    fn stability_after_removing_a_block_edge() {
        let t = t_star(4, 12).unwrap();
        // 1 and 6 sit on opposite sides of the bipartite block
        let g = t.with_edges_removed(&[(1, 6)]).unwrap();
        let s = check_stability_instance(&g, 2, 4, b()).unwrap();
        assert!(!s.hypothesis_met);
        assert!(s.d2_within && s.gamma2_within);
        assert_eq!(s.isomorphic_to_t_star, Some(false));
    }
}
