//! `(s, r+2)`-starters: vertex sets whose every pair is joined by a simple
//! path of odd length `2j - 1` with `s <= j <= k`.
//!
//! Path lengths are decided by exact backtracking over simple paths. A
//! shortest odd walk can revisit vertices, so parity BFS is not enough here.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Ticker};
use crate::error::{Error, Result};
use crate::graph::{bit, Bits, Graph};
use crate::par;

/// Odd lengths of simple `u`-`v` paths up to a bound, one witness each.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathLengths {
    pub witnesses: BTreeMap<usize, Vec<usize>>,
}

impl PathLengths {
    pub fn lengths(&self) -> Vec<usize> {
        self.witnesses.keys().copied().collect()
    }

    pub fn contains(&self, len: usize) -> bool {
        self.witnesses.contains_key(&len)
    }
}

pub fn odd_path_lengths(g: &Graph, u: usize, v: usize, max_len: usize, budget: Budget) -> Result<PathLengths> {
    let mut ticker = budget.ticker();
    let wanted = (1..=max_len).step_by(2).fold(0u128, |m, l| m | (1u128 << l.min(127)));
    paths_with_lengths(g, u, v, wanted, false, &mut ticker)
}

/// Simple `u`-`v` paths whose edge count is in `wanted` (bit `L` = length
/// `L`). With `first_only` the search stops at the first hit.
pub(crate) fn paths_with_lengths(
    g: &Graph,
    u: usize,
    v: usize,
    wanted: u128,
    first_only: bool,
    ticker: &mut Ticker,
) -> Result<PathLengths> {
    for w in [u, v] {
        if w >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: w, n: g.n() });
        }
    }
    if u == v {
        return Err(Error::param("path endpoints must be distinct"));
    }
    let wanted = wanted & !1;
    let mut search = PathSearch {
        g,
        target: v,
        wanted,
        found: 0,
        first_only,
        out: BTreeMap::new(),
        path: vec![u],
        ticker,
    };
    if wanted != 0 {
        search.extend(bit(u))?;
    }
    Ok(PathLengths { witnesses: search.out })
}

struct PathSearch<'a, 't> {
    g: &'a Graph,
    target: usize,
    wanted: u128,
    found: u128,
    first_only: bool,
    out: BTreeMap<usize, Vec<usize>>,
    path: Vec<usize>,
    ticker: &'t mut Ticker,
}

impl PathSearch<'_, '_> {
    fn done(&self) -> bool {
        self.wanted & !self.found == 0 || (self.first_only && self.found != 0)
    }

    fn extend(&mut self, visited: u64) -> Result<()> {
        self.ticker.tick()?;
        let cur = *self.path.last().expect("non-empty path");
        let edges = self.path.len() - 1;
        let open = self.wanted & !self.found & !((1u128 << (edges + 1)) - 1);
        if open == 0 {
            return Ok(());
        }
        let longest = 127 - open.leading_zeros() as usize;
        if edges + 1 > longest {
            return Ok(());
        }
        let free = self.g.vertex_mask() & !visited;
        // the target must stay reachable through unvisited vertices
        if self.g.reach_within(cur, free | bit(cur)) & bit(self.target) == 0 {
            return Ok(());
        }
        for w in Bits(self.g.adj(cur) & free) {
            self.path.push(w);
            if w == self.target {
                let len = edges + 1;
                if self.wanted & (1u128 << len) & !self.found != 0 {
                    self.found |= 1u128 << len;
                    self.out.insert(len, self.path.clone());
                }
            } else {
                self.extend(visited | bit(w))?;
            }
            self.path.pop();
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

/// A starter together with one witness path per pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarterCertificate {
    pub set: Vec<usize>,
    pub s: usize,
    pub k: usize,
    pub witnesses: Vec<PairWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub u: usize,
    pub v: usize,
    pub path: Vec<usize>,
}

impl PairWitness {
    pub fn len(&self) -> usize {
        self.path.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

impl StarterCertificate {
    /// Re-checks every witness edge by edge against `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let size = self.set.len();
        if self.s < 1 || self.s > self.k || self.witnesses.len() != size * size.saturating_sub(1) / 2 {
            return false;
        }
        let mut pairs = Vec::new();
        for (a, &u) in self.set.iter().enumerate() {
            for &v in &self.set[a + 1..] {
                pairs.push((u, v));
            }
        }
        pairs.iter().zip(&self.witnesses).all(|(&(u, v), w)| {
            let len = w.len();
            let simple = w.path.iter().fold(Some(0u64), |acc, &x| {
                acc.filter(|m| x < g.n() && m & bit(x) == 0).map(|m| m | bit(x))
            });
            w.u == u
                && w.v == v
                && w.path.first() == Some(&u)
                && w.path.last() == Some(&v)
                && simple.is_some()
                && w.path.windows(2).all(|e| g.has_edge(e[0], e[1]))
                && len % 2 == 1
                && len >= 2 * self.s - 1
                && len <= 2 * self.k - 1
        })
    }
}

fn starter_lengths(s: usize, k: usize) -> u128 {
    (s..=k).fold(0u128, |m, j| m | (1u128 << (2 * j - 1).min(127)))
}

fn check_params(s: usize, k: usize) -> Result<()> {
    if s < 1 || s > k {
        return Err(Error::param(format!("starter needs 1 <= s <= k, got s = {s}, k = {k}")));
    }
    if 2 * k - 1 > 127 {
        return Err(Error::param("k is too large"));
    }
    Ok(())
}

/// Certificate if every pair of `set` is joined by a path of length `2j - 1`,
/// `s <= j <= k`. Each witness uses the shortest qualifying length.
pub fn is_starter(g: &Graph, set: &[usize], s: usize, k: usize, budget: Budget) -> Result<Option<StarterCertificate>> {
    check_params(s, k)?;
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != set.len() || sorted.len() < 3 {
        return Err(Error::param("a starter set needs at least 3 distinct vertices"));
    }
    let mut ticker = budget.ticker();
    certify(g, &sorted, s, k, &mut ticker)
}

fn certify(g: &Graph, set: &[usize], s: usize, k: usize, ticker: &mut Ticker) -> Result<Option<StarterCertificate>> {
    let wanted = starter_lengths(s, k);
    let mut witnesses = Vec::new();
    for (a, &u) in set.iter().enumerate() {
        for &v in &set[a + 1..] {
            let found = paths_with_lengths(g, u, v, wanted, false, ticker)?;
            match found.witnesses.into_iter().next() {
                Some((_, path)) => witnesses.push(PairWitness { u, v, path }),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(StarterCertificate {
        set: set.to_vec(),
        s,
        k,
        witnesses,
    }))
}

/// First `(s, r+2)`-starter in lexicographic subset order.
///
/// Pairwise feasibility is computed once; the subset search then only walks
/// cliques of the feasibility graph. Work is split by the smallest vertex and
/// the lowest successful split wins.
pub fn find_starter(g: &Graph, r: usize, s: usize, k: usize, budget: Budget) -> Result<Option<StarterCertificate>> {
    check_params(s, k)?;
    if r < 1 {
        return Err(Error::param("r must be at least 1"));
    }
    let size = r + 2;
    let n = g.n();
    if size > n {
        return Ok(None);
    }
    let wanted = starter_lengths(s, k);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let checks = par::map(&pairs, |&(u, v)| {
        let mut t = budget.ticker();
        paths_with_lengths(g, u, v, wanted, true, &mut t).map(|p| !p.witnesses.is_empty())
    });
    let mut compat = vec![0u64; n];
    for (&(u, v), ok) in pairs.iter().zip(checks) {
        if ok? {
            compat[u] |= bit(v);
            compat[v] |= bit(u);
        }
    }
    let firsts: Vec<usize> = (0..n).collect();
    let found = par::map(&firsts, |&first| {
        let mut chosen = vec![first];
        first_clique(&compat, size, compat[first] & !crate::graph::low_mask(first + 1), &mut chosen)
            .then_some(chosen)
    });
    let Some(set) = found.into_iter().flatten().next() else {
        return Ok(None);
    };
    let mut ticker = budget.ticker();
    certify(g, &set, s, k, &mut ticker)
}

/// Extends `chosen` to a clique of `size` using candidates in increasing order.
fn first_clique(compat: &[u64], size: usize, candidates: u64, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == size {
        return true;
    }
    if chosen.len() + (candidates.count_ones() as usize) < size {
        return false;
    }
    for w in Bits(candidates) {
        chosen.push(w);
        let next = candidates & compat[w] & !crate::graph::low_mask(w + 1);
        if first_clique(compat, size, next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, complete_bipartite, cycle, petersen};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn path_lengths_small() {
        let c5 = cycle(5).unwrap();
        assert_eq!(odd_path_lengths(&c5, 0, 1, 5, b()).unwrap().lengths(), vec![1]);
        let k4 = complete(4).unwrap();
        assert_eq!(odd_path_lengths(&k4, 0, 3, 3, b()).unwrap().lengths(), vec![1, 3]);
        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!(odd_path_lengths(&k33, 0, 3, 5, b()).unwrap().lengths(), vec![1, 3, 5]);
        assert!(odd_path_lengths(&k33, 0, 1, 5, b()).unwrap().lengths().is_empty());
        assert!(odd_path_lengths(&k33, 2, 2, 5, b()).is_err());
    }

    #[test]
    fn witnesses_are_paths() {
        let p = petersen();
        let found = odd_path_lengths(&p, 0, 7, 9, b()).unwrap();
        for (len, path) in &found.witnesses {
            assert_eq!(path.len(), len + 1);
            assert!(path.windows(2).all(|e| p.has_edge(e[0], e[1])));
        }
    }

    #[test]
    fn starters_in_cliques_and_bipartite_graphs() {
        let k5 = complete(5).unwrap();
        let cert = is_starter(&k5, &[0, 1, 2, 3, 4], 1, 2, b()).unwrap().unwrap();
        assert!(cert.validate(&k5));
        assert!(cert.witnesses.iter().all(|w| w.len() == 1));
        let k33 = complete_bipartite(3, 3).unwrap();
        assert!(is_starter(&k33, &[0, 1, 2], 1, 2, b()).unwrap().is_none());
    }

    #[test]
    fn find_starter_in_k7() {
        let k7 = complete(7).unwrap();
        let cert = find_starter(&k7, 3, 1, 2, b()).unwrap().unwrap();
        assert_eq!(cert.set, vec![0, 1, 2, 3, 4]);
        assert!(cert.validate(&k7));
    }

    #[test]
    fn bipartite_graphs_have_no_starter() {
        let g = complete_bipartite(4, 4).unwrap();
        for r in 1..=4 {
            assert!(find_starter(&g, r, 1, 3, b()).unwrap().is_none());
        }
    }

    #[test]
    fn parameter_checks() {
        let k5 = complete(5).unwrap();
        assert!(is_starter(&k5, &[0, 1, 2], 0, 2, b()).is_err());
        assert!(is_starter(&k5, &[0, 1, 2], 3, 2, b()).is_err());
        assert!(is_starter(&k5, &[0, 0, 2], 1, 2, b()).is_err());
        assert!(find_starter(&k5, 0, 1, 2, b()).is_err());
    }

    #[test]
    fn tampered_certificate_fails_validation() {
        let k5 = complete(5).unwrap();
        let mut cert = is_starter(&k5, &[0, 1, 2, 3, 4], 1, 2, b()).unwrap().unwrap();
        cert.witnesses[0].path = vec![0, 2, 1];
        assert!(!cert.validate(&k5));
    }
}
