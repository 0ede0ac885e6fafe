//! Exact cycle structure: spectrum, girth, odd girth, longest odd cycle.
//!
//! Everything exponential is a backtracking search over simple paths with
//! bitset pruning and a node [`Budget`]. Odd girth is polynomial (BFS).

mod chords;

pub use chords::{
    auxiliary_forest, chord_relation, chords, maximum_chords, AuxiliaryForest, Chord, ChordRelation,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Ticker};
use crate::error::{Error, Result};
use crate::graph::{bipartition_within, bit, low_mask, Bits, Graph};

/// A cycle given as its vertex sequence `v0 v1 ... v(L-1)`; consecutive
/// vertices are adjacent and so are `v(L-1)` and `v0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Cycle> {
        let len = vertices.len();
        if len < 3 {
            return Err(Error::InvalidCycle(format!("length {len} is below 3")));
        }
        let mut seen = 0u64;
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
            }
            if seen & bit(v) != 0 {
                return Err(Error::InvalidCycle(format!("vertex {v} repeats")));
            }
            seen |= bit(v);
        }
        for i in 0..len {
            let (a, b) = (vertices[i], vertices[(i + 1) % len]);
            if !g.has_edge(a, b) {
                return Err(Error::InvalidCycle(format!("{a} and {b} are not adjacent")));
            }
        }
        Ok(Cycle { vertices })
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<usize>) -> Cycle {
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | bit(v))
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// Rotation/reflection with the lowest vertex first and its lower
    /// neighbor second.
    pub fn normalized(&self) -> Cycle {
        let len = self.len();
        let start = (0..len).min_by_key(|&i| self.vertices[i]).unwrap_or(0);
        let next = self.vertices[(start + 1) % len];
        let prev = self.vertices[(start + len - 1) % len];
        let vertices = if next <= prev {
            (0..len).map(|k| self.vertices[(start + k) % len]).collect()
        } else {
            (0..len).map(|k| self.vertices[(start + len - k) % len]).collect()
        };
        Cycle { vertices }
    }

    /// Same cycle up to rotation and reflection.
    pub fn same_cycle(&self, other: &Cycle) -> bool {
        self.normalized() == other.normalized()
    }

    /// Edges on the shorter arc between positions `i` and `j`.
    pub fn position_distance(&self, i: usize, j: usize) -> usize {
        let d = i.abs_diff(j);
        d.min(self.len() - d)
    }

    /// `dist_C(u, v)` for vertices on the cycle.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        Some(self.position_distance(self.position(u)?, self.position(v)?))
    }
}

/// Set of cycle lengths present in a graph, with one witness per length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSpectrum {
    witnesses: BTreeMap<usize, Cycle>,
}

impl CycleSpectrum {
    pub fn lengths(&self) -> Vec<usize> {
        self.witnesses.keys().copied().collect()
    }

    pub fn contains(&self, len: usize) -> bool {
        self.witnesses.contains_key(&len)
    }

    pub fn witness(&self, len: usize) -> Option<&Cycle> {
        self.witnesses.get(&len)
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn girth(&self) -> Option<usize> {
        self.witnesses.keys().next().copied()
    }

    pub fn circumference(&self) -> Option<usize> {
        self.witnesses.keys().next_back().copied()
    }

    pub fn odd_girth(&self) -> Option<usize> {
        self.witnesses.keys().copied().find(|l| l % 2 == 1)
    }

    pub fn longest_odd(&self) -> Option<&Cycle> {
        self.witnesses.iter().rev().find(|(l, _)| *l % 2 == 1).map(|(_, c)| c)
    }

    /// Every length from girth to circumference is present.
    pub fn is_contiguous(&self) -> bool {
        match (self.girth(), self.circumference()) {
            (Some(lo), Some(hi)) => self.witnesses.len() == hi - lo + 1,
            _ => false,
        }
    }
}

/// Biconnected components with at least three vertices, as vertex masks.
pub(crate) fn cyclic_blocks(g: &Graph) -> Vec<u64> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<u64>,
    }
    fn visit(st: &mut State<'_>, v: usize, parent: Option<usize>) {
        st.time += 1;
        st.disc[v] = st.time;
        st.low[v] = st.time;
        for w in Bits(st.g.adj(v)) {
            if st.disc[w] == 0 {
                st.stack.push((v, w));
                visit(st, w, Some(v));
                st.low[v] = st.low[v].min(st.low[w]);
                if st.low[w] >= st.disc[v] {
                    let mut block = 0u64;
                    while let Some((a, b)) = st.stack.pop() {
                        block |= bit(a) | bit(b);
                        if (a, b) == (v, w) {
                            break;
                        }
                    }
                    if block.count_ones() >= 3 {
                        st.blocks.push(block);
                    }
                }
            } else if Some(w) != parent && st.disc[w] < st.disc[v] {
                st.stack.push((v, w));
                st.low[v] = st.low[v].min(st.disc[w]);
            }
        }
    }
    let n = g.n();
    let mut st = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..n {
        if st.disc[v] == 0 {
            visit(&mut st, v, None);
        }
    }
    st.blocks.sort_unstable_by_key(|b| b.trailing_zeros());
    st.blocks
}

/// Exact set of cycle lengths of `g`.
pub fn cycle_spectrum(g: &Graph, budget: Budget) -> Result<CycleSpectrum> {
    spectrum_for(g, u128::MAX, budget)
}

const ODD_LENGTHS: u128 = 0xAAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAA;

#[inline]
fn len_bit(len: usize) -> u128 {
    1u128 << len
}

/// Lengths `0..n` as a mask.
#[inline]
fn lens_below(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        len_bit(n) - 1
    }
}

/// Witnesses for the lengths in `wanted` (bit `L` = length `L`) that occur.
fn spectrum_for(g: &Graph, wanted: u128, budget: Budget) -> Result<CycleSpectrum> {
    let mut ticker = budget.ticker();
    let mut found: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for block in cyclic_blocks(g) {
        let size = block.count_ones() as usize;
        let mut targets = wanted & lens_below(size + 1) & !0b111;
        if bipartition_within(g, block).is_some() {
            targets &= !ODD_LENGTHS;
        }
        let mut search = SpectrumSearch {
            g,
            targets,
            found: 0,
            witnesses: BTreeMap::new(),
            ticker: &mut ticker,
            path: Vec::with_capacity(size),
        };
        search.run(block)?;
        for (len, w) in search.witnesses {
            found.entry(len).or_insert(w);
        }
    }
    Ok(CycleSpectrum {
        witnesses: found
            .into_iter()
            .map(|(l, w)| (l, Cycle::from_vertices_unchecked(w).normalized()))
            .collect(),
    })
}

struct SpectrumSearch<'a, 't> {
    g: &'a Graph,
    targets: u128,
    found: u128,
    witnesses: BTreeMap<usize, Vec<usize>>,
    ticker: &'t mut Ticker,
    path: Vec<usize>,
}

impl SpectrumSearch<'_, '_> {
    fn run(&mut self, block: u64) -> Result<()> {
        for s in Bits(block) {
            if self.targets & !self.found == 0 {
                break;
            }
            let allowed = block & !low_mask(s + 1);
            self.path.clear();
            self.path.push(s);
            self.extend(s, allowed, bit(s))?;
        }
        Ok(())
    }

    fn extend(&mut self, cur: usize, allowed: u64, visited: u64) -> Result<()> {
        self.ticker.tick()?;
        let s = self.path[0];
        let len = self.path.len();
        if len >= 3 && self.g.adj(cur) & bit(s) != 0 && self.targets & len_bit(len) & !self.found != 0 {
            self.found |= len_bit(len);
            self.witnesses.insert(len, self.path.clone());
        }
        let free = allowed & !visited;
        let reach = self.g.reach_within(cur, free | bit(cur)) & !bit(cur);
        if (reach | bit(cur)) & self.g.adj(s) == 0 {
            return Ok(());
        }
        let max_len = len + reach.count_ones() as usize;
        let open = self.targets & !self.found & lens_below(max_len + 1) & !lens_below(len + 1);
        if open == 0 {
            return Ok(());
        }
        for w in Bits(self.g.adj(cur) & free) {
            self.path.push(w);
            self.extend(w, allowed, visited | bit(w))?;
            self.path.pop();
        }
        Ok(())
    }
}

/// Longest odd cycle, `None` for bipartite graphs.
pub fn longest_odd_cycle(g: &Graph, budget: Budget) -> Result<Option<Cycle>> {
    let spectrum = spectrum_for(g, ODD_LENGTHS, budget)?;
    Ok(spectrum.longest_odd().cloned())
}

/// Girth, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for root in 0..g.n() {
        let levels = bfs_levels(g, root, g.vertex_mask());
        for (d, &level) in levels.iter().enumerate() {
            if best.is_some_and(|b| b <= 2 * d) {
                break;
            }
            // edge inside a level closes an odd walk, two parents an even one
            if Bits(level).any(|v| g.adj(v) & level != 0) {
                best = Some(best.map_or(2 * d + 1, |b| b.min(2 * d + 1)));
                break;
            }
            if let Some(&next) = levels.get(d + 1) {
                if Bits(next).any(|v| (g.adj(v) & level).count_ones() >= 2) {
                    best = Some(best.map_or(2 * d + 2, |b| b.min(2 * d + 2)));
                    break;
                }
            }
        }
    }
    best
}

/// BFS layers from `root` inside `alive`.
fn bfs_levels(g: &Graph, root: usize, alive: u64) -> Vec<u64> {
    let mut levels = vec![bit(root)];
    let mut seen = bit(root);
    loop {
        let last = *levels.last().expect("non-empty");
        let next = Bits(last).fold(0u64, |acc, v| acc | g.adj(v)) & alive & !seen;
        if next == 0 {
            return levels;
        }
        seen |= next;
        levels.push(next);
    }
}

pub fn odd_girth(g: &Graph) -> Option<usize> {
    shortest_odd_cycle(g).map(|c| c.len())
}

pub fn shortest_odd_cycle(g: &Graph) -> Option<Cycle> {
    shortest_odd_cycle_within(g, g.vertex_mask())
}

/// A shortest odd cycle of the subgraph induced by `alive`.
///
/// Found as the minimum over roots of `2d + 1` for an edge joining two
/// vertices at BFS depth `d`; at the minimum the two tree paths meet only at
/// the root. Ties go to the lowest root, then the lexicographically first edge.
pub fn shortest_odd_cycle_within(g: &Graph, alive: u64) -> Option<Cycle> {
    let mut best: Option<(usize, usize, usize, usize)> = None;
    for root in Bits(alive) {
        let levels = bfs_levels(g, root, alive);
        for (d, &level) in levels.iter().enumerate() {
            if best.is_some_and(|(len, ..)| len <= 2 * d + 1) {
                break;
            }
            let hit = Bits(level).find_map(|u| {
                let w = g.adj(u) & level & !low_mask(u + 1);
                (w != 0).then(|| (u, w.trailing_zeros() as usize))
            });
            if let Some((u, w)) = hit {
                best = Some((2 * d + 1, root, u, w));
                break;
            }
        }
    }
    let (_, root, u, w) = best?;
    let levels = bfs_levels(g, root, alive);
    let depth = |v: usize| levels.iter().position(|l| l & bit(v) != 0).expect("reached");
    let climb = |mut v: usize| {
        let mut out = vec![v];
        while v != root {
            let prev = levels[depth(v) - 1];
            v = (g.adj(v) & prev).trailing_zeros() as usize;
            out.push(v);
        }
        out
    };
    let mut left = climb(u);
    let mut right = climb(w);
    left.reverse();
    right.pop();
    left.extend(right);
    Some(Cycle::from_vertices_unchecked(left).normalized())
}

/// A cycle of length exactly `len`, or `None`.
pub fn find_cycle_of_length(g: &Graph, len: usize, budget: Budget) -> Result<Option<Cycle>> {
    let mut ticker = budget.ticker();
    find_cycle_of_length_within(g, g.vertex_mask(), len, &mut ticker)
}

pub(crate) fn find_cycle_of_length_within(
    g: &Graph,
    alive: u64,
    len: usize,
    ticker: &mut Ticker,
) -> Result<Option<Cycle>> {
    if len < 3 || len > alive.count_ones() as usize {
        return Ok(None);
    }
    let mut path = Vec::with_capacity(len);
    for s in Bits(alive) {
        let allowed = alive & !low_mask(s + 1);
        if (allowed.count_ones() as usize) < len - 1 {
            break;
        }
        let mut dist = [u8::MAX; 64];
        for (d, level) in bfs_levels(g, s, allowed | bit(s)).into_iter().enumerate() {
            for v in Bits(level) {
                dist[v] = d as u8;
            }
        }
        path.clear();
        path.push(s);
        if exact_length_dfs(g, allowed, bit(s), len, &dist, &mut path, ticker)? {
            return Ok(Some(Cycle::from_vertices_unchecked(path).normalized()));
        }
    }
    Ok(None)
}

fn exact_length_dfs(
    g: &Graph,
    allowed: u64,
    visited: u64,
    len: usize,
    dist: &[u8; 64],
    path: &mut Vec<usize>,
    ticker: &mut Ticker,
) -> Result<bool> {
    ticker.tick()?;
    let s = path[0];
    let cur = *path.last().expect("non-empty path");
    if path.len() == len - 1 {
        let close = g.adj(cur) & g.adj(s) & allowed & !visited;
        if close != 0 {
            path.push(close.trailing_zeros() as usize);
            return Ok(true);
        }
        return Ok(false);
    }
    // after stepping to w there are len - path.len() edges left to return to s
    let remaining = len - path.len();
    for w in Bits(g.adj(cur) & allowed & !visited) {
        if dist[w] as usize > remaining {
            continue;
        }
        path.push(w);
        if exact_length_dfs(g, allowed, visited | bit(w), len, dist, path, ticker)? {
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}

/// No cycle of length exactly `2k + 1`.
pub fn is_c2kplus1_free(g: &Graph, k: usize, budget: Budget) -> Result<bool> {
    if k < 1 {
        return Err(Error::param("k must be at least 1"));
    }
    Ok(find_cycle_of_length(g, 2 * k + 1, budget)?.is_none())
}

/// A shortest odd cycle of length greater than `r`.
pub fn shortest_r_admissible(g: &Graph, r: usize, budget: Budget) -> Result<Option<Cycle>> {
    if r < 3 {
        return Err(Error::param("r must be at least 3"));
    }
    let mut ticker = budget.ticker();
    let first = if r % 2 == 0 { r + 1 } else { r + 2 };
    for len in (first..=g.n()).step_by(2) {
        if let Some(c) = find_cycle_of_length_within(g, g.vertex_mask(), len, &mut ticker)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Cycle lengths form an interval from girth to circumference.
pub fn is_weakly_pancyclic(g: &Graph, budget: Budget) -> Result<bool> {
    let spectrum = cycle_spectrum(g, budget)?;
    if spectrum.is_empty() {
        return Err(Error::Acyclic);
    }
    Ok(spectrum.is_contiguous())
}
