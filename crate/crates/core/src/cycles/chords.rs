//! Chords of a fixed cycle.
//!
//! Positions are 0-based: position `p` is the `p`-th vertex of the host
//! cycle. For an odd host, each chord closes exactly one odd cycle with the
//! even arc between its endpoints (its odd chord cycle).

use serde::Serialize;

use super::Cycle;
use crate::error::{Error, Result};
use crate::graph::{bit, Graph};

/// A chord between host positions `i < j` that are not consecutive.
#[derive(Debug, Clone, Copy)]
pub struct Chord<'c> {
    host: &'c Cycle,
    i: usize,
    j: usize,
}

impl PartialEq for Chord<'_> {
    fn eq(&self, other: &Self) -> bool {
        same_host(self.host, other.host) && self.i == other.i && self.j == other.j
    }
}

impl Eq for Chord<'_> {}

fn same_host(a: &Cycle, b: &Cycle) -> bool {
    std::ptr::eq(a, b) || a == b
}

impl<'c> Chord<'c> {
    /// Checks that positions `i`, `j` of `host` are adjacent in `g` and not
    /// consecutive on the host.
    pub fn new(g: &Graph, host: &'c Cycle, i: usize, j: usize) -> Result<Chord<'c>> {
        let len = host.len();
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        if j >= len {
            return Err(Error::param(format!("position {j} is outside a host of length {len}")));
        }
        if host.position_distance(i, j) < 2 {
            return Err(Error::param(format!("positions {i} and {j} are consecutive on the host")));
        }
        if !g.has_edge(host.vertices()[i], host.vertices()[j]) {
            return Err(Error::param(format!("positions {i} and {j} are not adjacent in the graph")));
        }
        Ok(Chord { host, i, j })
    }

    pub fn host(&self) -> &'c Cycle {
        self.host
    }

    pub fn positions(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.host.vertices()[self.i], self.host.vertices()[self.j])
    }

    /// Host positions of the odd chord cycle, in traversal order starting at
    /// one chord endpoint and ending at the other.
    fn odd_arc(&self) -> Result<Vec<usize>> {
        let len = self.host.len();
        if len % 2 == 0 {
            return Err(Error::EvenHostCycle(len));
        }
        let forward = self.j - self.i;
        Ok(if forward % 2 == 0 {
            (self.i..=self.j).collect()
        } else {
            (self.j..len).chain(0..=self.i).collect()
        })
    }

    /// Positions covered by the odd chord cycle, as a bitset.
    pub fn odd_cycle_positions(&self) -> Result<u64> {
        Ok(self.odd_arc()?.into_iter().fold(0, |m, p| m | bit(p)))
    }

    /// The odd cycle made of this chord and the even host arc between its
    /// endpoints. Always strictly shorter than the host.
    pub fn odd_chord_cycle(&self) -> Result<Cycle> {
        let arc = self.odd_arc()?;
        Ok(Cycle::from_vertices_unchecked(
            arc.into_iter().map(|p| self.host.vertices()[p]).collect(),
        ))
    }

    pub fn odd_chord_cycle_len(&self) -> Result<usize> {
        Ok(self.odd_arc()?.len())
    }
}

fn check_host(g: &Graph, host: &Cycle) -> Result<()> {
    Cycle::new(g, host.vertices().to_vec()).map(|_| ())
}

/// All chords of `host` in `g`, ordered by position pair.
pub fn chords<'c>(g: &Graph, host: &'c Cycle) -> Result<Vec<Chord<'c>>> {
    check_host(g, host)?;
    let len = host.len();
    let mut out = Vec::new();
    for i in 0..len {
        for j in i + 2..len {
            if host.position_distance(i, j) >= 2 && g.has_edge(host.vertices()[i], host.vertices()[j]) {
                out.push(Chord { host, i, j });
            }
        }
    }
    Ok(out)
}

/// Chords whose odd chord cycle is longest.
pub fn maximum_chords<'c>(g: &Graph, host: &'c Cycle) -> Result<Vec<Chord<'c>>> {
    if !host.is_odd() {
        return Err(Error::EvenHostCycle(host.len()));
    }
    let all = chords(g, host)?;
    let best = all.iter().map(|c| c.odd_arc().map(|a| a.len())).collect::<Result<Vec<_>>>()?;
    let Some(&top) = best.iter().max() else {
        return Ok(Vec::new());
    };
    Ok(all.into_iter().zip(best).filter(|&(_, l)| l == top).map(|(c, _)| c).collect())
}

/// How two chords of the same odd host sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChordRelation {
    /// The first chord's odd chord cycle lies inside the second's.
    Precedes,
    /// The second chord's odd chord cycle lies inside the first's.
    Succeeds,
    /// Four distinct endpoints alternating around the host.
    Crosses,
    /// Exactly one common endpoint, not related.
    SharesEndpoint,
    /// Four distinct endpoints, not alternating, not related.
    DisjointNoncrossing,
}

/// Containment of odd chord cycles is checked first, so related chords that
/// share an endpoint report `Precedes`/`Succeeds`.
pub fn chord_relation(a: &Chord<'_>, b: &Chord<'_>) -> Result<ChordRelation> {
    if !same_host(a.host, b.host) {
        return Err(Error::HostMismatch);
    }
    if a == b {
        return Err(Error::param("a chord is not compared with itself"));
    }
    let (pa, pb) = (a.odd_cycle_positions()?, b.odd_cycle_positions()?);
    if pa & !pb == 0 {
        return Ok(ChordRelation::Precedes);
    }
    if pb & !pa == 0 {
        return Ok(ChordRelation::Succeeds);
    }
    let ends_a = bit(a.i) | bit(a.j);
    let ends_b = bit(b.i) | bit(b.j);
    if ends_a & ends_b != 0 {
        return Ok(ChordRelation::SharesEndpoint);
    }
    // b's endpoints alternate with a's iff exactly one lies strictly between a.i and a.j
    let inside = |p: usize| a.i < p && p < a.j;
    if inside(b.i) != inside(b.j) {
        Ok(ChordRelation::Crosses)
    } else {
        Ok(ChordRelation::DisjointNoncrossing)
    }
}

/// The auxiliary graph on the first `2h + 2` host positions with one edge per
/// chord. Vertex `p` of `gamma` is host position `p`; even positions form
/// the odd-indexed class `c1, c3, ...` and odd positions the other class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryForest {
    pub gamma: Graph,
    pub is_forest: bool,
    pub tree_count: usize,
}

pub fn auxiliary_forest(host: &Cycle, chords: &[Chord<'_>], h: usize) -> Result<AuxiliaryForest> {
    let window = 2 * h + 2;
    if h < 1 || window > host.len() {
        return Err(Error::param(format!(
            "window of {window} positions does not fit a host of length {}",
            host.len()
        )));
    }
    let mut edges = Vec::with_capacity(chords.len());
    for c in chords {
        if !same_host(c.host, host) {
            return Err(Error::HostMismatch);
        }
        for p in [c.i, c.j] {
            if p >= window {
                return Err(Error::ChordOutsideWindow { position: p, window });
            }
        }
        edges.push((c.i, c.j));
    }
    let gamma = Graph::build(window, &edges)?;
    let tree_count = gamma.components().len();
    let is_forest = gamma.m() + tree_count == gamma.n();
    Ok(AuxiliaryForest {
        gamma,
        is_forest,
        tree_count,
    })
}
