//! Lemma sweeps.
//!
//! The host-cycle lemmas use a fixed layout: the host cycle is
//! `0 - 1 - ... - (L-1) - 0`, chords are drawn from the non-consecutive pairs
//! in lexicographic order, and external vertices are `L` and `L + 1`.
//! Configuration graphs are reported in exactly that labeling.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::constructions::edge_threshold;
use crate::cycles::{find_cycle_of_length, girth, is_c2kplus1_free, is_weakly_pancyclic, odd_girth};
use crate::error::{Error, Result};
use crate::graph::{bipartition, bit, low_mask, to_graph6, Bits, Graph};
use crate::harness::enumerate::{enumerate_graphs, iso_classes, EnumMode};
use crate::harness::instances::check_kr;
use crate::harness::report::{Mode, Tally, VerificationReport};
use crate::par;
use crate::starters::paths_with_lengths;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaId {
    Www,
    Degree,
    Outside,
    Gchords,
    Aaa,
    L1,
}

impl LemmaId {
    pub const ALL: [LemmaId; 6] = [
        LemmaId::Www,
        LemmaId::Degree,
        LemmaId::Outside,
        LemmaId::Gchords,
        LemmaId::Aaa,
        LemmaId::L1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::Www => "www",
            LemmaId::Degree => "degree",
            LemmaId::Outside => "outside",
            LemmaId::Gchords => "gchords",
            LemmaId::Aaa => "aaa",
            LemmaId::L1 => "l1",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::param(format!("unknown lemma `{s}`")))
    }
}

/// Sweep parameters. Unused fields are ignored by a given lemma.
#[derive(Debug, Clone)]
pub struct LemmaParams {
    pub k: usize,
    pub r: usize,
    pub host_length: usize,
    pub n: usize,
    /// Graph source for `aaa` and `l1`.
    pub enum_mode: EnumMode,
    /// Seeded sampling instead of full enumeration.
    pub samples: Option<u64>,
    pub seed: u64,
    /// Node budget per configuration.
    pub budget: Budget,
}

impl Default for LemmaParams {
    fn default() -> Self {
        LemmaParams {
            k: 2,
            r: 3,
            host_length: 5,
            n: 6,
            enum_mode: EnumMode::UpToIso,
            samples: None,
            seed: 0,
            budget: Budget(10_000_000),
        }
    }
}

/// Largest targeted space swept without sampling.
const EXHAUSTIVE_LIMIT: u128 = 1 << 34;
const CHUNK: u64 = 1 << 10;

pub fn verify_lemma(id: LemmaId, p: &LemmaParams) -> Result<VerificationReport> {
    match id {
        LemmaId::Degree => degree(p),
        LemmaId::Www => www(p),
        LemmaId::Outside => outside(p),
        LemmaId::Gchords => gchords(p),
        LemmaId::Aaa => aaa(p),
        LemmaId::L1 => l1(p),
    }
}

/// A host cycle on `0..len` with its possible chords.
#[derive(Debug, Clone)]
pub struct Host {
    pub len: usize,
    pub chords: Vec<(usize, usize)>,
}

impl Host {
    pub fn new(len: usize) -> Result<Host> {
        // chord subsets are indexed by a u64
        if len < 3 || len * (len - 3) / 2 > 63 {
            return Err(Error::param(format!("host length {len} out of range")));
        }
        let chords = (0..len)
            .flat_map(|i| (i + 2..len).map(move |j| (i, j)))
            .filter(|&(i, j)| !(i == 0 && j == len - 1))
            .collect();
        Ok(Host { len, chords })
    }

    pub fn chord_subsets(&self) -> u64 {
        1u64 << self.chords.len()
    }

    /// Host cycle plus the selected chords, plus one external vertex per
    /// entry of `externals` (a neighborhood mask on the host), optionally
    /// joined to each other.
    pub fn graph(&self, chord_mask: u64, externals: &[u64], join: bool) -> Graph {
        let n = self.len + externals.len();
        let mut rows = vec![0u64; n];
        let mut add = |u: usize, v: usize| {
            rows[u] |= bit(v);
            rows[v] |= bit(u);
        };
        for i in 0..self.len {
            add(i, (i + 1) % self.len);
        }
        for c in Bits(chord_mask) {
            let (i, j) = self.chords[c];
            add(i, j);
        }
        for (e, &nb) in externals.iter().enumerate() {
            for v in Bits(nb) {
                add(self.len + e, v);
            }
        }
        if join && externals.len() == 2 {
            add(self.len, self.len + 1);
        }
        Graph::from_rows_unchecked(rows)
    }

    pub fn chord_list(&self, chord_mask: u64) -> Vec<(usize, usize)> {
        Bits(chord_mask).map(|c| self.chords[c]).collect()
    }

    /// Neighborhoods on the host with at least three vertices, ascending.
    pub fn rich_neighborhoods(&self) -> Vec<u64> {
        (0..1u64 << self.len).filter(|m| m.count_ones() >= 3).collect()
    }
}

enum Verdict {
    Unmet,
    Holds,
    Fails(String, Value),
}

fn record(t: &mut Tally, g: &Graph, v: Result<Verdict>) -> Result<()> {
    t.checked += 1;
    match v {
        Ok(Verdict::Unmet) => {}
        Ok(Verdict::Holds) => t.hypothesis_met += 1,
        Ok(Verdict::Fails(detail, witness)) => {
            t.hypothesis_met += 1;
            t.violation(to_graph6(g), detail, Some(witness));
        }
        Err(Error::BudgetExceeded(_)) => t.skipped += 1,
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Runs `check` over `samples` draws. Draw `i` uses the generator of chunk
/// `i / CHUNK`, so the outcome does not depend on the worker count.
fn sample_sweep<F>(samples: u64, seed: u64, check: F) -> Result<Tally>
where
    F: Fn(&mut ChaCha8Rng, &mut Tally) -> Result<()> + Sync + Send,
{
    let parts = par::map_chunks(0..samples, CHUNK, |range| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(range.start / CHUNK);
        let mut t = Tally::default();
        for _ in range {
            check(&mut rng, &mut t)?;
        }
        Ok(t)
    });
    parts.into_iter().try_fold(Tally::default(), |acc, t: Result<Tally>| Ok(acc.merge(t?)))
}

/// Runs `check` once per chord subset, in parallel chunks.
fn chord_sweep<F>(host: &Host, check: F) -> Result<Tally>
where
    F: Fn(u64, &mut Tally) -> Result<()> + Sync + Send,
{
    let parts = par::map_chunks(0..host.chord_subsets(), CHUNK, |range| {
        let mut t = Tally::default();
        for cm in range {
            check(cm, &mut t)?;
        }
        Ok(t)
    });
    parts.into_iter().try_fold(Tally::default(), |acc, t: Result<Tally>| Ok(acc.merge(t?)))
}

fn base_report(id: LemmaId, p: &LemmaParams, exhaustive_mode: Mode) -> VerificationReport {
    match p.samples {
        Some(s) => VerificationReport::new(id.as_str(), Mode::Sampled)
            .with_seed(p.seed)
            .param("samples", s),
        None => VerificationReport::new(id.as_str(), exhaustive_mode),
    }
}

fn ensure_feasible(space: u128, p: &LemmaParams) -> Result<()> {
    if p.samples.is_none() && space > EXHAUSTIVE_LIMIT {
        return Err(Error::param(format!(
            "instance space of {space} configurations is too large to sweep; use sampling"
        )));
    }
    Ok(())
}

fn config_witness(host: &Host, cm: u64, externals: &[u64], join: Option<bool>) -> Value {
    let mut w = json!({
        "chords": host.chord_list(cm),
        "neighbors": externals.iter().map(|&m| Bits(m).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    if let Some(j) = join {
        w["joined"] = json!(j);
    }
    w
}

/// An external vertex with at least three neighbors on an odd host cycle
/// creates a strictly shorter odd cycle.
fn degree(p: &LemmaParams) -> Result<VerificationReport> {
    let len = p.host_length;
    if len < 5 || len % 2 == 0 {
        return Err(Error::param("degree needs an odd host length of at least 5"));
    }
    let host = Host::new(len)?;
    let rich = host.rich_neighborhoods();
    ensure_feasible(host.chord_subsets() as u128 * rich.len() as u128, p)?;
    let check = |cm: u64, nb: u64, t: &mut Tally| {
        let g = host.graph(cm, &[nb], false);
        let verdict = match odd_girth(&g) {
            Some(l) if l < len => Verdict::Holds,
            found => Verdict::Fails(
                format!("shortest odd cycle has length {found:?}, host has {len}"),
                config_witness(&host, cm, &[nb], None),
            ),
        };
        record(t, &g, Ok(verdict))
    };
    let tally = match p.samples {
        Some(s) => sample_sweep(s, p.seed, |rng, t| {
            let cm = rng.gen::<u64>() & low_mask(host.chords.len());
            check(cm, rich[rng.gen_range(0..rich.len())], t)
        })?,
        None => chord_sweep(&host, |cm, t| rich.iter().try_for_each(|&nb| check(cm, nb, t)))?,
    };
    let mut r = base_report(LemmaId::Degree, p, Mode::Targeted)
        .param("host_length", len)
        .param("neighborhoods", rich.len());
    r.absorb(tally);
    Ok(r.finish())
}

/// In a `C_{2k+1}`-free graph, a vertex off an odd cycle of length
/// `2l + 1 >= 2k + 3` has at most `l` neighbors on it.
fn www(p: &LemmaParams) -> Result<VerificationReport> {
    let len = p.host_length;
    let k = p.k;
    if k < 2 || len % 2 == 0 || len < 2 * k + 3 {
        return Err(Error::param("www needs k >= 2 and an odd host length of at least 2k + 3"));
    }
    let ell = (len - 1) / 2;
    let host = Host::new(len)?;
    let hoods = 1u64 << len;
    ensure_feasible(host.chord_subsets() as u128 * hoods as u128, p)?;
    let check = |cm: u64, nb: u64, t: &mut Tally| {
        let g = host.graph(cm, &[nb], false);
        let verdict = is_c2kplus1_free(&g, k, p.budget).map(|free| {
            if !free {
                Verdict::Unmet
            } else if nb.count_ones() as usize <= ell {
                Verdict::Holds
            } else {
                Verdict::Fails(
                    format!("deg(x, C) = {} exceeds {ell}", nb.count_ones()),
                    config_witness(&host, cm, &[nb], None),
                )
            }
        });
        record(t, &g, verdict)
    };
    let tally = match p.samples {
        Some(s) => sample_sweep(s, p.seed, |rng, t| {
            let cm = rng.gen::<u64>() & low_mask(host.chords.len());
            check(cm, rng.gen::<u64>() & low_mask(len), t)
        })?,
        None => chord_sweep(&host, |cm, t| {
            // a chord set that already closes a (2k+1)-cycle fails the
            // hypothesis for every neighborhood
            if !is_c2kplus1_free(&host.graph(cm, &[], false), k, p.budget)? {
                t.checked += hoods;
                return Ok(());
            }
            (0..hoods).try_for_each(|nb| check(cm, nb, t))
        })?,
    };
    let mut r = base_report(LemmaId::Www, p, Mode::Targeted)
        .param("k", k)
        .param("host_length", len);
    r.absorb(tally);
    Ok(r.finish())
}

/// Two external vertices with at least three neighbors each on an odd cycle
/// of length `2m + 1`, in a graph without `(2m-1)`-cycles, are joined by an
/// odd path of length at most `2m - 3`.
fn outside(p: &LemmaParams) -> Result<VerificationReport> {
    let len = p.host_length;
    if len < 7 || len % 2 == 0 {
        return Err(Error::param("outside needs an odd host length of at least 7"));
    }
    let m = (len - 1) / 2;
    let host = Host::new(len)?;
    let rich = host.rich_neighborhoods();
    let per_chords = 2 * (rich.len() as u64).pow(2);
    ensure_feasible(host.chord_subsets() as u128 * per_chords as u128, p)?;
    let wanted = (1..=2 * m - 3).step_by(2).fold(0u128, |w, l| w | 1u128 << l);
    let check = |cm: u64, nx: u64, ny: u64, join: bool, t: &mut Tally| {
        let g = host.graph(cm, &[nx, ny], join);
        let mut ticker = p.budget.ticker();
        let verdict = (|| {
            if find_cycle_of_length(&g, 2 * m - 1, p.budget)?.is_some() {
                return Ok(Verdict::Unmet);
            }
            let paths = paths_with_lengths(&g, len, len + 1, wanted, true, &mut ticker)?;
            Ok(if paths.witnesses.is_empty() {
                Verdict::Fails(
                    format!("no odd x-y path of length at most {}", 2 * m - 3),
                    config_witness(&host, cm, &[nx, ny], Some(join)),
                )
            } else {
                Verdict::Holds
            })
        })();
        record(t, &g, verdict)
    };
    let tally = match p.samples {
        Some(s) => sample_sweep(s, p.seed, |rng, t| {
            let cm = rng.gen::<u64>() & low_mask(host.chords.len());
            let nx = rich[rng.gen_range(0..rich.len())];
            let ny = rich[rng.gen_range(0..rich.len())];
            check(cm, nx, ny, rng.gen(), t)
        })?,
        None => chord_sweep(&host, |cm, t| {
            if find_cycle_of_length(&host.graph(cm, &[], false), 2 * m - 1, p.budget)?.is_some() {
                t.checked += per_chords;
                return Ok(());
            }
            for &nx in &rich {
                for &ny in &rich {
                    for join in [false, true] {
                        check(cm, nx, ny, join, t)?;
                    }
                }
            }
            Ok(())
        })?,
    };
    let mut r = base_report(LemmaId::Outside, p, Mode::Targeted)
        .param("host_length", len)
        .param("neighborhoods", rich.len());
    r.absorb(tally);
    Ok(r.finish())
}

/// If the host `C_{2m+1}` is a shortest odd cycle longer than `r`, carries at
/// least `r` chords, and no `(2m-1)`-cycle exists, then every two host
/// vertices are joined inside `V(C)` by an odd path of length at most
/// `2m - 3`.
///
/// Extra vertices outside the host can only add cycles, so graphs on `V(C)`
/// alone cover every instance of the hypothesis.
fn gchords(p: &LemmaParams) -> Result<VerificationReport> {
    let len = p.host_length;
    let r = p.r;
    if len < 5 || len % 2 == 0 || r < 3 || r >= len {
        return Err(Error::param("gchords needs an odd host length above r >= 3"));
    }
    let m = (len - 1) / 2;
    let host = Host::new(len)?;
    ensure_feasible(host.chord_subsets() as u128, p)?;
    let mut forbidden: Vec<usize> = (r + 1..len).filter(|l| l % 2 == 1).collect();
    if !forbidden.contains(&(2 * m - 1)) {
        forbidden.push(2 * m - 1);
    }
    let wanted = (1..=2 * m - 3).step_by(2).fold(0u128, |w, l| w | 1u128 << l);
    let check = |cm: u64, t: &mut Tally| {
        let g = host.graph(cm, &[], false);
        let verdict = (|| {
            if (cm.count_ones() as usize) < r {
                return Ok(Verdict::Unmet);
            }
            for &l in &forbidden {
                if find_cycle_of_length(&g, l, p.budget)?.is_some() {
                    return Ok(Verdict::Unmet);
                }
            }
            let mut ticker = p.budget.ticker();
            for u in 0..len {
                for v in u + 1..len {
                    if paths_with_lengths(&g, u, v, wanted, true, &mut ticker)?.witnesses.is_empty() {
                        let mut w = config_witness(&host, cm, &[], None);
                        w["pair"] = json!([u, v]);
                        return Ok(Verdict::Fails(
                            format!("no odd path of length at most {} between {u} and {v}", 2 * m - 3),
                            w,
                        ));
                    }
                }
            }
            Ok(Verdict::Holds)
        })();
        record(t, &g, verdict)
    };
    let tally = match p.samples {
        Some(s) => sample_sweep(s, p.seed, |rng, t| check(rng.gen::<u64>() & low_mask(host.chords.len()), t))?,
        None => chord_sweep(&host, check)?,
    };
    let mut r = base_report(LemmaId::Gchords, p, Mode::Targeted)
        .param("host_length", len)
        .param("r", p.r);
    r.absorb(tally);
    Ok(r.finish())
}

/// Non-bipartite and `3 delta >= n + 2` imply weakly pancyclic with girth 3
/// or 4.
fn aaa_check(g: &Graph, budget: Budget) -> Result<Verdict> {
    let n = g.n();
    let delta = g.min_degree().unwrap_or(0);
    if n < 3 || 3 * delta < n + 2 || bipartition(g).is_some() {
        return Ok(Verdict::Unmet);
    }
    let gi = girth(g);
    let weak = is_weakly_pancyclic(g, budget)?;
    Ok(if weak && matches!(gi, Some(3 | 4)) {
        Verdict::Holds
    } else {
        Verdict::Fails(
            format!("girth {gi:?}, weakly pancyclic = {weak}"),
            json!({ "girth": gi, "weakly_pancyclic": weak }),
        )
    })
}

fn aaa(p: &LemmaParams) -> Result<VerificationReport> {
    let n = p.n;
    let tally = match p.samples {
        Some(s) => {
            if n > 64 {
                return Err(Error::TooManyVertices(n));
            }
            let pairs = super::enumerate::pair_list(n);
            sample_sweep(s, p.seed, |rng, t| {
                let mut rows = vec![0u64; n];
                for &(u, v) in &pairs {
                    if rng.gen::<bool>() {
                        rows[u] |= bit(v);
                        rows[v] |= bit(u);
                    }
                }
                let g = Graph::from_rows_unchecked(rows);
                record(t, &g, aaa_check(&g, p.budget))
            })?
        }
        None => {
            let graphs = enumerate_graphs(n, p.enum_mode, |_| true)?;
            let parts = par::map(&graphs, |g| {
                let mut t = Tally::default();
                record(&mut t, g, aaa_check(g, p.budget)).map(|_| t)
            });
            parts.into_iter().try_fold(Tally::default(), |acc, t| Ok::<_, Error>(acc.merge(t?)))?
        }
    };
    let mut r = base_report(LemmaId::Aaa, p, Mode::Exhaustive).param("n", n);
    if p.samples.is_none() {
        r = r.param("enumeration", p.enum_mode.as_str());
    }
    r.absorb(tally);
    Ok(r.finish())
}

/// Common-neighborhood bound on one `(r+2)`-set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct L1Outcome {
    /// A pair of `S` with the most common neighbors (lowest pair on ties).
    pub pair: (usize, usize),
    pub common: usize,
    /// `common >= n / (2(r+2)(r+1))`.
    pub first_inequality: bool,
    /// `n / (2(r+2)(r+1)) >= r + 2k`.
    pub second_inequality: bool,
}

pub fn check_l1_instance(g: &Graph, k: usize, r: usize, set: &[usize]) -> Result<L1Outcome> {
    check_kr(k, r)?;
    if set.len() != r + 2 || set.iter().any(|&v| v >= g.n()) {
        return Err(Error::param(format!("need r + 2 = {} vertices of the graph", r + 2)));
    }
    let mut best: Option<((usize, usize), usize)> = None;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if u == v {
                return Err(Error::param("set has repeated vertices"));
            }
            let c = (g.adj(u) & g.adj(v)).count_ones() as usize;
            if best.is_none_or(|(_, b)| c > b) {
                best = Some(((u.min(v), u.max(v)), c));
            }
        }
    }
    let (pair, common) = best.expect("r + 2 >= 5 vertices give pairs");
    let den = 2 * (r + 2) * (r + 1);
    Ok(L1Outcome {
        pair,
        common,
        first_inequality: common * den >= g.n(),
        second_inequality: g.n() >= den * (r + 2 * k),
    })
}

/// All `(r+2)`-subsets of every `C_{2k+1}`-free graph on `n` vertices with
/// at least `edge_threshold(n, r)` edges.
fn l1(p: &LemmaParams) -> Result<VerificationReport> {
    let (n, k, r) = (p.n, p.k, p.r);
    check_kr(k, r)?;
    if p.samples.is_some() {
        return Err(Error::param("l1 is swept by enumeration only"));
    }
    let need = edge_threshold(n, r);
    let free = |g: &Graph| is_c2kplus1_free(g, k, Budget::UNLIMITED).unwrap_or(false);
    let graphs = match p.enum_mode {
        EnumMode::UpToIso => iso_classes(n, free)?,
        EnumMode::Labeled => enumerate_graphs(n, EnumMode::Labeled, free)?,
    };
    let graphs: Vec<Graph> = graphs.into_iter().filter(|g| g.m() >= need).collect();
    let size = r + 2;
    let parts = par::map(&graphs, |g| {
        let mut t = Tally::default();
        let mut set = Vec::with_capacity(size);
        subsets(g.n(), size, 0, &mut set, &mut |s| {
            let out = check_l1_instance(g, k, r, s)?;
            t.checked += 1;
            t.hypothesis_met += 1;
            if !out.first_inequality {
                t.violation(
                    to_graph6(g),
                    format!("max common neighborhood {} on pair {:?}", out.common, out.pair),
                    Some(json!({ "set": s, "pair": out.pair, "common": out.common })),
                );
            }
            Ok(())
        })?;
        Ok::<_, Error>(t)
    });
    let tally = parts.into_iter().try_fold(Tally::default(), |acc, t| Ok::<_, Error>(acc.merge(t?)))?;
    let den = 2 * (r + 2) * (r + 1);
    let mut rep = VerificationReport::new("l1", Mode::Exhaustive)
        .param("n", n)
        .param("k", k)
        .param("r", r)
        .param("enumeration", p.enum_mode.as_str())
        .param("graphs", graphs.len())
        .param("second_inequality", n >= den * (r + 2 * k));
    rep.absorb(tally);
    Ok(rep.finish())
}

fn subsets<F>(n: usize, size: usize, from: usize, set: &mut Vec<usize>, f: &mut F) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    if set.len() == size {
        return f(set);
    }
    for v in from..n {
        if n - v < size - set.len() {
            break;
        }
        set.push(v);
        subsets(n, size, v + 1, set, f)?;
        set.pop();
    }
    Ok(())
}
