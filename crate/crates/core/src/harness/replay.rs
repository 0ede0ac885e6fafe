//! Independent re-validation of reported violations.
//!
//! Each violation is re-checked from its graph6 string. Cycle questions go
//! through the full cycle spectrum, and `d2` / `gamma2` through brute force,
//! so a replay never reuses the code path that produced the report.

use serde_json::Value;

use crate::budget::Budget;
use crate::constructions::{clique_gamma2, complete_bipartite, conj_gamma2_bound, conj_threshold, edge_threshold};
use crate::cycles::cycle_spectrum;
use crate::error::{Error, Result};
use crate::graph::{bit, from_graph6, Bits, Graph};
use crate::harness::peel::min_degree_peel;
use crate::harness::report::{VerificationReport, Violation};
use crate::starters::{odd_path_lengths, StarterCertificate};

fn param(report: &VerificationReport, key: &str) -> Result<usize> {
    report
        .params
        .get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| Error::param(format!("report has no `{key}` parameter")))
}

fn odd_lengths(g: &Graph, budget: Budget) -> Result<Vec<usize>> {
    Ok(cycle_spectrum(g, budget)?.lengths().into_iter().filter(|l| l % 2 == 1).collect())
}

/// Minimum vertex deletion by trying subsets in order of size.
pub fn brute_force_d2(g: &Graph) -> usize {
    let n = g.n();
    (0..=n)
        .find(|&s| {
            (0..1u64 << n)
                .filter(|m| m.count_ones() as usize == s)
                .any(|m| crate::graph::bipartition_within(g, g.vertex_mask() & !m).is_some())
        })
        .unwrap_or(n)
}

/// Minimum edge deletion over all splits with vertex 0 on one side.
pub fn brute_force_gamma2(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    (0..1u64 << (n - 1))
        .map(|half| {
            let side = half << 1;
            g.edges().filter(|&(u, v)| (side >> u & 1) == (side >> v & 1)).count()
        })
        .min()
        .unwrap_or(0)
}

/// True when the violation is confirmed.
pub fn replay_violation(report: &VerificationReport, v: &Violation, budget: Budget) -> Result<bool> {
    let g = from_graph6(&v.graph6)?;
    let n = g.n();
    match report.target.as_str() {
        "degree" => {
            let len = param(report, "host_length")?;
            let on_host = (g.adj(len) & crate::graph::low_mask(len)).count_ones();
            Ok(n == len + 1 && on_host >= 3 && odd_lengths(&g, budget)?.iter().all(|&l| l >= len))
        }
        "www" => {
            let (len, k) = (param(report, "host_length")?, param(report, "k")?);
            let on_host = (g.adj(len) & crate::graph::low_mask(len)).count_ones() as usize;
            Ok(!odd_lengths(&g, budget)?.contains(&(2 * k + 1)) && on_host > (len - 1) / 2)
        }
        "outside" => {
            let len = param(report, "host_length")?;
            let m = (len - 1) / 2;
            Ok(!odd_lengths(&g, budget)?.contains(&(2 * m - 1))
                && odd_path_lengths(&g, len, len + 1, 2 * m - 3, budget)?.witnesses.is_empty())
        }
        "gchords" => {
            let (len, r) = (param(report, "host_length")?, param(report, "r")?);
            let m = (len - 1) / 2;
            let pair = v
                .witness
                .as_ref()
                .and_then(|w| w.get("pair"))
                .and_then(|p| serde_json::from_value::<(usize, usize)>(p.clone()).ok())
                .ok_or_else(|| Error::param("gchords violation without a pair"))?;
            let odd = odd_lengths(&g, budget)?;
            let shortest_admissible = odd.iter().copied().find(|&l| l > r);
            Ok(shortest_admissible == Some(len)
                && !odd.contains(&(2 * m - 1))
                && g.m() - len >= r
                && odd_path_lengths(&g, pair.0, pair.1, 2 * m - 3, budget)?.witnesses.is_empty())
        }
        "aaa" => {
            let spec = cycle_spectrum(&g, budget)?;
            let delta = g.min_degree().unwrap_or(0);
            let odd = spec.lengths().iter().any(|l| l % 2 == 1);
            let fine = spec.is_contiguous() && matches!(spec.girth(), Some(3 | 4));
            Ok(odd && 3 * delta >= n + 2 && !fine)
        }
        "l1" => {
            let r = param(report, "r")?;
            let set: Vec<usize> = v
                .witness
                .as_ref()
                .and_then(|w| w.get("set"))
                .and_then(|s| serde_json::from_value(s.clone()).ok())
                .ok_or_else(|| Error::param("l1 violation without a set"))?;
            let den = 2 * (r + 2) * (r + 1);
            let best = set
                .iter()
                .flat_map(|&u| set.iter().filter(move |&&w| w > u).map(move |&w| (u, w)))
                .map(|(u, w)| Bits(g.vertex_mask()).filter(|&x| g.has_edge(u, x) && g.has_edge(w, x)).count())
                .max()
                .unwrap_or(0);
            Ok(set.len() == r + 2 && best * den < n)
        }
        "theorem6" => {
            let (k, r) = (param(report, "k")?, param(report, "r")?);
            let odd = odd_lengths(&g, budget)?;
            Ok(g.m() >= edge_threshold(n, r) && !odd.contains(&(2 * k + 1)) && odd.iter().any(|&l| l > r))
        }
        "theorem9" => {
            let (k, r) = (param(report, "k")?, param(report, "r")?);
            let odd = odd_lengths(&g, budget)?;
            if g.m() < edge_threshold(n, r) || odd.contains(&(2 * k + 1)) {
                return Ok(false);
            }
            let (d, e) = (brute_force_d2(&g), brute_force_gamma2(&g));
            let iso = crate::constructions::t_star(r, n)
                .map(|t| same_graph_up_to_relabeling(&g, &t))
                .unwrap_or(false);
            let equal = d == r - 2 && e == clique_gamma2(r);
            Ok(d > r - 2 || e > clique_gamma2(r) || equal != iso)
        }
        "conjecture1" => {
            let (k, b) = (param(report, "k")?, param(report, "b")?);
            let odd = odd_lengths(&g, budget)?;
            let e = brute_force_gamma2(&g);
            if report.params.contains_key("family") {
                return Ok(g.m() != conj_threshold(n, k, b) || e != conj_gamma2_bound(k, b));
            }
            Ok(g.m() >= conj_threshold(n, k, b) && !odd.contains(&(2 * k + 1)) && e > conj_gamma2_bound(k, b))
        }
        "lemma2" => {
            let (k, r) = (param(report, "k")?, param(report, "r")?);
            let cert: StarterCertificate = v
                .witness
                .as_ref()
                .and_then(|w| serde_json::from_value(w.clone()).ok())
                .ok_or_else(|| Error::param("lemma2 violation without a certificate"))?;
            let odd = odd_lengths(&g, budget)?;
            Ok(g.m() >= edge_threshold(n, r)
                && !odd.contains(&(2 * k + 1))
                && cert.set.len() == r + 2
                && cert.validate(&g))
        }
        "peel" => {
            let r = param(report, "r")?;
            let trace = min_degree_peel(&g, r)?;
            Ok(trace.check(&g).is_err() || trace.deleted.len() > r - 1)
        }
        "turan" => {
            let max = param(report, "max_edges")?;
            let odd = odd_lengths(&g, budget)?;
            let target = complete_bipartite(n / 2, n.div_ceil(2))?;
            let k = param(report, "k")?;
            Ok(!odd.contains(&(2 * k + 1))
                && g.m() == max
                && (max != n * n / 4 || !same_graph_up_to_relabeling(&g, &target)))
        }
        other => Err(Error::param(format!("no replay for target `{other}`"))),
    }
}

/// Isomorphism by trying every bijection that respects degrees. Only meant
/// for the small graphs in reports.
fn same_graph_up_to_relabeling(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.m() != h.m() {
        return false;
    }
    let mut map = vec![usize::MAX; g.n()];
    extend_map(g, h, 0, 0, &mut map)
}

fn extend_map(g: &Graph, h: &Graph, v: usize, used: u64, map: &mut Vec<usize>) -> bool {
    if v == g.n() {
        return true;
    }
    for w in Bits(h.vertex_mask() & !used) {
        if g.degree(v) != h.degree(w) {
            continue;
        }
        if (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w)) {
            map[v] = w;
            if extend_map(g, h, v + 1, used | bit(w), map) {
                return true;
            }
        }
    }
    false
}

/// Replays every violation of a report.
pub fn replay_report(report: &VerificationReport, budget: Budget) -> Result<Vec<bool>> {
    report.violations.iter().map(|v| replay_violation(report, v, budget)).collect()
}
