//! Counterexample searches over enumerated graph classes.
//!
//! Every target here is an asymptotic statement, so small-`n` violations are
//! data about where the statement starts to hold, not refutations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bipartization::gamma2;
use crate::budget::Budget;
use crate::constructions::{complete_bipartite, conj_gamma2_bound, conj_threshold, edge_threshold, t_star_star};
use crate::cycles::is_c2kplus1_free;
use crate::error::{Error, Result};
use crate::graph::{canonical_form, is_isomorphic, to_graph6, Graph};
use crate::harness::enumerate::{check_cap, enumerate_graphs, iso_classes, EnumMode};
use crate::harness::instances::{check_kr, check_main_theorem_instance, check_stability_instance, MainOutcome};
use crate::harness::peel::min_degree_peel;
use crate::harness::report::{Mode, Tally, VerificationReport};
use crate::par;
use crate::starters::find_starter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchTarget {
    /// Long odd cycles above the edge threshold.
    Theorem6,
    /// `d2` / `gamma2` bounds and the equality characterization.
    Theorem9,
    /// `gamma2` bound above the three-block threshold.
    Conjecture1,
    /// A starter in a `C_{2k+1}`-free graph above the edge threshold.
    Lemma2,
    /// Peeling deletes more than `r - 1` vertices above the edge threshold.
    Peel,
}

impl SearchTarget {
    pub const ALL: [SearchTarget; 5] = [
        SearchTarget::Theorem6,
        SearchTarget::Theorem9,
        SearchTarget::Conjecture1,
        SearchTarget::Lemma2,
        SearchTarget::Peel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SearchTarget::Theorem6 => "theorem6",
            SearchTarget::Theorem9 => "theorem9",
            SearchTarget::Conjecture1 => "conjecture1",
            SearchTarget::Lemma2 => "lemma2",
            SearchTarget::Peel => "peel",
        }
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SearchTarget::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::param(format!("unknown search target `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub n_min: usize,
    pub n_max: usize,
    pub k: usize,
    /// `r` for the theorem targets, `b` for the conjecture.
    pub r_or_b: usize,
    pub enum_mode: EnumMode,
    /// Conjecture only: check the three-block family instead of enumerating.
    pub family: bool,
    pub budget: Budget,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            n_min: 1,
            n_max: 6,
            k: 2,
            r_or_b: 3,
            enum_mode: EnumMode::UpToIso,
            family: false,
            budget: Budget(100_000_000),
        }
    }
}

/// `C_{2k+1}`-free graphs on `n` vertices.
pub fn free_graphs(n: usize, k: usize, mode: EnumMode) -> Result<Vec<Graph>> {
    let free = |g: &Graph| is_c2kplus1_free(g, k, Budget::UNLIMITED).unwrap_or(false);
    match mode {
        EnumMode::UpToIso => iso_classes(n, free),
        EnumMode::Labeled => enumerate_graphs(n, EnumMode::Labeled, free),
    }
}

pub fn search_counterexample(target: SearchTarget, p: &SearchParams) -> Result<VerificationReport> {
    if p.n_min > p.n_max {
        return Err(Error::param("empty n range"));
    }
    let k = p.k;
    match target {
        SearchTarget::Conjecture1 => {
            let b = p.r_or_b;
            if k < 2 || b < 3 || b > 2 * k {
                return Err(Error::param(format!("need k >= 2 and 3 <= b <= 2k, got k = {k}, b = {b}")));
            }
        }
        _ => check_kr(k, p.r_or_b)?,
    }
    if target == SearchTarget::Conjecture1 && p.family {
        return conjecture_family(p);
    }
    check_cap(p.n_max, p.enum_mode)?;
    let key = if target == SearchTarget::Conjecture1 { "b" } else { "r" };
    let mut report = VerificationReport::new(target.as_str(), Mode::Exhaustive)
        .param("k", k)
        .param(key, p.r_or_b)
        .param("n_range", json!([p.n_min, p.n_max]))
        .param("enumeration", p.enum_mode.as_str());
    report.hypothesis_met = Some(0);
    for n in p.n_min..=p.n_max {
        let graphs = free_graphs(n, k, p.enum_mode)?;
        let parts = par::map(&graphs, |g| {
            let mut t = Tally {
                checked: 1,
                ..Tally::default()
            };
            match evaluate(target, g, p, &mut t) {
                Ok(()) => Ok(t),
                Err(Error::BudgetExceeded(_)) => Ok(Tally {
                    checked: 1,
                    skipped: 1,
                    ..Tally::default()
                }),
                Err(e) => Err(e),
            }
        });
        for t in parts {
            report.absorb(t?);
        }
    }
    Ok(report.finish())
}

fn evaluate(target: SearchTarget, g: &Graph, p: &SearchParams, t: &mut Tally) -> Result<()> {
    let (k, r) = (p.k, p.r_or_b);
    let n = g.n();
    match target {
        SearchTarget::Theorem6 => {
            if let MainOutcome::Violation { witness } = check_main_theorem_instance(g, k, r, p.budget)? {
                t.hypothesis_met += 1;
                t.violation(
                    to_graph6(g),
                    format!("odd cycle of length {} > r = {r}", witness.len()),
                    Some(json!({ "cycle": witness })),
                );
            } else if g.m() >= edge_threshold(n, r) {
                t.hypothesis_met += 1;
            }
        }
        SearchTarget::Theorem9 => {
            if g.m() < edge_threshold(n, r) {
                return Ok(());
            }
            let s = check_stability_instance(g, k, r, p.budget)?;
            t.hypothesis_met += 1;
            if s.is_violation() {
                t.violation(
                    to_graph6(g),
                    format!(
                        "d2 = {} (bound {}), gamma2 = {} (bound {}), isomorphic to T* = {:?}",
                        s.d2, s.d2_bound, s.gamma2, s.gamma2_bound, s.isomorphic_to_t_star
                    ),
                    Some(serde_json::to_value(&s).expect("serializable")),
                );
            }
        }
        SearchTarget::Conjecture1 => {
            let b = r;
            if g.m() < conj_threshold(n, k, b) {
                return Ok(());
            }
            t.hypothesis_met += 1;
            let e = gamma2(g, p.budget)?;
            let bound = conj_gamma2_bound(k, b);
            if e.size > bound {
                t.violation(
                    to_graph6(g),
                    format!("gamma2 = {} exceeds {bound}", e.size),
                    Some(json!({ "removed": e.removed, "gamma2": e.size })),
                );
            }
        }
        SearchTarget::Lemma2 => {
            if g.m() < edge_threshold(n, r) {
                return Ok(());
            }
            t.hypothesis_met += 1;
            // any (s, r+2)-starter is also a (1, r+2)-starter
            if let Some(cert) = find_starter(g, r, 1, k, p.budget)? {
                t.violation(
                    to_graph6(g),
                    format!("(1, {})-starter {:?} in a C{}-free graph", r + 2, cert.set, 2 * k + 1),
                    Some(serde_json::to_value(&cert).expect("serializable")),
                );
            }
        }
        SearchTarget::Peel => {
            if g.m() < edge_threshold(n, r) {
                return Ok(());
            }
            t.hypothesis_met += 1;
            let trace = min_degree_peel(g, r)?;
            if let Err(e) = trace.check(g) {
                t.violation(to_graph6(g), format!("trace invariant broken: {e}"), None);
            } else if trace.deleted.len() > r - 1 {
                t.violation(
                    to_graph6(g),
                    format!("peeling deleted {} > r - 1 = {} vertices", trace.deleted.len(), r - 1),
                    Some(json!({ "deleted": trace.deleted_vertices() })),
                );
            }
        }
    }
    Ok(())
}

/// `T**(2k+b, n)` meets its own threshold with equality and has `gamma2`
/// equal to the conjectured bound.
fn conjecture_family(p: &SearchParams) -> Result<VerificationReport> {
    let (k, b) = (p.k, p.r_or_b);
    let r = 2 * k + b;
    let ns: Vec<usize> = (p.n_min.max(r)..=p.n_max).collect();
    let parts = par::map(&ns, |&n| {
        let mut t = Tally {
            checked: 1,
            ..Tally::default()
        };
        let g = t_star_star(k, b, n)?;
        let threshold = conj_threshold(n, k, b);
        let bound = conj_gamma2_bound(k, b);
        if !is_c2kplus1_free(&g, k, p.budget)? {
            t.violation(to_graph6(&g), format!("T** contains a C{}", 2 * k + 1), None);
            return Ok(t);
        }
        t.hypothesis_met = 1;
        let e = gamma2(&g, p.budget)?.size;
        if g.m() != threshold || e != bound {
            t.violation(
                to_graph6(&g),
                format!("n = {n}: edges {} vs {threshold}, gamma2 {e} vs {bound}", g.m()),
                Some(json!({ "n": n, "edges": g.m(), "gamma2": e })),
            );
        }
        Ok::<_, Error>(t)
    });
    let mut report = VerificationReport::new("conjecture1", Mode::Targeted)
        .param("k", k)
        .param("b", b)
        .param("n_range", json!([p.n_min, p.n_max]))
        .param("family", "t_star_star");
    report.hypothesis_met = Some(0);
    for t in parts {
        report.absorb(t?);
    }
    Ok(report.finish())
}

/// Outcome of the `ex(n, C_{2k+1})` check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuranSummary {
    pub max_edges: usize,
    /// Canonical graph6 of every extremal class.
    pub extremal: Vec<String>,
    pub report: VerificationReport,
}

/// Maximum edge count over `C_{2k+1}`-free graphs on `n` vertices, and
/// whether `K_{floor(n/2), ceil(n/2)}` is the only graph attaining it.
pub fn verify_turan_extremal(n: usize, k: usize, mode: EnumMode) -> Result<TuranSummary> {
    if k < 1 || n < 4 * k - 2 {
        return Err(Error::param(format!("need n >= 4k - 2, got n = {n}, k = {k}")));
    }
    check_cap(n, mode)?;
    let graphs = free_graphs(n, k, mode)?;
    let max_edges = graphs.iter().map(Graph::m).max().unwrap_or(0);
    let mut forms: Vec<String> = graphs
        .iter()
        .filter(|g| g.m() == max_edges)
        .map(|g| canonical_form(g).into_string())
        .collect();
    forms.sort();
    forms.dedup();
    let expected_edges = n * n / 4;
    let target = complete_bipartite(n / 2, n.div_ceil(2))?;
    let mut t = Tally {
        checked: graphs.len() as u64,
        hypothesis_met: graphs.len() as u64,
        ..Tally::default()
    };
    if max_edges != expected_edges {
        t.violation(
            forms[0].clone(),
            format!("maximum is {max_edges} edges, expected {expected_edges}"),
            None,
        );
    }
    for f in &forms {
        let g = crate::graph::from_graph6(f)?;
        if !is_isomorphic(&g, &target) {
            t.violation(
                f.clone(),
                format!("extremal graph with {} edges is not K{{{},{}}}", g.m(), n / 2, n.div_ceil(2)),
                Some(json!({ "degrees": g.degree_sequence() })),
            );
        }
    }
    let mut report = VerificationReport::new("turan", Mode::Exhaustive)
        .param("n", n)
        .param("k", k)
        .param("enumeration", mode.as_str())
        .param("max_edges", max_edges)
        .param("extremal_classes", forms.len());
    report.absorb(t);
    Ok(TuranSummary {
        max_edges,
        extremal: forms,
        report: report.finish(),
    })
}
