//! Exhaustive enumeration of small graphs, labeled or up to isomorphism.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical_form, from_graph6, CanonicalForm, Graph};
use crate::par;

/// Largest `n` for labeled enumeration (`2^21` graphs).
pub const LABELED_MAX: usize = 7;
/// Largest `n` for isomorphism-class enumeration.
pub const ISO_MAX: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumMode {
    Labeled,
    #[serde(rename = "iso")]
    UpToIso,
}

impl EnumMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EnumMode::Labeled => "labeled",
            EnumMode::UpToIso => "iso",
        }
    }
}

/// Vertex pairs `(u, v)`, `u < v`, in lexicographic order. Bit `i` of a
/// labeled index selects `pairs[i]`.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub fn labeled_count(n: usize) -> Result<u64> {
    check_cap(n, EnumMode::Labeled)?;
    Ok(1u64 << pair_list(n).len())
}

pub fn labeled_graph(n: usize, pairs: &[(usize, usize)], index: u64) -> Graph {
    let mut rows = vec![0u64; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if index >> i & 1 == 1 {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
    }
    Graph::from_rows_unchecked(rows)
}

pub fn check_cap(n: usize, mode: EnumMode) -> Result<()> {
    let cap = match mode {
        EnumMode::Labeled => LABELED_MAX,
        EnumMode::UpToIso => ISO_MAX,
    };
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    Ok(())
}

/// All `n`-vertex graphs satisfying `keep`. Labeled mode yields them in
/// index order; iso mode yields one canonically labeled representative per
/// class, sorted by graph6.
pub fn enumerate_graphs<F>(n: usize, mode: EnumMode, keep: F) -> Result<Vec<Graph>>
where
    F: Fn(&Graph) -> bool + Sync + Send,
{
    check_cap(n, mode)?;
    match mode {
        EnumMode::Labeled => {
            let pairs = pair_list(n);
            let parts = par::map_chunks(0..1u64 << pairs.len(), 1 << 14, |range| {
                range.map(|i| labeled_graph(n, &pairs, i)).filter(|g| keep(g)).collect::<Vec<_>>()
            });
            Ok(parts.into_iter().flatten().collect())
        }
        EnumMode::UpToIso => Ok(iso_classes(n, |_| true)?.into_iter().filter(|g| keep(g)).collect()),
    }
}

/// Isomorphism classes on `n` vertices whose every induced subgraph on a
/// vertex prefix satisfies `keep`. For a property closed under vertex
/// deletion this is exactly the set of classes with the property.
///
/// Classes on `i` vertices come from classes on `i - 1` vertices by adding a
/// vertex with every possible neighborhood, then deduplicating by canonical
/// form.
pub fn iso_classes<F>(n: usize, keep: F) -> Result<Vec<Graph>>
where
    F: Fn(&Graph) -> bool + Sync + Send,
{
    check_cap(n, EnumMode::UpToIso)?;
    let mut level = vec![Graph::empty(0)?];
    for i in 1..=n {
        let forms = par::map(&level, |parent| {
            let mut out = Vec::new();
            for nb in 0..1u64 << (i - 1) {
                let child = parent.with_vertex(nb).expect("i <= ISO_MAX");
                if keep(&child) {
                    out.push(canonical_form(&child));
                }
            }
            out
        });
        let unique: BTreeSet<CanonicalForm> = forms.into_iter().flatten().collect();
        level = unique
            .iter()
            .map(|f| from_graph6(f.as_str()).expect("canonical forms are valid graph6"))
            .collect();
    }
    Ok(level)
}
