//! High-girth coverings by `s`-sets: every `t`-set of `[m]` covered, with no
//! `j` pairwise `t`-sparse chosen sets spanning at most `(s-t)j + t` points.

use std::collections::HashSet;

use crate::apps::covering::{build_covering_reduction, CoveringInstance};
use crate::comb::{binom, colex_rank, colex_unrank, combinations};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, HypergraphBuilder, Shape};

#[derive(Clone, Debug)]
pub struct SteinerInstance {
    pub m: u32,
    pub s: usize,
    pub t: usize,
    pub ell: usize,
    /// Candidate `s`-sets, sorted; source edge `i` is `kappa[i]`.
    pub kappa: Vec<Vec<u32>>,
    /// The `binom(s, t)`-graph on the `t`-subsets of `[m]`.
    pub base: Hypergraph,
    /// Minimal bad configurations as index lists into `kappa`.
    pub conflicts: Vec<Vec<EdgeId>>,
    pub cover: CoveringInstance,
}

pub fn span_bound(s: usize, t: usize, j: usize) -> usize {
    (s - t) * j + t
}

fn union_size(sets: &[&[u32]]) -> usize {
    let mut u: Vec<u32> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    u.sort_unstable();
    u.dedup();
    u.len()
}

pub(crate) fn common(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

pub(crate) fn is_bad(sets: &[&[u32]], s: usize, t: usize) -> bool {
    union_size(sets) <= span_bound(s, t, sets.len())
}

pub(crate) fn has_bad_proper_subcollection(sets: &[&[u32]], s: usize, t: usize) -> bool {
    let j = sets.len();
    (1u32..(1 << j) - 1).filter(|mask| mask.count_ones() >= 2).any(|mask| {
        let sub: Vec<&[u32]> = (0..j).filter(|i| mask >> i & 1 == 1).map(|i| sets[i]).collect();
        is_bad(&sub, s, t)
    })
}

/// Minimal bad `j`-configurations for `3 <= j <= ell` among `kappa`, as
/// sorted index lists. Depth-first over increasing indices; a partial
/// collection is dropped once its union exceeds the largest admissible span
/// or once it is bad itself (extensions would not be minimal).
pub fn bad_configurations(kappa: &[Vec<u32>], s: usize, t: usize, ell: usize) -> Vec<Vec<EdgeId>> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(kappa: &[Vec<u32>], s: usize, t: usize, ell: usize, start: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<EdgeId>>) {
        for i in start..kappa.len() {
            if stack.iter().any(|&a| common(&kappa[a], &kappa[i]) >= t) {
                continue;
            }
            stack.push(i);
            let sets: Vec<&[u32]> = stack.iter().map(|&a| kappa[a].as_slice()).collect();
            let u = union_size(&sets);
            if u <= span_bound(s, t, ell) {
                let j = stack.len();
                if j >= 2 && u <= span_bound(s, t, j) {
                    if j >= 3 && !has_bad_proper_subcollection(&sets, s, t) {
                        out.push(stack.iter().map(|&a| a as EdgeId).collect());
                    }
                } else if j < ell {
                    rec(kappa, s, t, ell, i + 1, stack, out);
                }
            }
            stack.pop();
        }
    }
    rec(kappa, s, t, ell, 0, &mut stack, &mut out);
    out
}

/// The base `binom(s,t)`-graph: vertices are the `t`-subsets of `[m]` by
/// colex rank, with one edge per candidate set.
pub fn base_graph(m: u32, s: usize, t: usize, kappa: &[Vec<u32>]) -> Result<Hypergraph> {
    let n = binom(m as u64, t as u64) as u32;
    let k = binom(s as u64, t as u64) as u32;
    let mut b = HypergraphBuilder::new(Shape { n_p: n, n_q: 0, n_r: 1, p: k, q: 0, r: 1 });
    let mut covered = vec![false; n as usize];
    for set in kappa {
        let mut e: Vec<u32> = combinations(set, t).iter().map(|x| colex_rank(x) as u32).collect();
        e.sort_unstable();
        for &v in &e {
            covered[v as usize] = true;
        }
        b.add_edge(EdgeClass::H1, &e)?;
    }
    if let Some(v) = covered.iter().position(|c| !c) {
        return Err(Error::input(format!("t-set {:?} lies in no candidate", colex_unrank(v as u64, t))));
    }
    b.build()
}

pub fn build_steiner_covering(m: u32, s: usize, t: usize, kappa: Vec<Vec<u32>>, ell: usize) -> Result<SteinerInstance> {
    if !(2 <= t && t < s && s <= m as usize) {
        return Err(Error::input("need 2 <= t < s <= m"));
    }
    if ell < 2 {
        return Err(Error::input("ell must be at least 2"));
    }
    let mut seen = HashSet::new();
    let mut clean = Vec::with_capacity(kappa.len());
    for mut set in kappa {
        set.sort_unstable();
        set.dedup();
        if set.len() != s || set.iter().any(|&v| v >= m) {
            return Err(Error::input(format!("candidate {set:?} is not an {s}-subset of [{m}]")));
        }
        if seen.insert(set.clone()) {
            clean.push(set);
        }
    }
    clean.sort_unstable();
    let base = base_graph(m, s, t, &clean)?;
    let conflicts = bad_configurations(&clean, s, t, ell);
    let conflict_ell = conflicts.iter().map(Vec::len).max().unwrap_or(2);
    let cover = build_covering_reduction(&base, &conflicts, Some(conflict_ell))?;
    Ok(SteinerInstance { m, s, t, ell, kappa: clean, base, conflicts, cover })
}

/// Every `s`-subset of `[m]`.
pub fn complete_candidates(m: u32, s: usize) -> Vec<Vec<u32>> {
    combinations(&(0..m).collect::<Vec<_>>(), s)
}
