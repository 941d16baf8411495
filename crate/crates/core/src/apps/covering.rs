//! Covering reduction: a `k`-graph with conflicts becomes a tripartite
//! instance whose P-perfect conflict-free matchings are coverings using every
//! vertex at most twice.

use std::collections::HashMap;

use crate::conflicts::ConflictSystem;
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, HypergraphBuilder, Matching, Shape};
use crate::model::{ConflictModel, Projected};

#[derive(Clone, Debug)]
pub struct CoveringInstance {
    pub h: Hypergraph,
    pub model: Projected,
    /// Number of source vertices.
    pub n: u32,
    pub k: u32,
}

impl CoveringInstance {
    pub fn conflict_model(&self) -> ConflictModel {
        ConflictModel::Projected(self.model.clone())
    }

    pub fn n_sources(&self) -> usize {
        self.h.edges_of(EdgeClass::H1).len()
    }
}

/// The input must be a plain `k`-graph: only P-vertices, only H1 edges.
/// Source edge `s` keeps id `s` in H1; its duplicate anchored at the `i`-th
/// vertex of `s` gets id `|H1| + s·k + i`, using the R-copies of the other
/// `k - 1` vertices.
pub fn build_covering_reduction(h_in: &Hypergraph, c_in: &[Vec<EdgeId>], ell: Option<usize>) -> Result<CoveringInstance> {
    let s = h_in.shape();
    if s.n_q != 0 || s.q != 0 || !h_in.edges_of(EdgeClass::H2).is_empty() {
        return Err(Error::input("covering input must be a k-graph on P with no Q part and no H2 edges"));
    }
    if s.p < 2 {
        return Err(Error::input("covering input must have uniformity at least 2"));
    }
    if h_in.has_dummies() {
        return Err(Error::input("covering input must not contain dummy edges"));
    }
    let (n, k) = (s.n_p, s.p);
    let shape = Shape { n_p: n, n_q: 0, n_r: n, p: k, q: 0, r: k - 1 };
    let mut b = HypergraphBuilder::new(shape);
    let sources = h_in.edges_of(EdgeClass::H1);
    let mut source = Vec::with_capacity(sources.len() * (k as usize + 1));
    for (i, &e) in sources.iter().enumerate() {
        b.add_edge(EdgeClass::H1, h_in.edge(e))?;
        source.push(i as EdgeId);
    }
    let mut map = vec![EdgeId::MAX; h_in.n_edges()];
    for (i, &e) in sources.iter().enumerate() {
        map[e as usize] = i as EdgeId;
    }
    for (i, &e) in sources.iter().enumerate() {
        let vs = h_in.edge(e);
        for &v in vs {
            let mut dup = vec![v];
            dup.extend(vs.iter().filter(|&&u| u != v).map(|&u| n + u));
            b.add_edge(EdgeClass::H2, &dup)?;
            source.push(i as EdgeId);
        }
    }
    let h = b.build()?;
    let c: Vec<Vec<EdgeId>> = c_in
        .iter()
        .map(|c| c.iter().map(|&e| map.get(e as usize).copied().filter(|&m| m != EdgeId::MAX).ok_or(Error::UnknownEdge(e))).collect())
        .collect::<Result<_>>()?;
    let cs = ConflictSystem::new(&h, &c, &[], ell)?;
    let model = Projected::new(&h, cs, source);
    Ok(CoveringInstance { h, model, n, k })
}

/// All copies of the source conflicts using at least one duplicate: the
/// explicit mixed family of the reduction.
pub fn explicit_mixed(inst: &CoveringInstance) -> Vec<Vec<EdgeId>> {
    let mut out = Vec::new();
    for c in inst.model.cs.c.iter() {
        let options: Vec<Vec<EdgeId>> = c.iter().map(|&s| std::iter::once(s).chain(inst.model.duplicates.get(s as usize).iter().copied()).collect()).collect();
        let mut pick = vec![0usize; c.len()];
        loop {
            if pick.iter().any(|&i| i > 0) {
                let mut conflict: Vec<EdgeId> = pick.iter().zip(&options).map(|(&i, o)| o[i]).collect();
                conflict.sort_unstable();
                out.push(conflict);
            }
            let mut pos = 0;
            while pos < pick.len() {
                pick[pos] += 1;
                if pick[pos] < options[pos].len() {
                    break;
                }
                pick[pos] = 0;
                pos += 1;
            }
            if pos == pick.len() {
                break;
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Source edges used by a matching, sorted and deduplicated.
pub fn decode_cover(inst: &CoveringInstance, m: &Matching) -> Result<Vec<EdgeId>> {
    let mut cover = Vec::with_capacity(m.m1.len() + m.m2.len());
    for &e in m.m1.iter().chain(&m.m2) {
        cover.push(*inst.model.source.get(e as usize).ok_or(Error::UnknownEdge(e))?);
    }
    cover.sort_unstable();
    cover.dedup();
    Ok(cover)
}

/// Girth-style conflicts of a `k`-graph: minimal collections of `3 <= j <= ell`
/// edges, pairwise sharing at most one vertex, that span at most
/// `(k - 2)j + 2` vertices. Minimal ones are connected, so the search grows
/// each collection from its smallest edge through incident edges.
pub fn girth_conflicts(h: &Hypergraph, ell: usize) -> Vec<Vec<EdgeId>> {
    use crate::apps::steiner::{common, has_bad_proper_subcollection, span_bound};
    use rayon::prelude::*;

    let k = h.shape().p as usize;
    if k < 3 || ell < 3 {
        return Vec::new();
    }
    let edges = h.edges_of(EdgeClass::H1);
    let limit = span_bound(k, 2, ell);
    // edges through each vertex pair, for steps that must reuse two vertices
    let mut pairs: HashMap<(u32, u32), Vec<EdgeId>> = HashMap::new();
    for &e in edges {
        let v = h.edge(e);
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                pairs.entry((v[i], v[j])).or_default().push(e);
            }
        }
    }
    struct Search<'a> {
        h: &'a Hypergraph,
        pairs: &'a HashMap<(u32, u32), Vec<EdgeId>>,
        k: usize,
        ell: usize,
        limit: usize,
    }
    fn rec(s: &Search, stack: &mut Vec<EdgeId>, union: &[u32], out: &mut Vec<Vec<EdgeId>>) {
        let (h, k) = (s.h, s.k);
        let budget = s.limit - union.len();
        let mut cands: Vec<EdgeId> = if budget + 2 <= k {
            let mut c = Vec::new();
            for (i, &u) in union.iter().enumerate() {
                for &v in &union[i + 1..] {
                    c.extend(s.pairs.get(&(u, v)).into_iter().flatten().copied());
                }
            }
            c
        } else {
            union.iter().flat_map(|&v| h.incident(v, EdgeClass::H1).iter().copied()).collect()
        };
        cands.retain(|&f| f > stack[0] && !stack.contains(&f));
        cands.sort_unstable();
        cands.dedup();
        for f in cands {
            let ef = h.edge(f);
            let fresh = ef.iter().filter(|v| union.binary_search(v).is_err()).count();
            if fresh > budget || stack.iter().any(|&e| common(h.edge(e), ef) > 1) {
                continue;
            }
            stack.push(f);
            let j = stack.len();
            if union.len() + fresh <= span_bound(k, 2, j) {
                let sets: Vec<&[u32]> = stack.iter().map(|&e| h.edge(e)).collect();
                if j >= 3 && !has_bad_proper_subcollection(&sets, k, 2) {
                    let mut c = stack.clone();
                    c.sort_unstable();
                    out.push(c);
                }
            } else if j < s.ell {
                let mut grown: Vec<u32> = union.iter().chain(ef).copied().collect();
                grown.sort_unstable();
                grown.dedup();
                rec(s, stack, &grown, out);
            }
            stack.pop();
        }
    }
    let search = Search { h, pairs: &pairs, k, ell, limit };
    let mut out: Vec<Vec<EdgeId>> = edges
        .par_iter()
        .flat_map_iter(|&e| {
            let mut found = Vec::new();
            rec(&search, &mut vec![e], h.edge(e), &mut found);
            found
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// How many chosen edges cover each source vertex.
pub fn multiplicity(h_in: &Hypergraph, cover: &[EdgeId]) -> Vec<u32> {
    let mut mult = vec![0u32; h_in.n_p()];
    let sources = h_in.edges_of(EdgeClass::H1);
    for &s in cover {
        for &v in h_in.edge(sources[s as usize]) {
            mult[v as usize] += 1;
        }
    }
    mult
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::binom;
    use crate::conflicts::j1j2;

    fn source(n: u32, k: u32, edges: &[&[u32]]) -> Hypergraph {
        let mut b = HypergraphBuilder::new(Shape { n_p: n, n_q: 0, n_r: 1, p: k, q: 0, r: 1 });
        for e in edges {
            b.add_edge(EdgeClass::H1, e).unwrap();
        }
        b.build().unwrap()
    }

    #[test]
    fn perfect_matching_covers_once() {
        let h_in = source(6, 3, &[&[0, 1, 2], &[3, 4, 5]]);
        let inst = build_covering_reduction(&h_in, &[], None).unwrap();
        assert_eq!(inst.h.edges_of(EdgeClass::H2).len(), 6);
        assert_eq!(inst.h.edge(2), &[0, 7, 8]);
        let m = Matching::new(&inst.h, vec![0, 1], vec![]);
        let cover = decode_cover(&inst, &m).unwrap();
        assert_eq!(cover, vec![0, 1]);
        assert!(multiplicity(&h_in, &cover).iter().all(|&c| c == 1));
    }

    #[test]
    fn double_cover_comes_from_p_and_r() {
        let h_in = source(5, 3, &[&[0, 1, 2], &[2, 3, 4], &[0, 3, 4]]);
        let inst = build_covering_reduction(&h_in, &[], None).unwrap();
        // H1 edge 0 covers 0,1,2; the duplicate of edge 1 anchored at 3 uses R-copies of 2 and 4
        let dup = inst.model.duplicates.get(1)[1];
        assert_eq!(inst.h.edge(dup), &[3, 7, 9]);
        let dup4 = inst.model.duplicates.get(2)[2];
        assert_eq!(inst.h.edge(dup4), &[4, 5, 8]);
        let m = Matching::new(&inst.h, vec![0], vec![dup, dup4]);
        m.check(&inst.h).unwrap();
        assert!(m.uncovered.is_empty());
        let cover = decode_cover(&inst, &m).unwrap();
        let mult = multiplicity(&h_in, &cover);
        assert_eq!(mult, vec![2, 1, 2, 2, 2]);
    }

    #[test]
    fn mixed_counts_match_the_duplication_bound() {
        let h_in = source(12, 3, &[&[0, 1, 2], &[3, 4, 5], &[6, 7, 8], &[9, 10, 11]]);
        let inst = build_covering_reduction(&h_in, &[vec![0, 1, 2, 3]], None).unwrap();
        let d = explicit_mixed(&inst);
        let (j, k) = (4u64, 3u64);
        assert_eq!(d.len() as u64, (k + 1).pow(4) - 1);
        // conflicts through a fixed duplicate, by (j1, j2)
        let e = inst.model.duplicates.get(0)[0];
        for j2 in 1..=j {
            let j1 = j - j2;
            let count = d.iter().filter(|c| c.contains(&e) && j1j2(&inst.h, c) == (j1 as usize, j2 as usize)).count() as u64;
            assert_eq!(count, binom(j - 1, j1) * k.pow(j2 as u32 - 1));
        }
    }

    #[test]
    fn girth_conflicts_match_the_steiner_search() {
        // on a complete 3-graph the girth conflicts are the bad configurations for t = 2
        let kappa = crate::apps::steiner::complete_candidates(7, 3);
        let edges: Vec<&[u32]> = kappa.iter().map(Vec::as_slice).collect();
        let h = source(7, 3, &edges);
        let ours = girth_conflicts(&h, 4);
        let mut theirs = crate::apps::steiner::bad_configurations(&kappa, 3, 2, 4);
        theirs.sort_unstable();
        assert!(!ours.is_empty());
        assert_eq!(ours, theirs);
    }

    #[test]
    fn rejects_tripartite_input() {
        let mut b = HypergraphBuilder::new(Shape { n_p: 2, n_q: 2, n_r: 1, p: 1, q: 1, r: 1 });
        b.add_edge(EdgeClass::H1, &[0, 2]).unwrap();
        assert!(build_covering_reduction(&b.build().unwrap(), &[], None).is_err());
    }
}
