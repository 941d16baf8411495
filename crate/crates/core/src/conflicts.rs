//! Conflict families C (H1 only), D (mixed) and the generated overlap family.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, VertexId};

#[derive(Clone, Debug)]
pub struct ConflictSystem {
    pub c: SetFamily,
    pub d: SetFamily,
    ell: usize,
    c_by_edge: SetFamily,
    d_by_edge: SetFamily,
    d_by_anchor: SetFamily,
}

fn canonical(h: &Hypergraph, raw: &[Vec<EdgeId>], what: &str, h1_only: bool) -> Result<SetFamily> {
    let mut fam = SetFamily::with_capacity(raw.len(), raw.iter().map(Vec::len).sum());
    let mut seen = HashSet::new();
    for (i, conflict) in raw.iter().enumerate() {
        let mut c = conflict.clone();
        c.sort_unstable();
        c.dedup();
        if c.len() != conflict.len() {
            return Err(Error::input(format!("{what} conflict #{i} repeats an edge")));
        }
        for &e in &c {
            if e as usize >= h.n_edges() {
                return Err(Error::UnknownEdge(e));
            }
            if h1_only && h.class(e) != EdgeClass::H1 {
                return Err(Error::input(format!("{what} conflict #{i} contains H2 edge {e}")));
            }
        }
        if !h1_only && !c.iter().any(|&e| h.class(e) == EdgeClass::H2) {
            return Err(Error::input(format!("{what} conflict #{i} has no H2 edge")));
        }
        if !seen.insert(c.clone()) {
            return Err(Error::input(format!("{what} conflict #{i} is a duplicate")));
        }
        fam.push(&c);
    }
    Ok(fam)
}

impl ConflictSystem {
    /// Validates and indexes raw conflict lists. `ell` defaults to the
    /// largest conflict size present (at least 2).
    pub fn new(h: &Hypergraph, c: &[Vec<EdgeId>], d: &[Vec<EdgeId>], ell: Option<usize>) -> Result<Self> {
        let c = canonical(h, c, "C", true)?;
        let d = canonical(h, d, "D", false)?;
        let largest = c.iter().chain(d.iter()).map(<[u32]>::len).max().unwrap_or(2).max(2);
        let ell = ell.unwrap_or(largest);
        Ok(Self::from_families(h, c, d, ell))
    }

    pub fn empty(h: &Hypergraph) -> Self {
        Self::from_families(h, SetFamily::new(), SetFamily::new(), 2)
    }

    pub(crate) fn from_families(h: &Hypergraph, c: SetFamily, d: SetFamily, ell: usize) -> Self {
        let ne = h.n_edges();
        let c_by_edge = c.transpose(ne);
        let d_by_edge = d.transpose(ne);
        let mut anchors = SetFamily::with_capacity(d.len(), d.total_items());
        for conflict in d.iter() {
            anchors.push(&v_p(h, conflict));
        }
        let d_by_anchor = anchors.transpose(h.n_p());
        ConflictSystem { c, d, ell, c_by_edge, d_by_edge, d_by_anchor }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn c_containing(&self, e: EdgeId) -> &[u32] {
        self.c_by_edge.get(e as usize)
    }

    pub fn d_containing(&self, e: EdgeId) -> &[u32] {
        self.d_by_edge.get(e as usize)
    }

    /// `D_x`: conflicts with `x` in their H2-part.
    pub fn d_at(&self, x: VertexId) -> &[u32] {
        self.d_by_anchor.get(x as usize)
    }
}

/// H1- and H2-parts of a conflict.
pub fn split(h: &Hypergraph, conflict: &[EdgeId]) -> (Vec<EdgeId>, Vec<EdgeId>) {
    conflict.iter().partition(|&&e| h.class(e) == EdgeClass::H1)
}

pub fn j1j2(h: &Hypergraph, conflict: &[EdgeId]) -> (usize, usize) {
    let j2 = conflict.iter().filter(|&&e| h.class(e) == EdgeClass::H2).count();
    (conflict.len() - j2, j2)
}

/// `V_P(E)`: sorted distinct P-vertices of the H2-part.
pub fn v_p(h: &Hypergraph, conflict: &[EdgeId]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = conflict.iter().filter(|&&e| h.class(e) == EdgeClass::H2).map(|&e| h.h2_anchor(e)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// All pairs `{e, f} ⊆ H2` with `∅ ≠ e ∩ f ⊆ R`, restricted to `allowed`
/// edges when given. Pairs at the same P-vertex are never produced: they
/// intersect in P, and at most one edge per P-vertex is ever chosen.
pub fn overlap_pairs(h: &Hypergraph, allowed: Option<&[bool]>) -> Vec<[EdgeId; 2]> {
    let ok = |e: EdgeId| allowed.is_none_or(|a| a[e as usize]);
    let mut out = Vec::new();
    let mut seen: HashSet<[EdgeId; 2]> = HashSet::new();
    for v in h.r_vertices() {
        let inc: Vec<EdgeId> = h.incident(v, EdgeClass::H2).iter().copied().filter(|&e| ok(e)).collect();
        for (i, &e) in inc.iter().enumerate() {
            for &f in &inc[i + 1..] {
                if h.h2_anchor(e) != h.h2_anchor(f) && seen.insert([e, f]) {
                    out.push([e, f]);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{HypergraphBuilder, Shape};

    fn toy() -> Hypergraph {
        // P = {0,1,2}, R = {3,4,5}, p = 2, q = 0, r = 1
        let mut b = HypergraphBuilder::new(Shape { n_p: 3, n_q: 0, n_r: 3, p: 2, q: 0, r: 1 });
        b.add_edge(EdgeClass::H1, &[0, 1]).unwrap(); // 0
        b.add_edge(EdgeClass::H1, &[1, 2]).unwrap(); // 1
        b.add_edge(EdgeClass::H1, &[0, 2]).unwrap(); // 2
        b.add_edge(EdgeClass::H2, &[0, 3]).unwrap(); // 3
        b.add_edge(EdgeClass::H2, &[1, 3]).unwrap(); // 4
        b.add_edge(EdgeClass::H2, &[2, 4]).unwrap(); // 5
        b.add_edge(EdgeClass::H2, &[0, 4]).unwrap(); // 6
        b.build().unwrap()
    }

    #[test]
    fn validation() {
        let h = toy();
        assert!(ConflictSystem::new(&h, &[vec![0, 3]], &[], None).is_err());
        assert!(ConflictSystem::new(&h, &[], &[vec![0, 1]], None).is_err());
        assert!(ConflictSystem::new(&h, &[vec![0, 1, 1]], &[], None).is_err());
        assert!(ConflictSystem::new(&h, &[vec![0, 1, 2], vec![2, 1, 0]], &[], None).is_err());
        let cs = ConflictSystem::new(&h, &[vec![2, 1, 0]], &[vec![0, 5, 3]], None).unwrap();
        assert_eq!(cs.c.get(0), &[0, 1, 2]);
        assert_eq!(cs.ell(), 3);
        assert_eq!(cs.d_at(0), &[0]);
        assert_eq!(cs.d_at(2), &[0]);
        assert!(cs.d_at(1).is_empty());
        assert_eq!(cs.d_containing(5), &[0]);
    }

    #[test]
    fn overlaps() {
        let h = toy();
        // 3,4 share R-vertex 3; 5,6 share R-vertex 4 (anchors differ)
        assert_eq!(overlap_pairs(&h, None), vec![[3, 4], [5, 6]]);
        let mut allowed = vec![true; h.n_edges()];
        allowed[4] = false;
        assert_eq!(overlap_pairs(&h, Some(&allowed)), vec![[5, 6]]);
    }
}
