//! Tripartite hypergraph `H = H1 ∪ H2` over vertex parts P, Q, R.
//!
//! Vertex ids are global and dense: the P block comes first, then Q, then R.
//! Edge ids are dense in insertion order. Every edge stores its vertices in
//! strictly increasing order, so the P-vertices of an edge form a prefix.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::comb::for_each_combination;
use crate::error::{Error, Result};
use crate::family::SetFamily;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    P,
    Q,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeClass {
    H1,
    H2,
}

impl EdgeClass {
    fn slot(self) -> usize {
        match self {
            EdgeClass::H1 => 0,
            EdgeClass::H2 => 1,
        }
    }
}

/// Shape parameters shared by all edges of a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub n_p: u32,
    pub n_q: u32,
    pub n_r: u32,
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl Shape {
    pub fn k(&self) -> u32 {
        self.p + self.q
    }

    pub fn n_vertices(&self) -> u32 {
        self.n_p + self.n_q + self.n_r
    }

    pub fn part(&self, v: VertexId) -> Option<Part> {
        if v < self.n_p {
            Some(Part::P)
        } else if v < self.n_p + self.n_q {
            Some(Part::Q)
        } else if v < self.n_vertices() {
            Some(Part::R)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug)]
pub struct HypergraphBuilder {
    shape: Shape,
    edges: SetFamily,
    class: Vec<EdgeClass>,
    dummy: Vec<bool>,
    seen: [HashSet<Vec<u32>>; 2],
}

impl HypergraphBuilder {
    pub fn new(shape: Shape) -> Self {
        HypergraphBuilder { shape, edges: SetFamily::new(), class: Vec::new(), dummy: Vec::new(), seen: [HashSet::new(), HashSet::new()] }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn add_edge(&mut self, class: EdgeClass, vertices: &[VertexId]) -> Result<EdgeId> {
        self.push(class, vertices, false)
    }

    pub(crate) fn add_dummy_edge(&mut self, vertices: &[VertexId]) -> Result<EdgeId> {
        self.push(EdgeClass::H1, vertices, true)
    }

    fn push(&mut self, class: EdgeClass, vertices: &[VertexId], dummy: bool) -> Result<EdgeId> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        let before = vs.len();
        vs.dedup();
        if vs.len() != before {
            return Err(Error::input(format!("edge {vertices:?} repeats a vertex")));
        }
        let s = self.shape;
        let mut counts = [0u32; 3];
        for &v in &vs {
            match s.part(v) {
                Some(Part::P) => counts[0] += 1,
                Some(Part::Q) => counts[1] += 1,
                Some(Part::R) => counts[2] += 1,
                None => return Err(Error::UnknownVertex(v)),
            }
        }
        let ok = match (class, dummy) {
            (EdgeClass::H1, false) => counts == [s.p, s.q, 0],
            (EdgeClass::H1, true) => counts == [0, s.k(), 0],
            (EdgeClass::H2, _) => counts == [1, 0, s.r],
        };
        if !ok {
            return Err(Error::input(format!(
                "{class:?} edge {vs:?} has part counts P={} Q={} R={}, expected shape p={} q={} r={}",
                counts[0], counts[1], counts[2], s.p, s.q, s.r
            )));
        }
        if !self.seen[class.slot()].insert(vs.clone()) {
            return Err(Error::input(format!("duplicate {class:?} edge {vs:?}")));
        }
        let id = self.edges.push(&vs) as EdgeId;
        self.class.push(class);
        self.dummy.push(dummy);
        Ok(id)
    }

    pub fn build(self) -> Result<Hypergraph> {
        let s = self.shape;
        if s.p == 0 {
            return Err(Error::input("p must be at least 1"));
        }
        if s.r == 0 {
            return Err(Error::input("r must be at least 1"));
        }
        let has_h1 = self.class.contains(&EdgeClass::H1);
        if has_h1 && s.k() < 2 {
            return Err(Error::input("k = p + q must be at least 2"));
        }
        Ok(Hypergraph::assemble(s, self.edges, self.class, self.dummy))
    }
}

#[derive(Clone, Debug)]
pub struct Hypergraph {
    shape: Shape,
    edges: SetFamily,
    class: Vec<EdgeClass>,
    dummy: Vec<bool>,
    incidence: [SetFamily; 2],
    by_class: [Vec<EdgeId>; 2],
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.edges == other.edges && self.class == other.class && self.dummy == other.dummy
    }
}

impl Hypergraph {
    fn assemble(shape: Shape, edges: SetFamily, class: Vec<EdgeClass>, dummy: Vec<bool>) -> Self {
        let nv = shape.n_vertices() as usize;
        let mut split = [SetFamily::new(), SetFamily::new()];
        let mut ids = [Vec::new(), Vec::new()];
        for (e, vs) in edges.iter().enumerate() {
            let c = class[e].slot();
            split[c].push(vs);
            ids[c].push(e as EdgeId);
        }
        let incidence = [0, 1].map(|c| {
            let local = split[c].transpose(nv);
            let mut global = SetFamily::with_capacity(nv, local.total_items());
            let mut buf = Vec::new();
            for v in 0..nv {
                buf.clear();
                buf.extend(local.get(v).iter().map(|&i| ids[c][i as usize]));
                global.push(&buf);
            }
            global
        });
        Hypergraph { shape, edges, class, dummy, incidence, by_class: ids }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn k(&self) -> u32 {
        self.shape.k()
    }

    pub fn n_vertices(&self) -> usize {
        self.shape.n_vertices() as usize
    }

    pub fn n_p(&self) -> usize {
        self.shape.n_p as usize
    }

    pub fn part(&self, v: VertexId) -> Option<Part> {
        self.shape.part(v)
    }

    pub fn is_p(&self, v: VertexId) -> bool {
        v < self.shape.n_p
    }

    pub fn p_vertices(&self) -> std::ops::Range<VertexId> {
        0..self.shape.n_p
    }

    pub fn r_vertices(&self) -> std::ops::Range<VertexId> {
        self.shape.n_p + self.shape.n_q..self.shape.n_vertices()
    }

    pub fn n_edges(&self) -> usize {
        self.class.len()
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &[VertexId] {
        self.edges.get(e as usize)
    }

    pub fn edges(&self) -> &SetFamily {
        &self.edges
    }

    #[inline]
    pub fn class(&self, e: EdgeId) -> EdgeClass {
        self.class[e as usize]
    }

    pub fn is_dummy(&self, e: EdgeId) -> bool {
        self.dummy[e as usize]
    }

    pub fn has_dummies(&self) -> bool {
        self.dummy.iter().any(|&d| d)
    }

    pub fn edges_of(&self, class: EdgeClass) -> &[EdgeId] {
        &self.by_class[class.slot()]
    }

    /// The P-vertices of `e` (a prefix of the sorted vertex list).
    pub fn p_part(&self, e: EdgeId) -> &[VertexId] {
        let vs = self.edge(e);
        let cut = vs.partition_point(|&v| v < self.shape.n_p);
        &vs[..cut]
    }

    /// The unique P-vertex of an H2 edge.
    #[inline]
    pub fn h2_anchor(&self, e: EdgeId) -> VertexId {
        self.edge(e)[0]
    }

    pub fn r_part(&self, e: EdgeId) -> &[VertexId] {
        let vs = self.edge(e);
        let cut = vs.partition_point(|&v| v < self.shape.n_p + self.shape.n_q);
        &vs[cut..]
    }

    #[inline]
    pub fn incident(&self, v: VertexId, class: EdgeClass) -> &[EdgeId] {
        self.incidence[class.slot()].get(v as usize)
    }

    pub fn d_h1(&self, v: VertexId) -> usize {
        self.incident(v, EdgeClass::H1).len()
    }

    pub fn d_h2(&self, v: VertexId) -> usize {
        self.incident(v, EdgeClass::H2).len()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.n_vertices() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Number of edges (optionally of one class) containing every vertex of `u`.
    pub fn degree(&self, u: &[VertexId], filter: Option<EdgeClass>) -> Result<usize> {
        if u.is_empty() {
            return Err(Error::input("degree of the empty set is not defined"));
        }
        for &v in u {
            self.check_vertex(v)?;
        }
        let classes: Vec<EdgeClass> = match filter {
            Some(c) => vec![c],
            None => vec![EdgeClass::H1, EdgeClass::H2],
        };
        let mut total = 0;
        for c in classes {
            let base = self.incident(u[0], c);
            if u.len() == 1 {
                total += base.len();
                continue;
            }
            total += base
                .iter()
                .filter(|&&e| {
                    let vs = self.edge(e);
                    u[1..].iter().all(|v| vs.binary_search(v).is_ok())
                })
                .count();
        }
        Ok(total)
    }

    /// Maximum degree over `j`-sets of vertices, with a witness set.
    ///
    /// Only sets lying inside some edge can have positive degree, so those
    /// are the only ones enumerated. Ties go to the lexicographically
    /// smallest set.
    pub fn max_degree(&self, j: usize, filter: Option<EdgeClass>) -> Result<(usize, Vec<VertexId>)> {
        let kmax = (self.k() as usize).max(self.shape.r as usize + 1);
        if j == 0 || j > kmax {
            return Err(Error::input(format!("subset size {j} out of range 1..={kmax}")));
        }
        let selected = |e: usize| filter.is_none_or(|c| self.class[e] == c);
        if j == 1 {
            let mut best = (0usize, Vec::new());
            for v in 0..self.n_vertices() as VertexId {
                let d = match filter {
                    Some(c) => self.incident(v, c).len(),
                    None => self.incident(v, EdgeClass::H1).len() + self.incident(v, EdgeClass::H2).len(),
                };
                if d > best.0 {
                    best = (d, vec![v]);
                }
            }
            return Ok(best);
        }
        let mut counts: HashMap<Vec<VertexId>, usize> = HashMap::new();
        for (e, vs) in self.edges.iter().enumerate() {
            if selected(e) {
                for_each_combination(vs, j, |s| *counts.entry(s.to_vec()).or_insert(0) += 1);
            }
        }
        let mut best = (0usize, Vec::new());
        for (s, c) in counts {
            if c > best.0 || (c == best.0 && c > 0 && s < best.1) {
                best = (c, s);
            }
        }
        Ok(best)
    }

    /// `{e \ {v} : v ∈ e}` over all edges.
    pub fn link(&self, v: VertexId) -> Result<Vec<Vec<VertexId>>> {
        self.check_vertex(v)?;
        let mut out = Vec::new();
        for c in [EdgeClass::H1, EdgeClass::H2] {
            for &e in self.incident(v, c) {
                out.push(self.edge(e).iter().copied().filter(|&u| u != v).collect());
            }
        }
        Ok(out)
    }

    /// Raises every Q-vertex to H1-degree `d` with flagged star edges.
    ///
    /// Each added edge holds the Q-vertex plus `k - 1` fresh dummy Q-vertices
    /// that appear nowhere else. The fresh vertices extend the Q block, so R
    /// ids shift up; edge ids are preserved and dummy edges are appended.
    pub fn add_dummy_padding(&self, d: usize) -> Result<Hypergraph> {
        let s = self.shape;
        let q_range = s.n_p..s.n_p + s.n_q;
        let mut deficit = 0usize;
        for v in q_range.clone() {
            let dv = self.d_h1(v);
            if dv > d {
                return Err(Error::precondition(format!("Q-vertex {v} has H1-degree {dv} above target {d}")));
            }
            deficit += d - dv;
        }
        if deficit == 0 {
            return Ok(self.clone());
        }
        let fresh_per_edge = s.k() as usize - 1;
        let added = (deficit * fresh_per_edge) as u32;
        let shape = Shape { n_q: s.n_q + added, ..s };
        let shift = |v: VertexId| if v >= s.n_p + s.n_q { v + added } else { v };
        let mut b = HypergraphBuilder::new(shape);
        for e in 0..self.n_edges() as EdgeId {
            let vs: Vec<VertexId> = self.edge(e).iter().map(|&v| shift(v)).collect();
            if self.is_dummy(e) {
                b.add_dummy_edge(&vs)?;
            } else {
                b.add_edge(self.class(e), &vs)?;
            }
        }
        let mut next = s.n_p + s.n_q;
        for v in q_range {
            for _ in self.d_h1(v)..d {
                let mut vs = vec![v];
                vs.extend(next..next + fresh_per_edge as u32);
                next += fresh_per_edge as u32;
                b.add_dummy_edge(&vs)?;
            }
        }
        b.build()
    }
}

/// A matching split into its stage-1 part `m1 ⊆ H1` and stage-2 part `m2 ⊆ H2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub m1: Vec<EdgeId>,
    pub m2: Vec<EdgeId>,
    pub uncovered: Vec<VertexId>,
}

impl Matching {
    pub fn new(h: &Hypergraph, mut m1: Vec<EdgeId>, mut m2: Vec<EdgeId>) -> Self {
        m1.sort_unstable();
        m2.sort_unstable();
        let mut covered = vec![false; h.n_p()];
        for &e in m1.iter().chain(&m2) {
            for &v in h.p_part(e) {
                covered[v as usize] = true;
            }
        }
        let uncovered = (0..h.n_p() as VertexId).filter(|&v| !covered[v as usize]).collect();
        Matching { m1, m2, uncovered }
    }

    /// Exact check of the matching invariants; returns a description of the
    /// first violation found.
    pub fn check(&self, h: &Hypergraph) -> std::result::Result<(), String> {
        let mut owner: Vec<Option<EdgeId>> = vec![None; h.n_vertices()];
        for (set, class) in [(&self.m1, EdgeClass::H1), (&self.m2, EdgeClass::H2)] {
            for &e in set {
                if e as usize >= h.n_edges() {
                    return Err(format!("edge {e} does not exist"));
                }
                if h.class(e) != class {
                    return Err(format!("edge {e} is not an {class:?} edge"));
                }
                for &v in h.edge(e) {
                    if let Some(f) = owner[v as usize] {
                        return Err(format!("edges {f} and {e} share vertex {v}"));
                    }
                    owner[v as usize] = Some(e);
                }
            }
        }
        let expected: Vec<VertexId> = h.p_vertices().filter(|&v| owner[v as usize].is_none()).collect();
        if expected != self.uncovered {
            return Err("uncovered set does not match P minus covered vertices".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(n_p: u32, n_q: u32, n_r: u32, p: u32, q: u32, r: u32) -> Shape {
        Shape { n_p, n_q, n_r, p, q, r }
    }

    fn small() -> Hypergraph {
        // P = {0,1,2,3}, Q = {4,5}, R = {6,7,8}
        let mut b = HypergraphBuilder::new(shape(4, 2, 3, 2, 1, 1));
        b.add_edge(EdgeClass::H1, &[0, 1, 4]).unwrap();
        b.add_edge(EdgeClass::H1, &[2, 3, 4]).unwrap();
        b.add_edge(EdgeClass::H1, &[1, 2, 5]).unwrap();
        b.add_edge(EdgeClass::H2, &[0, 6]).unwrap();
        b.add_edge(EdgeClass::H2, &[0, 7]).unwrap();
        b.add_edge(EdgeClass::H2, &[3, 7]).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn shapes_are_enforced() {
        let mut b = HypergraphBuilder::new(shape(4, 2, 3, 2, 1, 1));
        assert!(b.add_edge(EdgeClass::H1, &[0, 4, 5]).is_err());
        assert!(b.add_edge(EdgeClass::H2, &[0, 1]).is_err());
        assert!(b.add_edge(EdgeClass::H2, &[0, 9]).is_err());
        b.add_edge(EdgeClass::H2, &[0, 6]).unwrap();
        assert!(b.add_edge(EdgeClass::H2, &[6, 0]).is_err());
    }

    #[test]
    fn degrees_and_links() {
        let h = small();
        assert_eq!(h.degree(&[8], None).unwrap(), 0);
        assert_eq!(h.degree(&[0, 1], None).unwrap(), 1);
        assert_eq!(h.degree(&[4], Some(EdgeClass::H1)).unwrap(), 2);
        assert_eq!(h.degree(&[0], Some(EdgeClass::H2)).unwrap(), 2);
        assert!(h.degree(&[99], None).is_err());
        assert_eq!(h.link(8).unwrap(), Vec::<Vec<u32>>::new());
        assert_eq!(h.link(5).unwrap(), vec![vec![1, 2]]);
        let (d, w) = h.max_degree(1, Some(EdgeClass::H1)).unwrap();
        assert_eq!((d, w), (2, vec![1]));
        assert!(h.max_degree(0, None).is_err());
    }

    #[test]
    fn padding_fills_q_degrees() {
        let h = small();
        let padded = h.add_dummy_padding(4).unwrap();
        // vertex 4 has degree 2, vertex 5 has degree 1: 2 + 3 dummy edges
        assert_eq!(padded.n_edges(), h.n_edges() + 5);
        let s = padded.shape();
        for v in s.n_p..s.n_p + 2 {
            assert_eq!(padded.d_h1(v), 4);
        }
        for e in 0..h.n_edges() as EdgeId {
            assert!(!padded.is_dummy(e));
            assert_eq!(padded.class(e), h.class(e));
        }
        assert!(h.add_dummy_padding(1).is_err());
        assert_eq!(h.add_dummy_padding(2).unwrap().n_edges(), h.n_edges() + 1);
    }

    #[test]
    fn matching_check() {
        let h = small();
        let m = Matching::new(&h, vec![0], vec![5]);
        assert_eq!(m.check(&h), Ok(()));
        assert_eq!(m.uncovered, vec![2]);
        let bad = Matching::new(&h, vec![0, 1], vec![]);
        assert!(bad.check(&h).is_err());
        let m = Matching::new(&h, vec![2], vec![3, 5]);
        assert!(m.check(&h).is_ok());
        assert!(m.uncovered.is_empty());
    }
}
