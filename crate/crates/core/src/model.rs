//! Conflict models.
//!
//! The matchers see conflicts through [`ConflictModel`]. Explicit systems
//! list every conflict. The colouring model instead derives conflicts from
//! an edge-colouring rule on a host hypergraph `K_n^k`, which keeps the
//! Ramsey-type instances tractable where explicit enumeration is not. The
//! projected model covers the covering reduction, whose mixed conflicts are
//! all copies of a small conflict family on the source graph.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::comb::colex_rank;
use crate::conflicts::ConflictSystem;
use crate::family::SetFamily;
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, VertexId};

pub const NO_COLOUR: u32 = u32::MAX;

/// A colouring pattern whose copies must see more than `max_bad` colours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Pattern {
    /// Tight cycle with `len` vertices in `K_n^k`; needs at least `k + 1` colours.
    TightCycle { len: usize },
    /// `K_4` in `K_n`; needs at least five colours.
    K4,
}

/// Colouring rule: every hypergraph edge paints some host edges (P-vertices)
/// with colours; a copy of the pattern is bad once it can no longer reach
/// `max_bad + 1` colours.
#[derive(Clone, Debug)]
pub struct ColouringScheme {
    pub n: u32,
    pub uniformity: usize,
    pub pattern: Pattern,
    pub n_colours: u32,
    /// Per hypergraph edge, the `(host edge, colour)` pairs it paints.
    pub paint: Vec<Vec<(VertexId, u32)>>,
}

impl ColouringScheme {
    pub fn max_bad(&self) -> usize {
        match self.pattern {
            Pattern::TightCycle { .. } => self.uniformity,
            Pattern::K4 => 4,
        }
    }

    pub fn copy_size(&self) -> usize {
        match self.pattern {
            Pattern::TightCycle { len } => len,
            Pattern::K4 => 6,
        }
    }

    /// Calls `f` with the host-edge ids of every copy containing host edge
    /// `g` (each copy exactly once). Stops early when `f` returns `false`.
    pub fn for_each_copy_through(&self, g: VertexId, mut f: impl FnMut(&[VertexId]) -> bool) {
        let k = self.uniformity;
        let base = crate::comb::colex_unrank(g as u64, k);
        let n = self.n;
        match self.pattern {
            Pattern::K4 => {
                let (u, v) = (base[0], base[1]);
                let mut ids = [0u32; 6];
                for w in 0..n {
                    if w == u || w == v {
                        continue;
                    }
                    for z in w + 1..n {
                        if z == u || z == v {
                            continue;
                        }
                        let quad = [u, v, w, z];
                        let mut t = 0;
                        for i in 0..4 {
                            for j in i + 1..4 {
                                ids[t] = pair_rank(quad[i], quad[j]);
                                t += 1;
                            }
                        }
                        if !f(&ids) {
                            return;
                        }
                    }
                }
            }
            Pattern::TightCycle { len } => {
                // g occupies positions 0..k in some order; the reflection is
                // removed by requiring seq[0] < seq[k-1].
                let mut seq = vec![0u32; len];
                let mut used = vec![false; n as usize];
                let mut ids = vec![0u32; len];
                let mut win = vec![0u32; k];
                let mut stop = false;
                let mut orders = Vec::new();
                permutations(&base, &mut orders);
                for ord in orders {
                    if ord[0] > ord[k - 1] {
                        continue;
                    }
                    seq[..k].copy_from_slice(&ord);
                    for &v in &ord {
                        used[v as usize] = true;
                    }
                    extend_cycle(&mut seq, k, &mut used, n, &mut |s: &[u32]| {
                        for i in 0..len {
                            for (t, w) in win.iter_mut().enumerate() {
                                *w = s[(i + t) % len];
                            }
                            win.sort_unstable();
                            ids[i] = colex_rank(&win) as u32;
                        }
                        if !f(&ids) {
                            stop = true;
                        }
                        !stop
                    });
                    for &v in &ord {
                        used[v as usize] = false;
                    }
                    if stop {
                        return;
                    }
                }
            }
        }
    }
}

fn pair_rank(a: u32, b: u32) -> u32 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    b * (b - 1) / 2 + a
}

fn permutations(items: &[u32], out: &mut Vec<Vec<u32>>) {
    fn go(cur: &mut Vec<u32>, rest: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(cur, rest, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    go(&mut Vec::new(), &mut items.to_vec(), out);
}

fn extend_cycle(seq: &mut [u32], pos: usize, used: &mut [bool], n: u32, f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
    if pos == seq.len() {
        return f(seq);
    }
    for v in 0..n {
        if used[v as usize] {
            continue;
        }
        used[v as usize] = true;
        seq[pos] = v;
        let go_on = extend_cycle(seq, pos + 1, used, n, f);
        used[v as usize] = false;
        if !go_on {
            return false;
        }
    }
    true
}

/// The covering reduction: `C` lives on H1 (which equals the source edge
/// list), and every edge maps back to its source edge.
#[derive(Clone, Debug)]
pub struct Projected {
    pub cs: ConflictSystem,
    /// Source edge (= H1 edge id) of every hypergraph edge.
    pub source: Vec<EdgeId>,
    /// H2 duplicates of every source edge.
    pub duplicates: SetFamily,
}

impl Projected {
    pub fn new(h: &Hypergraph, cs: ConflictSystem, source: Vec<EdgeId>) -> Self {
        let n_src = h.edges_of(EdgeClass::H1).len();
        let mut dup = vec![Vec::new(); n_src];
        for &e in h.edges_of(EdgeClass::H2) {
            dup[source[e as usize] as usize].push(e);
        }
        let duplicates = dup.iter().map(Vec::as_slice).collect();
        Projected { cs, source, duplicates }
    }
}

#[derive(Clone, Debug)]
pub enum ConflictModel {
    Explicit(ConflictSystem),
    Colouring(ColouringScheme),
    Projected(Projected),
}

impl ConflictModel {
    /// The explicit H1-only family, if the model has one.
    pub fn c_family(&self) -> Option<&ConflictSystem> {
        match self {
            ConflictModel::Explicit(cs) => Some(cs),
            ConflictModel::Projected(p) => Some(&p.cs),
            ConflictModel::Colouring(_) => None,
        }
    }

    /// The explicit mixed family, if the model has one.
    pub fn explicit(&self) -> Option<&ConflictSystem> {
        match self {
            ConflictModel::Explicit(cs) => Some(cs),
            _ => None,
        }
    }

    pub fn ell(&self) -> usize {
        match self {
            ConflictModel::Explicit(cs) => cs.ell(),
            ConflictModel::Projected(p) => p.cs.ell(),
            ConflictModel::Colouring(s) => s.copy_size(),
        }
    }

    /// H1-parts of all `(j1, 1)`-conflicts that contain the H2 edge `e`.
    pub fn j21_parts(&self, h: &Hypergraph, e: EdgeId) -> Vec<Vec<EdgeId>> {
        match self {
            ConflictModel::Explicit(cs) => cs
                .d_containing(e)
                .iter()
                .map(|&i| cs.d.get(i as usize))
                .filter(|c| c.iter().filter(|&&f| h.class(f) == EdgeClass::H2).count() == 1)
                .map(|c| c.iter().copied().filter(|&f| f != e).collect())
                .collect(),
            ConflictModel::Projected(p) => {
                let s = p.source[e as usize];
                p.cs.c_containing(s).iter().map(|&i| p.cs.c.get(i as usize).iter().copied().filter(|&f| f != s).collect()).collect()
            }
            // Adding one edge of a fresh colour never lowers the number of
            // colours a copy can still reach, so no such conflicts exist.
            ConflictModel::Colouring(_) => Vec::new(),
        }
    }
}

/// Incremental colouring state shared by both stages of the colouring model.
#[derive(Clone, Debug)]
pub struct Painter {
    colour: Vec<u32>,
    owner: Vec<EdgeId>,
}

impl Painter {
    pub fn new(n_host_edges: usize) -> Self {
        Painter { colour: vec![NO_COLOUR; n_host_edges], owner: vec![EdgeId::MAX; n_host_edges] }
    }

    pub fn colour(&self, g: VertexId) -> u32 {
        self.colour[g as usize]
    }

    pub fn colours(&self) -> &[u32] {
        &self.colour
    }

    pub fn apply(&mut self, s: &ColouringScheme, e: EdgeId) {
        for &(g, c) in &s.paint[e as usize] {
            self.colour[g as usize] = c;
            self.owner[g as usize] = e;
        }
    }

    pub fn clear(&mut self, s: &ColouringScheme, e: EdgeId) {
        for &(g, _) in &s.paint[e as usize] {
            if self.owner[g as usize] == e {
                self.colour[g as usize] = NO_COLOUR;
                self.owner[g as usize] = EdgeId::MAX;
            }
        }
    }

    /// Distinct colours plus uncoloured edges over a copy.
    fn reach(&self, copy: &[VertexId]) -> usize {
        let mut seen = [NO_COLOUR; 8];
        let mut c = 0;
        let mut u = 0;
        for &g in copy {
            let col = self.colour[g as usize];
            if col == NO_COLOUR {
                u += 1;
            } else if !seen[..c].contains(&col) {
                seen[c] = col;
                c += 1;
            }
        }
        c + u
    }

    /// Whether some copy through the host edges painted by `e` is doomed.
    /// `e` must already be applied.
    pub fn dooms(&self, s: &ColouringScheme, e: EdgeId) -> bool {
        let max_bad = s.max_bad();
        let mut doomed = false;
        for &(g, _) in &s.paint[e as usize] {
            s.for_each_copy_through(g, |copy| {
                doomed = self.reach(copy) <= max_bad;
                !doomed
            });
            if doomed {
                return true;
            }
        }
        false
    }

    /// Fully coloured bad copies through the host edges of `e`, each given
    /// as the sorted set of hypergraph edges colouring its repeated colours.
    pub fn bad_copies(&self, s: &ColouringScheme, e: EdgeId) -> Vec<Vec<EdgeId>> {
        let max_bad = s.max_bad();
        let mut out: HashSet<Vec<EdgeId>> = HashSet::new();
        for &(g, _) in &s.paint[e as usize] {
            s.for_each_copy_through(g, |copy| {
                if copy.iter().all(|&g| self.colour[g as usize] != NO_COLOUR) && self.reach(copy) <= max_bad {
                    let mut conflict: Vec<EdgeId> = copy
                        .iter()
                        .filter(|&&g| {
                            let c = self.colour[g as usize];
                            copy.iter().filter(|&&o| self.colour[o as usize] == c).count() >= 2
                        })
                        .map(|&g| self.owner[g as usize])
                        .collect();
                    conflict.sort_unstable();
                    conflict.dedup();
                    out.insert(conflict);
                }
                true
            });
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort_unstable();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scheme(n: u32, k: usize, pattern: Pattern) -> ColouringScheme {
        ColouringScheme { n, uniformity: k, pattern, n_colours: 0, paint: vec![] }
    }

    #[test]
    fn copies_through_an_edge() {
        // 4-cycles through an edge of K_n: (n-2)(n-3).
        let s = scheme(8, 2, Pattern::TightCycle { len: 4 });
        let mut seen = HashSet::new();
        s.for_each_copy_through(0, |c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            assert!(seen.insert(c));
            true
        });
        assert_eq!(seen.len(), 6 * 5);
        // K4 through an edge: C(n-2, 2).
        let s = scheme(8, 2, Pattern::K4);
        let mut count = 0;
        s.for_each_copy_through(3, |c| {
            assert!(c.contains(&3));
            count += 1;
            true
        });
        assert_eq!(count, 15);
        // Tight 3-uniform 5-cycles through a triple of K_7: every cyclic
        // sequence with the triple as a window, counted once.
        let s = scheme(7, 3, Pattern::TightCycle { len: 5 });
        let mut seen = HashSet::new();
        s.for_each_copy_through(0, |c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            seen.insert(c);
            true
        });
        // 3 orders of the triple up to reversal, times 4·3 completions.
        assert_eq!(seen.len(), 3 * 4 * 3);
    }

    #[test]
    fn doom_rule() {
        // K_4 on {0,1,2,3} with 4-cycle 0-1-2-3: alternate two colours.
        let mut s = scheme(4, 2, Pattern::TightCycle { len: 4 });
        let e01 = pair_rank(0, 1);
        let e12 = pair_rank(1, 2);
        let e23 = pair_rank(2, 3);
        let e03 = pair_rank(0, 3);
        s.paint = vec![vec![(e01, 0), (e23, 0)], vec![(e12, 1)], vec![(e03, 1)], vec![(e03, 2)]];
        let mut p = Painter::new(6);
        p.apply(&s, 0);
        assert!(!p.dooms(&s, 0));
        p.apply(&s, 1);
        assert!(!p.dooms(&s, 1));
        p.apply(&s, 2);
        assert!(p.dooms(&s, 2));
        assert_eq!(p.bad_copies(&s, 2), vec![vec![0, 1, 2]]);
        p.clear(&s, 2);
        p.apply(&s, 3);
        assert!(!p.dooms(&s, 3));
        assert!(p.bad_copies(&s, 3).is_empty());
    }
}
