//! Test functions tracked along the stage-1 process.
//!
//! `w_x` and `w_x'` are maintained incrementally as edges join the matching;
//! `w_x^b` is evaluated on demand. Every tracker can be re-evaluated from
//! scratch with the free `eval_*` functions, which double as oracles.

use std::collections::{HashMap, HashSet};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conflicts::{j1j2, split, v_p, ConflictSystem};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, VertexId};
use crate::model::ConflictModel;
use crate::stage1::conflict_sharing_pairs;
use crate::unavoid::{unavoidability, weighted_max_degree};

/// The gate applied to H1 edge sets: a matching, free of C-conflicts and of
/// conflict-sharing pairs.
pub struct Testability<'a> {
    h: &'a Hypergraph,
    cs: Option<&'a ConflictSystem>,
    sharing: HashSet<[EdgeId; 2]>,
}

impl<'a> Testability<'a> {
    pub fn new(h: &'a Hypergraph, cs: Option<&'a ConflictSystem>, sharing: &[[EdgeId; 2]]) -> Self {
        Testability { h, cs, sharing: sharing.iter().copied().collect() }
    }

    pub fn testable(&self, set: &[EdgeId]) -> bool {
        let mut seen = HashSet::new();
        for &e in set {
            if !self.h.edge(e).iter().all(|&v| seen.insert(v)) {
                return false;
            }
        }
        for (i, &e) in set.iter().enumerate() {
            for &f in &set[i + 1..] {
                let pair = if e < f { [e, f] } else { [f, e] };
                if self.sharing.contains(&pair) {
                    return false;
                }
            }
        }
        if let Some(cs) = self.cs {
            for &e in set {
                for &ci in cs.c_containing(e) {
                    if cs.c.get(ci as usize).iter().all(|f| set.contains(f)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn testable_with(&self, set: &[EdgeId], e: EdgeId) -> bool {
        let mut s = set.to_vec();
        s.push(e);
        self.testable(&s)
    }
}

/// One conflict of `D^{(j1,j2)}_x`, reduced to what the trackers need.
#[derive(Clone, Debug)]
struct Member {
    h1: Vec<EdgeId>,
    a: f64,
    vp: Vec<VertexId>,
}

fn members(h: &Hypergraph, cs: &ConflictSystem, x: VertexId, j1: usize, j2: usize) -> Result<Vec<Member>> {
    let mut out = Vec::new();
    for &i in cs.d_at(x) {
        let d = cs.d.get(i as usize);
        if j1j2(h, d) != (j1, j2) {
            continue;
        }
        let (h1, _) = split(h, d);
        if h1.iter().any(|&e| h.edge(e).contains(&x)) {
            continue;
        }
        out.push(Member { h1, a: unavoidability(h, d)?, vp: v_p(h, d) });
    }
    Ok(out)
}

fn in_set(h: &Hypergraph, m: &[EdgeId]) -> Vec<bool> {
    let mut v = vec![false; h.n_edges()];
    for &e in m {
        v[e as usize] = true;
    }
    v
}

/// `w_x(m)`: total unavoidability of the `(j1, j2)`-conflicts with `x` in
/// their H2-part whose testable H1-part lies in `m` and avoids `x`.
pub fn eval_w_x(cs: &ConflictSystem, h: &Hypergraph, t: &Testability, x: VertexId, j1: usize, j2: usize, m: &[EdgeId]) -> Result<f64> {
    let inm = in_set(h, m);
    Ok(members(h, cs, x, j1, j2)?.iter().filter(|d| d.h1.iter().all(|&e| inm[e as usize]) && t.testable(&d.h1)).map(|d| d.a).sum())
}

/// `w_x'(m)`: for each `(j1+1)`-set `C' ⊆ m`, each `e ∈ C'` and each
/// P-vertex `y ≠ x` of `e`, the mass of conflicts with H1-part `C' \ {e}`
/// and both `x` and `y` in the H2-part. Untestable `C'` contribute nothing.
pub fn eval_w_x_prime(cs: &ConflictSystem, h: &Hypergraph, t: &Testability, x: VertexId, j1: usize, j2: usize, m: &[EdgeId]) -> Result<f64> {
    let inm = in_set(h, m);
    let mut total = 0.0;
    for d in members(h, cs, x, j1, j2)? {
        if !d.h1.iter().all(|&e| inm[e as usize]) {
            continue;
        }
        for &y in &d.vp {
            if y == x {
                continue;
            }
            for &e in h.incident(y, EdgeClass::H1) {
                if inm[e as usize] && !d.h1.contains(&e) && t.testable_with(&d.h1, e) {
                    total += d.a;
                }
            }
        }
    }
    Ok(total)
}

/// H1-parts of the `(j1, 1)`-conflicts through each H2 edge at `x`.
fn part_lists(model: &ConflictModel, h: &Hypergraph, x: VertexId) -> Vec<Vec<Vec<EdgeId>>> {
    h.incident(x, EdgeClass::H2).iter().map(|&e| model.j21_parts(h, e)).collect()
}

/// `w_x^b(m)`: `d_x^{-1}` times the number of pairs (e, collection) where
/// `e ∈ N_x` and the collection holds `b[j-1]` pairwise disjoint H1-parts of
/// size `j` from `L_e`, all inside `m`, with testable union.
pub fn eval_w_x_b(model: &ConflictModel, h: &Hypergraph, t: &Testability, x: VertexId, b: &[usize], m: &[EdgeId]) -> Result<f64> {
    let dx = h.d_h2(x);
    if dx == 0 {
        return Err(Error::precondition(format!("vertex {x} has H2-degree 0")));
    }
    if b.iter().sum::<usize>() == 0 {
        return Err(Error::input("profile b must contain at least one part"));
    }
    let inm = in_set(h, m);
    let mut count = 0u64;
    for parts in part_lists(model, h, x) {
        let usable: Vec<&Vec<EdgeId>> = parts.iter().filter(|p| p.iter().all(|&e| inm[e as usize])).collect();
        count += count_collections(&usable, b, t);
    }
    Ok(count as f64 / dx as f64)
}

fn count_collections(parts: &[&Vec<EdgeId>], b: &[usize], t: &Testability) -> u64 {
    // slots: one per requested part, sizes ascending; equal-size slots take
    // increasing indices so each collection is counted once
    let mut slots = Vec::new();
    for (j, &n) in b.iter().enumerate() {
        slots.extend(std::iter::repeat_n(j + 1, n));
    }
    let mut used: Vec<EdgeId> = Vec::new();
    fn go(i: usize, min_idx: usize, slots: &[usize], parts: &[&Vec<EdgeId>], used: &mut Vec<EdgeId>, t: &Testability) -> u64 {
        if i == slots.len() {
            return t.testable(used) as u64;
        }
        let start = if i > 0 && slots[i] == slots[i - 1] { min_idx } else { 0 };
        let mut n = 0;
        for (pi, p) in parts.iter().enumerate().skip(start) {
            if p.len() != slots[i] || p.iter().any(|e| used.contains(e)) {
                continue;
            }
            let before = used.len();
            used.extend_from_slice(p);
            n += go(i + 1, pi + 1, slots, parts, used, t);
            used.truncate(before);
        }
        n
    }
    go(0, 0, &slots, parts, &mut used, t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrackerSpec {
    WX { x: VertexId, j1: usize, j2: usize },
    WXPrime { x: VertexId, j1: usize, j2: usize },
    WXB { x: VertexId, b: Vec<usize> },
}

impl TrackerSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            TrackerSpec::WX { .. } => "w_x",
            TrackerSpec::WXPrime { .. } => "w_x_prime",
            TrackerSpec::WXB { .. } => "w_x_b",
        }
    }

    /// Exponent `j` of the `d^{-j} w(H1)` prediction.
    pub fn scale(&self) -> usize {
        match self {
            TrackerSpec::WX { j1, .. } => *j1,
            TrackerSpec::WXPrime { j1, .. } => j1 + 1,
            TrackerSpec::WXB { b, .. } => b.iter().enumerate().map(|(j, n)| (j + 1) * n).sum(),
        }
    }
}

/// `w:x:j1:j2`, `wp:x:j1:j2` or `wb:x:b1,b2,...`.
impl FromStr for TrackerSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("bad tracker spec '{s}'"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["w", x, j1, j2] => Ok(TrackerSpec::WX { x: num(x)? as u32, j1: num(j1)?, j2: num(j2)? }),
            ["wp", x, j1, j2] => Ok(TrackerSpec::WXPrime { x: num(x)? as u32, j1: num(j1)?, j2: num(j2)? }),
            ["wb", x, b] => Ok(TrackerSpec::WXB { x: num(x)? as u32, b: b.split(',').map(num).collect::<Result<_>>()? }),
            _ => Err(bad()),
        }
    }
}

/// A default tracker selection: for the `count` lowest P-vertices carrying
/// mixed conflicts, every `(j1, j2)` class present (`w_x` always, `w_x'`
/// when `j2 ≥ 2`) and single-part profiles for the `(j1, 1)` classes.
pub fn auto_specs(h: &Hypergraph, model: &ConflictModel, count: usize) -> Vec<TrackerSpec> {
    let mut out = Vec::new();
    let Some(cs) = model.explicit() else {
        return out;
    };
    for x in h.p_vertices().filter(|&x| !cs.d_at(x).is_empty()).take(count) {
        let mut classes: Vec<(usize, usize)> = cs.d_at(x).iter().map(|&i| j1j2(h, cs.d.get(i as usize))).collect();
        classes.sort_unstable();
        classes.dedup();
        for (j1, j2) in classes {
            out.push(TrackerSpec::WX { x, j1, j2 });
            if j2 >= 2 {
                out.push(TrackerSpec::WXPrime { x, j1, j2 });
            }
            if j2 == 1 && j1 >= 1 {
                let mut b = vec![0; j1];
                b[j1 - 1] = 1;
                out.push(TrackerSpec::WXB { x, b });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackerReport {
    pub kind: String,
    pub params: TrackerSpec,
    pub value: f64,
    /// Value on all of H1.
    pub initial: f64,
    pub prediction: f64,
    pub ratio: Option<f64>,
    /// `α_x` for `w_x`/`w_x'`, `β_x` for `w_x^b`.
    pub normalizer: f64,
}

enum State {
    W { members: Vec<Member>, count: Vec<u32>, by_edge: HashMap<EdgeId, Vec<u32>> },
    WPrime { members: Vec<Member>, count: Vec<u32>, complete: Vec<bool>, by_edge: HashMap<EdgeId, Vec<u32>>, by_y: HashMap<VertexId, Vec<u32>> },
    OnDemand,
}

struct Tracker {
    spec: TrackerSpec,
    value: f64,
    initial: f64,
    normalizer: f64,
    state: State,
}

struct Ctx<'a> {
    h: &'a Hypergraph,
    model: &'a ConflictModel,
    t: Testability<'a>,
    d: f64,
    in_m: Vec<bool>,
}

#[derive(Default)]
pub struct TrackerSet<'a> {
    ctx: Option<Ctx<'a>>,
    trackers: Vec<Tracker>,
}

fn index(members: &[Member]) -> HashMap<EdgeId, Vec<u32>> {
    let mut by_edge: HashMap<EdgeId, Vec<u32>> = HashMap::new();
    for (i, m) in members.iter().enumerate() {
        for &e in &m.h1 {
            by_edge.entry(e).or_default().push(i as u32);
        }
    }
    by_edge
}

impl<'a> TrackerSet<'a> {
    /// Registers trackers. Testability uses conflict-sharing pairs at `2ε`.
    pub fn new(h: &'a Hypergraph, model: &'a ConflictModel, specs: &[TrackerSpec], d: f64, eps: f64) -> Result<Self> {
        let cs = model.c_family();
        let sharing = cs.map(|cs| conflict_sharing_pairs(cs, d, 2.0 * eps)).unwrap_or_default();
        let t = Testability::new(h, cs, &sharing);
        let all_h1 = h.edges_of(EdgeClass::H1);
        let mut trackers = Vec::new();
        for spec in specs {
            let x = match spec {
                TrackerSpec::WX { x, .. } | TrackerSpec::WXPrime { x, .. } | TrackerSpec::WXB { x, .. } => *x,
            };
            if !h.is_p(x) {
                return Err(Error::UnknownVertex(x));
            }
            let tracker = match spec {
                TrackerSpec::WX { j1, j2, .. } | TrackerSpec::WXPrime { j1, j2, .. } => {
                    let cs = model.explicit().ok_or_else(|| Error::input("w_x and w_x' trackers need an explicit conflict system"))?;
                    let (j1, j2) = (*j1, *j2);
                    let mem = members(h, cs, x, j1, j2)?;
                    let normalizer = alpha(&mem, x, j1, d)?;
                    let by_edge = index(&mem);
                    let count = vec![0; mem.len()];
                    if matches!(spec, TrackerSpec::WX { .. }) {
                        let initial = eval_w_x(cs, h, &t, x, j1, j2, all_h1)?;
                        let value = if j1 == 0 { initial } else { 0.0 };
                        Tracker { spec: spec.clone(), value, initial, normalizer, state: State::W { members: mem, count, by_edge } }
                    } else {
                        let initial = eval_w_x_prime(cs, h, &t, x, j1, j2, all_h1)?;
                        let mut by_y: HashMap<VertexId, Vec<u32>> = HashMap::new();
                        for (i, m) in mem.iter().enumerate() {
                            for &y in m.vp.iter().filter(|&&y| y != x) {
                                by_y.entry(y).or_default().push(i as u32);
                            }
                        }
                        let complete = mem.iter().map(|m| m.h1.is_empty() && t.testable(&m.h1)).collect();
                        Tracker { spec: spec.clone(), value: 0.0, initial, normalizer, state: State::WPrime { members: mem, count, complete, by_edge, by_y } }
                    }
                }
                TrackerSpec::WXB { b, .. } => {
                    let initial = eval_w_x_b(model, h, &t, x, b, all_h1)?;
                    Tracker { spec: spec.clone(), value: 0.0, initial, normalizer: beta(model, h, x, d)?, state: State::OnDemand }
                }
            };
            trackers.push(tracker);
        }
        Ok(TrackerSet { ctx: Some(Ctx { h, model, t, d, in_m: vec![false; h.n_edges()] }), trackers })
    }

    pub fn is_empty(&self) -> bool {
        self.trackers.is_empty()
    }

    pub fn on_add(&mut self, e: EdgeId) {
        let Some(ctx) = self.ctx.as_mut() else { return };
        ctx.in_m[e as usize] = true;
        for tr in &mut self.trackers {
            match &mut tr.state {
                State::W { members, count, by_edge } => {
                    for &i in by_edge.get(&e).map(Vec::as_slice).unwrap_or(&[]) {
                        let i = i as usize;
                        count[i] += 1;
                        if count[i] as usize == members[i].h1.len() && ctx.t.testable(&members[i].h1) {
                            tr.value += members[i].a;
                        }
                    }
                }
                State::WPrime { members, count, complete, by_edge, by_y } => {
                    let x = match tr.spec {
                        TrackerSpec::WXPrime { x, .. } => x,
                        _ => unreachable!(),
                    };
                    for &i in by_edge.get(&e).map(Vec::as_slice).unwrap_or(&[]) {
                        let i = i as usize;
                        count[i] += 1;
                        let m = &members[i];
                        if count[i] as usize == m.h1.len() && ctx.t.testable(&m.h1) {
                            complete[i] = true;
                            for &y in m.vp.iter().filter(|&&y| y != x) {
                                for &f in ctx.h.incident(y, EdgeClass::H1) {
                                    if ctx.in_m[f as usize] && !m.h1.contains(&f) && ctx.t.testable_with(&m.h1, f) {
                                        tr.value += m.a;
                                    }
                                }
                            }
                        }
                    }
                    for &y in ctx.h.p_part(e) {
                        for &i in by_y.get(&y).map(Vec::as_slice).unwrap_or(&[]) {
                            let m = &members[i as usize];
                            if complete[i as usize] && !m.h1.contains(&e) && ctx.t.testable_with(&m.h1, e) {
                                tr.value += m.a;
                            }
                        }
                    }
                }
                State::OnDemand => {}
            }
        }
    }

    fn fresh(&self, tr: &Tracker, m: &[EdgeId]) -> f64 {
        let ctx = self.ctx.as_ref().expect("trackers registered");
        let r = match &tr.spec {
            TrackerSpec::WX { x, j1, j2 } => eval_w_x(ctx.model.explicit().expect("explicit"), ctx.h, &ctx.t, *x, *j1, *j2, m),
            TrackerSpec::WXPrime { x, j1, j2 } => eval_w_x_prime(ctx.model.explicit().expect("explicit"), ctx.h, &ctx.t, *x, *j1, *j2, m),
            TrackerSpec::WXB { x, b } => eval_w_x_b(ctx.model, ctx.h, &ctx.t, *x, b, m),
        };
        r.expect("validated at registration")
    }

    /// Panics if an incremental value disagrees with re-evaluation over `m`.
    pub fn assert_consistent(&self, m: &[EdgeId]) {
        for tr in &self.trackers {
            if matches!(tr.state, State::OnDemand) {
                continue;
            }
            let direct = self.fresh(tr, m);
            assert!((direct - tr.value).abs() <= 1e-9 * direct.abs().max(1.0), "tracker {:?}: incremental {} vs direct {}", tr.spec, tr.value, direct);
        }
    }

    pub fn reports(&self, m: &[EdgeId]) -> Vec<TrackerReport> {
        let Some(ctx) = self.ctx.as_ref() else { return Vec::new() };
        self.trackers
            .iter()
            .map(|tr| {
                let value = match tr.state {
                    State::OnDemand => self.fresh(tr, m),
                    _ => tr.value,
                };
                let prediction = ctx.d.powi(-(tr.spec.scale() as i32)) * tr.initial;
                TrackerReport {
                    kind: tr.spec.kind().to_string(),
                    params: tr.spec.clone(),
                    value,
                    initial: tr.initial,
                    prediction,
                    ratio: (prediction > 0.0).then(|| value / prediction),
                    normalizer: tr.normalizer,
                }
            })
            .collect()
    }
}

/// `α_x = max(α_x', α_x'')` with `α_x' = max_{j'} d^{j'-j1} Δ^A_{j',0}` and
/// `α_x'' = d^{-j1} max_y A(G_{x,y})`.
fn alpha(mem: &[Member], x: VertexId, j1: usize, d: f64) -> Result<f64> {
    let mut a1 = 0.0f64;
    if j1 > 0 {
        // Δ^A over H1-subsets: weights come from the members, not from the
        // (H2-free) H1-parts, so accumulate directly.
        for jp in 1..=j1 {
            let mut acc: HashMap<Vec<EdgeId>, f64> = HashMap::new();
            for m in mem {
                crate::comb::for_each_combination(&m.h1, jp, |c| *acc.entry(c.to_vec()).or_insert(0.0) += m.a);
            }
            let best = acc.values().copied().fold(0.0, f64::max);
            a1 = a1.max(d.powi(jp as i32 - j1 as i32) * best);
        }
    }
    let mut by_y: HashMap<VertexId, f64> = HashMap::new();
    for m in mem {
        for &y in m.vp.iter().filter(|&&y| y != x) {
            *by_y.entry(y).or_insert(0.0) += m.a;
        }
    }
    let a2 = d.powi(-(j1 as i32)) * by_y.values().copied().fold(0.0, f64::max);
    Ok(a1.max(a2))
}

/// `β_x = max(β_x', β_x'')` over the `(j1, 1)`-conflicts at `x`, with
/// `β_x' = max d^{j'-j1} Δ_{j',1}` and `β_x'' = d_x^{-1} max Δ_{j1,0}`.
fn beta(model: &ConflictModel, h: &Hypergraph, x: VertexId, d: f64) -> Result<f64> {
    let mut by_j1: HashMap<usize, Vec<Vec<EdgeId>>> = HashMap::new();
    for &e in h.incident(x, EdgeClass::H2) {
        for mut p in model.j21_parts(h, e) {
            let j1 = p.len();
            p.push(e);
            p.sort_unstable();
            by_j1.entry(j1).or_default().push(p);
        }
    }
    let dx = h.d_h2(x) as f64;
    let mut best = 0.0f64;
    for (j1, fam) in &by_j1 {
        // A = 1/d_x on every member, so Δ = d_x Δ^A.
        for jp in 1..=*j1 {
            let (w, _) = weighted_max_degree(h, fam.iter().map(Vec::as_slice), jp, 1)?;
            best = best.max(d.powi(jp as i32 - *j1 as i32) * w * dx);
        }
        let (w, _) = weighted_max_degree(h, fam.iter().map(Vec::as_slice), *j1, 0)?;
        best = best.max(w);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{HypergraphBuilder, Shape};

    /// P = {0..5}, R = {6..9}. H1 pairs {0,1},{2,3},{4,5},{1,2}; H2 edges at
    /// every P-vertex.
    fn toy() -> (Hypergraph, ConflictSystem) {
        let mut b = HypergraphBuilder::new(Shape { n_p: 6, n_q: 0, n_r: 4, p: 2, q: 0, r: 1 });
        for pair in [[0, 1], [2, 3], [4, 5], [1, 2]] {
            b.add_edge(EdgeClass::H1, &pair).unwrap(); // 0..=3
        }
        for x in 0..6 {
            b.add_edge(EdgeClass::H2, &[x, 6]).unwrap(); // 4 + 2x
            b.add_edge(EdgeClass::H2, &[x, 7 + x % 3]).unwrap(); // 5 + 2x
        }
        let h = b.build().unwrap();
        // x = 0 anchors: (1,1): {1, e0}; (1,2): {2, e0, e4}; (0,2): {e0, e3}
        let e = |x: u32, i: u32| 4 + 2 * x + i;
        let d = vec![vec![1, e(0, 0)], vec![2, e(0, 0), e(4, 1)], vec![e(0, 1), e(3, 0)], vec![1, 2, e(0, 1)]];
        let cs = ConflictSystem::new(&h, &[], &d, None).unwrap();
        (h, cs)
    }

    #[test]
    fn w_x_values() {
        let (h, cs) = toy();
        let t = Testability::new(&h, Some(&cs), &[]);
        assert_eq!(eval_w_x(&cs, &h, &t, 0, 1, 1, &[]).unwrap(), 0.0);
        assert_eq!(eval_w_x(&cs, &h, &t, 0, 1, 1, &[1]).unwrap(), 0.5);
        assert_eq!(eval_w_x(&cs, &h, &t, 0, 1, 2, &[1, 2]).unwrap(), 0.25);
        // j1 = 0 ignores m
        assert_eq!(eval_w_x(&cs, &h, &t, 0, 0, 2, &[]).unwrap(), 0.25);
        // {1, 2} is a matching and testable
        assert_eq!(eval_w_x(&cs, &h, &t, 0, 2, 1, &[1, 2]).unwrap(), 0.5);
        // w_x' with j1 = 1, j2 = 2: D = {2, e0, e4}, y = 4, edges through 4: {4,5} = id 2?
        // id 2 is {4,5} and lies in H1(D) itself, so nothing counts.
        assert_eq!(eval_w_x_prime(&cs, &h, &t, 0, 1, 2, &[0, 1, 2]).unwrap(), 0.0);
        // (0,2): {e(0,1), e(3,0)}, y = 3, edges through 3: {2,3} (id 1) and {1,2}? no: id 3 is {1,2}
        assert_eq!(eval_w_x_prime(&cs, &h, &t, 0, 0, 2, &[1]).unwrap(), 0.25);
        assert_eq!(eval_w_x_prime(&cs, &h, &t, 0, 0, 2, &[]).unwrap(), 0.0);
    }

    #[test]
    fn w_x_b_single_term() {
        let (h, cs) = toy();
        let model = ConflictModel::Explicit(cs.clone());
        let t = Testability::new(&h, Some(&cs), &[]);
        assert_eq!(eval_w_x_b(&model, &h, &t, 0, &[1], &[1]).unwrap(), 0.5);
        assert_eq!(eval_w_x_b(&model, &h, &t, 0, &[0, 1], &[1, 2]).unwrap(), 0.5);
        assert_eq!(eval_w_x_b(&model, &h, &t, 0, &[1], &[]).unwrap(), 0.0);
        assert!(eval_w_x_b(&model, &h, &t, 0, &[], &[]).is_err());
    }

    #[test]
    fn incremental_matches_direct() {
        let (h, cs) = toy();
        let model = ConflictModel::Explicit(cs);
        let specs = vec![
            TrackerSpec::WX { x: 0, j1: 1, j2: 1 },
            TrackerSpec::WX { x: 0, j1: 0, j2: 2 },
            TrackerSpec::WXPrime { x: 0, j1: 0, j2: 2 },
            TrackerSpec::WXPrime { x: 0, j1: 1, j2: 2 },
            TrackerSpec::WXB { x: 0, b: vec![1] },
        ];
        let mut ts = TrackerSet::new(&h, &model, &specs, 2.0, 0.1).unwrap();
        let mut m = Vec::new();
        for e in [1, 2, 0] {
            ts.on_add(e);
            m.push(e);
            ts.assert_consistent(&m);
        }
        let r = ts.reports(&m);
        assert_eq!(r.len(), 5);
        assert_eq!(r[2].value, 0.25);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("w:3:1:2".parse::<TrackerSpec>().unwrap(), TrackerSpec::WX { x: 3, j1: 1, j2: 2 });
        assert_eq!("wb:0:0,1".parse::<TrackerSpec>().unwrap(), TrackerSpec::WXB { x: 0, b: vec![0, 1] });
        assert!("w:1".parse::<TrackerSpec>().is_err());
    }
}
