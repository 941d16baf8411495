//! Degree and boundedness condition validators.
//!
//! Every inequality is stored as `lhs ≤ coef · d^(a + b·ε + c·ε³ + e·ε⁴)`
//! so the report can also search for the largest ε at which it holds.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::comb::for_each_combination;
use crate::conflicts::{split, v_p, ConflictSystem};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, Hypergraph};
use crate::unavoid::{unavoidability, vertex_unavoidability};

pub const HOLD_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub label: String,
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub witness: Vec<u32>,
    pub sup_eps: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub d: f64,
    pub eps: f64,
    pub delta: Option<f64>,
    pub ell: usize,
    pub delta_p_h2: usize,
    pub delta_r_h2: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub entries: Vec<ConditionEntry>,
    pub params: DerivedParams,
    pub float_tolerance: f64,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn get(&self, label: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn failing(&self) -> impl Iterator<Item = &ConditionEntry> {
        self.entries.iter().filter(|e| !e.holds)
    }

    pub fn merge(mut self, other: ConditionReport) -> ConditionReport {
        self.entries.extend(other.entries);
        if self.params.delta.is_none() {
            self.params.delta = other.params.delta;
        }
        self.params.ell = self.params.ell.max(other.params.ell);
        self.finish()
    }

    fn finish(mut self) -> Self {
        self.entries.sort_by(|a, b| a.label.cmp(&b.label).then_with(|| a.witness.cmp(&b.witness)));
        self
    }
}

/// `coef · d^(a + b ε + c ε³ + e ε⁴)`.
#[derive(Clone, Copy, Debug)]
struct Rhs {
    coef: f64,
    a: f64,
    b: f64,
    c: f64,
    e: f64,
}

impl Rhs {
    fn pow(a: f64) -> Self {
        Rhs { coef: 1.0, a, b: 0.0, c: 0.0, e: 0.0 }
    }
    fn coef(mut self, coef: f64) -> Self {
        self.coef = coef;
        self
    }
    fn eps(mut self, b: f64) -> Self {
        self.b = b;
        self
    }
    fn eps3(mut self, c: f64) -> Self {
        self.c = c;
        self
    }
    fn eps4(mut self, e: f64) -> Self {
        self.e = e;
        self
    }
    fn at(&self, d: f64, eps: f64) -> f64 {
        let x = self.a + self.b * eps + self.c * eps.powi(3) + self.e * eps.powi(4);
        self.coef * d.powf(x)
    }
}

fn holds(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + HOLD_TOL)
}

/// Largest ε in (0, 1] at which the inequality holds; 1 when it holds at the
/// top end, `None` when it holds nowhere on a 64-point grid.
fn sup_eps(lhs: f64, rhs: Rhs, d: f64) -> Option<f64> {
    let ok = |e: f64| holds(lhs, rhs.at(d, e));
    if ok(1.0) {
        return Some(1.0);
    }
    const GRID: usize = 64;
    let last = (1..GRID).rev().map(|i| i as f64 / GRID as f64).find(|&e| ok(e));
    let last = match last {
        Some(e) => e,
        None if ok(1e-9) => 1e-9,
        None => return None,
    };
    let (mut lo, mut hi) = (last, (last + 1.0 / GRID as f64).min(1.0));
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

struct Builder {
    d: f64,
    eps: f64,
    entries: Vec<ConditionEntry>,
}

impl Builder {
    fn new(d: f64, eps: f64) -> Self {
        Builder { d, eps, entries: Vec::new() }
    }

    fn push(&mut self, label: impl Into<String>, lhs: f64, rhs: Rhs, witness: Vec<u32>) {
        let r = rhs.at(self.d, self.eps);
        self.entries.push(ConditionEntry { label: label.into(), holds: holds(lhs, r), lhs, rhs: r, witness, sup_eps: sup_eps(lhs, rhs, self.d) });
    }

    fn report(self, params: DerivedParams) -> ConditionReport {
        ConditionReport { entries: self.entries, params, float_tolerance: HOLD_TOL }.finish()
    }
}

fn validate(d: f64, eps: f64) -> Result<()> {
    if !(d >= 2.0 && d.is_finite()) {
        return Err(Error::input(format!("d must be at least 2 (got {d})")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::input(format!("eps must lie in (0, 1) (got {eps})")));
    }
    Ok(())
}

fn params(h: &Hypergraph, d: f64, eps: f64, ell: usize, delta: Option<f64>) -> DerivedParams {
    let delta_p_h2 = h.p_vertices().map(|x| h.d_h2(x)).min().unwrap_or(0);
    let delta_r_h2 = h.r_vertices().map(|v| h.d_h2(v)).max().unwrap_or(0);
    DerivedParams { d, eps, delta, ell, delta_p_h2, delta_r_h2 }
}

/// (H1)–(H4), (H3')–(H4') and the part-size bounds.
pub fn check_h_conditions(h: &Hypergraph, d: f64, eps: f64) -> Result<ConditionReport> {
    validate(d, eps)?;
    let mut b = Builder::new(d, eps);
    let n_h1 = h.edges_of(EdgeClass::H1).len();
    let n_h2 = h.edges_of(EdgeClass::H2).len();
    b.push("H.nonempty.H1", 1.0, Rhs::pow(0.0).coef(n_h1 as f64), vec![]);
    b.push("H.nonempty.H2", 1.0, Rhs::pow(0.0).coef(n_h2 as f64), vec![]);

    // (H1): the lower bound is rewritten as d − δ_P(H1) ≤ d^{1−ε}.
    let (min_p, min_w) = h.p_vertices().map(|x| (h.d_h1(x), x)).min().unwrap_or((0, 0));
    b.push("H1.lower", d - min_p as f64, Rhs::pow(1.0).eps(-1.0), vec![min_w]);
    let (max_all, max_w) = (0..h.n_vertices() as u32).map(|v| (h.d_h1(v), std::cmp::Reverse(v))).max().map(|(c, v)| (c, v.0)).unwrap_or((0, 0));
    b.push("H1.upper", max_all as f64, Rhs::pow(1.0), vec![max_w]);

    let (co, co_w) = h.max_degree(2, Some(EdgeClass::H1))?;
    b.push("H2", co as f64, Rhs::pow(1.0).eps(-1.0), co_w);

    let delta_p_h2 = h.p_vertices().map(|x| h.d_h2(x)).min().unwrap_or(0);
    let (dr, dr_w) = h.r_vertices().map(|v| (h.d_h2(v), std::cmp::Reverse(v))).max().map(|(c, v)| (c, v.0)).unwrap_or((0, 0));
    b.push("H3", dr as f64, Rhs::pow(0.0).eps4(1.0).coef(delta_p_h2 as f64), vec![dr_w]);

    // d(x, v) for x ∈ P, v ∈ R, and the worst ratio d(x, v)/d(x).
    let mut worst_pair = (0usize, vec![]);
    let mut worst_ratio = (0.0f64, vec![]);
    for x in h.p_vertices() {
        let dx = h.d_h2(x);
        let mut per_v: HashMap<u32, usize> = HashMap::new();
        for &e in h.incident(x, EdgeClass::H2) {
            for &v in h.r_part(e) {
                *per_v.entry(v).or_insert(0) += 1;
            }
        }
        let mut pv: Vec<_> = per_v.into_iter().collect();
        pv.sort_unstable();
        for (v, c) in pv {
            if c > worst_pair.0 {
                worst_pair = (c, vec![x, v]);
            }
            let ratio = c as f64 / dx as f64;
            if ratio > worst_ratio.0 {
                worst_ratio = (ratio, vec![x, v]);
            }
        }
    }
    b.push("H4", worst_pair.0 as f64, Rhs::pow(0.0).eps(-1.0).coef(delta_p_h2 as f64), worst_pair.1);
    b.push("H4'", worst_ratio.0, Rhs::pow(0.0).eps(-1.0), worst_ratio.1);

    let mut worst_a = (0.0f64, vec![]);
    if delta_p_h2 == 0 {
        let x = h.p_vertices().find(|&x| h.d_h2(x) == 0).unwrap_or(0);
        b.push("H3'", f64::INFINITY, Rhs::pow(0.0).eps4(1.0), vec![x]);
    } else {
        for v in h.r_vertices() {
            let a = vertex_unavoidability(h, v)?;
            if a > worst_a.0 {
                worst_a = (a, vec![v]);
            }
        }
        b.push("H3'", worst_a.0, Rhs::pow(0.0).eps4(1.0), worst_a.1);
    }

    let n_p = h.n_p() as f64;
    let n_pq = (h.shape().n_p + h.shape().n_q) as f64;
    b.push("size.P.lower", 1.0, Rhs::pow(0.0).eps(-1.0).coef(n_p), vec![]);
    b.push("size.PQ.upper", n_pq.max(1.0).ln(), Rhs::pow(0.0).eps3(1.0), vec![]);
    Ok(b.report(params(h, d, eps, 0, None)))
}

/// (C1)–(C3).
pub fn check_c_conditions(cs: &ConflictSystem, d: f64, eps: f64) -> Result<ConditionReport> {
    validate(d, eps)?;
    let ell = cs.ell();
    let mut b = Builder::new(d, eps);
    let bad: Vec<&[u32]> = cs.c.iter().filter(|c| c.len() < 3 || c.len() > ell).collect();
    b.push("C1", bad.len() as f64, Rhs::pow(0.0).coef(0.0), bad.first().map(|c| c.to_vec()).unwrap_or_default());
    for j in 3..=ell {
        let of_size: Vec<&[u32]> = cs.c.iter().filter(|c| c.len() == j).collect();
        let (m, w) = max_subset_count(&of_size, 1);
        b.push(format!("C2[{j}]"), m as f64, Rhs::pow(j as f64 - 1.0).coef(ell as f64), w);
        for jp in 2..j {
            let (m, w) = max_subset_count(&of_size, jp);
            b.push(format!("C3[{j},{jp}]"), m as f64, Rhs::pow((j - jp) as f64).eps(-1.0), w);
        }
    }
    Ok(b.report(DerivedParams { d, eps, delta: None, ell, ..Default::default() }))
}

/// How often the most common `jp`-subset occurs across `sets`, with the
/// lexicographically smallest such subset as witness.
fn max_subset_count(sets: &[&[u32]], jp: usize) -> (usize, Vec<u32>) {
    if jp > 4 {
        let mut map: HashMap<Vec<u32>, usize> = HashMap::new();
        for c in sets {
            for_each_combination(c, jp, |s| *map.entry(s.to_vec()).or_insert(0) += 1);
        }
        let (m, w) = max_entry(map.into_iter().map(|(k, c)| (k, c as f64)));
        return (m as usize, w);
    }
    // packed big-endian, so numeric order is lexicographic order
    let mut keys: Vec<u128> = Vec::new();
    for c in sets {
        for_each_combination(c, jp, |s| keys.push(s.iter().fold(0u128, |k, &v| (k << 32) | v as u128)));
    }
    keys.sort_unstable();
    let mut best = (0usize, 0u128);
    for run in keys.chunk_by(|a, b| a == b) {
        if run.len() > best.0 {
            best = (run.len(), run[0]);
        }
    }
    if best.0 == 0 {
        return (0, vec![]);
    }
    let w = (0..jp).rev().map(|i| (best.1 >> (32 * i)) as u32).collect();
    (best.0, w)
}

/// Largest value with the lexicographically smallest witness among ties.
fn max_entry(it: impl Iterator<Item = (Vec<u32>, f64)>) -> (f64, Vec<u32>) {
    let mut best: (f64, Vec<u32>) = (0.0, vec![]);
    for (k, v) in it {
        if v > best.0 || (v == best.0 && v > 0.0 && k < best.1) {
            best = (v, k);
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Simple,
    Mixed,
    Both,
}

/// The δ of mixed-boundedness: either tied to ε as ε⁴ or a fixed number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MixedDelta {
    Eps4,
    Fixed(f64),
}

impl MixedDelta {
    fn value(self, eps: f64) -> f64 {
        match self {
            MixedDelta::Eps4 => eps.powi(4),
            MixedDelta::Fixed(v) => v,
        }
    }
}

#[derive(Default)]
struct Tally {
    count: usize,
    mass: f64,
}

impl Tally {
    fn add(&mut self, a: f64) {
        self.count += 1;
        self.mass += a;
    }
}

type Key = Vec<u32>;

/// Per-(j1, j2) aggregates over D used by both modes.
#[derive(Default)]
struct Aggregates {
    // (j1, j2) → x → tally
    at_x: HashMap<(usize, usize), HashMap<Key, Tally>>,
    // (j1, j2, j') → [x, F1..] → tally
    codeg: HashMap<(usize, usize, usize), HashMap<Key, Tally>>,
    // (j1, j2) → [x, y] → tally, x < y
    pairs: HashMap<(usize, usize), HashMap<Key, Tally>>,
    // j1 → [e] → count, over D^{(j1,1)}
    j21_edge: HashMap<usize, HashMap<Key, Tally>>,
    // (j1, j') → [F1.., e] → count, over D^{(j1,1)}
    j21_codeg: HashMap<(usize, usize), HashMap<Key, Tally>>,
}

fn aggregate(h: &Hypergraph, cs: &ConflictSystem) -> Result<Aggregates> {
    let mut g = Aggregates::default();
    for conflict in cs.d.iter() {
        let (p1, p2) = split(h, conflict);
        let (j1, j2) = (p1.len(), p2.len());
        if j2 == 0 {
            continue;
        }
        let vp = v_p(h, conflict);
        let a = unavoidability(h, conflict)?;
        for &x in &vp {
            g.at_x.entry((j1, j2)).or_default().entry(vec![x]).or_default().add(a);
            for jp in 1..=j1 {
                let map = g.codeg.entry((j1, j2, jp)).or_default();
                for_each_combination(&p1, jp, |s| {
                    let mut k = vec![x];
                    k.extend_from_slice(s);
                    map.entry(k).or_default().add(a);
                });
            }
        }
        for (i, &x) in vp.iter().enumerate() {
            for &y in &vp[i + 1..] {
                g.pairs.entry((j1, j2)).or_default().entry(vec![x, y]).or_default().add(a);
            }
        }
        if j2 == 1 {
            let e = p2[0];
            g.j21_edge.entry(j1).or_default().entry(vec![e]).or_default().add(a);
            for jp in 1..j1 {
                let map = g.j21_codeg.entry((j1, jp)).or_default();
                for_each_combination(&p1, jp, |s| {
                    let mut k = s.to_vec();
                    k.push(e);
                    map.entry(k).or_default().add(a);
                });
            }
        }
    }
    Ok(g)
}

fn sorted_keys<K: Ord + Copy, V>(m: &HashMap<K, V>) -> Vec<K> {
    let mut k: Vec<K> = m.keys().copied().collect();
    k.sort_unstable();
    k
}

fn max_count(m: &HashMap<Key, Tally>) -> (f64, Key) {
    max_entry(m.iter().map(|(k, t)| (k.clone(), t.count as f64)))
}

fn max_mass(m: &HashMap<Key, Tally>) -> (f64, Key) {
    max_entry(m.iter().map(|(k, t)| (k.clone(), t.mass)))
}

fn simple_entries(b: &mut Builder, cs: &ConflictSystem, h: &Hypergraph, g: &Aggregates, dp: f64) {
    let ell = cs.ell();
    let bad: Vec<&[u32]> =
        cs.d.iter()
            .filter(|c| {
                let j2 = c.iter().filter(|&&e| h.class(e) == EdgeClass::H2).count();
                j2 < 2 || c.len() > ell
            })
            .collect();
    b.push("D1", bad.len() as f64, Rhs::pow(0.0).coef(0.0), bad.first().map(|c| c.to_vec()).unwrap_or_default());
    for key in sorted_keys(&g.at_x) {
        let (j1, j2) = key;
        if j2 < 2 {
            continue;
        }
        let (m, w) = max_count(&g.at_x[&key]);
        let coef = dp.powi(j2 as i32);
        b.push(format!("D2[{j1},{j2}]"), m, Rhs::pow(j1 as f64).eps4(1.0).coef(coef), w);
    }
    for key in sorted_keys(&g.codeg) {
        let (j1, j2, jp) = key;
        if j2 < 2 {
            continue;
        }
        let (m, w) = max_count(&g.codeg[&key]);
        let coef = dp.powi(j2 as i32);
        b.push(format!("D3[{j1},{j2},{jp}]"), m, Rhs::pow((j1 - jp) as f64).eps(-1.0).coef(coef), w);
    }
    for key in sorted_keys(&g.pairs) {
        let (j1, j2) = key;
        if j2 < 2 {
            continue;
        }
        let (m, w) = max_count(&g.pairs[&key]);
        let coef = dp.powi(j2 as i32);
        b.push(format!("D4[{j1},{j2}]"), m, Rhs::pow(j1 as f64).eps(-1.0).coef(coef), w);
    }
}

fn mixed_entries(b: &mut Builder, cs: &ConflictSystem, h: &Hypergraph, g: &Aggregates, delta: MixedDelta) {
    let ell = cs.ell();
    let bad: Vec<&[u32]> =
        cs.d.iter()
            .filter(|c| {
                let j2 = c.iter().filter(|&&e| h.class(e) == EdgeClass::H2).count();
                j2 < 1 || c.len() < 2 || c.len() > ell
            })
            .collect();
    b.push("E1", bad.len() as f64, Rhs::pow(0.0).coef(0.0), bad.first().map(|c| c.to_vec()).unwrap_or_default());
    for key in sorted_keys(&g.at_x) {
        let (j1, j2) = key;
        let (m, w) = max_mass(&g.at_x[&key]);
        let rhs = match delta {
            MixedDelta::Eps4 => Rhs::pow(j1 as f64).eps4(1.0),
            MixedDelta::Fixed(v) => Rhs::pow(j1 as f64 + v),
        };
        b.push(format!("E2[{j1},{j2}]"), m, rhs, w);
    }
    for key in sorted_keys(&g.codeg) {
        let (j1, j2, jp) = key;
        let (m, w) = max_mass(&g.codeg[&key]);
        b.push(format!("E3[{j1},{j2},{jp}]"), m, Rhs::pow((j1 - jp) as f64).eps(-1.0), w);
    }
    for key in sorted_keys(&g.pairs) {
        let (j1, j2) = key;
        if j2 < 2 {
            continue;
        }
        let (m, w) = max_mass(&g.pairs[&key]);
        b.push(format!("E4[{j1},{j2}]"), m, Rhs::pow(j1 as f64).eps(-1.0), w);
    }
    for j1 in sorted_keys(&g.j21_edge) {
        let (m, w) = max_count(&g.j21_edge[&j1]);
        b.push(format!("E5[{j1}]"), m, Rhs::pow(j1 as f64).coef(ell as f64), w);
    }
    for key in sorted_keys(&g.j21_codeg) {
        let (j1, jp) = key;
        let (m, w) = max_count(&g.j21_codeg[&key]);
        b.push(format!("E6[{j1},{jp}]"), m, Rhs::pow((j1 - jp) as f64).eps(-1.0), w);
    }
}

/// (D1)–(D4) and/or (E1)–(E6). With `Mode::Both` the report also carries
/// the cross-check that simple-boundedness implies mixed-boundedness with
/// δ = ε⁴.
pub fn check_d_conditions(cs: &ConflictSystem, h: &Hypergraph, d: f64, eps: f64, mode: Mode, delta: MixedDelta) -> Result<ConditionReport> {
    validate(d, eps)?;
    let dp = h.p_vertices().map(|x| h.d_h2(x)).min().unwrap_or(0);
    if cs.d.iter().any(|c| c.iter().any(|&e| h.class(e) == EdgeClass::H2)) && dp == 0 {
        return Err(Error::precondition("some P-vertex has H2-degree 0"));
    }
    let g = aggregate(h, cs)?;
    let mut b = Builder::new(d, eps);
    if matches!(mode, Mode::Simple | Mode::Both) {
        simple_entries(&mut b, cs, h, &g, dp as f64);
    }
    if matches!(mode, Mode::Mixed | Mode::Both) {
        mixed_entries(&mut b, cs, h, &g, delta);
    }
    if mode == Mode::Both {
        let simple_ok = b.entries.iter().filter(|e| e.label.starts_with('D')).all(|e| e.holds);
        let mut m = Builder::new(d, eps);
        mixed_entries(&mut m, cs, h, &g, MixedDelta::Eps4);
        let mixed_ok = m.entries.iter().all(|e| e.holds);
        let consistent = !simple_ok || mixed_ok;
        b.entries.push(ConditionEntry {
            label: "simple⇒mixed δ=ε⁴".into(),
            holds: consistent,
            lhs: if consistent { 0.0 } else { 1.0 },
            rhs: 0.0,
            witness: vec![],
            sup_eps: None,
        });
    }
    let delta_v = matches!(mode, Mode::Mixed | Mode::Both).then(|| delta.value(eps));
    Ok(b.report(params(h, d, eps, cs.ell(), delta_v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{HypergraphBuilder, Shape};

    fn regular_pm(n: u32, d: usize) -> Hypergraph {
        // P = [n], Q = [n]; H1 = d disjoint "shifted" matchings P_i–Q_{i+s}.
        let mut b = HypergraphBuilder::new(Shape { n_p: n, n_q: n, n_r: n, p: 1, q: 1, r: 1 });
        for s in 0..d as u32 {
            for i in 0..n {
                b.add_edge(EdgeClass::H1, &[i, n + (i + s) % n]).unwrap();
            }
        }
        for i in 0..n {
            b.add_edge(EdgeClass::H2, &[i, 2 * n + i]).unwrap();
            b.add_edge(EdgeClass::H2, &[i, 2 * n + (i + 1) % n]).unwrap();
        }
        b.build().unwrap()
    }

    #[test]
    fn h_conditions_regular() {
        let h = regular_pm(50, 20);
        let r = check_h_conditions(&h, 20.0, 0.1).unwrap();
        assert!(r.get("H1.lower").unwrap().holds);
        assert!(r.get("H1.upper").unwrap().holds);
        assert!(r.get("H2").unwrap().holds);
        assert_eq!(r.get("H2").unwrap().lhs, 1.0);
        assert_eq!(r.params.delta_p_h2, 2);
        // One P-vertex above d.
        let r = check_h_conditions(&h, 19.0, 0.1).unwrap();
        let e = r.get("H1.upper").unwrap();
        assert!(!e.holds);
        assert_eq!(e.lhs, 20.0);
    }

    #[test]
    fn sup_eps_bisection() {
        // d − δ = 10 ≤ d^{1−ε} with d = 100  ⇔  ε ≤ 0.5
        let s = sup_eps(10.0, Rhs::pow(1.0).eps(-1.0), 100.0).unwrap();
        assert!((s - 0.5).abs() < 1e-9);
        assert_eq!(sup_eps(0.0, Rhs::pow(1.0).eps(-1.0), 100.0), Some(1.0));
        assert_eq!(sup_eps(1e9, Rhs::pow(1.0).eps(-1.0), 100.0), None);
    }

    #[test]
    fn c_conditions() {
        let h = regular_pm(6, 3);
        let cs = ConflictSystem::empty(&h);
        assert!(check_c_conditions(&cs, 3.0, 0.1).unwrap().all_hold());
        let cs = ConflictSystem::new(&h, &[vec![0, 1]], &[], Some(3)).unwrap();
        let r = check_c_conditions(&cs, 3.0, 0.1).unwrap();
        assert!(!r.get("C1").unwrap().holds);
    }

    #[test]
    fn d_modes_split() {
        let h = regular_pm(6, 3);
        let h2 = h.edges_of(EdgeClass::H2)[0];
        let cs = ConflictSystem::new(&h, &[], &[vec![0, h2]], Some(3)).unwrap();
        let r = check_d_conditions(&cs, &h, 3.0, 0.1, Mode::Simple, MixedDelta::Eps4).unwrap();
        assert!(!r.get("D1").unwrap().holds);
        let r = check_d_conditions(&cs, &h, 3.0, 0.1, Mode::Mixed, MixedDelta::Eps4).unwrap();
        assert!(r.get("E1").unwrap().holds);
        assert!(r.get("E2[1,1]").is_some());
        assert!(r.get("E5[1]").is_some());
        let r = check_d_conditions(&ConflictSystem::empty(&h), &h, 3.0, 0.1, Mode::Both, MixedDelta::Eps4).unwrap();
        assert!(r.all_hold());
    }
}
