//! Independent verifiers for matchings, colourings and coverings. Every check
//! is a fresh exhaustive scan over plain edge and conflict lists; no index or
//! matcher state is consulted.

use std::collections::{BTreeMap, HashSet};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::comb::colex_rank;
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, Matching, VertexId};
use crate::model::{Pattern, NO_COLOUR};
use crate::rng::{stream, Stream};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub witness: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub counts: BTreeMap<String, u64>,
    pub fractions: BTreeMap<String, f64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>, witness: Option<Vec<u64>>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into(), witness });
    }

    fn count(&mut self, name: &str, v: u64) {
        self.counts.insert(name.into(), v);
    }

    fn fraction(&mut self, name: &str, v: f64) {
        self.fractions.insert(name.into(), v);
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.checks.extend(other.checks);
        self.counts.extend(other.counts);
        self.fractions.extend(other.fractions);
        self
    }
}

/// Scan direction for conflict lists; both must give identical reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanOrder {
    Forward,
    Reverse,
}

/// Smallest index of a conflict fully contained in `chosen`.
fn first_contained(family: &[Vec<EdgeId>], chosen: &HashSet<EdgeId>, order: ScanOrder) -> (usize, Option<usize>) {
    let mut hits = 0;
    let mut first: Option<usize> = None;
    let mut visit = |i: usize| {
        if family[i].iter().all(|e| chosen.contains(e)) {
            hits += 1;
            first = Some(first.map_or(i, |f| f.min(i)));
        }
    };
    match order {
        ScanOrder::Forward => (0..family.len()).for_each(&mut visit),
        ScanOrder::Reverse => (0..family.len()).rev().for_each(&mut visit),
    }
    (hits, first)
}

/// Checks P-perfectness, disjointness and freedom from `c` and `d`. When
/// `d_eps` is given, the fraction of P covered by `m2` is reported next to
/// `d^{-ε⁴}`.
pub fn verify_matching(h: &Hypergraph, c: &[Vec<EdgeId>], d: &[Vec<EdgeId>], m: &Matching, d_eps: Option<(f64, f64)>) -> Report {
    verify_matching_ordered(h, c, d, m, d_eps, ScanOrder::Forward)
}

pub fn verify_matching_ordered(h: &Hypergraph, c: &[Vec<EdgeId>], d: &[Vec<EdgeId>], m: &Matching, d_eps: Option<(f64, f64)>, order: ScanOrder) -> Report {
    let mut r = Report::default();
    let n_edges = h.n_edges() as EdgeId;
    let mut edges: Vec<(EdgeId, EdgeClass)> = m.m1.iter().map(|&e| (e, EdgeClass::H1)).chain(m.m2.iter().map(|&e| (e, EdgeClass::H2))).collect();
    if order == ScanOrder::Reverse {
        edges.reverse();
    }
    let bad_class: Vec<u64> = edges.iter().filter(|&&(e, cl)| e >= n_edges || h.class(e) != cl).map(|&(e, _)| e as u64).collect();
    let mut bad_class = bad_class;
    bad_class.sort_unstable();
    r.check(
        "edge-classes",
        bad_class.is_empty(),
        if bad_class.is_empty() { "every m1 edge is in H1 and every m2 edge in H2".into() } else { format!("{} edges misplaced", bad_class.len()) },
        (!bad_class.is_empty()).then_some(bad_class.clone()),
    );
    if !bad_class.is_empty() {
        return r;
    }
    let mut hits = vec![0u32; h.n_vertices()];
    for &(e, _) in &edges {
        for &v in h.edge(e) {
            hits[v as usize] += 1;
        }
    }
    let shared: Vec<u64> = (0..hits.len()).filter(|&v| hits[v] > 1).map(|v| v as u64).collect();
    r.check(
        "matching",
        shared.is_empty(),
        if shared.is_empty() { "chosen edges are pairwise disjoint".into() } else { format!("{} vertices lie in two chosen edges", shared.len()) },
        shared.first().map(|&v| vec![v]),
    );
    let p = h.n_p();
    let missed: Vec<u64> = (0..p).filter(|&v| hits[v] == 0).map(|v| v as u64).collect();
    r.check(
        "p-perfect",
        missed.is_empty(),
        if missed.is_empty() { "every P-vertex is covered".into() } else { format!("{} P-vertices uncovered", missed.len()) },
        missed.first().map(|&v| vec![v]),
    );
    let chosen: HashSet<EdgeId> = edges.iter().map(|&(e, _)| e).collect();
    for (name, family) in [("c-free", c), ("d-free", d)] {
        let (n_hit, first) = first_contained(family, &chosen, order);
        r.check(
            name,
            n_hit == 0,
            match first {
                None => format!("none of {} conflicts is contained", family.len()),
                Some(i) => format!("{n_hit} conflicts contained, first #{i}"),
            },
            first.map(|i| vec![i as u64]),
        );
    }
    r.count("p_vertices", p as u64);
    r.count("m1", m.m1.len() as u64);
    r.count("m2", m.m2.len() as u64);
    r.count("c_conflicts", c.len() as u64);
    r.count("d_conflicts", d.len() as u64);
    let m2_cover: usize = m.m2.iter().map(|&e| h.edge(e).iter().filter(|&&v| (v as usize) < p).count()).sum();
    r.fraction("m2_covered", if p == 0 { 0.0 } else { m2_cover as f64 / p as f64 });
    if let Some((dv, eps)) = d_eps {
        r.fraction("m2_target", dv.powf(-eps.powi(4)));
    }
    r
}

/// How copies of a tight cycle are generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleStrategy {
    /// Depth-first over vertex sequences with the least vertex first.
    VertexSequence,
    /// Every vertex set, then every cyclic order of it.
    VertexSet,
}

fn window_edges(seq: &[u32], k: usize) -> Vec<u32> {
    let len = seq.len();
    let mut out = Vec::with_capacity(len);
    let mut w = vec![0u32; k];
    for i in 0..len {
        for (t, x) in w.iter_mut().enumerate() {
            *x = seq[(i + t) % len];
        }
        w.sort_unstable();
        out.push(colex_rank(&w) as u32);
    }
    out
}

fn by_sequence(n: u32, k: usize, len: usize, f: &mut dyn FnMut(&[u32])) {
    fn go(seq: &mut Vec<u32>, n: u32, k: usize, len: usize, f: &mut dyn FnMut(&[u32])) {
        if seq.len() == len {
            if seq[1] < seq[len - 1] {
                f(&window_edges(seq, k));
            }
            return;
        }
        for v in seq[0] + 1..n {
            if !seq.contains(&v) {
                seq.push(v);
                go(seq, n, k, len, f);
                seq.pop();
            }
        }
    }
    for first in 0..n {
        go(&mut vec![first], n, k, len, f);
    }
}

fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn by_vertex_set(n: u32, k: usize, len: usize, f: &mut dyn FnMut(&[u32])) {
    let all: Vec<u32> = (0..n).collect();
    crate::comb::for_each_combination(&all, len, |set| {
        let mut rest = set[1..].to_vec();
        loop {
            if rest[0] < rest[len - 2] {
                let mut seq = vec![set[0]];
                seq.extend_from_slice(&rest);
                f(&window_edges(&seq, k));
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
    });
}

fn k4_copies(n: u32, f: &mut dyn FnMut(&[u32])) {
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    let mut ids = Vec::with_capacity(6);
                    for i in 0..4 {
                        for j in i + 1..4 {
                            ids.push(colex_rank(&[q[i], q[j]]) as u32);
                        }
                    }
                    f(&ids);
                }
            }
        }
    }
}

/// Every copy of the pattern in `K_n^k` must see at least `q` colours.
/// Violating copies are reported by their sorted host-edge ids.
pub fn verify_ramsey_coloring(n: u32, k: usize, pattern: Pattern, q: usize, colouring: &[u32]) -> Result<Report> {
    verify_ramsey_coloring_with(n, k, pattern, q, colouring, CycleStrategy::VertexSequence)
}

pub fn verify_ramsey_coloring_with(n: u32, k: usize, pattern: Pattern, q: usize, colouring: &[u32], strategy: CycleStrategy) -> Result<Report> {
    let n_host = crate::comb::binom(n as u64, k as u64) as usize;
    if colouring.len() != n_host {
        return Err(Error::input(format!("colouring has {} entries, K_n^k has {n_host} edges", colouring.len())));
    }
    let missing: Vec<usize> = (0..n_host).filter(|&g| colouring[g] == NO_COLOUR).collect();
    if !missing.is_empty() {
        return Err(Error::input(format!("colouring is partial; uncoloured edges {missing:?}")));
    }
    if pattern == Pattern::K4 && k != 2 {
        return Err(Error::input("K4 pattern needs k = 2"));
    }
    let mut copies = 0u64;
    let mut bad: Vec<Vec<u32>> = Vec::new();
    let mut visit = |ids: &[u32]| {
        copies += 1;
        let mut cols: Vec<u32> = ids.iter().map(|&g| colouring[g as usize]).collect();
        cols.sort_unstable();
        cols.dedup();
        if cols.len() < q {
            let mut w = ids.to_vec();
            w.sort_unstable();
            bad.push(w);
        }
    };
    match (pattern, strategy) {
        (Pattern::K4, _) => k4_copies(n, &mut visit),
        (Pattern::TightCycle { len }, CycleStrategy::VertexSequence) => by_sequence(n, k, len, &mut visit),
        (Pattern::TightCycle { len }, CycleStrategy::VertexSet) => by_vertex_set(n, k, len, &mut visit),
    }
    bad.sort_unstable();
    let mut used: Vec<u32> = colouring.to_vec();
    used.sort_unstable();
    used.dedup();
    let mut r = Report::default();
    r.check(
        "min-colours",
        bad.is_empty(),
        format!("{} of {copies} copies see fewer than {q} colours", bad.len()),
        bad.first().map(|w| w.iter().map(|&g| g as u64).collect()),
    );
    r.count("copies", copies);
    r.count("violations", bad.len() as u64);
    r.count("colours_used", used.len() as u64);
    let target = match pattern {
        Pattern::TightCycle { len } => n as f64 / (len - k) as f64,
        Pattern::K4 => 5.0 * n as f64 / 6.0,
    };
    r.fraction("colour_target_leading_term", target);
    Ok(r)
}

/// Girth data for Steiner-type outputs: `s`, `t`, `ell` and the chosen
/// `s`-sets.
pub struct SpanCheck<'a> {
    pub s: usize,
    pub t: usize,
    pub ell: usize,
    pub sets: &'a [Vec<u32>],
}

/// `cover` lists indices into the H1 edges of `h_in`. Checks multiplicity
/// in `{1, 2}` and `C`-freeness; with `span`, also that every pairwise
/// `t`-sparse subfamily of size `j ∈ [2, ell]` spans more than `(s-t)j + t`
/// points.
pub fn verify_covering(h_in: &Hypergraph, c_in: &[Vec<EdgeId>], cover: &[EdgeId], span: Option<SpanCheck>, d_eps: Option<(f64, f64)>) -> Report {
    let mut r = Report::default();
    let sources = h_in.edges_of(EdgeClass::H1);
    let mut mult = vec![0u64; h_in.n_p()];
    for &s in cover {
        for &v in h_in.edge(sources[s as usize]) {
            mult[v as usize] += 1;
        }
    }
    let zero: Vec<u64> = (0..mult.len()).filter(|&v| mult[v] == 0).map(|v| v as u64).collect();
    let over: Vec<u64> = (0..mult.len()).filter(|&v| mult[v] > 2).map(|v| v as u64).collect();
    r.check("covered", zero.is_empty(), format!("{} vertices uncovered", zero.len()), zero.first().map(|&v| vec![v]));
    r.check("at-most-twice", over.is_empty(), format!("{} vertices covered more than twice", over.len()), over.first().map(|&v| vec![v]));
    let chosen: HashSet<EdgeId> = cover.iter().copied().collect();
    let (hits, first) = first_contained(c_in, &chosen, ScanOrder::Forward);
    r.check("c-free", hits == 0, format!("{hits} of {} conflicts contained", c_in.len()), first.map(|i| vec![i as u64]));
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for &m in &mult {
        *hist.entry(m).or_default() += 1;
    }
    for (m, count) in &hist {
        r.count(&format!("multiplicity_{m}"), *count);
    }
    r.count("cover_size", cover.len() as u64);
    let n = mult.len().max(1) as f64;
    r.fraction("doubly_covered", mult.iter().filter(|&&m| m >= 2).count() as f64 / n);
    if let Some((dv, eps)) = d_eps {
        r.fraction("doubly_covered_target", dv.powf(-eps.powi(5)));
    }
    if let Some(sc) = span {
        let (violations, witness, shared_pairs) = span_violations(&sc);
        r.check("span", violations == 0, format!("{violations} t-sparse subfamilies of size 2..={} span too few points", sc.ell), witness);
        r.count("span_violations", violations);
        r.count("pairs_sharing_a_t_set", shared_pairs);
    }
    r
}

fn span_violations(sc: &SpanCheck) -> (u64, Option<Vec<u64>>, u64) {
    let sets: Vec<Vec<u32>> = sc
        .sets
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let meet = |a: &[u32], b: &[u32]| a.iter().filter(|x| b.contains(x)).count();
    let mut shared_pairs = 0;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if meet(&sets[i], &sets[j]) >= sc.t {
                shared_pairs += 1;
            }
        }
    }
    let max_span = (sc.s - sc.t) * sc.ell + sc.t;
    let mut violations = 0u64;
    let mut witness = None;
    let mut stack: Vec<usize> = Vec::new();
    let mut points: Vec<u32> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        sets: &[Vec<u32>],
        sc: &SpanCheck,
        max_span: usize,
        start: usize,
        stack: &mut Vec<usize>,
        points: &mut Vec<u32>,
        violations: &mut u64,
        witness: &mut Option<Vec<u64>>,
    ) {
        for i in start..sets.len() {
            if stack.iter().any(|&a| sets[a].iter().filter(|x| sets[i].contains(x)).count() >= sc.t) {
                continue;
            }
            let before = points.len();
            for &x in &sets[i] {
                if !points[..before].contains(&x) {
                    points.push(x);
                }
            }
            stack.push(i);
            let j = stack.len();
            if points.len() <= max_span {
                if j >= 2 && points.len() <= (sc.s - sc.t) * j + sc.t {
                    *violations += 1;
                    if witness.is_none() {
                        *witness = Some(stack.iter().map(|&a| a as u64).collect());
                    }
                }
                if j < sc.ell {
                    go(sets, sc, max_span, i + 1, stack, points, violations, witness);
                }
            }
            stack.pop();
            points.truncate(before);
        }
    }
    go(&sets, sc, max_span, 0, &mut stack, &mut points, &mut violations, &mut witness);
    (violations, witness, shared_pairs)
}

/// Minimal bad `j`-configurations among `kappa` found by scanning point
/// sets: every `W ⊆ [m]` with `|W| = (s-t)j + t` and every `j` candidates
/// inside `W`. Returned as sorted index lists into `kappa`.
pub fn bad_configurations_by_points(m: u32, s: usize, t: usize, j: usize, kappa: &[Vec<u32>]) -> Vec<Vec<EdgeId>> {
    let size = (s - t) * j + t;
    let mut found: HashSet<Vec<EdgeId>> = HashSet::new();
    if size > m as usize {
        return Vec::new();
    }
    let bad = |idx: &[usize]| -> bool {
        let mut pts: Vec<u32> = idx.iter().flat_map(|&i| kappa[i].iter().copied()).collect();
        pts.sort_unstable();
        pts.dedup();
        pts.len() <= (s - t) * idx.len() + t
    };
    let sparse = |a: usize, b: usize| kappa[a].iter().filter(|x| kappa[b].contains(x)).count() < t;
    let all: Vec<u32> = (0..m).collect();
    crate::comb::for_each_combination(&all, size, |w| {
        let inside: Vec<usize> = (0..kappa.len()).filter(|&i| kappa[i].iter().all(|x| w.contains(x))).collect();
        crate::comb::for_each_combination(&inside, j, |pick| {
            if !pick.iter().enumerate().all(|(a, &x)| pick[a + 1..].iter().all(|&y| sparse(x, y))) {
                return;
            }
            if !bad(pick) {
                return;
            }
            for sub in 2..j {
                let mut minimal = true;
                crate::comb::for_each_combination(pick, sub, |sp| {
                    if bad(sp) {
                        minimal = false;
                    }
                });
                if !minimal {
                    return;
                }
            }
            found.insert(pick.iter().map(|&i| i as EdgeId).collect());
        });
    });
    let mut out: Vec<_> = found.into_iter().collect();
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Mean number of conflicts in `d` whose H2 edges are all picked when every
/// P-vertex picks one incident H2 edge uniformly.
pub fn mc_unavoidability_oracle(h: &Hypergraph, d: &[Vec<EdgeId>], samples: u64, seed: u64) -> Result<McEstimate> {
    if d.is_empty() || samples == 0 {
        return Ok(McEstimate { mean: 0.0, stderr: 0.0, samples });
    }
    let mut anchors: Vec<VertexId> = d.iter().flat_map(|c| c.iter().filter(|&&e| h.class(e) == EdgeClass::H2).map(|&e| h.edge(e)[0])).collect();
    anchors.sort_unstable();
    anchors.dedup();
    let options: Vec<Vec<EdgeId>> =
        anchors.iter().map(|&x| (0..h.n_edges() as EdgeId).filter(|&e| h.class(e) == EdgeClass::H2 && h.edge(e)[0] == x).collect()).collect();
    if let Some(i) = options.iter().position(Vec::is_empty) {
        return Err(Error::precondition(format!("P-vertex {} has no H2 edge", anchors[i])));
    }
    let mut rng = stream(seed, Stream::MonteCarlo);
    let mut pick: BTreeMap<VertexId, EdgeId> = BTreeMap::new();
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        for (x, opts) in anchors.iter().zip(&options) {
            pick.insert(*x, opts[rng.gen_range(0..opts.len())]);
        }
        let hits = d.iter().filter(|c| c.iter().filter(|&&e| h.class(e) == EdgeClass::H2).all(|&e| pick[&h.edge(e)[0]] == e)).count() as f64;
        sum += hits;
        sum_sq += hits * hits;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = if samples > 1 { (sum_sq - n * mean * mean).max(0.0) / (n - 1.0) } else { 0.0 };
    Ok(McEstimate { mean, stderr: (var / n).sqrt(), samples })
}
