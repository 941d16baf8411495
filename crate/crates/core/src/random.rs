//! Seeded random instances: near-regular hypergraphs with planted conflicts.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, HypergraphBuilder, Shape, VertexId};
use crate::rng::{stream, Rng, Stream};

/// Parameters of a random instance. H1 is a near-regular `k`-graph on `P`
/// (configuration model, colliding groups dropped); H2, when `d2 > 0`, gives
/// every P-vertex `d2` edges into distinct random `r`-sets of `R`, with
/// R-degrees as equal as the totals allow.
#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    pub d2: u32,
    pub n_r: u32,
    pub r: u32,
    pub seed: u64,
}

pub fn near_regular(spec: &RandomSpec) -> Result<Hypergraph> {
    let RandomSpec { n, k, d, d2, n_r, r, seed } = *spec;
    if k < 2 || n < k {
        return Err(Error::input("need 2 <= k <= n"));
    }
    if d2 > 0 && (n_r < r || (d2 as u64) > crate::comb::binom(n_r as u64, r as u64)) {
        return Err(Error::input("R too small for d2 distinct r-sets"));
    }
    let mut rng = stream(seed, Stream::Instance);
    let mut stubs: Vec<VertexId> = (0..n).flat_map(|v| std::iter::repeat_n(v, d as usize)).collect();
    stubs.shuffle(&mut rng);
    let shape = Shape { n_p: n, n_q: 0, n_r: n_r.max(1), p: k, q: 0, r: r.max(1) };
    let mut b = HypergraphBuilder::new(shape);
    let mut seen = HashSet::new();
    for g in stubs.chunks_exact(k as usize) {
        let mut e = g.to_vec();
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) || !seen.insert(e.clone()) {
            continue;
        }
        b.add_edge(EdgeClass::H1, &e)?;
    }
    if d2 > 0 {
        for (g, set) in h2_sets(n, d2, n_r, r, &mut rng).into_iter().enumerate() {
            let mut e = vec![g as VertexId / d2];
            e.extend(set.iter().map(|&v| v + n));
            b.add_edge(EdgeClass::H2, &e)?;
        }
    }
    b.build()
}

/// Configuration model on R: `n * d2` groups of `r` stubs, each R-vertex
/// holding as near to the same number of stubs as possible. A group with a
/// repeated vertex, or repeating an earlier group of the same P-vertex, swaps
/// a stub with a random position until every group is valid, so degrees on
/// both sides are kept exactly.
fn h2_sets(n: u32, d2: u32, n_r: u32, r: u32, rng: &mut Rng) -> Vec<Vec<u32>> {
    let (groups, r) = ((n * d2) as usize, r as usize);
    let total = groups * r;
    let mut stubs: Vec<u32> = (0..total).map(|i| (i % n_r as usize) as u32).collect();
    stubs.shuffle(rng);
    let bad = |stubs: &[u32], g: usize| -> bool {
        let mut s = stubs[g * r..(g + 1) * r].to_vec();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return true;
        }
        // same P-vertex owns groups x*d2 .. (x+1)*d2
        let x = g / d2 as usize;
        (x * d2 as usize..(x + 1) * d2 as usize).filter(|&o| o != g).any(|o| {
            let mut t = stubs[o * r..(o + 1) * r].to_vec();
            t.sort_unstable();
            t == s
        })
    };
    let mut pending = Vec::new();
    for x in 0..n as usize {
        let mut seen = HashSet::new();
        for g in x * d2 as usize..(x + 1) * d2 as usize {
            let mut s = stubs[g * r..(g + 1) * r].to_vec();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) || !seen.insert(s) {
                pending.push(g);
            }
        }
    }
    while let Some(g) = pending.pop() {
        if !bad(&stubs, g) {
            continue;
        }
        let i = g * r + rng.gen_range(0..r);
        let j = rng.gen_range(0..total);
        stubs.swap(i, j);
        pending.push(g);
        if bad(&stubs, j / r) {
            pending.push(j / r);
        }
    }
    stubs
        .chunks(r)
        .map(|c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c
        })
        .collect()
}

/// Draws a set of `j` pairwise vertex-disjoint edges from `pool`.
fn disjoint_set(h: &Hypergraph, pool: &[EdgeId], j: usize, first: Option<EdgeId>, rng: &mut Rng) -> Option<Vec<EdgeId>> {
    let mut used: HashSet<VertexId> = HashSet::new();
    let mut out = Vec::with_capacity(j);
    if let Some(e) = first {
        used.extend(h.edge(e).iter().copied());
        out.push(e);
    }
    let mut tries = 0;
    while out.len() < j {
        tries += 1;
        if tries > 100 * j {
            return None;
        }
        let e = *pool.choose(rng)?;
        if h.edge(e).iter().all(|v| !used.contains(v)) {
            used.extend(h.edge(e).iter().copied());
            out.push(e);
        }
    }
    out.sort_unstable();
    Some(out)
}

/// Plants `per_edge[j] * |H1| / j` H1-only conflicts of each size `j`, each a
/// uniformly random matching of `j` edges.
pub fn plant_c(h: &Hypergraph, per_edge: &[(usize, f64)], seed: u64) -> Vec<Vec<EdgeId>> {
    let mut rng = stream(seed, Stream::Builder);
    let pool = h.edges_of(EdgeClass::H1);
    let mut seen = HashSet::new();
    for &(j, rate) in per_edge {
        let target = (rate * pool.len() as f64 / j as f64).round() as usize;
        let mut made = 0;
        let mut attempts = 0;
        while made < target && attempts < 10 * target + 100 {
            attempts += 1;
            if let Some(c) = disjoint_set(h, pool, j, None, &mut rng) {
                if seen.insert(c) {
                    made += 1;
                }
            }
        }
    }
    let mut out: Vec<Vec<EdgeId>> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Plants mixed conflicts. For each `(j1, j2, rate)`, about `rate` conflicts
/// per H2 edge: an H2 edge, `j2 - 1` further H2 edges at distinct P-vertices,
/// and a matching of `j1` H1 edges avoiding all those P-vertices.
pub fn plant_d(h: &Hypergraph, spec: &[(usize, usize, f64)], seed: u64) -> Vec<Vec<EdgeId>> {
    let mut rng = stream(seed, Stream::Builder);
    // separate the mixed stream from plant_c
    let _: u64 = rng.gen();
    let h1 = h.edges_of(EdgeClass::H1);
    let h2 = h.edges_of(EdgeClass::H2);
    let mut seen = HashSet::new();
    for &(j1, j2, rate) in spec {
        if j2 == 0 || j1 + j2 < 2 {
            continue;
        }
        let target = (rate * h2.len() as f64 / j2 as f64).round() as usize;
        let mut made = 0;
        let mut attempts = 0;
        while made < target && attempts < 10 * target + 100 {
            attempts += 1;
            let mut anchors = HashSet::new();
            let mut c = Vec::new();
            while c.len() < j2 {
                let e = *h2.choose(&mut rng).expect("H2 nonempty");
                if anchors.insert(h.h2_anchor(e)) {
                    c.push(e);
                }
            }
            let mut part = Vec::new();
            for _ in 0..50 {
                if part.len() == j1 {
                    break;
                }
                match disjoint_set(h, h1, j1, None, &mut rng) {
                    Some(m) if m.iter().all(|&f| h.p_part(f).iter().all(|v| !anchors.contains(v))) => part = m,
                    _ => {}
                }
            }
            if part.len() != j1 {
                continue;
            }
            c.extend(part);
            c.sort_unstable();
            if seen.insert(c) {
                made += 1;
            }
        }
    }
    let mut out: Vec<Vec<EdgeId>> = seen.into_iter().collect();
    out.sort_unstable();
    out
}
