//! Generalized Ramsey colourings: tight cycles in `K_n^k` (every copy gets at
//! least `k + 1` colours) and `K_4` in `K_n` (at least five colours).

use std::collections::HashSet;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::comb::{binom, colex_rank, colex_unrank, combinations, for_each_combination};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, HypergraphBuilder, Matching, Shape, VertexId};
use crate::model::{ColouringScheme, Pattern, NO_COLOUR};
use crate::rng::{stream, Stream};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "app", rename_all = "kebab-case")]
pub enum RamseyParams {
    Cycles { n: u32, k: usize, cycle_len: usize, delta: f64 },
    K4 { n: u32, delta: f64, seed: u64, rho: Option<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RamseyMeta {
    pub params: RamseyParams,
    pub t1: u32,
    pub t2: u32,
    pub d: f64,
    pub n_h1: usize,
}

impl RamseyMeta {
    pub fn palette(&self) -> u32 {
        self.t1 + self.t2
    }
}

#[derive(Clone, Debug)]
pub struct RamseyInstance {
    pub h: Hypergraph,
    pub scheme: ColouringScheme,
    pub meta: RamseyMeta,
}

/// Explicit C and D families.
pub type ConflictLists = (Vec<Vec<EdgeId>>, Vec<Vec<EdgeId>>);

/// Candidate edges for one position, with the colours each would paint.
type Options = Vec<(EdgeId, Vec<u32>)>;

pub fn build(params: &RamseyParams) -> Result<RamseyInstance> {
    match *params {
        RamseyParams::Cycles { n, k, cycle_len, delta } => build_ramsey_cycles(n, k, cycle_len, delta),
        RamseyParams::K4 { n, delta, seed, rho } => build_ramsey_k4(n, delta, seed, rho),
    }
}

fn t2_for(n: u32, delta: f64) -> u32 {
    ((n as f64).powf(1.0 - delta)).round().max(1.0) as u32
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::input(format!("delta must lie in (0, 1), got {delta}")));
    }
    Ok(())
}

fn ranks(set: &[u32], j: usize) -> Vec<u32> {
    combinations(set, j).iter().map(|s| colex_rank(s) as u32).collect()
}

/// Auxiliary edges `(X, α)` for `(ℓ-1)`-cliques `X` and `α ∈ T1`, and
/// `(e, β)` for host edges `e` and `β ∈ T2`. Edge `(X, α)` has id
/// `rank(X)·t1 + α`; `(e, β)` has id `|H1| + rank(e)·t2 + β`.
pub fn build_ramsey_cycles(n: u32, k: usize, cycle_len: usize, delta: f64) -> Result<RamseyInstance> {
    check_delta(delta)?;
    if k < 2 {
        return Err(Error::input("uniformity k must be at least 2"));
    }
    if cycle_len < k + 2 {
        return Err(Error::input(format!("cycle length must be at least k + 2 = {}", k + 2)));
    }
    if (n as usize) < cycle_len {
        return Err(Error::input("n must be at least the cycle length"));
    }
    let t1 = (n as f64 / (cycle_len - k) as f64).round() as u32;
    if t1 < 1 {
        return Err(Error::input("parameters give t1 < 1"));
    }
    let t2 = t2_for(n, delta);
    let n_p = binom(n as u64, k as u64) as u32;
    let nk1 = binom(n as u64, k as u64 - 1) as u32;
    let shape = Shape {
        n_p,
        n_q: t1 * nk1,
        n_r: t2 * nk1,
        p: binom(cycle_len as u64 - 1, k as u64) as u32,
        q: binom(cycle_len as u64 - 1, k as u64 - 1) as u32,
        r: k as u32,
    };
    let mut b = HypergraphBuilder::new(shape);
    let mut paint = Vec::new();
    let n_cliques = binom(n as u64, cycle_len as u64 - 1);
    for xr in 0..n_cliques {
        let x = colex_unrank(xr, cycle_len - 1);
        let ks = ranks(&x, k);
        let k1s = ranks(&x, k - 1);
        for alpha in 0..t1 {
            let mut vs = ks.clone();
            vs.extend(k1s.iter().map(|&s| n_p + alpha * nk1 + s));
            b.add_edge(EdgeClass::H1, &vs)?;
            paint.push(ks.iter().map(|&g| (g, alpha)).collect());
        }
    }
    let n_h1 = paint.len();
    let r_base = n_p + t1 * nk1;
    for g in 0..n_p {
        let e = colex_unrank(g as u64, k);
        let k1s = ranks(&e, k - 1);
        for beta in 0..t2 {
            let mut vs = vec![g];
            vs.extend(k1s.iter().map(|&s| r_base + beta * nk1 + s));
            b.add_edge(EdgeClass::H2, &vs)?;
            paint.push(vec![(g, t1 + beta)]);
        }
    }
    let h = b.build()?;
    let d = (n as f64).powi((cycle_len - k) as i32) / factorial(cycle_len - k);
    Ok(RamseyInstance {
        h,
        scheme: ColouringScheme { n, uniformity: k, pattern: Pattern::TightCycle { len: cycle_len }, n_colours: t1 + t2, paint },
        meta: RamseyMeta { params: RamseyParams::Cycles { n, k, cycle_len, delta }, t1, t2, d, n_h1 },
    })
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|i| i as f64).product()
}

pub(crate) fn pair_rank(a: u32, b: u32) -> u32 {
    colex_rank(&[a.min(b), a.max(b)]) as u32
}

/// The five-colour `K_4` construction. `Q` keeps each vertex copy
/// `v_α` independently with probability `1/(1+ρ)`; an H1 edge for triangle
/// `uvw` and distinct `α, β ∈ T1` exists when `u_α, v_α, w_α, v_β, w_β` are
/// kept and `u_β` is not, and paints `uv, uw` with `α` and `vw` with `β`.
pub fn build_ramsey_k4(n: u32, delta: f64, seed: u64, rho: Option<f64>) -> Result<RamseyInstance> {
    check_delta(delta)?;
    if n < 4 {
        return Err(Error::input("n must be at least 4"));
    }
    let rho = rho.unwrap_or((n as f64).powf(-delta));
    if rho < 0.0 {
        return Err(Error::input("rho must be non-negative"));
    }
    let t1 = ((1.0 + rho) * 5.0 * n as f64 / 6.0).round() as u32;
    let t2 = t2_for(n, delta);
    let p_del = rho / (1.0 + rho);
    let mut rng = stream(seed, Stream::Builder);
    let n_p = binom(n as u64, 2) as u32;
    let mut q_id = vec![None; (t1 * n) as usize];
    let mut next = n_p;
    for slot in q_id.iter_mut() {
        if rng.gen::<f64>() >= p_del {
            *slot = Some(next);
            next += 1;
        }
    }
    let n_q = next - n_p;
    let q = |a: u32, v: u32| q_id[(a * n + v) as usize];
    let shape = Shape { n_p, n_q, n_r: t2 * n, p: 3, q: 5, r: 2 };
    let mut b = HypergraphBuilder::new(shape);
    let mut paint = Vec::new();
    for tri in combinations(&(0..n).collect::<Vec<_>>(), 3) {
        for i in 0..3 {
            let u = tri[i];
            let (v, w) = match i {
                0 => (tri[1], tri[2]),
                1 => (tri[0], tri[2]),
                _ => (tri[0], tri[1]),
            };
            for alpha in 0..t1 {
                let (Some(ua), Some(va), Some(wa)) = (q(alpha, u), q(alpha, v), q(alpha, w)) else { continue };
                for beta in 0..t1 {
                    if beta == alpha || q(beta, u).is_some() {
                        continue;
                    }
                    let (Some(vb), Some(wb)) = (q(beta, v), q(beta, w)) else { continue };
                    let (uv, uw, vw) = (pair_rank(u, v), pair_rank(u, w), pair_rank(v, w));
                    b.add_edge(EdgeClass::H1, &[uv, uw, vw, ua, va, wa, vb, wb])?;
                    paint.push(vec![(uv, alpha), (uw, alpha), (vw, beta)]);
                }
            }
        }
    }
    let n_h1 = paint.len();
    let r_base = n_p + n_q;
    for g in 0..n_p {
        let e = colex_unrank(g as u64, 2);
        for beta in 0..t2 {
            b.add_edge(EdgeClass::H2, &[g, r_base + beta * n + e[0], r_base + beta * n + e[1]])?;
            paint.push(vec![(g, t1 + beta)]);
        }
    }
    let h = b.build()?;
    // expected H1-degree of a host edge, Θ(n^{3-δ})
    let keep = 1.0 - p_del;
    let d = (n as f64 - 2.0) * 2.0 * (t1 as f64) * (t1 as f64 - 1.0) * keep.powi(5) * p_del
        + (n as f64 - 2.0) * (t1 as f64) * (t1 as f64 - 1.0) * keep.powi(5) * p_del;
    Ok(RamseyInstance {
        h,
        scheme: ColouringScheme { n, uniformity: 2, pattern: Pattern::K4, n_colours: t1 + t2, paint },
        meta: RamseyMeta { params: RamseyParams::K4 { n, delta, seed, rho: Some(rho) }, t1, t2, d, n_h1 },
    })
}

/// Colour of every host edge under the matching. Errors on host edges left
/// uncoloured or painted twice.
pub fn decode_colouring(inst: &RamseyInstance, m: &Matching) -> Result<Vec<u32>> {
    let mut colour = vec![NO_COLOUR; inst.h.n_p()];
    for &e in m.m1.iter().chain(&m.m2) {
        for &(g, c) in inst.scheme.paint.get(e as usize).ok_or(Error::UnknownEdge(e))? {
            if colour[g as usize] != NO_COLOUR {
                return Err(Error::input(format!("host edge {g} painted twice")));
            }
            colour[g as usize] = c;
        }
    }
    let missing: Vec<usize> = colour.iter().enumerate().filter(|(_, &c)| c == NO_COLOUR).map(|(g, _)| g).collect();
    if !missing.is_empty() {
        return Err(Error::input(format!("colouring is partial; uncoloured host edges {missing:?}")));
    }
    Ok(colour)
}

/// Re-encodes a colouring as the auxiliary edges realizing it, given the
/// decoded H1 blocks. Used to check decode/encode round trips.
pub fn encode_colouring(inst: &RamseyInstance, colour: &[u32], m1: &[EdgeId]) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = m1.to_vec();
    let from_m1: HashSet<VertexId> = m1.iter().flat_map(|&e| inst.scheme.paint[e as usize].iter().map(|p| p.0)).collect();
    let n_h1 = inst.meta.n_h1 as u32;
    for (g, &c) in colour.iter().enumerate() {
        if !from_m1.contains(&(g as u32)) && c >= inst.meta.t1 {
            out.push(n_h1 + g as u32 * inst.meta.t2 + (c - inst.meta.t1));
        }
    }
    out.sort_unstable();
    out
}

/// Cycle copies as host-edge lists in cyclic window order, each copy once.
pub(crate) fn cycle_copies(n: u32, k: usize, len: usize, mut f: impl FnMut(&[u32], &[VertexId])) {
    let mut seq = vec![0u32; len];
    let mut used = vec![false; n as usize];
    let mut edges = vec![0u32; len];
    let mut win = vec![0u32; k];
    #[allow(clippy::too_many_arguments)]
    fn rec(pos: usize, seq: &mut [u32], used: &mut [bool], n: u32, k: usize, edges: &mut [u32], win: &mut [u32], f: &mut dyn FnMut(&[u32], &[VertexId])) {
        let len = seq.len();
        if pos == len {
            if seq[1] > seq[len - 1] {
                return;
            }
            for i in 0..len {
                for t in 0..k {
                    win[t] = seq[(i + t) % len];
                }
                win.sort_unstable();
                edges[i] = colex_rank(win) as u32;
            }
            f(edges, seq);
            return;
        }
        for v in seq[0] + 1..n {
            if !used[v as usize] {
                used[v as usize] = true;
                seq[pos] = v;
                rec(pos + 1, seq, used, n, k, edges, win, f);
                used[v as usize] = false;
            }
        }
    }
    for first in 0..n {
        seq[0] = first;
        used[first as usize] = true;
        rec(1, &mut seq, &mut used, n, k, &mut edges, &mut win, &mut f);
        used[first as usize] = false;
    }
}

/// Every conflict of the cycle construction: minimal sets of auxiliary
/// edges that colour a sub-copy `Z' ⊆ Z` so that `Z` is bound to see at most
/// `k` colours, with each H1 edge colouring a consecutive run of `Z`.
/// Conflicts reachable from several copies are reported once per copy.
pub fn for_each_cycle_conflict(inst: &RamseyInstance, mut f: impl FnMut(&[EdgeId])) -> Result<()> {
    let RamseyParams::Cycles { n, k, cycle_len: len, .. } = inst.meta.params else {
        return Err(Error::input("not a cycle instance"));
    };
    let (t1, t2) = (inst.meta.t1, inst.meta.t2);
    let n_h1 = inst.meta.n_h1 as u32;
    let palette = t1 + t2;
    let mut partitions: Vec<(Vec<usize>, Vec<Vec<usize>>)> = Vec::new();
    for u_size in 0..k {
        for_each_combination(&(0..len).collect::<Vec<_>>(), u_size, |u| {
            let rest: Vec<usize> = (0..len).filter(|i| !u.contains(i)).collect();
            for p in set_partitions(&rest) {
                if p.iter().all(|c| c.len() >= 2) && p.len() + u_size <= k {
                    partitions.push((u.to_vec(), p));
                }
            }
        });
    }
    cycle_copies(n, k, len, |edges, seq| {
        let verts: Vec<Vec<u32>> = (0..len)
            .map(|i| {
                let mut w: Vec<u32> = (0..k).map(|t| seq[(i + t) % len]).collect();
                w.sort_unstable();
                w
            })
            .collect();
        for (_, classes) in &partitions {
            let mut colours = vec![0u32; classes.len()];
            assign_colours(&mut colours, 0, palette, &mut |cols| {
                // options[i]: candidate aux-edge groups realising class i
                let mut options: Vec<Vec<Options>> = Vec::new();
                for (ci, class) in classes.iter().enumerate() {
                    let c = cols[ci];
                    if c >= t1 {
                        let beta = c - t1;
                        let ok = class.iter().enumerate().all(|(a, &i)| class[a + 1..].iter().all(|&j| shared(&verts[i], &verts[j]) <= k - 2));
                        if !ok {
                            return;
                        }
                        let group = class.iter().map(|&i| (n_h1 + edges[i] * t2 + beta, verts[i].clone())).collect();
                        options.push(vec![group]);
                    } else {
                        let runs = cyclic_runs(class, len);
                        let mut per_run: Vec<Vec<(EdgeId, Vec<u32>)>> = Vec::new();
                        for run in &runs {
                            let mut vs: Vec<u32> = run.iter().flat_map(|&i| verts[i].clone()).collect();
                            vs.sort_unstable();
                            vs.dedup();
                            let mut cands = Vec::new();
                            if vs.len() < len {
                                let others: Vec<u32> = (0..n).filter(|v| !vs.contains(v)).collect();
                                for_each_combination(&others, len - 1 - vs.len(), |extra| {
                                    let mut x = vs.clone();
                                    x.extend_from_slice(extra);
                                    x.sort_unstable();
                                    let covers_only_run = (0..len).all(|i| run.contains(&i) || !is_subset(&verts[i], &x));
                                    if covers_only_run {
                                        cands.push((colex_rank(&x) as u32 * t1 + c, x));
                                    }
                                });
                            }
                            if cands.is_empty() {
                                return;
                            }
                            per_run.push(cands);
                        }
                        let mut groups = vec![Vec::new()];
                        for cands in per_run {
                            let mut next = Vec::new();
                            for g in &groups {
                                for cand in &cands {
                                    // same colour: cliques share at most k-2 vertices
                                    if g.iter().all(|(_, y): &(EdgeId, Vec<u32>)| shared(y, &cand.1) <= k - 2) {
                                        let mut g2 = g.clone();
                                        g2.push(cand.clone());
                                        next.push(g2);
                                    }
                                }
                            }
                            groups = next;
                        }
                        if groups.is_empty() {
                            return;
                        }
                        options.push(groups);
                    }
                }
                // combine classes; different colours must not share a host edge
                let mut chosen: Vec<(EdgeId, Vec<u32>, bool)> = Vec::new();
                combine(&options, 0, &mut chosen, k, n_h1, &mut f);
            });
        }
    });
    Ok(())
}

fn combine(options: &[Vec<Options>], i: usize, chosen: &mut Vec<(EdgeId, Vec<u32>, bool)>, k: usize, n_h1: u32, f: &mut dyn FnMut(&[EdgeId])) {
    if i == options.len() {
        let mut ids: Vec<EdgeId> = chosen.iter().map(|c| c.0).collect();
        ids.sort_unstable();
        f(&ids);
        return;
    }
    for group in &options[i] {
        // an H1 clique must not contain the host edge of any other aux edge
        let ok = group.iter().all(|(ga, gv)| {
            chosen.iter().all(|(ca, cv, _)| {
                let g_h1 = *ga < n_h1;
                let c_h1 = *ca < n_h1;
                match (g_h1, c_h1) {
                    (true, true) => shared(gv, cv) < k,
                    (true, false) => !is_subset(cv, gv),
                    (false, true) => !is_subset(gv, cv),
                    (false, false) => gv != cv,
                }
            })
        });
        if !ok {
            continue;
        }
        let before = chosen.len();
        chosen.extend(group.iter().map(|(a, v)| (*a, v.clone(), *a < n_h1)));
        combine(options, i + 1, chosen, k, n_h1, f);
        chosen.truncate(before);
    }
}

fn assign_colours(cols: &mut Vec<u32>, i: usize, palette: u32, f: &mut dyn FnMut(&[u32])) {
    if i == cols.len() {
        f(cols);
        return;
    }
    for c in 0..palette {
        if !cols[..i].contains(&c) {
            cols[i] = c;
            assign_colours(cols, i + 1, palette, f);
        }
    }
}

fn shared(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    small.iter().all(|v| big.contains(v))
}

/// Maximal runs of cyclically consecutive positions in a sorted class.
fn cyclic_runs(class: &[usize], len: usize) -> Vec<Vec<usize>> {
    let inside = |i: usize| class.contains(&i);
    let mut runs = Vec::new();
    for &i in class {
        if inside((i + len - 1) % len) && class.len() < len {
            continue;
        }
        let mut run = vec![i];
        let mut j = (i + 1) % len;
        while inside(j) && j != i {
            run.push(j);
            j = (j + 1) % len;
        }
        runs.push(run);
    }
    runs
}

fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items[0];
    let mut out = Vec::new();
    for p in set_partitions(&items[1..]) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        let mut q = p.clone();
        q.push(vec![first]);
        out.push(q);
    }
    out
}

/// Distinct cycle conflicts split into `C` (H1 only) and `D` (mixed).
pub fn cycle_conflicts(inst: &RamseyInstance) -> Result<ConflictLists> {
    let mut all = HashSet::new();
    for_each_cycle_conflict(inst, |c| {
        all.insert(c.to_vec());
    })?;
    split_families(inst, all)
}

fn split_families(inst: &RamseyInstance, all: HashSet<Vec<EdgeId>>) -> Result<ConflictLists> {
    let (mut c, mut d): (Vec<_>, Vec<_>) = all.into_iter().partition(|x| x.iter().all(|&e| inst.h.class(e) == EdgeClass::H1));
    c.sort_unstable();
    d.sort_unstable();
    Ok((c, d))
}

/// Every alternating two-colouring of a 4-cycle by a matching: the `K_4`
/// conflicts (H1-only, two T2 colours, or mixed).
pub fn k4_conflicts(inst: &RamseyInstance) -> Result<ConflictLists> {
    if inst.scheme.pattern != Pattern::K4 {
        return Err(Error::input("not a K4 instance"));
    }
    let n = inst.scheme.n;
    let mut by_host: Vec<Vec<(EdgeId, u32)>> = vec![Vec::new(); inst.h.n_p()];
    for (e, p) in inst.scheme.paint.iter().enumerate() {
        for &(g, c) in p {
            by_host[g as usize].push((e as EdgeId, c));
        }
    }
    let mut all = HashSet::new();
    for quad in combinations(&(0..n).collect::<Vec<_>>(), 4) {
        let [a, b, c, d] = [quad[0], quad[1], quad[2], quad[3]];
        for cyc in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
            let g: Vec<u32> = (0..4).map(|i| pair_rank(cyc[i], cyc[(i + 1) % 4])).collect();
            let cycle_set: HashSet<u32> = g.iter().copied().collect();
            for o0 in &by_host[g[0] as usize] {
                for o2 in by_host[g[2] as usize].iter().filter(|o| o.1 == o0.1) {
                    for o1 in by_host[g[1] as usize].iter().filter(|o| o.1 != o0.1) {
                        for o3 in by_host[g[3] as usize].iter().filter(|o| o.1 == o1.1) {
                            let owners = [o0, o1, o2, o3];
                            // an owner painting another cycle edge must own it
                            let consistent = owners.iter().all(|o| {
                                inst.scheme.paint[o.0 as usize]
                                    .iter()
                                    .all(|&(h, _)| !cycle_set.contains(&h) || owners[g.iter().position(|&x| x == h).unwrap()].0 == o.0)
                            });
                            if !consistent {
                                continue;
                            }
                            let mut ids: Vec<EdgeId> = owners.iter().map(|o| o.0).collect();
                            ids.sort_unstable();
                            ids.dedup();
                            let matching = ids
                                .iter()
                                .enumerate()
                                .all(|(i, &x)| ids[i + 1..].iter().all(|&y| !crate::family::sorted_intersects(inst.h.edge(x), inst.h.edge(y))));
                            if matching {
                                all.insert(ids);
                            }
                        }
                    }
                }
            }
        }
    }
    split_families(inst, all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_parameters() {
        let inst = build_ramsey_cycles(12, 2, 4, 0.25).unwrap();
        assert_eq!(inst.meta.t1, 6);
        let s = inst.h.shape();
        assert_eq!((s.p, s.q, s.r), (3, 3, 2));
        assert_eq!(inst.meta.d, 72.0);
        assert_eq!(inst.h.n_p(), 66);
        assert!(build_ramsey_cycles(12, 2, 3, 0.25).is_err());
    }

    #[test]
    fn runs_and_partitions() {
        assert_eq!(cyclic_runs(&[0, 1, 3], 4), vec![vec![3, 0, 1]]);
        assert_eq!(cyclic_runs(&[0, 2], 4), vec![vec![0], vec![2]]);
        assert_eq!(set_partitions(&[0, 1, 2]).len(), 5);
        assert_eq!(set_partitions(&[0, 1, 2, 3]).len(), 15);
    }

    #[test]
    fn copies_are_counted_once() {
        let mut count = 0;
        cycle_copies(8, 2, 4, |_, _| count += 1);
        assert_eq!(count, 210);
        let mut count = 0;
        cycle_copies(7, 3, 5, |_, _| count += 1);
        // 7!/(2!·2·5)
        assert_eq!(count, 252);
    }

    #[test]
    fn k4_decoder_paints_the_documented_pattern() {
        let inst = build_ramsey_k4(8, 0.25, 3, None).unwrap();
        assert!(inst.meta.n_h1 > 0);
        let e = 0usize;
        let p = &inst.scheme.paint[e];
        assert_eq!(p.len(), 3);
        assert_eq!(p[0].1, p[1].1);
        assert_ne!(p[0].1, p[2].1);
        let zero = build_ramsey_k4(8, 0.25, 3, Some(0.0)).unwrap();
        assert_eq!(zero.h.shape().n_q, zero.meta.t1 * 8);
        assert_eq!(zero.meta.n_h1, 0);
    }

    fn doomed_anywhere(inst: &RamseyInstance, painter: &crate::model::Painter, chosen: &[EdgeId]) -> bool {
        chosen.iter().any(|&e| painter.dooms(&inst.scheme, e))
    }

    #[test]
    fn cycle_conflicts_agree_with_the_painter_rule() {
        use rand::seq::SliceRandom;
        let inst = build_ramsey_cycles(6, 2, 4, 0.25).unwrap();
        let (c, d) = cycle_conflicts(&inst).unwrap();
        // two T1 colour classes on one 4-cycle need four outside vertices
        assert!(c.is_empty() && !d.is_empty());
        assert!(d.iter().all(|x| x.iter().filter(|&&e| inst.h.class(e) == EdgeClass::H2).count() >= 2));
        let all: Vec<Vec<EdgeId>> = c.iter().chain(&d).cloned().collect();
        for conflict in &all {
            let mut p = crate::model::Painter::new(inst.h.n_p());
            for &e in conflict {
                p.apply(&inst.scheme, e);
            }
            assert!(doomed_anywhere(&inst, &p, conflict), "{conflict:?}");
        }
        let mut rng = stream(11, Stream::MonteCarlo);
        let mut ids: Vec<EdgeId> = (0..inst.h.n_edges() as EdgeId).collect();
        for _ in 0..200 {
            ids.shuffle(&mut rng);
            let mut used = HashSet::new();
            let mut chosen = Vec::new();
            let mut p = crate::model::Painter::new(inst.h.n_p());
            for &e in &ids {
                if inst.h.edge(e).iter().all(|v| !used.contains(v)) {
                    used.extend(inst.h.edge(e).iter().copied());
                    chosen.push(e);
                    p.apply(&inst.scheme, e);
                    if doomed_anywhere(&inst, &p, &chosen) {
                        break;
                    }
                }
            }
            chosen.sort_unstable();
            let contains = all.iter().any(|x| x.iter().all(|e| chosen.binary_search(e).is_ok()));
            assert_eq!(contains, doomed_anywhere(&inst, &p, &chosen), "{chosen:?}");
        }
    }
}
