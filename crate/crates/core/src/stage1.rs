//! Stage 1: conflict-aware random greedy matching on H1.

use std::collections::{HashMap, HashSet};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::conflicts::ConflictSystem;
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph};
use crate::model::{ConflictModel, Painter};
use crate::rng::{stream, Stream};
use crate::trackers::{TrackerReport, TrackerSet};

/// Pairs `{e, f}` (e < f) of H1 edges whose semiconflict sets of some size
/// `j'` share more than `d^{j' - eps}` members.
pub fn conflict_sharing_pairs(cs: &ConflictSystem, d: f64, eps: f64) -> Vec<[EdgeId; 2]> {
    // both members of a sharing pair lie in more than d^{j'-eps} conflicts
    // of size j'+1, so only those edges need their semiconflicts listed
    let mut per_size: HashMap<(EdgeId, usize), usize> = HashMap::new();
    for c in cs.c.iter() {
        for &e in c {
            *per_size.entry((e, c.len())).or_insert(0) += 1;
        }
    }
    let heavy = |e: EdgeId, len: usize| per_size[&(e, len)] as f64 > d.powf((len - 1) as f64 - eps);
    // semiconflict → edges completing it
    let mut completers: HashMap<Vec<EdgeId>, Vec<EdgeId>> = HashMap::new();
    for c in cs.c.iter() {
        for (i, &e) in c.iter().enumerate() {
            if !heavy(e, c.len()) {
                continue;
            }
            let mut s = Vec::with_capacity(c.len() - 1);
            s.extend_from_slice(&c[..i]);
            s.extend_from_slice(&c[i + 1..]);
            completers.entry(s).or_default().push(e);
        }
    }
    let mut shared: HashMap<([EdgeId; 2], usize), usize> = HashMap::new();
    for (s, mut es) in completers {
        es.sort_unstable();
        for (i, &e) in es.iter().enumerate() {
            for &f in &es[i + 1..] {
                *shared.entry(([e, f], s.len())).or_insert(0) += 1;
            }
        }
    }
    let mut out: Vec<[EdgeId; 2]> = shared.into_iter().filter(|&((_, jp), n)| n as f64 > d.powf(jp as f64 - eps)).map(|((p, _), _)| p).collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exclusion {
    VertexOverlap,
    CompletesConflict,
    ConflictSharingPair,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionCounts {
    pub vertex_overlap: usize,
    pub completes_conflict: usize,
    pub conflict_sharing_pair: usize,
}

#[derive(Clone, Debug)]
pub struct Stage1Config {
    pub d: f64,
    pub eps: f64,
    pub seed: u64,
    /// Recheck trackers from scratch every this many additions (0 = only at
    /// the end).
    pub check_every: usize,
}

impl Stage1Config {
    pub fn new(d: f64, eps: f64, seed: u64) -> Self {
        Stage1Config { d, eps, seed, check_every: if cfg!(debug_assertions) { 100 } else { 0 } }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stage1Stats {
    pub seed: u64,
    pub m1_size: usize,
    pub uncovered: usize,
    pub uncovered_fraction: f64,
    pub draws: u64,
    pub exclusion_counts: ExclusionCounts,
    pub trackers: Vec<TrackerReport>,
}

#[derive(Clone, Debug)]
pub struct Stage1Outcome {
    /// Chosen H1 edges, sorted, dummy edges removed.
    pub m1: Vec<EdgeId>,
    pub stats: Stage1Stats,
    /// Reason each non-chosen H1 edge left the alive set.
    pub reasons: Vec<Option<Exclusion>>,
    pub sharing_pairs: Vec<[EdgeId; 2]>,
}

struct Alive {
    items: Vec<EdgeId>,
    pos: Vec<u32>,
}

const GONE: u32 = u32::MAX;

impl Alive {
    fn new(h: &Hypergraph) -> Self {
        let items = h.edges_of(EdgeClass::H1).to_vec();
        let mut pos = vec![GONE; h.n_edges()];
        for (i, &e) in items.iter().enumerate() {
            pos[e as usize] = i as u32;
        }
        Alive { items, pos }
    }

    fn remove(&mut self, e: EdgeId) -> bool {
        let i = self.pos[e as usize];
        if i == GONE {
            return false;
        }
        let last = *self.items.last().expect("nonempty");
        self.items.swap_remove(i as usize);
        if last != e {
            self.pos[last as usize] = i;
        }
        self.pos[e as usize] = GONE;
        true
    }
}

/// Runs the random greedy process until no H1 edge can be added.
pub fn run_stage1(h: &Hypergraph, model: &ConflictModel, cfg: &Stage1Config, trackers: &mut TrackerSet) -> Stage1Outcome {
    let mut rng = stream(cfg.seed, Stream::Stage1);
    let mut alive = Alive::new(h);
    let mut reasons: Vec<Option<Exclusion>> = vec![None; h.n_edges()];
    let mut counts = ExclusionCounts::default();
    let mut chosen: Vec<EdgeId> = Vec::new();
    let mut in_m1 = vec![false; h.n_edges()];
    let mut draws = 0u64;

    let c_sys = model.c_family();
    let sharing = c_sys.map(|cs| conflict_sharing_pairs(cs, cfg.d, cfg.eps / 2.0)).unwrap_or_default();
    let mut partners: HashMap<EdgeId, Vec<EdgeId>> = HashMap::new();
    for &[e, f] in &sharing {
        partners.entry(e).or_default().push(f);
        partners.entry(f).or_default().push(e);
    }
    let mut c_count: Vec<u32> = c_sys.map(|cs| vec![0; cs.c.len()]).unwrap_or_default();
    let mut painter = match model {
        ConflictModel::Colouring(_) => Some(Painter::new(h.n_p())),
        _ => None,
    };

    let mut exclude = |alive: &mut Alive, e: EdgeId, why: Exclusion, reasons: &mut Vec<Option<Exclusion>>| {
        if alive.remove(e) {
            reasons[e as usize] = Some(why);
            match why {
                Exclusion::VertexOverlap => counts.vertex_overlap += 1,
                Exclusion::CompletesConflict => counts.completes_conflict += 1,
                Exclusion::ConflictSharingPair => counts.conflict_sharing_pair += 1,
            }
        }
    };

    while !alive.items.is_empty() {
        let i = rng.gen_range(0..alive.items.len());
        let e = alive.items[i];
        draws += 1;
        if let (Some(p), ConflictModel::Colouring(s), false) = (painter.as_mut(), model, h.is_dummy(e)) {
            p.apply(s, e);
            if p.dooms(s, e) {
                p.clear(s, e);
                exclude(&mut alive, e, Exclusion::CompletesConflict, &mut reasons);
                continue;
            }
        }
        alive.remove(e);
        chosen.push(e);
        in_m1[e as usize] = true;
        trackers.on_add(e);

        for &v in h.edge(e) {
            for &f in h.incident(v, EdgeClass::H1) {
                exclude(&mut alive, f, Exclusion::VertexOverlap, &mut reasons);
            }
        }
        if let Some(cs) = c_sys {
            for &ci in cs.c_containing(e) {
                let conflict = cs.c.get(ci as usize);
                c_count[ci as usize] += 1;
                if c_count[ci as usize] as usize + 1 == conflict.len() {
                    if let Some(&missing) = conflict.iter().find(|&&f| !in_m1[f as usize]) {
                        exclude(&mut alive, missing, Exclusion::CompletesConflict, &mut reasons);
                    }
                }
            }
        }
        if let Some(ps) = partners.get(&e) {
            for &f in ps {
                exclude(&mut alive, f, Exclusion::ConflictSharingPair, &mut reasons);
            }
        }
        if cfg.check_every > 0 && chosen.len().is_multiple_of(cfg.check_every) {
            trackers.assert_consistent(&chosen);
        }
    }
    trackers.assert_consistent(&chosen);

    let mut m1: Vec<EdgeId> = chosen.iter().copied().filter(|&e| !h.is_dummy(e)).collect();
    m1.sort_unstable();
    let mut covered = vec![false; h.n_p()];
    for &e in &m1 {
        for &v in h.p_part(e) {
            covered[v as usize] = true;
        }
    }
    let uncovered = covered.iter().filter(|c| !**c).count();
    let stats = Stage1Stats {
        seed: cfg.seed,
        m1_size: m1.len(),
        uncovered,
        uncovered_fraction: if h.n_p() == 0 { 0.0 } else { uncovered as f64 / h.n_p() as f64 },
        draws,
        exclusion_counts: counts,
        trackers: trackers.reports(&m1),
    };
    Stage1Outcome { m1, stats, reasons, sharing_pairs: sharing }
}

/// Exhaustive soundness check of a stage-1 result, independent of the
/// indexes used while matching.
pub fn check_stage1(h: &Hypergraph, cs: Option<&ConflictSystem>, m1: &[EdgeId], sharing: &[[EdgeId; 2]]) -> Result<(), String> {
    let mut seen = HashSet::new();
    for &e in m1 {
        if h.class(e) != EdgeClass::H1 {
            return Err(format!("edge {e} is not in H1"));
        }
        for &v in h.edge(e) {
            if !seen.insert(v) {
                return Err(format!("vertex {v} covered twice"));
            }
        }
    }
    let set: HashSet<EdgeId> = m1.iter().copied().collect();
    if let Some(cs) = cs {
        for (i, c) in cs.c.iter().enumerate() {
            if c.iter().all(|e| set.contains(e)) {
                return Err(format!("C-conflict #{i} lies inside m1"));
            }
        }
    }
    for &[e, f] in sharing {
        if set.contains(&e) && set.contains(&f) {
            return Err(format!("conflict-sharing pair ({e}, {f}) lies inside m1"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{HypergraphBuilder, Shape};

    fn pm(n: u32) -> Hypergraph {
        let mut b = HypergraphBuilder::new(Shape { n_p: 2 * n, n_q: 0, n_r: 1, p: 2, q: 0, r: 1 });
        for i in 0..n {
            b.add_edge(EdgeClass::H1, &[2 * i, 2 * i + 1]).unwrap();
        }
        b.build().unwrap()
    }

    #[test]
    fn perfect_matching_is_taken_whole() {
        let h = pm(10);
        let model = ConflictModel::Explicit(ConflictSystem::empty(&h));
        let out = run_stage1(&h, &model, &Stage1Config::new(1.0 + 1.0, 0.1, 3), &mut TrackerSet::default());
        assert_eq!(out.m1.len(), 10);
        assert_eq!(out.stats.uncovered, 0);
    }

    #[test]
    fn overlap_keeps_one() {
        let mut b = HypergraphBuilder::new(Shape { n_p: 3, n_q: 0, n_r: 1, p: 2, q: 0, r: 1 });
        b.add_edge(EdgeClass::H1, &[0, 1]).unwrap();
        b.add_edge(EdgeClass::H1, &[1, 2]).unwrap();
        let h = b.build().unwrap();
        let model = ConflictModel::Explicit(ConflictSystem::empty(&h));
        let out = run_stage1(&h, &model, &Stage1Config::new(2.0, 0.1, 1), &mut TrackerSet::default());
        assert_eq!(out.m1.len(), 1);
        assert_eq!(out.stats.exclusion_counts.vertex_overlap, 1);
    }

    #[test]
    fn explicit_conflicts_are_avoided() {
        let h = pm(6);
        let cs = ConflictSystem::new(&h, &[vec![0, 1, 2], vec![3, 4, 5]], &[], None).unwrap();
        let model = ConflictModel::Explicit(cs.clone());
        for seed in 0..20 {
            let out = run_stage1(&h, &model, &Stage1Config::new(2.0, 0.1, seed), &mut TrackerSet::default());
            assert_eq!(out.m1.len(), 4);
            check_stage1(&h, Some(&cs), &out.m1, &out.sharing_pairs).unwrap();
            assert_eq!(out.stats.exclusion_counts.completes_conflict, 2);
        }
    }

    #[test]
    fn sharing_pairs_match_brute_force() {
        let h = pm(8);
        let raw = vec![vec![0, 2, 3], vec![1, 2, 3], vec![0, 4, 5], vec![1, 4, 5], vec![0, 6, 7], vec![1, 6, 7]];
        let cs = ConflictSystem::new(&h, &raw, &[], None).unwrap();
        // 0 and 1 share three semiconflicts of size 2; threshold d^{2-eps}.
        assert_eq!(conflict_sharing_pairs(&cs, 1.5, 0.5), vec![[0, 1]]);
        assert!(conflict_sharing_pairs(&cs, 2.0, 0.1).is_empty());
        assert!(conflict_sharing_pairs(&ConflictSystem::empty(&h), 2.0, 0.1).is_empty());
    }
}
