//! Stage 2: complete the stage-1 matching with one safe H2 edge per
//! uncovered P-vertex, then resample until no conflict survives.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::comb::binom;
use crate::conflicts::{j1j2, v_p, ConflictSystem};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, VertexId};
use crate::model::{ConflictModel, Painter, Projected};
use crate::rng::{stream, Stream};
use crate::series::{i_star, truncated_exp};
use crate::unavoid::unavoidability;

const NONE: EdgeId = EdgeId::MAX;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SafeEdgeEntry {
    pub x: VertexId,
    pub d_x: usize,
    pub n_x_safe: usize,
    pub safe: Vec<EdgeId>,
    /// Largest `γ_{e,j}` over `e ∈ N_x` and `j`, with its witness.
    pub gamma_max: f64,
    pub gamma_witness: Option<(EdgeId, usize)>,
    /// `a_1, …, a_{i*}`.
    pub a: Vec<f64>,
    /// `d_x - a_1 + a_2 - … - a_{i*}`.
    pub ie_lower_bound: f64,
    /// `Σ_{e ∈ N_x} S(γ_e)`.
    pub series_estimate: f64,
    /// `|N_x^s| ≥ e^{-ℓ²}/3 · d_x`.
    pub lambda_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SafeEdgeProfile {
    pub i_star: usize,
    pub ell: usize,
    pub entries: Vec<SafeEdgeEntry>,
}

impl SafeEdgeProfile {
    pub fn get(&self, x: VertexId) -> Option<&SafeEdgeEntry> {
        self.entries.binary_search_by_key(&x, |e| e.x).ok().map(|i| &self.entries[i])
    }
}

/// Safe edges at an uncovered `x`: those completing no `(j1, 1)`-conflict
/// whose H1-part lies inside `m1`, plus the counting diagnostics.
pub fn safe_edges(model: &ConflictModel, h: &Hypergraph, d: f64, in_m1: &[bool], x: VertexId, i_star: usize) -> Result<SafeEdgeEntry> {
    let n_x = h.incident(x, EdgeClass::H2);
    if n_x.is_empty() {
        return Err(Error::precondition(format!("vertex {x} has H2-degree 0")));
    }
    let ell = model.ell();
    let mut safe = Vec::new();
    let mut a = vec![0.0; i_star];
    let mut gamma_max = 0.0;
    let mut gamma_witness = None;
    let mut series_estimate = 0.0;
    for &e in n_x {
        let parts = model.j21_parts(h, e);
        let mut by_size = vec![0usize; ell.max(1)];
        let mut inside = 0u64;
        for p in &parts {
            if p.len() < by_size.len() {
                by_size[p.len()] += 1;
            }
            if p.iter().all(|&f| in_m1[f as usize]) {
                inside += 1;
            }
        }
        if inside == 0 {
            safe.push(e);
        }
        for (m, slot) in a.iter_mut().enumerate() {
            *slot += binom(inside, m as u64 + 1) as f64;
        }
        let mut gamma_e = 0.0;
        for (j, &n) in by_size.iter().enumerate().skip(1) {
            let g = n as f64 / d.powi(j as i32);
            gamma_e += g;
            if g > gamma_max {
                gamma_max = g;
                gamma_witness = Some((e, j));
            }
        }
        series_estimate += truncated_exp(gamma_e, i_star);
    }
    let d_x = n_x.len();
    let ie_lower_bound = a.iter().enumerate().fold(d_x as f64, |acc, (m, &am)| if m % 2 == 0 { acc - am } else { acc + am });
    let lambda = (-((ell * ell) as f64)).exp() / 3.0;
    Ok(SafeEdgeEntry {
        x,
        d_x,
        n_x_safe: safe.len(),
        lambda_ok: safe.len() as f64 >= lambda * d_x as f64,
        safe,
        gamma_max,
        gamma_witness,
        a,
        ie_lower_bound,
        series_estimate,
    })
}

/// Split of the `(j1, j2)`-conflicts at `x` with H1-part inside `m1` into
/// unblocked (all of `V_P` uncovered) and blocked ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockedSplit {
    pub unblocked: Vec<u32>,
    pub blocked: Vec<u32>,
    pub a_unblocked: f64,
    pub a_blocked: f64,
}

pub fn blocked_partition(cs: &ConflictSystem, h: &Hypergraph, m1: &[EdgeId], x: VertexId, j1: usize, j2: usize) -> Result<BlockedSplit> {
    let mut in_m1 = vec![false; h.n_edges()];
    let mut covered = vec![false; h.n_p()];
    for &e in m1 {
        in_m1[e as usize] = true;
        for &v in h.p_part(e) {
            covered[v as usize] = true;
        }
    }
    let mut out = BlockedSplit { unblocked: vec![], blocked: vec![], a_unblocked: 0.0, a_blocked: 0.0 };
    for &i in cs.d_at(x) {
        let d = cs.d.get(i as usize);
        if j1j2(h, d) != (j1, j2) || !d.iter().all(|&e| h.class(e) == EdgeClass::H2 || in_m1[e as usize]) {
            continue;
        }
        let a = unavoidability(h, d)?;
        if v_p(h, d).iter().any(|&y| covered[y as usize]) {
            out.blocked.push(i);
            out.a_blocked += a;
        } else {
            out.unblocked.push(i);
            out.a_unblocked += a;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Stage2Config {
    pub seed: u64,
    pub max_rounds: usize,
    pub d: f64,
    pub i_star: usize,
}

impl Stage2Config {
    pub fn new(d: f64, ell: usize, seed: u64) -> Self {
        Stage2Config { seed, max_rounds: 10_000, d, i_star: i_star(ell.max(2)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResampleRound {
    pub violation: Vec<EdgeId>,
    pub resampled: Vec<VertexId>,
    pub new_edges: Vec<EdgeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Success,
    CapExceeded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResampleLog {
    pub seed: u64,
    pub cap: usize,
    pub initial_violations: usize,
    pub rounds: Vec<ResampleRound>,
    pub outcome: Outcome,
}

/// Local Lemma quantities under uniform choice from the safe sets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LllDiagnostics {
    pub events: usize,
    pub max_probability: f64,
    pub max_neighbourhood_sum: f64,
    /// `max P < 1/2` and neighbourhood sums at most `1/4`.
    pub thresholds_met: bool,
}

#[derive(Clone, Debug)]
pub struct Stage2Outcome {
    pub m2: Vec<EdgeId>,
    pub log: ResampleLog,
    pub profile: SafeEdgeProfile,
    pub lll: Option<LllDiagnostics>,
}

/// How violations are detected for a given model.
enum Checker<'a> {
    Explicit { cs: &'a ConflictSystem, relevant: Vec<bool> },
    Colouring { painter: Painter },
    Projected { p: &'a Projected },
}

struct State<'a> {
    h: &'a Hypergraph,
    model: &'a ConflictModel,
    in_m1: Vec<bool>,
    choice: Vec<EdgeId>,
    occupancy: HashMap<VertexId, Vec<VertexId>>,
    checker: Checker<'a>,
    violations: BTreeSet<Vec<EdgeId>>,
}

impl<'a> State<'a> {
    fn chosen(&self, e: EdgeId) -> bool {
        let x = self.h.h2_anchor(e);
        self.choice[x as usize] == e
    }

    fn place(&mut self, x: VertexId, e: EdgeId) {
        self.choice[x as usize] = e;
        for &v in self.h.r_part(e) {
            self.occupancy.entry(v).or_default().push(x);
        }
        if let (Checker::Colouring { painter }, ConflictModel::Colouring(s)) = (&mut self.checker, self.model) {
            painter.apply(s, e);
        }
    }

    fn unplace(&mut self, x: VertexId) {
        let e = self.choice[x as usize];
        self.choice[x as usize] = NONE;
        for &v in self.h.r_part(e) {
            if let Some(list) = self.occupancy.get_mut(&v) {
                list.retain(|&y| y != x);
            }
        }
        if let (Checker::Colouring { painter }, ConflictModel::Colouring(s)) = (&mut self.checker, self.model) {
            painter.clear(s, e);
        }
        self.violations.retain(|v| !v.contains(&e));
    }

    /// Adds every current violation that involves the chosen edge `e`.
    fn detect(&mut self, e: EdgeId) {
        let h = self.h;
        let x = h.h2_anchor(e);
        for &v in h.r_part(e) {
            for &y in self.occupancy.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if y != x {
                    let f = self.choice[y as usize];
                    self.violations.insert(if e < f { vec![e, f] } else { vec![f, e] });
                }
            }
        }
        let mut found: Vec<Vec<EdgeId>> = Vec::new();
        match &self.checker {
            Checker::Explicit { cs, relevant } => {
                for &i in cs.d_containing(e) {
                    if !relevant[i as usize] {
                        continue;
                    }
                    let d = cs.d.get(i as usize);
                    if d.iter().all(|&f| if h.class(f) == EdgeClass::H1 { self.in_m1[f as usize] } else { self.chosen(f) }) {
                        found.push(d.to_vec());
                    }
                }
            }
            Checker::Colouring { painter } => {
                if let ConflictModel::Colouring(s) = self.model {
                    found = painter.bad_copies(s, e);
                }
            }
            Checker::Projected { p } => {
                let s = p.source[e as usize];
                for &ci in p.cs.c_containing(s) {
                    let mut options: Vec<Vec<EdgeId>> = Vec::new();
                    let mut ok = true;
                    for &f in p.cs.c.get(ci as usize) {
                        if self.in_m1[f as usize] {
                            options.push(vec![f]);
                        } else {
                            let o: Vec<EdgeId> =
                                if f == s { vec![e] } else { p.duplicates.get(f as usize).iter().copied().filter(|&g| self.chosen(g)).collect() };
                            if o.is_empty() {
                                ok = false;
                                break;
                            }
                            options.push(o);
                        }
                    }
                    if !ok {
                        continue;
                    }
                    let mut combos: Vec<Vec<EdgeId>> = vec![Vec::new()];
                    for o in &options {
                        combos = combos
                            .into_iter()
                            .flat_map(|c| {
                                o.iter().map(move |&g| {
                                    let mut c = c.clone();
                                    c.push(g);
                                    c
                                })
                            })
                            .collect();
                    }
                    for mut c in combos {
                        c.sort_unstable();
                        found.push(c);
                    }
                }
            }
        }
        self.violations.extend(found);
    }
}

/// Completes `m1` to a P-perfect matching. Returns `EmptySafeSet` if some
/// uncovered vertex has no safe edge; a run that hits the round cap returns
/// normally with `Outcome::CapExceeded`.
pub fn run_stage2(h: &Hypergraph, model: &ConflictModel, m1: &[EdgeId], cfg: &Stage2Config) -> Result<Stage2Outcome> {
    let mut rng = stream(cfg.seed, Stream::Stage2);
    let mut in_m1 = vec![false; h.n_edges()];
    let mut covered = vec![false; h.n_p()];
    for &e in m1 {
        if h.class(e) != EdgeClass::H1 {
            return Err(Error::input(format!("m1 contains H2 edge {e}")));
        }
        in_m1[e as usize] = true;
        for &v in h.p_part(e) {
            covered[v as usize] = true;
        }
    }
    let uncovered: Vec<VertexId> = h.p_vertices().filter(|&x| !covered[x as usize]).collect();
    let mut entries = Vec::with_capacity(uncovered.len());
    for &x in &uncovered {
        let entry = safe_edges(model, h, cfg.d, &in_m1, x, cfg.i_star)?;
        if entry.safe.is_empty() {
            return Err(Error::EmptySafeSet { vertex: x });
        }
        entries.push(entry);
    }
    let profile = SafeEdgeProfile { i_star: cfg.i_star, ell: model.ell(), entries };
    let mut is_safe = vec![false; h.n_edges()];
    for en in &profile.entries {
        for &e in &en.safe {
            is_safe[e as usize] = true;
        }
    }

    let checker = match model {
        ConflictModel::Explicit(cs) => {
            // Only conflicts that can still occur: H1-part in m1, every
            // H2 edge safe (hence at an uncovered vertex), j2 ≥ 2.
            let relevant =
                cs.d.iter()
                    .map(|d| {
                        let (_, j2) = j1j2(h, d);
                        j2 >= 2 && d.iter().all(|&f| if h.class(f) == EdgeClass::H1 { in_m1[f as usize] } else { is_safe[f as usize] })
                    })
                    .collect();
            Checker::Explicit { cs, relevant }
        }
        ConflictModel::Colouring(s) => {
            let mut painter = Painter::new(h.n_p());
            for &e in m1 {
                painter.apply(s, e);
            }
            Checker::Colouring { painter }
        }
        ConflictModel::Projected(p) => Checker::Projected { p },
    };
    let lll = lll_diagnostics(h, &checker, &profile, &is_safe);

    let mut st = State { h, model, in_m1, choice: vec![NONE; h.n_p()], occupancy: HashMap::new(), checker, violations: BTreeSet::new() };
    let safe_at: HashMap<VertexId, &[EdgeId]> = profile.entries.iter().map(|e| (e.x, e.safe.as_slice())).collect();
    for &x in &uncovered {
        let e = *safe_at[&x].choose(&mut rng).expect("nonempty");
        st.place(x, e);
    }
    for &x in &uncovered {
        st.detect(st.choice[x as usize]);
    }
    let initial_violations = st.violations.len();
    let mut rounds = Vec::new();
    let mut outcome = Outcome::Success;
    while let Some(v) = st.violations.first().cloned() {
        if rounds.len() >= cfg.max_rounds {
            outcome = Outcome::CapExceeded;
            break;
        }
        let mut resampled: Vec<VertexId> = v.iter().filter(|&&e| h.class(e) == EdgeClass::H2).map(|&e| h.h2_anchor(e)).collect();
        resampled.sort_unstable();
        resampled.dedup();
        if resampled.is_empty() {
            return Err(Error::precondition(format!("violation {v:?} has no H2 edge to resample")));
        }
        let mut new_edges = Vec::with_capacity(resampled.len());
        for &x in &resampled {
            st.unplace(x);
            let e = *safe_at[&x].choose(&mut rng).expect("nonempty");
            st.place(x, e);
            new_edges.push(e);
        }
        for &e in &new_edges {
            st.detect(e);
        }
        rounds.push(ResampleRound { violation: v, resampled, new_edges });
    }
    let mut m2: Vec<EdgeId> = uncovered.iter().map(|&x| st.choice[x as usize]).collect();
    m2.sort_unstable();
    Ok(Stage2Outcome { m2, log: ResampleLog { seed: cfg.seed, cap: cfg.max_rounds, initial_violations, rounds, outcome }, profile, lll })
}

fn lll_diagnostics(h: &Hypergraph, checker: &Checker, profile: &SafeEdgeProfile, is_safe: &[bool]) -> Option<LllDiagnostics> {
    let n_safe: HashMap<VertexId, f64> = profile.entries.iter().map(|e| (e.x, e.n_x_safe as f64)).collect();
    let mut events: Vec<(Vec<VertexId>, f64)> = Vec::new();
    match checker {
        Checker::Explicit { cs, relevant } => {
            for (i, d) in cs.d.iter().enumerate() {
                if relevant[i] {
                    let vp = v_p(h, d);
                    let p = vp.iter().map(|y| 1.0 / n_safe[y]).product();
                    events.push((vp, p));
                }
            }
        }
        Checker::Projected { .. } => {}
        Checker::Colouring { .. } => return None,
    }
    for [e, f] in crate::conflicts::overlap_pairs(h, Some(is_safe)) {
        let (x, y) = (h.h2_anchor(e), h.h2_anchor(f));
        events.push((vec![x.min(y), x.max(y)], 1.0 / (n_safe[&x] * n_safe[&y])));
    }
    let mut mass: HashMap<VertexId, f64> = HashMap::new();
    for (vp, p) in &events {
        for y in vp {
            *mass.entry(*y).or_insert(0.0) += p;
        }
    }
    let max_probability = events.iter().map(|e| e.1).fold(0.0, f64::max);
    let max_neighbourhood_sum = events.iter().map(|(vp, _)| vp.iter().map(|y| mass[y]).sum::<f64>()).fold(0.0, f64::max);
    Some(LllDiagnostics {
        events: events.len(),
        max_probability,
        max_neighbourhood_sum,
        thresholds_met: max_probability < 0.5 && max_neighbourhood_sum <= 0.25,
    })
}
