//! Complete instances: hypergraph, conflict model and the metadata needed to
//! rebuild and decode them. On disk an instance is three files sharing a
//! prefix: `<prefix>.hg` (or `.json`), `<prefix>.cf` and `<prefix>.meta.json`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::apps::covering::{build_covering_reduction, CoveringInstance};
use crate::apps::ramsey::{self, RamseyParams};
use crate::apps::steiner::build_steiner_covering;
use crate::conflicts::ConflictSystem;
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, HypergraphBuilder, Shape};
use crate::io;
use crate::model::{ColouringScheme, ConflictModel, Pattern, Projected};
use crate::random::{near_regular, plant_c, plant_d, RandomSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum AppParams {
    RamseyCycles { n: u32, k: usize, cycle_len: usize, delta: f64 },
    RamseyK4 { n: u32, delta: f64, seed: u64, rho: Option<f64> },
    Covering,
    Steiner { m: u32, s: usize, t: usize, ell: usize, kappa: Vec<Vec<u32>> },
    Random { n: u32, k: u32, d: u32, d2: u32, n_r: u32, r: u32, seed: u64, c_rates: Vec<(usize, f64)>, d_rates: Vec<(usize, usize, f64)> },
    Explicit,
}

impl AppParams {
    pub fn name(&self) -> &'static str {
        match self {
            AppParams::RamseyCycles { .. } => "ramsey-cycles",
            AppParams::RamseyK4 { .. } => "ramsey-k4",
            AppParams::Covering => "covering",
            AppParams::Steiner { .. } => "steiner",
            AppParams::Random { .. } => "random",
            AppParams::Explicit => "explicit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Palette {
    pub t1: u32,
    pub t2: u32,
    /// Every copy must see at least this many colours.
    pub q: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub app: AppParams,
    /// Declared degree bound.
    pub d: f64,
    pub ell: usize,
    pub pad: Option<usize>,
    pub palette: Option<Palette>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub h: Hypergraph,
    pub model: ConflictModel,
    pub meta: Meta,
}

fn lists(fam: &crate::family::SetFamily) -> Vec<Vec<EdgeId>> {
    fam.iter().map(<[u32]>::to_vec).collect()
}

impl Instance {
    pub fn ramsey(params: &RamseyParams) -> Result<Instance> {
        let inst = ramsey::build(params)?;
        let app = match *params {
            RamseyParams::Cycles { n, k, cycle_len, delta } => AppParams::RamseyCycles { n, k, cycle_len, delta },
            RamseyParams::K4 { n, delta, seed, rho } => AppParams::RamseyK4 { n, delta, seed, rho },
        };
        let q = inst.scheme.max_bad() + 1;
        let ell = inst.scheme.copy_size();
        Ok(Instance {
            meta: Meta { app, d: inst.meta.d, ell, pad: None, palette: Some(Palette { t1: inst.meta.t1, t2: inst.meta.t2, q }) },
            h: inst.h,
            model: ConflictModel::Colouring(inst.scheme),
        })
    }

    fn from_cover(cover: CoveringInstance, app: AppParams, source_max_degree: usize) -> Instance {
        let ell = cover.model.cs.ell();
        Instance { meta: Meta { app, d: source_max_degree as f64, ell, pad: None, palette: None }, h: cover.h, model: ConflictModel::Projected(cover.model) }
    }

    pub fn covering(h_in: &Hypergraph, c_in: &[Vec<EdgeId>]) -> Result<Instance> {
        let cover = build_covering_reduction(h_in, c_in, None)?;
        let d = h_in.max_degree(1, Some(EdgeClass::H1))?.0;
        Ok(Self::from_cover(cover, AppParams::Covering, d))
    }

    pub fn steiner(m: u32, s: usize, t: usize, kappa: Vec<Vec<u32>>, ell: usize) -> Result<Instance> {
        let st = build_steiner_covering(m, s, t, kappa, ell)?;
        let d = st.base.max_degree(1, Some(EdgeClass::H1))?.0;
        let app = AppParams::Steiner { m, s, t, ell, kappa: st.kappa.clone() };
        Ok(Self::from_cover(st.cover, app, d))
    }

    pub fn random(spec: &RandomSpec, c_rates: &[(usize, f64)], d_rates: &[(usize, usize, f64)]) -> Result<Instance> {
        let h = near_regular(spec)?;
        let c = plant_c(&h, c_rates, spec.seed);
        let d = if spec.d2 > 0 { plant_d(&h, d_rates, spec.seed) } else { Vec::new() };
        let cs = ConflictSystem::new(&h, &c, &d, None)?;
        let app = AppParams::Random {
            n: spec.n,
            k: spec.k,
            d: spec.d,
            d2: spec.d2,
            n_r: spec.n_r,
            r: spec.r,
            seed: spec.seed,
            c_rates: c_rates.to_vec(),
            d_rates: d_rates.to_vec(),
        };
        Ok(Instance { meta: Meta { app, d: spec.d as f64, ell: cs.ell(), pad: None, palette: None }, h, model: ConflictModel::Explicit(cs) })
    }

    pub fn explicit(h: Hypergraph, c: &[Vec<EdgeId>], d: &[Vec<EdgeId>], ell: Option<usize>, degree: Option<f64>) -> Result<Instance> {
        let cs = ConflictSystem::new(&h, c, d, ell)?;
        let d_decl = match degree {
            Some(v) => v,
            None => h.max_degree(1, Some(EdgeClass::H1))?.0 as f64,
        };
        Ok(Instance { meta: Meta { app: AppParams::Explicit, d: d_decl, ell: cs.ell(), pad: None, palette: None }, h, model: ConflictModel::Explicit(cs) })
    }

    /// Adds dummy H1 edges so every Q-vertex has H1-degree `d`; the conflict
    /// indexes are rebuilt over the padded edge set.
    pub fn pad(self, d: usize) -> Result<Instance> {
        let h = self.h.add_dummy_padding(d)?;
        let model = rebase(&h, &self.model)?;
        Ok(Instance { h, model, meta: Meta { pad: Some(d), ..self.meta } })
    }

    /// Explicit C and D lists as stored in the conflicts file.
    pub fn conflict_lists(&self) -> (Vec<Vec<EdgeId>>, Vec<Vec<EdgeId>>) {
        match &self.model {
            ConflictModel::Explicit(cs) => (lists(&cs.c), lists(&cs.d)),
            ConflictModel::Projected(p) => (lists(&p.cs.c), Vec::new()),
            ConflictModel::Colouring(_) => (Vec::new(), Vec::new()),
        }
    }

    pub fn scheme(&self) -> Option<&ColouringScheme> {
        match &self.model {
            ConflictModel::Colouring(s) => Some(s),
            _ => None,
        }
    }

    pub fn projected(&self) -> Option<&Projected> {
        match &self.model {
            ConflictModel::Projected(p) => Some(p),
            _ => None,
        }
    }

    /// The source `k`-graph of a covering instance: its H1 edges on P.
    pub fn source_graph(&self) -> Result<Hypergraph> {
        let s = self.h.shape();
        let mut b = HypergraphBuilder::new(Shape { n_p: s.n_p, n_q: 0, n_r: 1, p: s.p, q: 0, r: 1 });
        for &e in self.h.edges_of(EdgeClass::H1) {
            if !self.h.is_dummy(e) {
                b.add_edge(EdgeClass::H1, self.h.edge(e))?;
            }
        }
        b.build()
    }

    pub fn save(&self, prefix: &Path, json: bool) -> Result<Vec<PathBuf>> {
        let hg_path = with_suffix(prefix, if json { ".json" } else { ".hg" });
        let hg = if json { io::write_hypergraph_json(&self.h)? } else { io::write_hypergraph(&self.h) };
        std::fs::write(&hg_path, hg)?;
        let (c, d) = self.conflict_lists();
        let mut comments = vec![format!("app {}", self.meta.app.name())];
        match &self.model {
            ConflictModel::Colouring(_) => comments.push("conflicts are implicit in the colouring rule".into()),
            ConflictModel::Projected(_) => comments.push("mixed conflicts are all duplicate copies of the c lines".into()),
            ConflictModel::Explicit(_) => {}
        }
        let cf_path = with_suffix(prefix, ".cf");
        std::fs::write(&cf_path, io::write_conflicts(c.iter().map(Vec::as_slice), d.iter().map(Vec::as_slice), &comments))?;
        let meta_path = with_suffix(prefix, ".meta.json");
        let mut meta = serde_json::to_string_pretty(&self.meta)?;
        meta.push('\n');
        std::fs::write(&meta_path, meta)?;
        Ok(vec![hg_path, cf_path, meta_path])
    }

    /// Reads the three files and rebuilds the instance from its metadata;
    /// a hypergraph or conflict list that differs from the rebuilt one is an
    /// input error.
    /// Loads `<prefix>.{hg|json}`, `<prefix>.cf` and `<prefix>.meta.json`. The
    /// prefix may also name one of those files.
    pub fn load(prefix: &Path) -> Result<Instance> {
        let prefix = &strip_instance_suffix(prefix);
        let json_path = with_suffix(prefix, ".json");
        let hg_path = if json_path.exists() { json_path } else { with_suffix(prefix, ".hg") };
        let h = io::parse_hypergraph_any(&read(&hg_path)?)?;
        let raw = io::parse_conflicts(&read(&with_suffix(prefix, ".cf"))?)?;
        let meta: Meta = serde_json::from_str(&read(&with_suffix(prefix, ".meta.json"))?)?;
        Self::assemble(h, &raw.c, &raw.d, meta)
    }

    pub fn assemble(h: Hypergraph, c: &[Vec<EdgeId>], d: &[Vec<EdgeId>], meta: Meta) -> Result<Instance> {
        let rebuilt = match &meta.app {
            AppParams::RamseyCycles { n, k, cycle_len, delta } => Self::ramsey(&RamseyParams::Cycles { n: *n, k: *k, cycle_len: *cycle_len, delta: *delta })?,
            AppParams::RamseyK4 { n, delta, seed, rho } => Self::ramsey(&RamseyParams::K4 { n: *n, delta: *delta, seed: *seed, rho: *rho })?,
            AppParams::Covering => {
                let unpadded = strip_padding(&h)?;
                let probe = Instance { h: unpadded, model: ConflictModel::Explicit(ConflictSystem::empty(&h)), meta: meta.clone() };
                Self::covering(&probe.source_graph()?, c)?
            }
            AppParams::Steiner { m, s, t, ell, kappa } => Self::steiner(*m, *s, *t, kappa.clone(), *ell)?,
            AppParams::Random { n, k, d: deg, d2, n_r, r, seed, c_rates, d_rates } => {
                let spec = RandomSpec { n: *n, k: *k, d: *deg, d2: *d2, n_r: *n_r, r: *r, seed: *seed };
                Self::random(&spec, c_rates, d_rates)?
            }
            AppParams::Explicit => {
                let unpadded = strip_padding(&h)?;
                Self::explicit(unpadded, c, d, Some(meta.ell), Some(meta.d))?
            }
        };
        let rebuilt = match meta.pad {
            Some(p) => rebuilt.pad(p)?,
            None => rebuilt,
        };
        if rebuilt.h != h {
            return Err(Error::input(format!("hypergraph does not match the {} metadata", meta.app.name())));
        }
        let (rc, rd) = rebuilt.conflict_lists();
        if !same_family(&rc, c) || !same_family(&rd, d) {
            return Err(Error::input(format!("conflict lists do not match the {} metadata", meta.app.name())));
        }
        Ok(Instance { meta: Meta { d: meta.d, ell: meta.ell, ..rebuilt.meta }, ..rebuilt })
    }
}

fn same_family(a: &[Vec<EdgeId>], b: &[Vec<EdgeId>]) -> bool {
    let norm = |f: &[Vec<EdgeId>]| {
        let mut v: Vec<Vec<EdgeId>> = f
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        v.sort_unstable();
        v
    };
    norm(a) == norm(b)
}

/// The hypergraph without its dummy edges and the Q-vertices they added.
fn strip_padding(h: &Hypergraph) -> Result<Hypergraph> {
    if !h.has_dummies() {
        return Ok(h.clone());
    }
    let s = h.shape();
    let dummies: Vec<EdgeId> = (0..h.n_edges() as EdgeId).filter(|&e| h.is_dummy(e)).collect();
    let added = dummies.len() as u32 * (s.k() - 1);
    let n_q = s.n_q - added;
    let r_start = s.n_p + s.n_q;
    let shift = |v: u32| if v >= r_start { v - added } else { v };
    let mut b = HypergraphBuilder::new(Shape { n_q, ..s });
    for e in 0..h.n_edges() as EdgeId {
        if !h.is_dummy(e) {
            let vs: Vec<u32> = h.edge(e).iter().map(|&v| shift(v)).collect();
            b.add_edge(h.class(e), &vs)?;
        }
    }
    b.build()
}

fn rebase(h: &Hypergraph, model: &ConflictModel) -> Result<ConflictModel> {
    Ok(match model {
        ConflictModel::Explicit(cs) => ConflictModel::Explicit(ConflictSystem::new(h, &lists(&cs.c), &lists(&cs.d), Some(cs.ell()))?),
        ConflictModel::Projected(p) => {
            let cs = ConflictSystem::new(h, &lists(&p.cs.c), &[], Some(p.cs.ell()))?;
            ConflictModel::Projected(Projected::new(h, cs, p.source.clone()))
        }
        ConflictModel::Colouring(s) => ConflictModel::Colouring(s.clone()),
    })
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn strip_instance_suffix(p: &Path) -> PathBuf {
    if with_suffix(p, ".meta.json").exists() {
        return p.to_path_buf();
    }
    let s = p.to_string_lossy();
    [".meta.json", ".hg", ".cf", ".json"].iter().find_map(|suffix| s.strip_suffix(suffix).map(PathBuf::from)).unwrap_or_else(|| p.to_path_buf())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

/// The colouring pattern and target for a Ramsey instance.
pub fn ramsey_target(meta: &Meta) -> Option<(u32, usize, Pattern, usize)> {
    let q = meta.palette.as_ref()?.q;
    match meta.app {
        AppParams::RamseyCycles { n, k, cycle_len, .. } => Some((n, k, Pattern::TightCycle { len: cycle_len }, q)),
        AppParams::RamseyK4 { n, .. } => Some((n, 2, Pattern::K4, q)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_and_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let spec = RandomSpec { n: 60, k: 3, d: 6, d2: 3, n_r: 80, r: 2, seed: 4 };
        let cases = vec![
            Instance::ramsey(&RamseyParams::Cycles { n: 8, k: 2, cycle_len: 4, delta: 0.25 }).unwrap(),
            Instance::ramsey(&RamseyParams::K4 { n: 7, delta: 0.25, seed: 2, rho: None }).unwrap().pad(200).unwrap(),
            Instance::random(&spec, &[(3, 0.5)], &[(1, 2, 0.2)]).unwrap(),
            Instance::steiner(8, 3, 2, crate::apps::steiner::complete_candidates(8, 3), 4).unwrap(),
        ];
        for (i, inst) in cases.into_iter().enumerate() {
            let prefix = dir.path().join(format!("inst{i}"));
            inst.save(&prefix, i % 2 == 1).unwrap();
            let back = Instance::load(&prefix).unwrap();
            assert_eq!(back.h, inst.h);
            assert_eq!(back.meta, inst.meta);
            assert_eq!(back.conflict_lists(), inst.conflict_lists());
        }
    }

    #[test]
    fn mismatched_metadata_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let inst = Instance::ramsey(&RamseyParams::Cycles { n: 8, k: 2, cycle_len: 4, delta: 0.25 }).unwrap();
        let prefix = dir.path().join("r");
        inst.save(&prefix, false).unwrap();
        let meta_path = with_suffix(&prefix, ".meta.json");
        let text = std::fs::read_to_string(&meta_path).unwrap().replace("\"n\": 8", "\"n\": 9");
        std::fs::write(&meta_path, text).unwrap();
        assert!(matches!(Instance::load(&prefix), Err(Error::Input(_))));
    }
}
