//! Stage 1 followed by stage 2, with the statistics of both.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hypergraph::{Hypergraph, Matching};
use crate::model::ConflictModel;
use crate::stage1::{run_stage1, Stage1Config, Stage1Stats};
use crate::stage2::{run_stage2, LllDiagnostics, Outcome, ResampleLog, SafeEdgeProfile, Stage2Config};
use crate::trackers::{TrackerSet, TrackerSpec};

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub d: f64,
    pub eps: f64,
    pub seed: u64,
    pub max_rounds: usize,
    pub stage1_only: bool,
    pub trackers: Vec<TrackerSpec>,
    /// Overrides the stage-1 tracker recheck interval.
    pub check_every: Option<usize>,
}

impl PipelineConfig {
    pub fn new(d: f64, eps: f64, seed: u64) -> Self {
        PipelineConfig { d, eps, seed, max_rounds: 10_000, stage1_only: false, trackers: Vec::new(), check_every: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Complete,
    Stage1Only,
    CapExceeded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stage2Report {
    pub outcome: Outcome,
    pub rounds: usize,
    pub initial_violations: usize,
    pub m2_size: usize,
    pub lll: Option<LllDiagnostics>,
    pub profile: SafeEdgeProfile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub status: Status,
    pub stage1: Stage1Stats,
    pub stage2: Option<Stage2Report>,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub matching: Matching,
    pub report: RunReport,
    pub log: Option<ResampleLog>,
}

/// Runs both stages. `EmptySafeSet` and input errors propagate; hitting the
/// resampling cap is reported through `Status::CapExceeded`.
pub fn run(h: &Hypergraph, model: &ConflictModel, cfg: &PipelineConfig) -> Result<RunOutput> {
    let mut s1 = Stage1Config::new(cfg.d, cfg.eps, cfg.seed);
    if let Some(c) = cfg.check_every {
        s1.check_every = c;
    }
    let mut trackers = if cfg.trackers.is_empty() { TrackerSet::default() } else { TrackerSet::new(h, model, &cfg.trackers, cfg.d, cfg.eps)? };
    let first = run_stage1(h, model, &s1, &mut trackers);
    log::info!("stage 1: |m1| = {}, uncovered {} ({:.4})", first.stats.m1_size, first.stats.uncovered, first.stats.uncovered_fraction);
    if cfg.stage1_only {
        let matching = Matching::new(h, first.m1, Vec::new());
        return Ok(RunOutput { matching, report: RunReport { seed: cfg.seed, status: Status::Stage1Only, stage1: first.stats, stage2: None }, log: None });
    }
    let mut s2 = Stage2Config::new(cfg.d, model.ell(), cfg.seed);
    s2.max_rounds = cfg.max_rounds;
    let second = run_stage2(h, model, &first.m1, &s2)?;
    log::info!("stage 2: {:?} after {} rounds", second.log.outcome, second.log.rounds.len());
    let status = match second.log.outcome {
        Outcome::Success => Status::Complete,
        Outcome::CapExceeded => Status::CapExceeded,
    };
    let report = RunReport {
        seed: cfg.seed,
        status,
        stage1: first.stats,
        stage2: Some(Stage2Report {
            outcome: second.log.outcome,
            rounds: second.log.rounds.len(),
            initial_violations: second.log.initial_violations,
            m2_size: second.m2.len(),
            lll: second.lll,
            profile: second.profile,
        }),
    };
    Ok(RunOutput { matching: Matching::new(h, first.m1, second.m2), report, log: Some(second.log) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Instance;
    use crate::random::RandomSpec;
    use crate::verify::verify_matching;

    #[test]
    fn random_instance_end_to_end() {
        let spec = RandomSpec { n: 300, k: 3, d: 12, d2: 12, n_r: 600, r: 2, seed: 9 };
        let inst = Instance::random(&spec, &[(3, 0.5)], &[(1, 2, 0.05), (0, 2, 0.05)]).unwrap();
        let cfg = PipelineConfig::new(12.0, 0.1, 3);
        let out = run(&inst.h, &inst.model, &cfg).unwrap();
        assert_eq!(out.report.status, Status::Complete);
        let (c, d) = inst.conflict_lists();
        let report = verify_matching(&inst.h, &c, &d, &out.matching, Some((12.0, 0.1)));
        assert!(report.passed(), "{report:?}");
        let again = run(&inst.h, &inst.model, &cfg).unwrap();
        assert_eq!(again.matching, out.matching);
        assert_eq!(again.log, out.log);
    }
}
