//! Command-line front end: `build`, `validate`, `match` and `verify`.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::apps::covering::{decode_cover, CoveringInstance};
use crate::apps::ramsey::{cycle_conflicts, k4_conflicts, RamseyParams};
use crate::apps::steiner::complete_candidates;
use crate::conditions::{check_c_conditions, check_d_conditions, check_h_conditions, MixedDelta, Mode};
use crate::conflicts::ConflictSystem;
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, Matching};
use crate::instance::{ramsey_target, AppParams, Instance};
use crate::io;
use crate::model::ConflictModel;
use crate::pipeline::{self, PipelineConfig, RunOutput, Status};
use crate::random::RandomSpec;
use crate::trackers::{auto_specs, TrackerSpec};
use crate::verify::{verify_covering, verify_matching, verify_ramsey_coloring, Report, SpanCheck};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_UNSATISFIABLE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "cfhm", version, about = "Conflict-free P-perfect hypergraph matchings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an application instance and write `<out>.hg|.json`, `<out>.cf`, `<out>.meta.json`.
    Build(BuildArgs),
    /// Check the boundedness conditions of an instance.
    Validate(ValidateArgs),
    /// Run both stages and write the matching, report and resampling log.
    Match(MatchArgs),
    /// Verify a matching and, for application instances, the decoded object.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum App {
    RamseyCycles,
    RamseyK4,
    Covering,
    Steiner,
    Random,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Hg,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Simple,
    Mixed,
    Both,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    pub app: App,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "hg")]
    pub format: Format,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub cycle_len: Option<usize>,
    #[arg(long, default_value_t = 0.25)]
    pub delta: f64,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    /// Candidate s-sets, one per line (default: all s-subsets).
    #[arg(long)]
    pub candidates: Option<PathBuf>,
    /// Source k-graph for `covering` and `explicit`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Conflict file for `covering` and `explicit`.
    #[arg(long)]
    pub conflicts: Option<PathBuf>,
    /// For `covering`: use the girth configurations of up to this many edges as conflicts.
    #[arg(long, conflicts_with = "conflicts")]
    pub girth: Option<usize>,
    /// Degree target for `random`, declared degree for `explicit`.
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub d2: u32,
    #[arg(long)]
    pub n_r: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    /// Planted C-conflicts `j:rate` (per H1 edge).
    #[arg(long = "c-rate")]
    pub c_rates: Vec<String>,
    /// Planted D-conflicts `j1:j2:rate` (per H2 edge).
    #[arg(long = "d-rate")]
    pub d_rates: Vec<String>,
    /// Pad Q-vertices to this H1-degree with dummy edges.
    #[arg(long)]
    pub pad: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Degree bound; defaults to the declared one.
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, value_enum, default_value = "both")]
    pub mode: ModeArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MatchArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub max_rounds: usize,
    #[arg(long)]
    pub stage1_only: bool,
    /// Comma-separated tracker specs (`w:x:j1:j2`, `wp:x:j1:j2`, `wb:x:b1,b2`) or `auto[:count]`.
    #[arg(long)]
    pub trackers: Option<String>,
    /// Number of consecutive seeds to run; outputs get a `.seed<S>` suffix when above 1.
    #[arg(long, default_value_t = 1)]
    pub runs: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub matching: PathBuf,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::EmptySafeSet { .. } => EXIT_UNSATISFIABLE,
        _ => EXIT_INPUT,
    }
}

/// Parses arguments and runs the command; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Build(a) => build(a),
        Command::Validate(a) => validate(a),
        Command::Match(a) => run_match(a),
        Command::Verify(a) => verify(a),
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::input(format!("missing --{flag}")))
}

fn parse_rates<const N: usize>(items: &[String]) -> Result<Vec<[f64; N]>> {
    items
        .iter()
        .map(|s| {
            let parts: Vec<f64> =
                s.split(':').map(|t| t.parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| Error::input(format!("bad rate '{s}'")))?;
            <[f64; N]>::try_from(parts).map_err(|_| Error::input(format!("rate '{s}' needs {N} fields")))
        })
        .collect()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn build(a: BuildArgs) -> Result<i32> {
    let inst = match a.app {
        App::RamseyCycles => Instance::ramsey(&RamseyParams::Cycles {
            n: need(a.n, "n")?,
            k: a.k.unwrap_or(2) as usize,
            cycle_len: need(a.cycle_len, "cycle-len")?,
            delta: a.delta,
        })?,
        App::RamseyK4 => Instance::ramsey(&RamseyParams::K4 { n: need(a.n, "n")?, delta: a.delta, seed: a.seed, rho: a.rho })?,
        App::Covering | App::Explicit => {
            let h = io::parse_hypergraph_any(&read(&need(a.input.clone(), "input")?)?)?;
            let raw = match &a.conflicts {
                Some(p) => io::parse_conflicts(&read(p)?)?,
                None => io::RawConflicts::default(),
            };
            if a.app == App::Covering {
                if !raw.d.is_empty() {
                    return Err(Error::input("covering input conflicts must be c lines"));
                }
                let c = match a.girth {
                    Some(ell) => crate::apps::covering::girth_conflicts(&h, ell),
                    None => raw.c,
                };
                Instance::covering(&h, &c)?
            } else {
                Instance::explicit(h, &raw.c, &raw.d, a.ell, a.d)?
            }
        }
        App::Steiner => {
            let (m, s) = (need(a.m, "m")?, need(a.s, "s")?);
            let kappa = match &a.candidates {
                Some(p) => {
                    let text = read(p)?;
                    text.lines()
                        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                        .map(|l| l.split_whitespace().map(|t| t.parse::<u32>().map_err(|_| Error::input(format!("bad candidate line '{l}'")))).collect())
                        .collect::<Result<Vec<Vec<u32>>>>()?
                }
                None => complete_candidates(m, s),
            };
            Instance::steiner(m, s, need(a.t, "t")?, kappa, need(a.ell, "ell")?)?
        }
        App::Random => {
            let n = need(a.n, "n")?;
            let spec = RandomSpec { n, k: a.k.unwrap_or(3), d: need(a.d, "d")?.round() as u32, d2: a.d2, n_r: a.n_r.unwrap_or(2 * n), r: a.r, seed: a.seed };
            let c: Vec<(usize, f64)> = parse_rates::<2>(&a.c_rates)?.into_iter().map(|[j, r]| (j as usize, r)).collect();
            let d: Vec<(usize, usize, f64)> = parse_rates::<3>(&a.d_rates)?.into_iter().map(|[j1, j2, r]| (j1 as usize, j2 as usize, r)).collect();
            Instance::random(&spec, &c, &d)?
        }
    };
    let inst = match a.pad {
        Some(p) => inst.pad(p)?,
        None => inst,
    };
    let files = inst.save(&a.out, a.format == Format::Json)?;
    let (c, d) = inst.conflict_lists();
    let summary = json!({
        "app": inst.meta.app.name(),
        "files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "p": inst.h.n_p(),
        "h1": inst.h.edges_of(EdgeClass::H1).len(),
        "h2": inst.h.edges_of(EdgeClass::H2).len(),
        "c": c.len(),
        "d": d.len(),
        "declared_d": inst.meta.d,
    });
    emit(&summary, None)?;
    Ok(EXIT_OK)
}

/// Explicit conflict lists when they exist or are cheap to enumerate.
fn explicit_for_validation(inst: &Instance) -> Result<(Option<ConflictSystem>, Vec<String>)> {
    let mut notes = Vec::new();
    let cs = match (&inst.model, &inst.meta.app) {
        (ConflictModel::Explicit(cs), _) => Some(cs.clone()),
        (ConflictModel::Colouring(_), AppParams::RamseyCycles { n, .. }) if *n <= 8 && inst.meta.pad.is_none() => {
            let (c, d) = cycle_conflicts(&crate::apps::ramsey::build(&ramsey_params(&inst.meta.app))?)?;
            notes.push("cycle conflicts enumerated explicitly".into());
            Some(ConflictSystem::new(&inst.h, &c, &d, None)?)
        }
        (ConflictModel::Colouring(_), AppParams::RamseyK4 { n, .. }) if *n <= 10 && inst.meta.pad.is_none() => {
            let (c, d) = k4_conflicts(&crate::apps::ramsey::build(&ramsey_params(&inst.meta.app))?)?;
            notes.push("K4 conflicts enumerated explicitly".into());
            Some(ConflictSystem::new(&inst.h, &c, &d, None)?)
        }
        (ConflictModel::Projected(p), _) => {
            let cover = CoveringInstance { h: inst.h.clone(), model: p.clone(), n: inst.h.n_p() as u32, k: inst.h.shape().p };
            let size: f64 = p.cs.c.iter().map(|c| (inst.h.shape().p as f64 + 1.0).powi(c.len() as i32)).sum();
            if size <= 2e6 {
                let d = crate::apps::covering::explicit_mixed(&cover);
                notes.push("mixed conflicts enumerated from duplicates".into());
                let (c, _) = inst.conflict_lists();
                Some(ConflictSystem::new(&inst.h, &c, &d, Some(p.cs.ell()))?)
            } else {
                notes.push("mixed family too large to enumerate; checked C only".into());
                Some(p.cs.clone())
            }
        }
        _ => {
            notes.push("conflicts are implicit at this size; checked H only".into());
            None
        }
    };
    Ok((cs, notes))
}

fn ramsey_params(app: &AppParams) -> RamseyParams {
    match *app {
        AppParams::RamseyCycles { n, k, cycle_len, delta } => RamseyParams::Cycles { n, k, cycle_len, delta },
        AppParams::RamseyK4 { n, delta, seed, rho } => RamseyParams::K4 { n, delta, seed, rho },
        _ => unreachable!("not a Ramsey instance"),
    }
}

fn validate(a: ValidateArgs) -> Result<i32> {
    let inst = Instance::load(&a.instance)?;
    let d = a.d.unwrap_or(inst.meta.d);
    let mode = match a.mode {
        ModeArg::Simple => Mode::Simple,
        ModeArg::Mixed => Mode::Mixed,
        ModeArg::Both => Mode::Both,
    };
    let h_rep = check_h_conditions(&inst.h, d, a.eps)?;
    let (cs, notes) = explicit_for_validation(&inst)?;
    let c_rep = cs.as_ref().map(|cs| check_c_conditions(cs, d, a.eps)).transpose()?;
    let d_rep = match &cs {
        Some(cs) if !cs.d.is_empty() => Some(check_d_conditions(cs, &inst.h, d, a.eps, mode, MixedDelta::Eps4)?),
        _ => None,
    };
    let all = h_rep.all_hold() && c_rep.as_ref().is_none_or(|r| r.all_hold()) && d_rep.as_ref().is_none_or(|r| r.all_hold());
    let out = json!({ "all_hold": all, "h": h_rep, "c": c_rep, "d": d_rep, "notes": notes });
    emit(&out, a.out.as_deref())?;
    Ok(if all { EXIT_OK } else { EXIT_FAILED_CHECK })
}

fn emit(value: &serde_json::Value, path: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            use std::io::Write as _;
            // a closed pipe (`cfhm ... | head`) is not an error
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn tracker_specs(inst: &Instance, arg: Option<&str>) -> Result<Vec<TrackerSpec>> {
    let Some(arg) = arg else { return Ok(Vec::new()) };
    if let Some(rest) = arg.strip_prefix("auto") {
        let count = match rest.strip_prefix(':') {
            Some(c) => c.parse().map_err(|_| Error::input(format!("bad tracker count in '{arg}'")))?,
            None if rest.is_empty() => 4,
            None => return Err(Error::input(format!("bad tracker spec '{arg}'"))),
        };
        return Ok(auto_specs(&inst.h, &inst.model, count));
    }
    // `wb` specs contain commas themselves, so split on commas followed by a tag
    let mut specs = Vec::new();
    let mut current = String::new();
    for piece in arg.split(',') {
        if ["w:", "wp:", "wb:"].iter().any(|t| piece.starts_with(t)) && !current.is_empty() {
            specs.push(current.parse()?);
            current.clear();
        }
        if !current.is_empty() {
            current.push(',');
        }
        current.push_str(piece);
    }
    if !current.is_empty() {
        specs.push(current.parse()?);
    }
    Ok(specs)
}

fn with_suffix(p: &Path, suffix: &str) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_run(out: &Path, run: &RunOutput) -> Result<()> {
    std::fs::write(out, io::write_matching(&run.matching))?;
    let mut report = serde_json::to_string_pretty(&run.report)?;
    report.push('\n');
    std::fs::write(with_suffix(out, ".report.json"), report)?;
    if let Some(log) = &run.log {
        let mut text = serde_json::to_string_pretty(log)?;
        text.push('\n');
        std::fs::write(with_suffix(out, ".log.json"), text)?;
    }
    Ok(())
}

fn run_match(a: MatchArgs) -> Result<i32> {
    let inst = Instance::load(&a.instance)?;
    let specs = tracker_specs(&inst, a.trackers.as_deref())?;
    let base = PipelineConfig {
        d: a.d.unwrap_or(inst.meta.d),
        eps: a.eps,
        seed: a.seed,
        max_rounds: a.max_rounds,
        stage1_only: a.stage1_only,
        trackers: specs,
        check_every: None,
    };
    let seeds: Vec<u64> = (0..a.runs.max(1)).map(|i| a.seed + i).collect();
    let one = |seed: u64| -> (u64, Result<RunOutput>) {
        let cfg = PipelineConfig { seed, ..base.clone() };
        (seed, pipeline::run(&inst.h, &inst.model, &cfg))
    };
    let results: Vec<(u64, Result<RunOutput>)> = if a.jobs > 1 && seeds.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(a.jobs).build().map_err(|e| Error::input(e.to_string()))?;
        pool.install(|| seeds.par_iter().map(|&s| one(s)).collect())
    } else {
        seeds.iter().map(|&s| one(s)).collect()
    };
    let multi = seeds.len() > 1;
    let mut code = EXIT_OK;
    let mut summary = Vec::new();
    for (seed, res) in results {
        let out = if multi { with_suffix(&a.out, &format!(".seed{seed}")) } else { a.out.clone() };
        match res {
            Ok(run) => {
                write_run(&out, &run)?;
                if run.report.status == Status::CapExceeded {
                    code = code.max(EXIT_CAP);
                }
                summary.push(json!({
                    "seed": seed,
                    "status": run.report.status,
                    "uncovered_fraction": run.report.stage1.uncovered_fraction,
                    "rounds": run.log.as_ref().map(|l| l.rounds.len()),
                    "matching": out.display().to_string(),
                }));
            }
            Err(e) => {
                eprintln!("seed {seed}: {e}");
                code = code.max(exit_code(&e));
                summary.push(json!({ "seed": seed, "error": e.to_string() }));
            }
        }
    }
    emit(&json!(summary), None)?;
    Ok(code)
}

/// Matching checks plus the domain checks the metadata calls for.
pub fn verify_instance(inst: &Instance, m: &Matching, d: f64, eps: f64) -> Result<Report> {
    let (c, dd) = inst.conflict_lists();
    let mut report = verify_matching(&inst.h, &c, &dd, m, Some((d, eps)));
    if !report.passed() {
        return Ok(report);
    }
    if let Some((n, k, pattern, q)) = ramsey_target(&inst.meta) {
        let scheme = inst.scheme().ok_or_else(|| Error::input("Ramsey metadata without colouring model"))?;
        let mut colour = vec![crate::model::NO_COLOUR; inst.h.n_p()];
        for &e in m.m1.iter().chain(&m.m2) {
            for &(g, col) in &scheme.paint[e as usize] {
                colour[g as usize] = col;
            }
        }
        let mut r = verify_ramsey_coloring(n, k, pattern, q, &colour)?;
        let palette = inst.meta.palette.as_ref().map_or(0, |p| p.t1 + p.t2) as u64;
        r.counts.insert("palette".into(), palette);
        report = report.merge(r);
    }
    if let Some(p) = inst.projected() {
        let cover_inst = CoveringInstance { h: inst.h.clone(), model: p.clone(), n: inst.h.n_p() as u32, k: inst.h.shape().p };
        let cover = decode_cover(&cover_inst, m)?;
        let source = inst.source_graph()?;
        let sets: Vec<Vec<u32>>;
        let span = match &inst.meta.app {
            AppParams::Steiner { s, t, ell, kappa, .. } => {
                sets = cover.iter().map(|&i| kappa[i as usize].clone()).collect();
                Some(SpanCheck { s: *s, t: *t, ell: *ell, sets: &sets })
            }
            _ => None,
        };
        report = report.merge(verify_covering(&source, &c, &cover, span, Some((d, eps))));
    }
    Ok(report)
}

fn verify(a: VerifyArgs) -> Result<i32> {
    let inst = Instance::load(&a.instance)?;
    let m = io::parse_matching(&read(&a.matching)?, &inst.h)?;
    let report = verify_instance(&inst, &m, a.d.unwrap_or(inst.meta.d), a.eps)?;
    let mut value = serde_json::to_value(&report)?;
    value["passed"] = json!(report.passed());
    emit(&value, a.out.as_deref())?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED_CHECK })
}
