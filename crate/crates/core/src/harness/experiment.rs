use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{gnp, random_regular, random_set_system, random_weights};
use crate::approx::{default_l_cap, mdd_max_logn};
use crate::cubic::mdd_max_cubic;
use crate::error::{Error, Result};
use crate::exact::{brute_force_optimum, for_each_combination, kregular_min_exact, OracleConfig, WeightMode};
use crate::graph::{Graph, Vertex};
use crate::instance::{is_feasible, DeletionSet, Instance, Objective};
use crate::reductions::{
    mindom_cubic_to_mddmax_cubic, mindom_to_mddmin, setcover_to_mddmax_bip, setcover_to_mddmin_bip, SetSystem,
};
use crate::weight::Weight;

/// Environment variable capping the number of worker threads.
pub const WORKERS_ENV: &str = "MDD_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Oracle,
    KregExact,
    Logn,
    Cubic,
    DualLogn,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Oracle,
        Algorithm::KregExact,
        Algorithm::Logn,
        Algorithm::Cubic,
        Algorithm::DualLogn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::KregExact => "kreg-exact",
            Algorithm::Logn => "logn",
            Algorithm::Cubic => "cubic",
            Algorithm::DualLogn => "dual-logn",
        }
    }

    /// Runs the algorithm and checks the result is feasible.
    pub fn solve(self, inst: &Instance, oracle_cfg: &OracleConfig) -> Result<DeletionSet> {
        let s = match self {
            Algorithm::Oracle => brute_force_optimum(inst, oracle_cfg)?,
            Algorithm::KregExact => kregular_min_exact(inst)?,
            Algorithm::Logn => mdd_max_logn(inst, default_l_cap(inst.n()))?.solution,
            Algorithm::Cubic => mdd_max_cubic(inst)?.solution,
            Algorithm::DualLogn => {
                if inst.objective() != Objective::Min {
                    return Err(Error::Inapplicable("dual-logn solves objective min".into()));
                }
                let dual = inst.dualize();
                let s = mdd_max_logn(&dual, default_l_cap(dual.n()))?.solution;
                DeletionSet::new(inst, s.into_vertices())?
            }
        };
        if !is_feasible(inst, &s) {
            return Err(Error::Internal(format!("{} returned infeasible {s}", self.name())));
        }
        Ok(s)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm {s:?}")))
    }
}

/// Instance family. `size` in the config is the vertex count for graph
/// families and the universe size for set-cover families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    Cubic,
    Regular { k: usize },
    Gnp { q: f64 },
    /// MinDom on `G(size, q)`, reduced to MDD(min).
    Mindom { q: f64 },
    /// MinDom on a random cubic graph, reduced to cubic MDD(max).
    CubicDom,
    SetcoverMinBip { sets: usize, q: f64 },
    SetcoverMaxBip { sets: usize, q: f64 },
}

fn default_per_size() -> usize {
    1
}

fn default_cutoff() -> usize {
    18
}

fn default_objective() -> Objective {
    Objective::Max
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    #[serde(default = "default_per_size")]
    pub instances_per_size: usize,
    #[serde(default)]
    pub seed: u64,
    pub algorithms: Vec<String>,
    /// The oracle only runs on instances with at most this many vertices.
    #[serde(default = "default_cutoff")]
    pub oracle_cutoff: usize,
    /// Objective for the plain graph families; reductions fix their own.
    #[serde(default = "default_objective")]
    pub objective: Objective,
    /// Random weights in `1..=max_weight`; unit weights when absent.
    #[serde(default)]
    pub max_weight: Option<u64>,
    #[serde(default)]
    pub record_timing: bool,
    /// Worker cap; overrides the environment variable.
    #[serde(default)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    /// Preconditions of the algorithm or construction do not hold.
    Inapplicable,
    Infeasible,
    /// A resource limit was hit.
    Budget,
    /// Oracle above the cutoff.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub instance_id: String,
    pub params: String,
    pub n: usize,
    pub algorithm: String,
    pub status: RowStatus,
    pub size: Option<usize>,
    pub weight: Option<String>,
    pub oracle_opt: Option<String>,
    /// Optimum of the source problem for reduction families.
    pub source_opt: Option<usize>,
    /// `oracle_opt - source_opt - offset`; zero when the reduction preserves cost.
    pub gap: Option<i64>,
    pub ratio: Option<f64>,
    pub wall_ms: f64,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub algorithm: String,
    pub rows: usize,
    pub ok: usize,
    pub with_ratio: usize,
    pub mean_ratio: Option<f64>,
    pub median_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rows: Vec<ReportRow>,
    pub aggregates: Vec<Aggregate>,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)
                .map_err(|e| Error::Internal(format!("csv serialization: {e}")))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Internal(format!("csv serialization: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Internal(format!("json serialization: {e}")))
    }
}

/// Smallest dominating set by exhaustive search, lexicographically first
/// among the smallest.
pub fn min_dominating_set(g: &Graph) -> Vec<Vertex> {
    let all: Vec<Vertex> = g.vertices().collect();
    for size in 0..=all.len() {
        let found = for_each_combination(&all, size, |s| {
            if g.is_dominating(s) {
                ControlFlow::Break(s.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let ControlFlow::Break(s) = found {
            return s;
        }
    }
    unreachable!("V dominates every graph")
}

/// Smallest set cover by exhaustive search, as set indices.
pub fn min_set_cover(sys: &SetSystem) -> Vec<usize> {
    let all: Vec<usize> = (0..sys.num_sets()).collect();
    for size in 0..=all.len() {
        let found = for_each_combination(&all, size, |s| {
            if sys.is_cover(s) {
                ControlFlow::Break(s.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let ControlFlow::Break(s) = found {
            return s;
        }
    }
    unreachable!("SetSystem invariants guarantee the whole family is a cover")
}

/// An instance plus `(source optimum, additive offset)` for reduction families.
type Built = Result<(Instance, Option<(usize, usize)>)>;

/// A generated instance, or why none could be built.
struct Generated {
    id: String,
    params: String,
    instance: std::result::Result<Instance, String>,
    /// `(source optimum, additive offset)` for reduction families.
    source: Option<(usize, usize)>,
}

fn instance_seed(base: u64, size: usize, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(((size as u64) << 32) | index as u64);
    rng.next_u64()
}

fn generate(cfg: &ExperimentConfig, size: usize, index: usize) -> Result<Generated> {
    let seed = instance_seed(cfg.seed, size, index);
    let weighted = |g: Graph| -> Result<Instance> {
        let n = g.n();
        if n == 0 {
            return Err(Error::precondition("generated graph is empty"));
        }
        let inst = Instance::new(g, 0, cfg.objective)?;
        match cfg.max_weight {
            Some(max) => inst.with_weights(random_weights(n, max, seed ^ 0x5eed)?),
            None => Ok(inst),
        }
    };
    let (name, params, built): (&str, String, Built) = match &cfg.family {
        Family::Cubic => ("cubic", format!("n={size}"), random_regular(size, 3, seed).and_then(weighted).map(|i| (i, None))),
        Family::Regular { k } => (
            "regular",
            format!("n={size} k={k}"),
            random_regular(size, *k, seed).and_then(weighted).map(|i| (i, None)),
        ),
        Family::Gnp { q } => ("gnp", format!("n={size} q={q}"), gnp(size, *q, seed).and_then(weighted).map(|i| (i, None))),
        Family::Mindom { q } => ("mindom", format!("n={size} q={q}"), {
            gnp(size, *q, seed).and_then(|g| {
                let art = mindom_to_mddmin(&g)?;
                Ok((art.instance, Some((min_dominating_set(&g).len(), art.kind.offset()))))
            })
        }),
        Family::CubicDom => ("cubic-dom", format!("n={size}"), {
            random_regular(size, 3, seed).and_then(|g| {
                let art = mindom_cubic_to_mddmax_cubic(&g)?;
                Ok((art.instance, Some((min_dominating_set(&g).len(), art.kind.offset()))))
            })
        }),
        Family::SetcoverMinBip { sets, q } => ("setcover-min-bip", format!("r={size} t={sets} q={q}"), {
            random_set_system(size, *sets, *q, seed).and_then(|sys| {
                let art = setcover_to_mddmin_bip(&sys)?;
                Ok((art.instance, Some((min_set_cover(&sys).len(), art.kind.offset()))))
            })
        }),
        Family::SetcoverMaxBip { sets, q } => ("setcover-max-bip", format!("r={size} t={sets} q={q}"), {
            random_set_system(size, *sets, *q, seed).and_then(|sys| {
                let art = setcover_to_mddmax_bip(&sys)?;
                Ok((art.instance, Some((min_set_cover(&sys).len(), art.kind.offset()))))
            })
        }),
    };
    let id = format!("{name}-{size}-{index}");
    let params = format!("{params} seed={seed}");
    Ok(match built {
        Ok((inst, source)) => Generated {
            id,
            params,
            instance: Ok(inst),
            source,
        },
        Err(e @ (Error::Precondition(_) | Error::Inapplicable(_))) => Generated {
            id,
            params,
            instance: Err(e.to_string()),
            source: None,
        },
        Err(e) => return Err(e),
    })
}

fn weight_value(w: Weight) -> Option<u64> {
    w.finite()
}

fn run_one(gen: &Generated, algo: Algorithm, cfg: &ExperimentConfig, oracle: Option<&DeletionSet>) -> Result<ReportRow> {
    let mut row = ReportRow {
        instance_id: gen.id.clone(),
        params: gen.params.clone(),
        n: 0,
        algorithm: algo.name().to_string(),
        status: RowStatus::Inapplicable,
        size: None,
        weight: None,
        oracle_opt: oracle.map(|s| s.total_weight().to_string()),
        source_opt: gen.source.map(|(opt, _)| opt),
        gap: None,
        ratio: None,
        wall_ms: 0.0,
        note: None,
    };
    let inst = match &gen.instance {
        Ok(inst) => inst,
        Err(msg) => {
            row.note = Some(msg.clone());
            return Ok(row);
        }
    };
    row.n = inst.n();
    if let (Some(o), Some((src, offset))) = (oracle, gen.source) {
        row.gap = weight_value(o.total_weight()).map(|w| w as i64 - (src + offset) as i64);
    }
    if algo == Algorithm::Oracle && inst.n() > cfg.oracle_cutoff {
        row.status = RowStatus::Skipped;
        return Ok(row);
    }
    let start = Instant::now();
    let result = match (algo, oracle) {
        (Algorithm::Oracle, Some(o)) => Ok(o.clone()),
        _ => algo.solve(inst, &oracle_config(inst)),
    };
    if cfg.record_timing {
        row.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    }
    match result {
        Ok(s) => {
            row.status = RowStatus::Ok;
            row.size = Some(s.len());
            row.weight = Some(s.total_weight().to_string());
            if let Some(o) = oracle {
                if let (Some(w), Some(ow)) = (weight_value(s.total_weight()), weight_value(o.total_weight())) {
                    if ow > 0 {
                        row.ratio = Some(w as f64 / ow as f64);
                    }
                }
            }
        }
        Err(e) => {
            row.status = match e {
                Error::Precondition(_) | Error::Inapplicable(_) => RowStatus::Inapplicable,
                Error::Infeasible(_) => RowStatus::Infeasible,
                Error::Budget { .. } => RowStatus::Budget,
                other => return Err(other),
            };
            row.note = Some(e.to_string());
        }
    }
    Ok(row)
}

fn oracle_config(inst: &Instance) -> OracleConfig {
    if inst.has_unit_weights() {
        OracleConfig::cardinality()
    } else {
        OracleConfig {
            weight_mode: WeightMode::Weighted,
            ..Default::default()
        }
    }
}

fn aggregate(algorithm: &str, rows: &[ReportRow]) -> Aggregate {
    let mine: Vec<&ReportRow> = rows.iter().filter(|r| r.algorithm == algorithm).collect();
    let mut ratios: Vec<f64> = mine.iter().filter_map(|r| r.ratio).collect();
    ratios.sort_by(f64::total_cmp);
    let median = match ratios.len() {
        0 => None,
        m if m % 2 == 1 => Some(ratios[m / 2]),
        m => Some((ratios[m / 2 - 1] + ratios[m / 2]) / 2.0),
    };
    Aggregate {
        algorithm: algorithm.to_string(),
        rows: mine.len(),
        ok: mine.iter().filter(|r| r.status == RowStatus::Ok).count(),
        with_ratio: ratios.len(),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        median_ratio: median,
        max_ratio: ratios.last().copied(),
    }
}

fn worker_count(cfg: &ExperimentConfig) -> Result<usize> {
    if let Some(w) = cfg.workers {
        return Ok(w);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("{WORKERS_ENV}={v:?} is not a worker count"))),
        Err(_) => Ok(0),
    }
}

/// Generates every instance, runs every algorithm on it and collects rows.
///
/// Instances are processed in parallel; rows come out in (size, index,
/// algorithm list) order regardless of scheduling. With `record_timing`
/// off the report is a pure function of the config.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let algos = cfg
        .algorithms
        .iter()
        .map(|a| a.parse::<Algorithm>())
        .collect::<Result<Vec<_>>>()?;
    if algos.is_empty() {
        return Err(Error::Config("no algorithms requested".into()));
    }
    if cfg.sizes.is_empty() {
        return Err(Error::Config("no instance sizes requested".into()));
    }
    let jobs: Vec<(usize, usize)> = cfg
        .sizes
        .iter()
        .flat_map(|&size| (0..cfg.instances_per_size).map(move |i| (size, i)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(cfg)?)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let per_instance: Vec<Vec<ReportRow>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(size, index)| -> Result<Vec<ReportRow>> {
                let gen = generate(cfg, size, index)?;
                let wants_oracle = algos.contains(&Algorithm::Oracle) || gen.source.is_some();
                let oracle = match &gen.instance {
                    Ok(inst) if wants_oracle && inst.n() <= cfg.oracle_cutoff => {
                        match brute_force_optimum(inst, &oracle_config(inst)) {
                            Ok(s) => Some(s),
                            Err(Error::Budget { .. }) => None,
                            Err(e) => return Err(e),
                        }
                    }
                    _ => None,
                };
                algos
                    .iter()
                    .map(|&a| run_one(&gen, a, cfg, oracle.as_ref()))
                    .collect()
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let rows: Vec<ReportRow> = per_instance.into_iter().flatten().collect();

    let mut names: Vec<&str> = Vec::new();
    for a in &algos {
        if !names.contains(&a.name()) {
            names.push(a.name());
        }
    }
    let aggregates = names.iter().map(|a| aggregate(a, &rows)).collect();
    Ok(ExperimentReport {
        config: cfg.clone(),
        rows,
        aggregates,
    })
}
