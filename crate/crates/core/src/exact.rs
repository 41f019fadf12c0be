//! Ground-truth solvers: the exhaustive oracle, the exact solver for
//! MDD(min) on k-regular graphs, and the complement duality.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::instance::{is_feasible, DeletionSet, Instance, Objective, Probe};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// Minimize the number of deleted vertices; weights only feed the report.
    Cardinality,
    Weighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Only subsets of at most this many vertices are examined.
    pub max_subset_size: Option<usize>,
    pub weight_mode: WeightMode,
    /// Maximum number of subsets examined before giving up.
    pub budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_subset_size: None,
            weight_mode: WeightMode::Weighted,
            budget: 1 << 26,
        }
    }
}

impl OracleConfig {
    pub fn cardinality() -> Self {
        OracleConfig {
            weight_mode: WeightMode::Cardinality,
            ..Default::default()
        }
    }
}

/// Calls `f` on every `size`-subset of `items` in lexicographic order.
pub(crate) fn for_each_combination<B>(
    items: &[Vertex],
    size: usize,
    mut f: impl FnMut(&[Vertex]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let m = items.len();
    if size > m {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut buf: Vec<Vertex> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf)?;
        // Advance to the next combination of indices.
        let Some(i) = (0..size).rev().find(|&i| idx[i] != i + m - size) else {
            return ControlFlow::Continue(());
        };
        idx[i] += 1;
        buf[i] = items[idx[i]];
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
            buf[j] = items[idx[j]];
        }
    }
}

/// Exhaustive search for an optimal solution.
///
/// Subsets are examined by increasing cardinality and, within a cardinality,
/// in lexicographic order; a candidate only replaces the incumbent when it is
/// strictly lighter. The result is therefore the lightest feasible set, ties
/// broken by smaller cardinality and then by the lexicographically smallest
/// vertex list. The search stops as soon as no larger cardinality can beat the
/// incumbent, which makes unit-weight instances cost only
/// `sum_{i <= opt} C(n-1, i)` checks.
pub fn brute_force_optimum(inst: &Instance, cfg: &OracleConfig) -> Result<DeletionSet> {
    if cfg.budget == 0 {
        return Err(Error::Config("oracle budget must be at least 1".into()));
    }
    let candidates: Vec<Vertex> = inst.others().collect();
    let cmp_weight = |v: Vertex| match cfg.weight_mode {
        WeightMode::Cardinality => Weight::ONE,
        WeightMode::Weighted => inst.weight(v),
    };
    let mut sorted: Vec<Weight> = candidates.iter().map(|&v| cmp_weight(v)).collect();
    sorted.sort_unstable();
    let cap = cfg.max_subset_size.unwrap_or(candidates.len()).min(candidates.len());

    let mut probe = Probe::new(inst);
    let mut best: Option<(Weight, Vec<Vertex>)> = None;
    let mut examined = 0u64;
    let mut lower_bound = Weight::ZERO;
    for size in 0..=cap {
        if size > 0 {
            lower_bound = lower_bound + sorted[size - 1];
        }
        if matches!(&best, Some((w, _)) if lower_bound >= *w) {
            break;
        }
        let flow = for_each_combination(&candidates, size, |set| {
            examined += 1;
            if examined > cfg.budget {
                return ControlFlow::Break(Err(Error::Budget {
                    what: "oracle subsets examined",
                    limit: cfg.budget,
                }));
            }
            if probe.check(set) {
                let w: Weight = set.iter().map(|&v| cmp_weight(v)).sum();
                if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                    best = Some((w, set.to_vec()));
                    if w == lower_bound {
                        return ControlFlow::Break(Ok(()));
                    }
                }
            }
            ControlFlow::Continue(())
        });
        if let ControlFlow::Break(Err(e)) = flow {
            return Err(e);
        }
    }
    match best {
        Some((_, set)) => DeletionSet::new(inst, set),
        None => Err(Error::Infeasible(format!(
            "no feasible deletion set with at most {cap} vertices"
        ))),
    }
}

/// Every feasible deletion set with at most `max_size` vertices, by
/// increasing cardinality then lexicographically.
pub fn all_feasible_sets(inst: &Instance, max_size: Option<usize>, budget: u64) -> Result<Vec<Vec<Vertex>>> {
    let candidates: Vec<Vertex> = inst.others().collect();
    let cap = max_size.unwrap_or(candidates.len()).min(candidates.len());
    let mut probe = Probe::new(inst);
    let mut out = Vec::new();
    let mut examined = 0u64;
    for size in 0..=cap {
        let flow = for_each_combination(&candidates, size, |set| {
            examined += 1;
            if examined > budget {
                return ControlFlow::Break(());
            }
            if probe.check(set) {
                out.push(set.to_vec());
            }
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            return Err(Error::Budget {
                what: "feasible-set enumeration",
                limit: budget,
            });
        }
    }
    Ok(out)
}

/// The complement instance: MDD(max) on `G` is MDD(min) on `G^c` with the same
/// solutions, and vice versa.
pub fn dualize(inst: &Instance) -> Instance {
    inst.dualize()
}

fn regular_unit_min(inst: &Instance) -> Result<usize> {
    if inst.objective() != Objective::Min {
        return Err(Error::precondition("k-regular exact solver handles objective min only"));
    }
    if !inst.has_unit_weights() {
        return Err(Error::precondition(
            "k-regular exact solver needs unit weights; use the oracle for weighted instances",
        ));
    }
    match inst.graph().regular_degree() {
        Some(k) if k >= 1 => Ok(k),
        Some(_) => Err(Error::precondition("graph is 0-regular")),
        None => Err(Error::precondition("graph is not regular")),
    }
}

/// `N(p) ∪ A` with `A = {v ∉ N[p] : N(v) = N(p)}`; at most `2k - 1` vertices.
pub fn kregular_feasible_witness(inst: &Instance) -> Result<DeletionSet> {
    regular_unit_min(inst)?;
    let g = inst.graph();
    let p = inst.p();
    let np = g.neighbors(p);
    let twins = inst
        .others()
        .filter(|&v| !g.has_edge(p, v) && g.neighbors(v) == np);
    let s = DeletionSet::new(inst, np.iter().copied().chain(twins))?;
    if !is_feasible(inst, &s) {
        return Err(Error::Internal(format!("k-regular witness {s} is infeasible")));
    }
    Ok(s)
}

/// Minimum-cardinality solution of unit-weight MDD(min) on a k-regular graph.
///
/// An optimum has at most `2k - 1` vertices, so subsets are enumerated by
/// increasing size up to that bound and the first feasible one is returned.
/// The enumeration order matches [`brute_force_optimum`], so both return the
/// same set.
pub fn kregular_min_exact(inst: &Instance) -> Result<DeletionSet> {
    let k = regular_unit_min(inst)?;
    let candidates: Vec<Vertex> = inst.others().collect();
    let mut probe = Probe::new(inst);
    for size in 0..=(2 * k - 1).min(candidates.len()) {
        let found = for_each_combination(&candidates, size, |set| {
            if probe.check(set) {
                ControlFlow::Break(set.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let ControlFlow::Break(set) = found {
            return DeletionSet::new(inst, set);
        }
    }
    Err(Error::Internal(format!(
        "no feasible set of size <= {} on a {k}-regular graph",
        2 * k - 1
    )))
}
