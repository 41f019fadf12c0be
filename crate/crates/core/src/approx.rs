//! Approximation for weighted MDD(max) on general graphs by enumerating the
//! subsets of a small set `L ⊆ N(p)` and solving an f-dependent deletion
//! problem per subset, plus the counting lower bound for regular graphs.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Vertex};
use crate::instance::{classify_neighborhood, is_feasible, DeletionSet, Instance, NeighborhoodCase, Objective};
use crate::subroutines::{f_dependent_delete, Cap, FDepProblem};
use crate::weight::Weight;

/// The neighbors of `p` that an optimal solution may need to delete, in
/// insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LSet {
    pub members: Vec<Vertex>,
}

impl LSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.contains(&v)
    }
}

/// Grows `L` from the empty set: while some `u ∈ N(p) \ L` has
/// `|N(u) \ L| >= |N(p) \ L|`, the lowest such `u` joins `L`.
pub fn build_l(inst: &Instance) -> Result<LSet> {
    if inst.objective() != Objective::Max {
        return Err(Error::precondition("L-set construction needs objective max"));
    }
    let g = inst.graph();
    let np = g.neighbors(inst.p());
    let mut in_l = vec![false; g.n()];
    let mut members = Vec::new();
    loop {
        let outside = |v: Vertex, in_l: &[bool]| g.neighbors(v).iter().filter(|&&u| !in_l[u]).count();
        let target = outside(inst.p(), &in_l);
        let next = np.iter().copied().find(|&u| !in_l[u] && outside(u, &in_l) >= target);
        match next {
            Some(u) => {
                in_l[u] = true;
                members.push(u);
            }
            None => return Ok(LSet { members }),
        }
    }
}

/// Default bound on `|L|`: `ceil(log2 n) + 2`.
pub fn default_l_cap(n: usize) -> usize {
    let log = if n <= 1 { 0 } else { (usize::BITS - (n - 1).leading_zeros()) as usize };
    log + 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LognPath {
    /// No neighbor of `p` reaches `d(p)`: one f-dependent call outside `N[p]`.
    FastPath,
    /// Enumeration over the subsets of `L`.
    Subsets,
}

/// Result of [`mdd_max_logn`] with the bookkeeping the CLI reports.
#[derive(Debug, Clone, Serialize)]
pub struct LognOutcome {
    pub solution: DeletionSet,
    pub path: LognPath,
    pub l: LSet,
    /// The subset of `L` whose branch produced the solution; `None` when the
    /// fallback `V \ {p}` won.
    pub chosen_k: Option<Vec<Vertex>>,
    pub branches: usize,
    pub feasible_branches: usize,
}

/// Solves the capped deletion problem on `G[V \ pre_deleted]` where
/// `caps[v] = Some(c)` bounds the remaining degree of `v` by `c` (negative
/// means `v` must go) and `None` leaves `v` unconstrained.
fn capped_deletion(
    inst: &Instance,
    pre_deleted: &[Vertex],
    caps: &[Option<i64>],
    weights: &[Weight],
) -> Result<Vec<Vertex>> {
    let g = inst.graph();
    let mut gone = vec![false; g.n()];
    for &v in pre_deleted {
        gone[v] = true;
    }
    let mut forced = Vec::new();
    for v in g.vertices() {
        if !gone[v] && matches!(caps[v], Some(c) if c < 0) {
            if !weights[v].is_finite() {
                return Err(Error::Infeasible(format!("undeletable vertex {v} has a negative cap")));
            }
            gone[v] = true;
            forced.push(v);
        }
    }
    let sub = induced_subgraph(g, g.vertices().filter(|&v| !gone[v]))?;
    let cap = sub
        .original
        .iter()
        .map(|&v| caps[v].map_or(Cap::Exempt, |c| Cap::Limit(c as usize)))
        .collect();
    let w = sub.original.iter().map(|&v| weights[v]).collect();
    let prob = FDepProblem::new(sub.graph.clone(), cap, w)?;
    let mut out = sub.lift(f_dependent_delete(&prob)?);
    out.extend(forced);
    out.sort_unstable();
    Ok(out)
}

/// Single f-dependent call on `G[V \ N[p]]` with caps `t - d_{N(p)}(v) - 1`,
/// valid when no neighbor of `p` has degree `>= t`.
fn fast_path(inst: &Instance) -> Result<DeletionSet> {
    let g = inst.graph();
    let p = inst.p();
    let t = g.degree(p) as i64;
    let mut caps = vec![None; g.n()];
    let mut closed_p = g.neighbors(p).to_vec();
    closed_p.push(p);
    for v in g.vertices() {
        if v != p && !g.has_edge(p, v) {
            let into_np = g.neighbors(v).iter().filter(|&&u| g.has_edge(p, u)).count() as i64;
            caps[v] = Some(t - into_np - 1);
        }
    }
    let s = capped_deletion(inst, &closed_p, &caps, inst.weights())?;
    DeletionSet::new(inst, s)
}

/// `O(log n)`-style approximation for MDD(max) when `|L|` is small.
///
/// For every `K ⊆ L` the neighbors `N(p) \ K` become undeletable, `K` is
/// deleted up front and every other vertex except `p` is capped at
/// `d(p) - |K| - 1`. Branches that would need an undeletable vertex are
/// dropped. The lightest candidate wins (then fewer vertices, then
/// lexicographic); `V \ {p}` is always a candidate.
///
/// When no neighbor of `p` reaches degree `d(p)` the cheaper single-call
/// path is used instead.
pub fn mdd_max_logn(inst: &Instance, cap_on_l: usize) -> Result<LognOutcome> {
    let l = build_l(inst)?;
    if l.len() > cap_on_l {
        return Err(Error::Budget {
            what: "|L| for subset enumeration",
            limit: cap_on_l as u64,
        });
    }
    let fallback = inst.delete_all();
    let nb = classify_neighborhood(inst)?;
    if nb.case != NeighborhoodCase::General {
        if let Ok(s) = fast_path(inst) {
            if !is_feasible(inst, &s) {
                return Err(Error::Internal(format!("fast path produced infeasible {s}")));
            }
            let fell_back = fallback.cmp_quality(&s).is_lt();
            return Ok(LognOutcome {
                solution: if fell_back { fallback } else { s },
                path: LognPath::FastPath,
                l,
                chosen_k: (!fell_back).then(Vec::new),
                branches: 1,
                feasible_branches: 1,
            });
        }
    }

    let g = inst.graph();
    let p = inst.p();
    let dp = g.degree(p) as i64;
    let mut best: Option<(DeletionSet, Vec<Vertex>)> = None;
    let mut feasible_branches = 0;
    let branches = 1usize << l.len();
    for mask in 0..branches {
        let k: Vec<Vertex> = l
            .members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let mut weights = inst.weights().to_vec();
        weights[p] = Weight::Infinite;
        for &x in g.neighbors(p) {
            if !k.contains(&x) {
                weights[x] = Weight::Infinite;
            }
        }
        let cap = dp - k.len() as i64 - 1;
        let caps: Vec<Option<i64>> = g.vertices().map(|v| (v != p).then_some(cap)).collect();
        let Ok(mut s) = capped_deletion(inst, &k, &caps, &weights) else {
            continue;
        };
        feasible_branches += 1;
        s.extend(k.iter().copied());
        let cand = DeletionSet::new(inst, s)?;
        if !is_feasible(inst, &cand) {
            return Err(Error::Internal(format!("branch K = {k:?} produced infeasible {cand}")));
        }
        if best.as_ref().is_none_or(|(b, _)| cand.cmp_quality(b).is_lt()) {
            best = Some((cand, k));
        }
    }
    let (solution, chosen_k) = match best {
        Some((s, k)) if !fallback.cmp_quality(&s).is_lt() => (s, Some(k)),
        _ => (fallback, None),
    };
    Ok(LognOutcome {
        solution,
        path: LognPath::Subsets,
        l,
        chosen_k,
        branches,
        feasible_branches,
    })
}

/// Lower bound on any MDD(max) solution of a `k`-regular graph on `n`
/// vertices that keeps `f` neighbors of `p`:
/// `((k - f + 1) n - 1) / (2k - f + 1)`, which is at least `(n - 1) / (k + 1)`.
pub fn kreg_lower_bound(n: u64, k: u64, f: u64) -> Result<Ratio<u64>> {
    if n < 1 || f > k {
        return Err(Error::precondition(format!(
            "lower bound needs n >= 1 and 0 <= f <= k (n={n}, k={k}, f={f})"
        )));
    }
    Ok(Ratio::new((k - f + 1) * n - 1, 2 * k - f + 1))
}
