//! MDD(max) on unweighted cubic graphs.
//!
//! A minimal solution leaves `p` with degree 0, 2 or 3 (degree 1 is never
//! feasible). Degree 0 means deleting everything else. Degree 3 solutions
//! are exactly the dominating sets of a gadget graph `G'` that avoid the
//! gadget vertices. Degree 2 solutions delete one neighbor `x` of `p`, all
//! other neighbors of the two survivors `y, z`, and a dissociation set of
//! what is left. One candidate is built per case and the smallest wins.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph, Subgraph, Vertex};
use crate::instance::{is_feasible, DeletionSet, Instance, Objective};
use crate::subroutines::{dissociation_delete, dominating_set_approx};
use crate::weight::Weight;

/// The proxy vertices standing in for one neighbor `source` of `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetGroup {
    pub source: Vertex,
    /// Ids in `G'` of the one or two proxies.
    pub members: Vec<Vertex>,
    /// Ids in `G'` of the neighbors of `source` outside `N[p]`.
    pub attach: Vec<Vertex>,
}

/// `G'`: `G - N[p]` plus, for each `x ∈ N(p)`, proxies adjacent to exactly
/// the outside neighbors of `x` (two proxies when there are two such
/// neighbors, one otherwise).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationGadget {
    #[serde(skip)]
    pub gprime: Graph,
    /// `base[i]` is the instance vertex behind `G'` vertex `i`, for the
    /// `base.len()` non-proxy vertices; proxies come after them.
    pub base: Vec<Vertex>,
    pub groups: Vec<GadgetGroup>,
}

impl DominationGadget {
    pub fn is_proxy(&self, v: Vertex) -> bool {
        v >= self.base.len()
    }

    /// All proxy ids, i.e. the set `X`.
    pub fn proxies(&self) -> Vec<Vertex> {
        (self.base.len()..self.gprime.n()).collect()
    }

    /// Neighbor of `p` that proxy `v` stands in for.
    pub fn origin(&self, v: Vertex) -> Option<Vertex> {
        self.groups
            .iter()
            .find(|grp| grp.members.contains(&v))
            .map(|grp| grp.source)
    }

    /// Maps proxy-free `G'` vertices back to instance ids.
    pub fn to_instance(&self, vs: &[Vertex]) -> Result<Vec<Vertex>> {
        let mut out = vs
            .iter()
            .map(|&v| {
                self.base
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::precondition(format!("gadget vertex {v} is a proxy")))
            })
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out)
    }
}

fn require_cubic_max(inst: &Instance) -> Result<()> {
    if inst.objective() != Objective::Max {
        return Err(Error::precondition("cubic algorithm handles objective max only"));
    }
    if inst.graph().regular_degree() != Some(3) {
        return Err(Error::precondition("graph is not cubic"));
    }
    Ok(())
}

/// Builds `G'`. Inapplicable when some neighbor of `p` has no neighbor
/// outside `N[p]`, since that neighbor would keep degree 3 alongside `p`.
pub fn build_domination_gadget(inst: &Instance) -> Result<DominationGadget> {
    require_cubic_max(inst)?;
    let g = inst.graph();
    let p = inst.p();
    let in_closed_p = |v: Vertex| v == p || g.has_edge(p, v);
    let base: Vec<Vertex> = g.vertices().filter(|&v| !in_closed_p(v)).collect();
    let sub = induced_subgraph(g, base.iter().copied())?;

    let mut edges: Vec<(Vertex, Vertex)> = sub.graph.edges().collect();
    let mut groups = Vec::new();
    let mut next_id = base.len();
    for &x in g.neighbors(p) {
        let attach: Vec<Vertex> = g
            .neighbors(x)
            .iter()
            .filter(|&&u| !in_closed_p(u))
            .map(|&u| sub.from_original(u).expect("outside vertex is in G'"))
            .collect();
        if attach.is_empty() {
            return Err(Error::Inapplicable(format!(
                "neighbor {x} of p has no neighbor outside N[p]"
            )));
        }
        let copies = if attach.len() >= 2 { 2 } else { 1 };
        let members: Vec<Vertex> = (next_id..next_id + copies).collect();
        next_id += copies;
        for &m in &members {
            for &a in &attach {
                edges.push((a, m));
            }
        }
        groups.push(GadgetGroup { source: x, members, attach });
    }
    let gprime = Graph::from_edges(next_id, edges)?;
    Ok(DominationGadget { gprime, base, groups })
}

/// Replaces proxies in a dominating set of `G'` by the same number (or
/// fewer) of their attachment vertices, preferring ones not yet chosen. The
/// result still dominates `G'`, avoids `X` and is no larger.
pub fn normalize_dominating_set(gadget: &DominationGadget, d_in: &[Vertex]) -> Result<Vec<Vertex>> {
    let g = &gadget.gprime;
    for &v in d_in {
        g.check_vertex(v)?;
    }
    if !g.is_dominating(d_in) {
        return Err(Error::precondition("input does not dominate G'"));
    }
    let mut chosen = vec![false; g.n()];
    for &v in d_in {
        chosen[v] = true;
    }
    for grp in &gadget.groups {
        let hits = grp.members.iter().filter(|&&m| chosen[m]).count();
        if hits == 0 {
            continue;
        }
        for &m in &grp.members {
            chosen[m] = false;
        }
        let fresh: Vec<Vertex> = grp.attach.iter().copied().filter(|&a| !chosen[a]).take(hits).collect();
        for a in fresh {
            chosen[a] = true;
        }
    }
    let out: Vec<Vertex> = g.vertices().filter(|&v| chosen[v]).collect();
    if !g.is_dominating(&out) {
        return Err(Error::Internal("normalized set no longer dominates G'".into()));
    }
    Ok(out)
}

/// `G* = G[V \ (N[{y, z}] ∪ {x})]` for the other two neighbors `y, z` of
/// `p`, and the deletions every degree-2 solution through `x` must make.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GStar {
    pub sub: Subgraph,
    /// `{x} ∪ (N({y, z}) \ {p, y, z})`, in instance ids.
    pub fixed: Vec<Vertex>,
    pub survivors: (Vertex, Vertex),
}

pub fn build_gstar(inst: &Instance, x: Vertex) -> Result<GStar> {
    require_cubic_max(inst)?;
    let g = inst.graph();
    let p = inst.p();
    if !g.has_edge(p, x) {
        return Err(Error::precondition(format!("{x} is not a neighbor of p")));
    }
    let (y, z) = match g.neighbors(p).iter().copied().filter(|&u| u != x).collect::<Vec<_>>()[..] {
        [y, z] => (y, z),
        _ => return Err(Error::Internal("cubic p must have three neighbors".into())),
    };
    if g.has_edge(y, z) {
        return Err(Error::Inapplicable(format!("survivors {y} and {z} are adjacent")));
    }
    let mut removed = vec![false; g.n()];
    let mut fixed = vec![x];
    removed[x] = true;
    for v in [y, z] {
        removed[v] = true;
        for &u in g.neighbors(v) {
            removed[u] = true;
            if u != p && u != y && u != z {
                fixed.push(u);
            }
        }
    }
    fixed.sort_unstable();
    fixed.dedup();
    let sub = induced_subgraph(g, g.vertices().filter(|&v| !removed[v]))?;
    Ok(GStar {
        sub,
        fixed,
        survivors: (y, z),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum CubicCase {
    /// `p` keeps degree 3.
    Dominating,
    /// `p` keeps degree 2; `x` is the deleted neighbor.
    Dissociation { x: Vertex },
    /// `p` keeps degree 0.
    DeleteAll,
}

impl std::fmt::Display for CubicCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CubicCase::Dominating => write!(f, "degree 3 (dominating set)"),
            CubicCase::Dissociation { x } => write!(f, "degree 2 (delete neighbor {x})"),
            CubicCase::DeleteAll => write!(f, "degree 0 (delete all)"),
        }
    }
}

impl CubicCase {
    fn rank(self) -> usize {
        match self {
            CubicCase::Dominating => 0,
            CubicCase::Dissociation { .. } => 1,
            CubicCase::DeleteAll => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CubicCandidate {
    pub case: CubicCase,
    pub solution: Option<DeletionSet>,
    /// Why the case did not apply, when it did not.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CubicOutcome {
    pub solution: DeletionSet,
    pub winner: CubicCase,
    pub candidates: Vec<CubicCandidate>,
}

fn skipped(case: CubicCase, e: Error) -> Result<CubicCandidate> {
    match e {
        Error::Inapplicable(msg) => Ok(CubicCandidate {
            case,
            solution: None,
            skipped: Some(msg),
        }),
        other => Err(other),
    }
}

fn degree3_candidate(inst: &Instance) -> Result<DeletionSet> {
    let gadget = build_domination_gadget(inst)?;
    let n = gadget.gprime.n();
    let dom = dominating_set_approx(&gadget.gprime, &[], &vec![Weight::ONE; n])?;
    let normalized = normalize_dominating_set(&gadget, &dom)?;
    DeletionSet::new(inst, gadget.to_instance(&normalized)?)
}

fn degree2_candidate(inst: &Instance, x: Vertex) -> Result<DeletionSet> {
    let gstar = build_gstar(inst, x)?;
    let n = gstar.sub.graph.n();
    let t = dissociation_delete(&gstar.sub.graph, &vec![Weight::ONE; n])?;
    let mut s = gstar.sub.lift(t);
    s.extend(gstar.fixed);
    DeletionSet::new(inst, s)
}

/// Case analysis over the final degree of `p` on an unweighted cubic graph.
pub fn mdd_max_cubic(inst: &Instance) -> Result<CubicOutcome> {
    require_cubic_max(inst)?;
    if !inst.has_unit_weights() {
        return Err(Error::precondition("cubic algorithm needs unit weights"));
    }
    let mut candidates = Vec::new();
    candidates.push(match degree3_candidate(inst) {
        Ok(s) => CubicCandidate {
            case: CubicCase::Dominating,
            solution: Some(s),
            skipped: None,
        },
        Err(e) => skipped(CubicCase::Dominating, e)?,
    });
    for &x in inst.graph().neighbors(inst.p()) {
        let case = CubicCase::Dissociation { x };
        candidates.push(match degree2_candidate(inst, x) {
            Ok(s) => CubicCandidate {
                case,
                solution: Some(s),
                skipped: None,
            },
            Err(e) => skipped(case, e)?,
        });
    }
    candidates.push(CubicCandidate {
        case: CubicCase::DeleteAll,
        solution: Some(inst.delete_all()),
        skipped: None,
    });

    for c in &candidates {
        if let Some(s) = &c.solution {
            if !is_feasible(inst, s) {
                return Err(Error::Internal(format!("{:?} candidate {s} is infeasible", c.case)));
            }
        }
    }
    let (winner, solution) = candidates
        .iter()
        .filter_map(|c| c.solution.as_ref().map(|s| (c.case, s)))
        .min_by(|(ca, sa), (cb, sb)| {
            sa.len()
                .cmp(&sb.len())
                .then(ca.rank().cmp(&cb.rank()))
                .then_with(|| sa.vertices().cmp(sb.vertices()))
        })
        .map(|(c, s)| (c, s.clone()))
        .expect("delete-all candidate is always present");
    Ok(CubicOutcome {
        solution,
        winner,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{brute_force_optimum, OracleConfig};

    fn max_inst(g: Graph, p: Vertex) -> Instance {
        Instance::new(g, p, Objective::Max).unwrap()
    }

    /// K_{3,3} with p = 0, d = 1, e = 2 on one side and a, b, c = 3, 4, 5.
    fn k33() -> Instance {
        max_inst(Graph::complete_bipartite(3, 3), 0)
    }

    #[test]
    fn gadget_on_k33() {
        let gadget = build_domination_gadget(&k33()).unwrap();
        assert_eq!(gadget.base, vec![1, 2]);
        assert_eq!(gadget.proxies().len(), 6);
        for x in gadget.proxies() {
            assert_eq!(gadget.gprime.neighbors(x), &[0, 1]);
        }
        assert_eq!(gadget.gprime.degree(0), 6);
        assert_eq!(gadget.origin(2), Some(3));
        assert!(gadget.gprime.is_dominating(&[0, 1]));
        assert_eq!(gadget.to_instance(&[0, 1]).unwrap(), vec![1, 2]);
    }

    #[test]
    fn gadget_single_outside_neighbor() {
        // Prism: p = 0 has neighbors 1, 2 (its triangle) and 3.
        // 1 has outside neighbor 4 only, 2 has 5 only, 3 has 4 and 5.
        let gadget = build_domination_gadget(&max_inst(Graph::prism(), 0)).unwrap();
        let sizes: Vec<_> = gadget.groups.iter().map(|g| (g.source, g.members.len())).collect();
        assert_eq!(sizes, vec![(1, 1), (2, 1), (3, 2)]);
    }

    #[test]
    fn gadget_inapplicable_on_k4() {
        assert!(matches!(
            build_domination_gadget(&max_inst(Graph::complete(4), 0)),
            Err(Error::Inapplicable(_))
        ));
    }

    #[test]
    fn normalize_examples() {
        let gadget = build_domination_gadget(&k33()).unwrap();
        assert_eq!(normalize_dominating_set(&gadget, &[0, 1]).unwrap(), vec![0, 1]);
        // a¹ is gadget vertex 2 and e is gadget vertex 1.
        assert_eq!(normalize_dominating_set(&gadget, &[1, 2]).unwrap(), vec![0, 1]);
        let all_x = gadget.proxies();
        if gadget.gprime.is_dominating(&all_x) {
            let d = normalize_dominating_set(&gadget, &all_x).unwrap();
            assert!(d.len() <= all_x.len());
            assert!(d.iter().all(|&v| !gadget.is_proxy(v)));
        }
        assert!(normalize_dominating_set(&gadget, &[2]).is_err());
    }

    #[test]
    fn gstar_on_k33() {
        let gs = build_gstar(&k33(), 3).unwrap();
        assert_eq!(gs.fixed, vec![1, 2, 3]);
        assert_eq!(gs.sub.graph.n(), 0);
        assert_eq!(gs.survivors, (4, 5));
    }

    #[test]
    fn gstar_inapplicable_when_survivors_adjacent() {
        // In the prism, p = 0 with x = 3 leaves 1 and 2, which are adjacent.
        assert!(matches!(build_gstar(&max_inst(Graph::prism(), 0), 3), Err(Error::Inapplicable(_))));
        let gs = build_gstar(&max_inst(Graph::prism(), 0), 1).unwrap();
        let inst = max_inst(Graph::prism(), 0);
        let s = degree2_candidate(&inst, 1).unwrap();
        assert!(is_feasible(&inst, &s));
        assert!(gs.fixed.contains(&1));
    }

    #[test]
    fn cubic_examples() {
        let out = mdd_max_cubic(&max_inst(Graph::complete(4), 0)).unwrap();
        assert_eq!(out.winner, CubicCase::DeleteAll);
        assert_eq!(out.solution.len(), 3);

        let out = mdd_max_cubic(&k33()).unwrap();
        assert_eq!(out.winner, CubicCase::Dominating);
        assert_eq!(out.solution.vertices(), &[1, 2]);

        let pet = max_inst(Graph::petersen(), 0);
        let out = mdd_max_cubic(&pet).unwrap();
        let opt = brute_force_optimum(&pet, &OracleConfig::default()).unwrap();
        assert!(is_feasible(&pet, &out.solution));
        assert!(out.solution.len() >= opt.len());
        // Any solution keeping f neighbors of p has at least ((4 - f) 10 - 1) / (7 - f) vertices.
        assert!(out.solution.len() >= 3);
    }

    #[test]
    fn cubic_rejects_bad_input() {
        assert!(mdd_max_cubic(&max_inst(Graph::cycle(5), 0)).is_err());
        let min = Instance::new(Graph::complete(4), 0, Objective::Min).unwrap();
        assert!(mdd_max_cubic(&min).is_err());
    }
}
