//! Hardness constructions from Minimum Dominating Set and Set Cover into
//! MDD(min)/MDD(max), with maps carrying solutions in both directions.
//!
//! | construction | source | objective | `opt(target) - opt(source)` |
//! |---|---|---|---|
//! | [`mindom_to_mddmin`] | graph | min | 0 |
//! | [`setcover_to_mddmin_bip`] | set system | min | 0 |
//! | [`setcover_to_mddmax_bip`] | set system | max | 0 |
//! | [`mindom_cubic_to_mddmax_cubic`] | cubic graph | max | 2 |

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{is_feasible, DeletionSet, Instance, Objective};

/// A universe `{0, .., r-1}` and a family of subsets whose union is the universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystem {
    universe: usize,
    family: Vec<Vec<usize>>,
}

impl SetSystem {
    /// Sorts and dedups each set. Rejects an empty family, out-of-range
    /// elements and families that do not cover the universe.
    pub fn new(universe: usize, family: Vec<Vec<usize>>) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::precondition("set family is empty"));
        }
        let mut covered = vec![false; universe];
        let mut family = family;
        for (j, set) in family.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            for &x in set.iter() {
                if x >= universe {
                    return Err(Error::precondition(format!(
                        "set {j} contains {x}, outside a universe of size {universe}"
                    )));
                }
                covered[x] = true;
            }
        }
        if let Some(x) = covered.iter().position(|&c| !c) {
            return Err(Error::precondition(format!("element {x} is in no set, so no cover exists")));
        }
        Ok(SetSystem { universe, family })
    }

    /// `r`, the universe size.
    pub fn universe_size(&self) -> usize {
        self.universe
    }

    /// `t`, the number of sets.
    pub fn num_sets(&self) -> usize {
        self.family.len()
    }

    pub fn family(&self) -> &[Vec<usize>] {
        &self.family
    }

    pub fn set(&self, j: usize) -> &[usize] {
        &self.family[j]
    }

    pub fn contains(&self, j: usize, x: usize) -> bool {
        self.family[j].binary_search(&x).is_ok()
    }

    /// Number of sets containing `x`.
    pub fn occurrences(&self, x: usize) -> usize {
        self.family.iter().filter(|s| s.binary_search(&x).is_ok()).count()
    }

    /// Lowest index of a set containing `x`.
    pub fn first_set_with(&self, x: usize) -> Option<usize> {
        self.family.iter().position(|s| s.binary_search(&x).is_ok())
    }

    /// Do the sets with the given indices cover the universe?
    pub fn is_cover(&self, sets: &[usize]) -> bool {
        let mut covered = vec![false; self.universe];
        for &j in sets {
            let Some(set) = self.family.get(j) else { return false };
            for &x in set {
                covered[x] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }
}

/// What a vertex of a constructed instance stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role", content = "index", rename_all = "lowercase")]
pub enum Role {
    P,
    /// A vertex of the source graph.
    Original(Vertex),
    /// Element `x_i` of the universe.
    U(usize),
    /// Set `F_j` of the family.
    F(usize),
    C(usize),
    D(usize),
    /// Clique vertex of the padding clique.
    T(usize),
    /// Pendant vertex raising the degree of the given vertex.
    I(Vertex),
    /// Vertex of the 6-vertex cubic gadget, by its letter.
    Gadget(char),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::P => write!(f, "p"),
            Role::Original(v) => write!(f, "original:{v}"),
            Role::U(i) => write!(f, "U:{i}"),
            Role::F(j) => write!(f, "F:{j}"),
            Role::C(k) => write!(f, "C:{k}"),
            Role::D(k) => write!(f, "D:{k}"),
            Role::T(k) => write!(f, "T:{k}"),
            Role::I(v) => write!(f, "I:{v}"),
            Role::Gadget(c) => write!(f, "gadget:{c}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    MindomToMddmin,
    SetcoverToMddminBip,
    SetcoverToMddmaxBip,
    CubicMindomToMddmax,
}

impl ReductionKind {
    /// Additive gap between the target and source optima.
    pub fn offset(self) -> usize {
        match self {
            ReductionKind::CubicMindomToMddmax => 2,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Graph(Graph),
    SetSystem(SetSystem),
}

/// A constructed instance with the provenance of each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub kind: ReductionKind,
    pub instance: Instance,
    /// `roles[v]` for every vertex of the instance.
    pub roles: Vec<Role>,
    pub source: Source,
}

impl ReductionArtifact {
    fn new(kind: ReductionKind, graph: Graph, p: Vertex, objective: Objective, roles: Vec<Role>, source: Source) -> Result<Self> {
        debug_assert_eq!(graph.n(), roles.len());
        let labels = roles.iter().map(Role::to_string).collect();
        let instance = Instance::new(graph.with_labels(labels)?, p, objective)?;
        Ok(ReductionArtifact {
            kind,
            instance,
            roles,
            source,
        })
    }

    pub fn role(&self, v: Vertex) -> Role {
        self.roles[v]
    }

    /// Vertices with a role matching `pred`, in increasing order.
    pub fn vertices_where(&self, pred: impl Fn(Role) -> bool) -> Vec<Vertex> {
        (0..self.roles.len()).filter(|&v| pred(self.roles[v])).collect()
    }

    fn vertex_of(&self, role: Role) -> Vertex {
        self.roles
            .iter()
            .position(|&r| r == role)
            .expect("role is present in the construction")
    }

    pub fn source_graph(&self) -> Result<&Graph> {
        match &self.source {
            Source::Graph(g) => Ok(g),
            Source::SetSystem(_) => Err(Error::precondition("reduction source is a set system")),
        }
    }

    pub fn source_system(&self) -> Result<&SetSystem> {
        match &self.source {
            Source::SetSystem(sys) => Ok(sys),
            Source::Graph(_) => Err(Error::precondition("reduction source is a graph")),
        }
    }

    /// Is `sol` a valid source solution (dominating set or set cover indices)?
    pub fn is_source_solution(&self, sol: &[usize]) -> bool {
        match &self.source {
            Source::Graph(g) => sol.iter().all(|&v| v < g.n()) && g.is_dominating(sol),
            Source::SetSystem(sys) => sys.is_cover(sol),
        }
    }

    /// Maps a dominating set / set cover to a feasible deletion set of size
    /// `|sol| + offset`.
    pub fn forward(&self, sol: &[usize]) -> Result<DeletionSet> {
        if !self.is_source_solution(sol) {
            return Err(Error::precondition("source solution is not a dominating set / cover"));
        }
        let s: Vec<Vertex> = match self.kind {
            ReductionKind::MindomToMddmin => sol.iter().map(|&v| self.vertex_of(Role::Original(v))).collect(),
            ReductionKind::SetcoverToMddminBip | ReductionKind::SetcoverToMddmaxBip => {
                sol.iter().map(|&j| self.vertex_of(Role::F(j))).collect()
            }
            ReductionKind::CubicMindomToMddmax => sol
                .iter()
                .map(|&v| self.vertex_of(Role::Original(v)))
                .chain([self.vertex_of(Role::Gadget('d')), self.vertex_of(Role::Gadget('e'))])
                .collect(),
        };
        let s = DeletionSet::new(&self.instance, s)?;
        if !is_feasible(&self.instance, &s) {
            return Err(Error::Internal(format!("forward image {s} is infeasible")));
        }
        Ok(s)
    }

    /// Maps a feasible deletion set to a dominating set / set cover of size
    /// at most `|s| - offset`, sorted.
    pub fn backward(&self, s: &DeletionSet) -> Result<Vec<usize>> {
        if !is_feasible(&self.instance, s) {
            return Err(Error::precondition("deletion set is infeasible for the constructed instance"));
        }
        let mut out: Vec<usize> = match self.kind {
            ReductionKind::MindomToMddmin | ReductionKind::CubicMindomToMddmax => s
                .vertices()
                .iter()
                .filter_map(|&v| match self.roles[v] {
                    Role::Original(u) => Some(u),
                    _ => None,
                })
                .collect(),
            ReductionKind::SetcoverToMddminBip => {
                let sys = self.source_system()?;
                s.vertices()
                    .iter()
                    .filter_map(|&v| match self.roles[v] {
                        Role::F(j) => Some(j),
                        Role::U(i) => sys.first_set_with(i),
                        _ => None,
                    })
                    .collect()
            }
            ReductionKind::SetcoverToMddmaxBip => {
                let sys = self.source_system()?;
                s.vertices()
                    .iter()
                    .filter_map(|&v| match self.roles[v] {
                        Role::F(j) => Some(j),
                        Role::U(i) => sys.first_set_with(i),
                        Role::I(owner) => match self.roles[owner] {
                            Role::U(i) => sys.first_set_with(i),
                            _ => None,
                        },
                        _ => None,
                    })
                    .collect()
            }
        };
        out.sort_unstable();
        out.dedup();
        if !self.is_source_solution(&out) {
            return Err(Error::Internal(format!("backward image {out:?} of {s} is not a solution")));
        }
        if out.len() + self.kind.offset() > s.len() {
            return Err(Error::Internal(format!("backward image {out:?} is larger than {s}")));
        }
        Ok(out)
    }
}

/// Adds edges from each `(v, count)` to `count` distinct vertices of
/// `targets`, cycling through `targets` in order.
fn pad_round_robin(edges: &mut Vec<(Vertex, Vertex)>, demands: impl IntoIterator<Item = (Vertex, usize)>, targets: &[Vertex]) {
    let mut cursor = 0;
    for (v, count) in demands {
        debug_assert!(count <= targets.len());
        for _ in 0..count {
            edges.push((v, targets[cursor]));
            cursor = (cursor + 1) % targets.len();
        }
    }
}

/// MinDom on `g` to MDD(min): complement of `g`, plus `p` joined to every
/// original vertex, plus a clique `T` on `2n + 2` vertices, plus `d_g(v)`
/// edges from each `v` into `T`. Every original vertex and `p` get degree `n`.
///
/// Layout: original vertices `0..n`, `p = n`, then `T`.
pub fn mindom_to_mddmin(g: &Graph) -> Result<ReductionArtifact> {
    let n = g.n();
    if n == 0 {
        return Err(Error::precondition("source graph is empty"));
    }
    let p = n;
    let t: Vec<Vertex> = (n + 1..n + 1 + 2 * n + 2).collect();
    let mut edges: Vec<(Vertex, Vertex)> = crate::graph::complement(g).edges().collect();
    edges.extend((0..n).map(|v| (v, p)));
    for (i, &a) in t.iter().enumerate() {
        for &b in &t[i + 1..] {
            edges.push((a, b));
        }
    }
    pad_round_robin(&mut edges, (0..n).map(|v| (v, g.degree(v))), &t);
    let h = Graph::from_edges(3 * n + 3, edges)?;

    let mut roles: Vec<Role> = (0..n).map(Role::Original).collect();
    roles.push(Role::P);
    roles.extend((0..t.len()).map(Role::T));
    ReductionArtifact::new(
        ReductionKind::MindomToMddmin,
        h,
        p,
        Objective::Min,
        roles,
        Source::Graph(g.clone()),
    )
}

/// Backward map of [`mindom_to_mddmin`]: the original vertices of `s`.
pub fn mddmin_solution_to_domset(art: &ReductionArtifact, s: &DeletionSet) -> Result<Vec<Vertex>> {
    if art.kind != ReductionKind::MindomToMddmin {
        return Err(Error::precondition("artifact is not a MinDom to MDD(min) construction"));
    }
    art.backward(s)
}

/// Set Cover to bipartite MDD(min).
///
/// Layout: elements `a_i = i`, sets `b_j = r + j`, then `C` and `D` (`t`
/// each) and finally `p`. `p` is joined to every set vertex, `a_i` to `b_j`
/// iff `x_i ∉ F_j`, `C × D` is complete, and padding edges into `D` (from
/// set vertices) and `C` (from element vertices) raise those degrees to `t`.
pub fn setcover_to_mddmin_bip(sys: &SetSystem) -> Result<ReductionArtifact> {
    let (r, t) = (sys.universe_size(), sys.num_sets());
    if r == 0 {
        return Err(Error::Inapplicable("universe is empty".into()));
    }
    let a = |i: usize| i;
    let b = |j: usize| r + j;
    let c: Vec<Vertex> = (r + t..r + 2 * t).collect();
    let d: Vec<Vertex> = (r + 2 * t..r + 3 * t).collect();
    let p = r + 3 * t;

    let mut edges = Vec::new();
    for j in 0..t {
        edges.push((p, b(j)));
        for i in 0..r {
            if !sys.contains(j, i) {
                edges.push((a(i), b(j)));
            }
        }
    }
    for &x in &c {
        for &y in &d {
            edges.push((x, y));
        }
    }
    let set_deficit = |j: usize| t.saturating_sub(1 + (0..r).filter(|&i| !sys.contains(j, i)).count());
    pad_round_robin(&mut edges, (0..t).map(|j| (b(j), set_deficit(j))), &d);
    pad_round_robin(&mut edges, (0..r).map(|i| (a(i), sys.occurrences(i))), &c);
    let g = Graph::from_edges(p + 1, edges)?;
    if g.bipartition().is_none() {
        return Err(Error::Internal("bipartite construction has an odd cycle".into()));
    }

    let mut roles: Vec<Role> = (0..r).map(Role::U).collect();
    roles.extend((0..t).map(Role::F));
    roles.extend((0..t).map(Role::C));
    roles.extend((0..t).map(Role::D));
    roles.push(Role::P);
    ReductionArtifact::new(
        ReductionKind::SetcoverToMddminBip,
        g,
        p,
        Objective::Min,
        roles,
        Source::SetSystem(sys.clone()),
    )
}

/// Set Cover to bipartite MDD(max).
///
/// Layout: elements `a_i = i`, sets `b_j = r + j`, `p = r + t`, then the
/// pendant vertices. Element–set incidence edges, `p` joined to every
/// element vertex, and pendants bringing `p` and every element vertex to
/// degree exactly `t`.
///
/// Needs every element in at most `t - 1` sets, `r <= t`, and every set of
/// size at most `t - 1`.
pub fn setcover_to_mddmax_bip(sys: &SetSystem) -> Result<ReductionArtifact> {
    let (r, t) = (sys.universe_size(), sys.num_sets());
    if r > t {
        return Err(Error::Inapplicable(format!("universe size {r} exceeds family size {t}")));
    }
    if let Some(x) = (0..r).find(|&x| sys.occurrences(x) + 1 > t) {
        return Err(Error::Inapplicable(format!("element {x} is in {} of {t} sets", sys.occurrences(x))));
    }
    if let Some(j) = (0..t).find(|&j| sys.set(j).len() + 1 > t) {
        return Err(Error::Inapplicable(format!("set {j} has {} elements, need at most {}", sys.set(j).len(), t - 1)));
    }
    let p = r + t;
    let mut edges = Vec::new();
    let mut roles: Vec<Role> = (0..r).map(Role::U).collect();
    roles.extend((0..t).map(Role::F));
    roles.push(Role::P);
    for (j, set) in sys.family().iter().enumerate() {
        for &i in set {
            edges.push((i, r + j));
        }
    }
    edges.extend((0..r).map(|i| (p, i)));
    let mut next = p + 1;
    let demands = std::iter::once((p, t - r)).chain((0..r).map(|i| (i, t - 1 - sys.occurrences(i))));
    for (owner, count) in demands {
        for _ in 0..count {
            edges.push((owner, next));
            roles.push(Role::I(owner));
            next += 1;
        }
    }
    let g = Graph::from_edges(next, edges)?;
    if g.bipartition().is_none() {
        return Err(Error::Internal("bipartite construction has an odd cycle".into()));
    }
    ReductionArtifact::new(
        ReductionKind::SetcoverToMddmaxBip,
        g,
        p,
        Objective::Max,
        roles,
        Source::SetSystem(sys.clone()),
    )
}

/// The 6-vertex gadget: `K_{3,3}` with parts `{p, d, e}` and `{a, b, c}`,
/// in vertex order `p, d, e, a, b, c`. Its only optimal MDD(max) solution
/// for `p` is `{d, e}`.
pub fn cubic_gadget() -> Graph {
    Graph::complete_bipartite(3, 3)
}

/// MinDom on a cubic graph to MDD(max) on a cubic graph: `g` plus a
/// disjoint copy of [`cubic_gadget`] holding `p`. Original vertices keep
/// their ids; the gadget occupies `n..n+6`.
pub fn mindom_cubic_to_mddmax_cubic(g: &Graph) -> Result<ReductionArtifact> {
    if g.regular_degree() != Some(3) {
        return Err(Error::precondition("source graph is not cubic"));
    }
    let n = g.n();
    let h = g.disjoint_union(&cubic_gadget());
    let mut roles: Vec<Role> = (0..n).map(Role::Original).collect();
    roles.push(Role::P);
    roles.extend(['d', 'e', 'a', 'b', 'c'].map(Role::Gadget));
    ReductionArtifact::new(
        ReductionKind::CubicMindomToMddmax,
        h,
        n,
        Objective::Max,
        roles,
        Source::Graph(g.clone()),
    )
}
