//! Problem instances, candidate deletion sets, and the feasibility semantics
//! every solver is checked against.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{complement, Graph, Vertex};
use crate::weight::Weight;

/// Whether `p` must end up as the unique minimum- or maximum-degree vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Min,
    Max,
}

impl Objective {
    pub fn flipped(self) -> Objective {
        match self {
            Objective::Min => Objective::Max,
            Objective::Max => Objective::Min,
        }
    }

    /// Does a remaining vertex of degree `other` respect `p` having degree `dp`?
    #[inline]
    pub fn separates(self, dp: usize, other: usize) -> bool {
        match self {
            Objective::Min => dp < other,
            Objective::Max => dp > other,
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Min => "min",
            Objective::Max => "max",
        })
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(Objective::Min),
            "max" => Ok(Objective::Max),
            other => Err(format!("unknown objective {other:?} (expected min or max)")),
        }
    }
}

/// A graph with a distinguished vertex `p`, vertex weights and an objective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    p: Vertex,
    weights: Vec<Weight>,
    objective: Objective,
}

impl Instance {
    /// Unit-weight instance.
    pub fn new(graph: Graph, p: Vertex, objective: Objective) -> Result<Self> {
        graph.check_vertex(p)?;
        let weights = vec![Weight::ONE; graph.n()];
        Ok(Instance {
            graph,
            p,
            weights,
            objective,
        })
    }

    /// Replaces the weights. The weight of `p` is carried along but never used.
    pub fn with_weights(mut self, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != self.graph.n() {
            return Err(Error::precondition(format!(
                "{} weights for {} vertices",
                weights.len(),
                self.graph.n()
            )));
        }
        if let Some(v) = (0..weights.len()).find(|&v| v != self.p && weights[v] == Weight::ZERO) {
            return Err(Error::precondition(format!("vertex {v} has weight 0")));
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn p(&self) -> Vertex {
        self.p
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, v: Vertex) -> Weight {
        self.weights[v]
    }

    /// True when every vertex other than `p` has weight 1.
    pub fn has_unit_weights(&self) -> bool {
        self.graph
            .vertices()
            .all(|v| v == self.p || self.weights[v] == Weight::ONE)
    }

    /// `V \ {p}` in increasing order.
    pub fn others(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.graph.vertices().filter(move |&v| v != self.p)
    }

    pub fn weight_of(&self, vertices: &[Vertex]) -> Weight {
        vertices.iter().map(|&v| self.weights[v]).sum()
    }

    /// The always-feasible set `V \ {p}`.
    pub fn delete_all(&self) -> DeletionSet {
        let vertices: Vec<_> = self.others().collect();
        DeletionSet {
            total_weight: self.weight_of(&vertices),
            vertices,
        }
    }

    /// Same instance on the complement graph with the objective flipped.
    pub fn dualize(&self) -> Instance {
        Instance {
            graph: complement(&self.graph),
            p: self.p,
            weights: self.weights.clone(),
            objective: self.objective.flipped(),
        }
    }
}

/// A candidate solution `S ⊆ V \ {p}` with its weight under the owning instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeletionSet {
    vertices: Vec<Vertex>,
    total_weight: Weight,
}

impl DeletionSet {
    pub fn new(inst: &Instance, vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        for &v in &vertices {
            inst.graph.check_vertex(v)?;
            if v == inst.p {
                return Err(Error::precondition(format!("deletion set contains p = {v}")));
            }
        }
        Ok(DeletionSet {
            total_weight: inst.weight_of(&vertices),
            vertices,
        })
    }

    pub fn empty() -> Self {
        DeletionSet {
            vertices: Vec::new(),
            total_weight: Weight::ZERO,
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    pub fn total_weight(&self) -> Weight {
        self.total_weight
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Solution preference order: weight, then cardinality, then the
    /// lexicographically smaller sorted vertex list.
    pub fn cmp_quality(&self, other: &DeletionSet) -> Ordering {
        self.total_weight
            .cmp(&other.total_weight)
            .then(self.vertices.len().cmp(&other.vertices.len()))
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl fmt::Display for DeletionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}} (weight {})", self.total_weight)
    }
}

/// Is `p` the unique minimum (resp. maximum) degree vertex of `G[V \ S]`?
///
/// Ties are infeasible. When `p` is the only vertex left the answer is `true`.
pub fn is_feasible(inst: &Instance, s: &DeletionSet) -> bool {
    is_feasible_set(inst, s.vertices())
}

/// [`is_feasible`] on a raw vertex list. A list containing `p` is infeasible.
pub fn is_feasible_set(inst: &Instance, s: &[Vertex]) -> bool {
    if s.contains(&inst.p) {
        return false;
    }
    Probe::new(inst).check(s)
}

/// Degree of `v` in `G[V \ s]` (`v` itself is assumed to survive).
pub fn remaining_degree(g: &Graph, v: Vertex, s: &[Vertex]) -> usize {
    g.neighbors(v).iter().filter(|u| !s.contains(u)).count()
}

/// Reusable scratch space for many feasibility checks on the same instance.
/// Each check costs `O(n + sum of degrees of the deleted vertices)`.
pub(crate) struct Probe<'a> {
    graph: &'a Graph,
    p: Vertex,
    objective: Objective,
    removed: Vec<bool>,
    degree: Vec<usize>,
}

impl<'a> Probe<'a> {
    pub(crate) fn new(inst: &'a Instance) -> Self {
        let graph = inst.graph();
        Probe {
            graph,
            p: inst.p,
            objective: inst.objective,
            removed: vec![false; graph.n()],
            degree: graph.vertices().map(|v| graph.degree(v)).collect(),
        }
    }

    pub(crate) fn check(&mut self, set: &[Vertex]) -> bool {
        for &s in set {
            self.removed[s] = true;
            for &u in self.graph.neighbors(s) {
                self.degree[u] -= 1;
            }
        }
        let dp = self.degree[self.p];
        let ok = (0..self.graph.n())
            .filter(|&v| v != self.p && !self.removed[v])
            .all(|v| self.objective.separates(dp, self.degree[v]));
        for &s in set {
            self.removed[s] = false;
            for &u in self.graph.neighbors(s) {
                self.degree[u] += 1;
            }
        }
        ok
    }
}

/// Which special case of the neighborhood structure around `p` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NeighborhoodCase {
    /// `D ∩ N[p] = ∅`.
    DisjointD,
    /// `Y ∩ N[p] = ∅` but `D ∩ N[p] ≠ ∅`.
    DisjointY,
    /// Some neighbor of `p` already has degree at least `d(p)`.
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    /// Vertices other than `p` with degree at least `d(p)`.
    pub y: Vec<Vertex>,
    /// `N[Y]`.
    pub d: Vec<Vertex>,
    pub case: NeighborhoodCase,
}

/// Computes `Y`, `D = N[Y]` and the case tag for an MDD(max) instance.
pub fn classify_neighborhood(inst: &Instance) -> Result<Neighborhood> {
    if inst.objective != Objective::Max {
        return Err(Error::precondition("neighborhood classification needs objective max"));
    }
    let g = inst.graph();
    let p = inst.p;
    let t = g.degree(p);
    let y: Vec<Vertex> = inst.others().filter(|&v| g.degree(v) >= t).collect();
    let mut in_d = vec![false; g.n()];
    for &v in &y {
        in_d[v] = true;
        for &u in g.neighbors(v) {
            in_d[u] = true;
        }
    }
    let d: Vec<Vertex> = g.vertices().filter(|&v| in_d[v]).collect();
    let in_closed_p = |v: Vertex| v == p || g.has_edge(p, v);
    let case = if !d.iter().any(|&v| in_closed_p(v)) {
        NeighborhoodCase::DisjointD
    } else if !y.iter().any(|&v| in_closed_p(v)) {
        NeighborhoodCase::DisjointY
    } else {
        NeighborhoodCase::General
    };
    Ok(Neighborhood { y, d, case })
}
