//! Degree-constrained deletion subroutines: f-dependent set deletion,
//! dominating set and dissociation vertex deletion.
//!
//! All three are deterministic greedy heuristics (ties go to the lowest
//! vertex id) followed by a pass that puts back deleted vertices whose
//! return breaks no constraint. Outputs are always valid; their weight is
//! not certified against any approximation ratio.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::weight::Weight;

/// Degree cap of a vertex in an f-dependent problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cap {
    Limit(usize),
    /// No constraint on this vertex.
    Exempt,
}

impl Cap {
    fn excess(self, degree: usize) -> usize {
        match self {
            Cap::Limit(f) => degree.saturating_sub(f),
            Cap::Exempt => 0,
        }
    }

    fn allows(self, degree: usize) -> bool {
        self.excess(degree) == 0
    }
}

/// Delete a lightest set so that every remaining capped vertex `v` has
/// degree at most `f(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FDepProblem {
    pub graph: Graph,
    pub cap: Vec<Cap>,
    /// `Weight::Infinite` marks a vertex that may not be deleted.
    pub weights: Vec<Weight>,
}

impl FDepProblem {
    pub fn new(graph: Graph, cap: Vec<Cap>, weights: Vec<Weight>) -> Result<Self> {
        if cap.len() != graph.n() || weights.len() != graph.n() {
            return Err(Error::precondition(format!(
                "{} caps and {} weights for {} vertices",
                cap.len(),
                weights.len(),
                graph.n()
            )));
        }
        Ok(FDepProblem { graph, cap, weights })
    }

    /// Same cap and unit weight on every vertex.
    pub fn uniform(graph: Graph, cap: usize) -> Self {
        let n = graph.n();
        FDepProblem {
            graph,
            cap: vec![Cap::Limit(cap); n],
            weights: vec![Weight::ONE; n],
        }
    }

    /// Largest finite cap, the `α` of the problem.
    pub fn alpha(&self) -> Option<usize> {
        self.cap
            .iter()
            .filter_map(|c| match c {
                Cap::Limit(f) => Some(*f),
                Cap::Exempt => None,
            })
            .max()
    }

    /// Does deleting `s` satisfy every cap without touching an undeletable vertex?
    pub fn is_solution(&self, s: &[Vertex]) -> bool {
        let mut gone = vec![false; self.graph.n()];
        for &v in s {
            if !self.weights[v].is_finite() {
                return false;
            }
            gone[v] = true;
        }
        self.graph.vertices().filter(|&v| !gone[v]).all(|v| {
            let d = self.graph.neighbors(v).iter().filter(|&&u| !gone[u]).count();
            self.cap[v].allows(d)
        })
    }
}

/// Greedy gain-per-weight comparison: is `a` (gain, weight) strictly better than `b`?
fn better_ratio(gain_a: usize, w_a: u64, gain_b: usize, w_b: u64) -> bool {
    (gain_a as u128 * w_b as u128).cmp(&(gain_b as u128 * w_a as u128)) == Ordering::Greater
}

/// Vertices ordered for the put-back pass: heaviest first, then by id.
fn putback_order(deleted: &[Vertex], weights: &[Weight]) -> Vec<Vertex> {
    let mut order = deleted.to_vec();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    order
}

/// Greedy f-dependent set deletion.
///
/// Repeatedly deletes the deletable vertex that removes the most total
/// cap excess per unit weight. Fails with [`Error::Infeasible`] when some
/// capped vertex is over its cap and neither it nor any remaining neighbor
/// is deletable. The returned set is sorted.
pub fn f_dependent_delete(prob: &FDepProblem) -> Result<Vec<Vertex>> {
    let g = &prob.graph;
    let n = g.n();
    let mut present = vec![true; n];
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let excess = |v: Vertex, present: &[bool], degree: &[usize]| {
        if present[v] {
            prob.cap[v].excess(degree[v])
        } else {
            0
        }
    };
    let mut deleted = Vec::new();
    loop {
        let total: usize = (0..n).map(|v| excess(v, &present, &degree)).sum();
        if total == 0 {
            break;
        }
        let mut best: Option<(Vertex, usize, u64)> = None;
        for u in 0..n {
            let Some(w) = prob.weights[u].finite() else { continue };
            if !present[u] {
                continue;
            }
            let gain = excess(u, &present, &degree)
                + g.neighbors(u)
                    .iter()
                    .filter(|&&x| excess(x, &present, &degree) > 0)
                    .count();
            if gain == 0 {
                continue;
            }
            if best.is_none_or(|(_, bg, bw)| better_ratio(gain, w, bg, bw)) {
                best = Some((u, gain, w));
            }
        }
        let Some((u, _, _)) = best else {
            let stuck = (0..n).find(|&v| excess(v, &present, &degree) > 0).unwrap_or(0);
            return Err(Error::Infeasible(format!(
                "vertex {stuck} exceeds its cap and only undeletable vertices can fix it"
            )));
        };
        present[u] = false;
        for &x in g.neighbors(u) {
            degree[x] -= 1;
        }
        deleted.push(u);
    }

    for u in putback_order(&deleted, &prob.weights) {
        let own = g.neighbors(u).iter().filter(|&&x| present[x]).count();
        let fits = prob.cap[u].allows(own)
            && g.neighbors(u)
                .iter()
                .all(|&x| !present[x] || prob.cap[x].allows(degree[x] + 1));
        if fits {
            present[u] = true;
            degree[u] = own;
            for &x in g.neighbors(u) {
                degree[x] += 1;
            }
        }
    }
    Ok((0..n).filter(|&v| !present[v]).collect())
}

/// Greedy dominating set that never picks a vertex of `forbidden` or of
/// infinite weight. The returned set is sorted.
pub fn dominating_set_approx(g: &Graph, forbidden: &[Vertex], weights: &[Weight]) -> Result<Vec<Vertex>> {
    let n = g.n();
    if weights.len() != n {
        return Err(Error::precondition(format!("{} weights for {n} vertices", weights.len())));
    }
    let mut allowed: Vec<bool> = weights.iter().map(|w| w.is_finite()).collect();
    for &f in forbidden {
        g.check_vertex(f)?;
        allowed[f] = false;
    }
    let closed = |v: Vertex| std::iter::once(v).chain(g.neighbors(v).iter().copied());
    if let Some(v) = g.vertices().find(|&v| !closed(v).any(|u| allowed[u])) {
        return Err(Error::Infeasible(format!("no allowed vertex can dominate {v}")));
    }

    let mut cover_count = vec![0usize; n];
    let mut chosen = vec![false; n];
    let mut order = Vec::new();
    let mut uncovered = n;
    while uncovered > 0 {
        let mut best: Option<(Vertex, usize, u64)> = None;
        for u in g.vertices().filter(|&u| allowed[u] && !chosen[u]) {
            let gain = closed(u).filter(|&x| cover_count[x] == 0).count();
            let w = weights[u].finite().expect("allowed vertices have finite weight");
            if gain > 0 && best.is_none_or(|(_, bg, bw)| better_ratio(gain, w, bg, bw)) {
                best = Some((u, gain, w));
            }
        }
        let (u, _, _) = best.ok_or_else(|| Error::Internal("greedy domination stalled".into()))?;
        chosen[u] = true;
        order.push(u);
        for x in closed(u) {
            if cover_count[x] == 0 {
                uncovered -= 1;
            }
            cover_count[x] += 1;
        }
    }

    for u in putback_order(&order, weights) {
        if closed(u).all(|x| cover_count[x] > 1) {
            chosen[u] = false;
            for x in closed(u) {
                cover_count[x] -= 1;
            }
        }
    }
    Ok(g.vertices().filter(|&v| chosen[v]).collect())
}

/// Greedy deletion set leaving maximum degree at most one.
pub fn dissociation_delete(g: &Graph, weights: &[Weight]) -> Result<Vec<Vertex>> {
    let prob = FDepProblem::new(g.clone(), vec![Cap::Limit(1); g.n()], weights.to_vec())?;
    f_dependent_delete(&prob)
}
