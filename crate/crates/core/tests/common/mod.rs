//! Reference implementations used only by the integration tests. They work
//! on bitmask adjacency and plain subset enumeration, sharing no code with
//! the library beyond reading its `Graph` edges.

#![allow(dead_code)]

use mdd_core::{Graph, Instance, Objective, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adjacency rows as bitmasks; supports up to 32 vertices.
#[derive(Clone, Debug)]
pub struct Adj {
    pub n: usize,
    pub rows: Vec<u32>,
}

impl Adj {
    pub fn of(g: &Graph) -> Adj {
        assert!(g.n() <= 32);
        let mut rows = vec![0u32; g.n()];
        for (u, v) in g.edges() {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Adj { n: g.n(), rows }
    }

    pub fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn degree_in(&self, v: usize, alive: u32) -> u32 {
        (self.rows[v] & alive).count_ones()
    }
}

pub fn mask_of(vs: &[usize]) -> u32 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

pub fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

/// `p` is the unique min/max degree vertex of the graph minus `deleted`.
pub fn feasible(adj: &Adj, p: usize, deleted: u32, max: bool) -> bool {
    if deleted >> p & 1 == 1 {
        return false;
    }
    let alive = adj.full() & !deleted;
    let dp = adj.degree_in(p, alive);
    members(alive).into_iter().filter(|&v| v != p).all(|v| {
        let d = adj.degree_in(v, alive);
        if max {
            dp > d
        } else {
            dp < d
        }
    })
}

/// Lightest feasible deletion set using only finite-weight vertices;
/// `None` when there is none.
pub fn mdd_opt(adj: &Adj, p: usize, max: bool, w: &[Option<u64>]) -> Option<u64> {
    let mut best: Option<u64> = None;
    for s in 0..=adj.full() {
        if s >> p & 1 == 1 {
            continue;
        }
        let Some(cost) = members(s).iter().map(|&v| w[v]).sum::<Option<u64>>() else {
            continue;
        };
        if best.is_some_and(|b| cost >= b) {
            continue;
        }
        if feasible(adj, p, s, max) {
            best = Some(cost);
        }
    }
    best
}

pub fn instance_weights(inst: &Instance) -> Vec<Option<u64>> {
    inst.weights().iter().map(|w| w.finite()).collect()
}

pub fn mdd_opt_of(inst: &Instance) -> Option<u64> {
    mdd_opt(
        &Adj::of(inst.graph()),
        inst.p(),
        inst.objective() == Objective::Max,
        &instance_weights(inst),
    )
}

pub fn dominates(adj: &Adj, s: u32) -> bool {
    let covered = members(s).iter().fold(s, |c, &v| c | adj.rows[v]);
    covered & adj.full() == adj.full()
}

/// Lightest dominating set drawn from `allowed`.
pub fn min_domset(adj: &Adj, allowed: u32, w: &[Option<u64>]) -> Option<u64> {
    let mut best: Option<u64> = None;
    for s in 0..=adj.full() {
        if s & !allowed != 0 {
            continue;
        }
        let Some(cost) = members(s).iter().map(|&v| w[v]).sum::<Option<u64>>() else {
            continue;
        };
        if best.is_none_or(|b| cost < b) && dominates(adj, s) {
            best = Some(cost);
        }
    }
    best
}

pub fn mindom_size(adj: &Adj) -> usize {
    (0..=adj.full())
        .filter(|&s| dominates(adj, s))
        .map(|s| s.count_ones() as usize)
        .min()
        .expect("V dominates")
}

/// Lightest deletion leaving every capped vertex within its cap.
pub fn min_fdep(adj: &Adj, caps: &[Option<u32>], w: &[Option<u64>]) -> Option<u64> {
    let mut best: Option<u64> = None;
    for s in 0..=adj.full() {
        let Some(cost) = members(s).iter().map(|&v| w[v]).sum::<Option<u64>>() else {
            continue;
        };
        if best.is_some_and(|b| cost >= b) {
            continue;
        }
        let alive = adj.full() & !s;
        let ok = members(alive)
            .into_iter()
            .all(|v| caps[v].is_none_or(|c| adj.degree_in(v, alive) <= c));
        if ok {
            best = Some(cost);
        }
    }
    best
}

pub fn min_set_cover(r: usize, family: &[Vec<usize>]) -> usize {
    let t = family.len();
    let universe = (1u32 << r) - 1;
    let sets: Vec<u32> = family.iter().map(|s| mask_of(s)).collect();
    (0u32..1 << t)
        .filter(|&pick| members(pick).iter().fold(0, |c, &j| c | sets[j]) == universe)
        .map(|pick| pick.count_ones() as usize)
        .min()
        .expect("whole family covers")
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, q: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(q) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_weights(rng: &mut ChaCha8Rng, n: usize, max: u64) -> Vec<Weight> {
    (0..n).map(|_| Weight::Finite(rng.random_range(1..=max))).collect()
}

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = pairs.len();
    (0u64..1 << m).map(move |bits| {
        Graph::from_edges(n, (0..m).filter(|&i| bits >> i & 1 == 1).map(|i| pairs[i])).unwrap()
    })
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut next = perm.clone();
            next.insert(pos, n - 1);
            out.push(next);
        }
    }
    out
}

/// Smallest edge bitmask over all relabelings; equal iff isomorphic.
pub fn canonical_form(adj: &Adj, perms: &[Vec<usize>]) -> u64 {
    let n = adj.n;
    let index = |u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        a * n + b
    };
    perms
        .iter()
        .map(|perm| {
            let mut code = 0u64;
            for u in 0..n {
                for v in members(adj.rows[u]) {
                    if u < v {
                        code |= 1 << index(perm[u], perm[v]);
                    }
                }
            }
            code
        })
        .min()
        .unwrap()
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    all_graphs(n)
        .filter(|g| seen.insert(canonical_form(&Adj::of(g), &perms)))
        .collect()
}

/// Independent 2-coloring by repeated relaxation.
pub fn is_bipartite(g: &Graph) -> bool {
    let mut color: Vec<i8> = vec![-1; g.n()];
    for s in 0..g.n() {
        if color[s] >= 0 {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if color[v] < 0 {
                    color[v] = 1 - color[u];
                    stack.push(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// The 3-cube.
pub fn cube() -> Graph {
    let edges = (0..8usize).flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b)))).filter(|(u, v)| u < v);
    Graph::from_edges(8, edges).unwrap()
}
