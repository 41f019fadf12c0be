use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::reductions::SetSystem;
use crate::weight::Weight;

const MAX_RESTARTS: u64 = 100_000;

/// Uniform-ish random simple `k`-regular graph on `n` vertices from the
/// pairing model, restarting whenever a loop or a parallel edge appears.
/// The same `(n, k, seed)` always gives the same graph.
pub fn random_regular(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if n == 0 || k >= n || (n * k) % 2 == 1 {
        return Err(Error::precondition(format!(
            "no simple {k}-regular graph on {n} vertices (need k < n and n*k even)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    'restart: for _ in 0..MAX_RESTARTS {
        points.shuffle(&mut rng);
        let mut g = Graph::new(n);
        for pair in points.chunks_exact(2) {
            if g.add_edge(pair[0], pair[1]).is_err() {
                continue 'restart;
            }
        }
        return Ok(g);
    }
    Err(Error::Budget {
        what: "pairing-model restarts",
        limit: MAX_RESTARTS,
    })
}

/// Erdős–Rényi `G(n, q)`.
pub fn gnp(n: usize, q: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::precondition(format!("edge probability {q} is not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(q) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// `t` random subsets of `{0..r}`, each element joining each set with
/// probability `q`; elements left uncovered are added to one random set.
pub fn random_set_system(r: usize, t: usize, q: f64, seed: u64) -> Result<SetSystem> {
    if t == 0 || !(0.0..=1.0).contains(&q) {
        return Err(Error::precondition(format!("need t >= 1 and q in [0, 1] (t={t}, q={q})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family = vec![Vec::new(); t];
    for x in 0..r {
        let mut placed = false;
        for set in family.iter_mut() {
            if rng.random_bool(q) {
                set.push(x);
                placed = true;
            }
        }
        if !placed {
            family[rng.random_range(0..t)].push(x);
        }
    }
    SetSystem::new(r, family)
}

/// Weights drawn uniformly from `1..=max`.
pub fn random_weights(n: usize, max: u64, seed: u64) -> Result<Vec<Weight>> {
    if max == 0 {
        return Err(Error::precondition("maximum weight must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| Weight::Finite(rng.random_range(1..=max))).collect())
}
