//! Undirected simple graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An undirected simple graph. Adjacency lists are kept sorted and
/// symmetric; self-loops and parallel edges are rejected on insertion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let pos_u = match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(Error::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => pos,
        };
        self.adj[u].insert(pos_u, v);
        let pos_v = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos_v, u);
        Ok(())
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(k)` when every vertex has degree `k`. The empty graph is not regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first()?.len();
        self.adj.iter().all(|ns| ns.len() == k).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n()
    }

    /// A proper 2-coloring (`side[v]`), or `None` if the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        for s in self.vertices() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].expect("queued vertices are colored");
                for &v in &self.adj[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        side.into_iter().collect()
    }

    /// Whether `set` dominates the graph, i.e. `N[set] = V`.
    pub fn is_dominating(&self, set: &[Vertex]) -> bool {
        let mut covered = vec![false; self.n()];
        for &s in set {
            covered[s] = true;
            for &u in &self.adj[s] {
                covered[u] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// Copy of `self` followed by a copy of `other`; the vertices of `other`
    /// are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|ns| ns.iter().map(|&v| v + offset).collect()));
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            (a, b) => {
                let mut out = a.clone().unwrap_or_else(|| default_labels(self.n()));
                out.extend(b.clone().unwrap_or_else(|| default_labels(other.n())));
                Some(out)
            }
        };
        Graph { adj, labels }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::precondition(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            g.adj[u] = (0..n).filter(|&v| v != u).collect();
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        if n >= 3 {
            for i in 0..n {
                g.add_edge(i, (i + 1) % n).expect("cycle edge");
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).expect("bipartite edge");
            }
        }
        g
    }

    /// Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).expect("petersen edges")
    }

    /// Triangular prism `K3 x K2`: triangles `0,1,2` and `3,4,5`.
    pub fn prism() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
            .expect("prism edges")
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|v| v.to_string()).collect()
}

/// The complement graph on the same vertex set.
pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let adj = (0..n)
        .map(|u| {
            let ns = g.neighbors(u);
            (0..n).filter(|&v| v != u && ns.binary_search(&v).is_err()).collect()
        })
        .collect();
    Graph {
        adj,
        labels: g.labels.clone(),
    }
}

/// An induced subgraph together with the table restoring original ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `original[i]` is the id in the parent graph of subgraph vertex `i`.
    pub original: Vec<Vertex>,
}

impl Subgraph {
    pub fn to_original(&self, v: Vertex) -> Vertex {
        self.original[v]
    }

    pub fn from_original(&self, v: Vertex) -> Option<Vertex> {
        self.original.binary_search(&v).ok()
    }

    pub fn lift(&self, vs: impl IntoIterator<Item = Vertex>) -> Vec<Vertex> {
        let mut out: Vec<_> = vs.into_iter().map(|v| self.original[v]).collect();
        out.sort_unstable();
        out
    }
}

/// `G[keep]`. Subgraph ids follow the increasing order of the kept ids.
pub fn induced_subgraph(g: &Graph, keep: impl IntoIterator<Item = Vertex>) -> Result<Subgraph> {
    let mut original: Vec<Vertex> = keep.into_iter().collect();
    original.sort_unstable();
    original.dedup();
    if let Some(&bad) = original.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidVertex { vertex: bad, n: g.n() });
    }
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in original.iter().enumerate() {
        index[v] = i;
    }
    let adj = original
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter_map(|&u| (index[u] != usize::MAX).then_some(index[u]))
                .collect()
        })
        .collect();
    let labels = g
        .labels
        .as_ref()
        .map(|l| original.iter().map(|&v| l[v].clone()).collect());
    Ok(Subgraph {
        graph: Graph { adj, labels },
        original,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::new(n);
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            g.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::new(3);
        assert!(matches!(g.add_edge(1, 1), Err(Error::SelfLoop(1))));
        g.add_edge(0, 2).unwrap();
        assert!(matches!(g.add_edge(2, 0), Err(Error::DuplicateEdge(0, 2))));
        assert!(matches!(g.add_edge(0, 3), Err(Error::InvalidVertex { vertex: 3, n: 3 })));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&Graph::complete(3)), Graph::new(3));
        let c = complement(&Graph::path(3));
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn induced_subgraph_examples() {
        let sub = induced_subgraph(&Graph::cycle(5), [1, 2, 3]).unwrap();
        assert_eq!(sub.graph, Graph::path(3));
        assert_eq!(sub.original, vec![1, 2, 3]);

        let pet = Graph::petersen();
        let all = induced_subgraph(&pet, pet.vertices()).unwrap();
        assert_eq!(all.graph, pet);
        assert_eq!(all.original, (0..10).collect::<Vec<_>>());

        let k3 = induced_subgraph(&Graph::complete(4), [0, 2, 3]).unwrap();
        assert_eq!(k3.graph, Graph::complete(3));
        assert_eq!(k3.from_original(2), Some(1));
        assert_eq!(k3.from_original(1), None);

        assert!(matches!(
            induced_subgraph(&Graph::complete(4), [0, 4]),
            Err(Error::InvalidVertex { vertex: 4, .. })
        ));
    }

    #[test]
    fn named_families() {
        assert_eq!(Graph::petersen().regular_degree(), Some(3));
        assert_eq!(Graph::prism().regular_degree(), Some(3));
        assert_eq!(Graph::complete_bipartite(3, 3).regular_degree(), Some(3));
        assert_eq!(Graph::star(4).max_degree(), 4);
        assert!(Graph::petersen().is_connected());
        assert!(!Graph::new(2).is_connected());
    }

    #[test]
    fn labels_follow_subgraphs() {
        let g = Graph::path(3)
            .with_labels(vec!["a".into(), "b".into(), "c".into()])
            .unwrap();
        let sub = induced_subgraph(&g, [0, 2]).unwrap();
        assert_eq!(sub.graph.label(1), Some("c"));
        assert_eq!(complement(&g).label(0), Some("a"));
    }

    proptest! {
        #[test]
        fn complement_is_involution(g in arb_graph(10)) {
            let c = complement(&g);
            prop_assert_eq!(complement(&c), g.clone());
            for v in g.vertices() {
                prop_assert_eq!(g.degree(v) + c.degree(v), g.n() - 1);
                prop_assert!(!c.has_edge(v, v));
                for &u in c.neighbors(v) {
                    prop_assert!(c.has_edge(u, v));
                }
            }
        }
    }
}
