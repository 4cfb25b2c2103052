//! Facet graphs and exact vertex connectivity.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::Result;
use crate::simplex::{subsets, Simplex};

/// A simple undirected graph on `0..order` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(order: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); order],
        }
    }

    /// Builds a graph from an edge list; duplicates and loops are dropped.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(order: usize, edges: I) -> Self {
        let mut g = Graph::new(order);
        for (u, v) in edges {
            if u != v {
                g.adj[u].push(v);
                g.adj[v].push(u);
            }
        }
        for a in &mut g.adj {
            a.sort_unstable();
            a.dedup();
        }
        g
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.adj.iter().all(|a| a.len() + 1 == n)
    }

    /// Number of connected components among the vertices with `alive[v]`,
    /// ignoring edges for which `edge_ok` is false.
    fn count_components<F: Fn(usize, usize) -> bool>(&self, alive: &[bool], edge_ok: F) -> usize {
        let mut seen = vec![false; self.order()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.order() {
            if !alive[s] || seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if alive[v] && !seen[v] && edge_ok(u, v) {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        count
    }

    pub fn components(&self) -> usize {
        self.count_components(&vec![true; self.order()], |_, _| true)
    }

    /// Components of the subgraph induced on the complement of `removed`.
    pub fn components_after_removal(&self, removed: &[usize]) -> usize {
        let mut alive = vec![true; self.order()];
        for &v in removed {
            alive[v] = false;
        }
        self.count_components(&alive, |_, _| true)
    }

    /// Component index of every surviving vertex after deleting `removed`,
    /// numbered in order of least member.
    pub fn component_labels(&self, removed: &[usize]) -> Vec<Option<usize>> {
        let mut label: Vec<Option<usize>> = vec![None; self.order()];
        let mut dead = vec![false; self.order()];
        for &v in removed {
            dead[v] = true;
        }
        let mut next = 0;
        for s in 0..self.order() {
            if dead[s] || label[s].is_some() {
                continue;
            }
            label[s] = Some(next);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !dead[v] && label[v].is_none() {
                        label[v] = Some(next);
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    /// A proper 2-colouring if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.order()];
        for s in 0..self.order() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &v in &self.adj[u] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    /// Maximum number of internally vertex-disjoint `s`–`t` paths between
    /// non-adjacent vertices, stopping early once `limit` is reached.
    pub fn local_connectivity(&self, s: usize, t: usize, limit: usize) -> usize {
        debug_assert!(s != t && !self.has_edge(s, t));
        let mut net = SplitNetwork::new(self, s, t);
        let mut flow = 0;
        while flow < limit && net.augment() {
            flow += 1;
        }
        flow
    }

    /// Exact vertex connectivity, with `κ(K_m) = m - 1` and `κ` of the empty
    /// or one-vertex graph equal to 0.
    pub fn vertex_connectivity(&self) -> usize {
        let n = self.order();
        if n <= 1 {
            return 0;
        }
        if !self.is_connected() {
            return 0;
        }
        if self.is_complete() {
            return n - 1;
        }
        let mut best = self.min_degree();
        let mut i = 0;
        while i <= best && i < n {
            for j in i + 1..n {
                if self.has_edge(i, j) {
                    continue;
                }
                best = best.min(self.local_connectivity(i, j, best));
            }
            i += 1;
        }
        best
    }
}

/// Unit-capacity flow network with every vertex split into an in/out pair.
struct SplitNetwork {
    // edges stored as (to, residual capacity); edge k pairs with k ^ 1
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
    source: usize,
    sink: usize,
}

impl SplitNetwork {
    fn new(g: &Graph, s: usize, t: usize) -> Self {
        let n = g.order();
        let mut net = SplitNetwork {
            head: vec![Vec::new(); 2 * n],
            to: Vec::new(),
            cap: Vec::new(),
            source: 2 * s + 1,
            sink: 2 * t,
        };
        let big = n as u32;
        for v in 0..n {
            let c = if v == s || v == t { big } else { 1 };
            net.add_edge(2 * v, 2 * v + 1, c);
        }
        for (u, v) in g.edges() {
            net.add_edge(2 * u + 1, 2 * v, big);
            net.add_edge(2 * v + 1, 2 * u, big);
        }
        net
    }

    fn add_edge(&mut self, a: usize, b: usize, c: u32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self) -> bool {
        let mut pred: Vec<Option<usize>> = vec![None; self.head.len()];
        let mut queue = VecDeque::from([self.source]);
        let mut reached = false;
        'bfs: while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && pred[v].is_none() && v != self.source {
                    pred[v] = Some(e);
                    if v == self.sink {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
        }
        if !reached {
            return false;
        }
        let mut v = self.sink;
        while let Some(e) = pred[v] {
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            v = self.to[e ^ 1];
        }
        true
    }
}

/// The facet graph of a set of equal-dimension simplices: two simplices are
/// adjacent when they share a codimension-one face, which labels the edge.
#[derive(Clone, Debug)]
pub struct FacetGraph {
    vertices: Vec<Simplex>,
    graph: Graph,
    labels: BTreeMap<(usize, usize), Simplex>,
    by_label: HashMap<Simplex, Vec<(usize, usize)>>,
}

impl FacetGraph {
    /// Builds the graph; vertices are sorted lexicographically and deduplicated.
    pub fn build(faces: &[Simplex]) -> Result<Self> {
        crate::linalg::check_dims(faces)?;
        let mut vertices = faces.to_vec();
        vertices.sort();
        vertices.dedup();
        let mut ridges: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, s) in vertices.iter().enumerate() {
            for (_, r) in s.boundary_faces() {
                ridges.entry(r).or_default().push(i);
            }
        }
        let mut labels = BTreeMap::new();
        let mut by_label: HashMap<Simplex, Vec<(usize, usize)>> = HashMap::new();
        for (r, members) in ridges {
            if members.len() < 2 {
                continue;
            }
            for a in 0..members.len() {
                for b in a + 1..members.len() {
                    let e = (members[a], members[b]);
                    labels.insert(e, r.clone());
                    by_label.entry(r.clone()).or_default().push(e);
                }
            }
        }
        let graph = Graph::from_edges(vertices.len(), labels.keys().copied());
        Ok(FacetGraph {
            vertices,
            graph,
            labels,
            by_label,
        })
    }

    pub fn vertices(&self) -> &[Simplex] {
        &self.vertices
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.vertices.binary_search(s).ok()
    }

    /// The shared face labelling the edge `{u, v}`.
    pub fn label(&self, u: usize, v: usize) -> Option<&Simplex> {
        self.labels.get(&(u.min(v), u.max(v)))
    }

    /// Labelled edges as `(u, v, shared face)` with `u < v`.
    pub fn labelled_edges(&self) -> impl Iterator<Item = (usize, usize, &Simplex)> {
        self.labels.iter().map(|(&(u, v), l)| (u, v, l))
    }

    /// The distinct edge labels, sorted.
    pub fn edge_labels(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self.by_label.keys().cloned().collect();
        out.sort();
        out
    }

    pub fn vertex_connectivity(&self) -> usize {
        self.graph.vertex_connectivity()
    }

    pub fn components_after_removal(&self, removed: &[usize]) -> usize {
        self.graph.components_after_removal(removed)
    }

    /// Deletes the given vertices and every edge carrying one of the given
    /// labels, then counts the components of what remains.
    pub fn components_after_mixed_removal(&self, removed: &[usize], labels: &[Simplex]) -> usize {
        let mut alive = vec![true; self.graph.order()];
        for &v in removed {
            alive[v] = false;
        }
        let mut cut: Vec<(usize, usize)> = labels
            .iter()
            .filter_map(|l| self.by_label.get(l))
            .flatten()
            .copied()
            .collect();
        cut.sort_unstable();
        self.graph.count_components(&alive, |u, v| {
            cut.binary_search(&(u.min(v), u.max(v))).is_err()
        })
    }

    /// Whether the mixed removal leaves a connected (possibly empty) graph.
    pub fn connected_after_mixed_removal(&self, removed: &[usize], labels: &[Simplex]) -> bool {
        self.components_after_mixed_removal(removed, labels) <= 1
    }
}

/// Subsets of size `k` adjacent when their symmetric difference has size 2.
pub fn hypersimplex_graph(n: u32, k: usize) -> FacetGraph {
    FacetGraph::build(&subsets(n, k)).expect("equal-size subsets")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{boundary, Chain};
    use crate::field::Field;
    use crate::simplex;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cube_graph() -> Graph {
        let edges = (0..8usize).flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))));
        Graph::from_edges(8, edges)
    }

    /// Brute-force connectivity: the smallest vertex set whose removal
    /// disconnects the graph or leaves a single vertex.
    fn brute_kappa(g: &Graph) -> usize {
        let n = g.order();
        if n <= 1 {
            return 0;
        }
        for k in 0..n {
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let removed: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                if n - k <= 1 || g.components_after_removal(&removed) > 1 {
                    return k;
                }
            }
        }
        n - 1
    }

    #[test]
    fn connectivity_examples() {
        let k4 = Graph::from_edges(4, (0..4).flat_map(|u| (0..4).map(move |v| (u, v))));
        assert_eq!(k4.vertex_connectivity(), 3);
        assert_eq!(cube_graph().vertex_connectivity(), 3);
        assert!(cube_graph().bipartition().is_some());
        assert_eq!(hypersimplex_graph(5, 2).vertex_connectivity(), 6);
        assert_eq!(Graph::new(0).vertex_connectivity(), 0);
        assert_eq!(Graph::new(1).vertex_connectivity(), 0);
        assert_eq!(Graph::new(2).vertex_connectivity(), 0);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(path.vertex_connectivity(), 1);
    }

    #[test]
    fn facet_graph_examples() {
        let f3 = Field::new(3).unwrap();
        let tet = boundary(&Chain::simplex(simplex![1, 2, 3, 4], f3));
        let g = FacetGraph::build(&tet.support_vec()).unwrap();
        assert!(g.graph().is_complete());
        assert_eq!(g.graph().order(), 4);
        assert_eq!(g.label(0, 1), Some(&simplex![1, 2]));
        let g = FacetGraph::build(
            &simplex![1, 2, 3]
                .boundary_faces()
                .map(|(_, t)| t)
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(g.vertex_connectivity(), 2);
        assert!(FacetGraph::build(&[simplex![1, 2], simplex![1, 2, 3]]).is_err());
    }

    #[test]
    fn hypersimplex_examples() {
        let g = hypersimplex_graph(4, 2);
        assert_eq!(g.graph().order(), 6);
        assert!((0..6).all(|v| g.graph().degree(v) == 4));
        assert_eq!(hypersimplex_graph(6, 3).vertex_connectivity(), 9);
        for n in 3..=7u32 {
            for k in 1..n as usize {
                let g = hypersimplex_graph(n, k);
                let reg = k * (n as usize - k);
                assert!((0..g.graph().order()).all(|v| g.graph().degree(v) == reg));
            }
        }
    }

    #[test]
    fn removal_examples() {
        let quad = [
            simplex![1, 2],
            simplex![2, 3],
            simplex![3, 4],
            simplex![1, 4],
        ];
        let g = FacetGraph::build(&quad).unwrap();
        // opposite edges of the square: (1,2) and (3,4)
        let a = g.index_of(&simplex![1, 2]).unwrap();
        let b = g.index_of(&simplex![3, 4]).unwrap();
        assert_eq!(g.components_after_removal(&[a, b]), 2);
        assert_eq!(g.components_after_removal(&[]), 1);
        assert!(g.connected_after_mixed_removal(&[], &[]));
        assert!(g.connected_after_mixed_removal(&[a], &[]));
        assert!(!g.connected_after_mixed_removal(&[a], &[simplex![3]]));
        assert!(g.connected_after_mixed_removal(&[0, 1, 2, 3], &[]));
    }

    proptest! {
        #[test]
        fn flow_connectivity_matches_brute_force(seed in any::<u64>(), n in 1usize..=8, density in 0.2f64..0.95) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges);
            prop_assert_eq!(g.vertex_connectivity(), brute_kappa(&g));
        }
    }
}
