//! Finite simple undirected graphs with stable string vertex ids.
//!
//! Vertices are stored in insertion order and addressed internally by
//! index. Names are opaque and survive every transformation in the crate;
//! the JSON form is canonical (sorted vertices, sorted edges) regardless
//! of the in-memory order.

mod blocks;
mod iso;
pub(crate) mod metric;

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use blocks::{articulation_points, blocks, is_biconnected};
pub use iso::{are_isomorphic, find_isomorphism};
pub use metric::{
    all_pairs_distances, convex_hull, gate, interval, is_median_graph, median, median_closure,
    DistanceMatrix, Metric,
};

/// A set of vertex indices of one graph.
pub type VertexSet = FixedBitSet;

#[derive(Clone, Debug)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl Graph {
    pub fn new<I, S>(vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Graph {
            names: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        };
        for v in vertices {
            g.add_vertex(v)?;
        }
        Ok(g)
    }

    /// Builds a graph from vertex names and name pairs.
    pub fn from_edges<I, S, E, T>(vertices: I, edges: E) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        let mut g = Graph::new(vertices)?;
        for (a, b) in edges {
            let u = g.index_of(a.as_ref())?;
            let v = g.index_of(b.as_ref())?;
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from index pairs; vertices are named by the supplied
    /// names, in order.
    pub fn from_index_edges<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = Graph::new(names)?;
        for (u, v) in edges {
            if u >= g.len() || v >= g.len() {
                return Err(Error::UnknownVertex(format!("#{}", u.max(v))));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.adj.push(Vec::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(self.names[u].clone()));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::ParallelEdge(
                self.names[u].clone(),
                self.names[v].clone(),
            )),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        let mut s = VertexSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    pub fn set_of(&self, vs: impl IntoIterator<Item = usize>) -> VertexSet {
        let mut s = VertexSet::with_capacity(self.len());
        s.extend(vs);
        s
    }

    pub fn set_names(&self, s: &VertexSet) -> Vec<String> {
        s.ones().map(|v| self.names[v].clone()).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        self.bfs_order(0).len() == self.len()
    }

    pub(crate) fn bfs_order(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut order = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    /// Vertex sets of connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut members = self.bfs_order(s);
            for &v in &members {
                comp[v] = out.len();
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The subgraph induced by `vs`, keeping vertex names and the order of
    /// `vs`. Returns the subgraph and the map from its indices back to ours.
    pub fn induced(&self, vs: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = HashMap::with_capacity(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            local.insert(v, i);
        }
        let mut adj = vec![Vec::new(); vs.len()];
        for (i, &v) in vs.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = local.get(w) {
                    adj[i].push(j);
                }
            }
            adj[i].sort_unstable();
        }
        let names: Vec<String> = vs.iter().map(|&v| self.names[v].clone()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        (Graph { names, index, adj }, vs.to_vec())
    }

    pub fn induced_set(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let vs: Vec<usize> = s.ones().collect();
        self.induced(&vs)
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.is_connected() && self.edge_count() + 1 == self.len()
    }

    pub fn to_json(&self) -> GraphJson {
        let mut vertices = self.names.clone();
        vertices.sort();
        let mut edges: Vec<[String; 2]> = self
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (&self.names[u], &self.names[v]);
                if a <= b {
                    [a.clone(), b.clone()]
                } else {
                    [b.clone(), a.clone()]
                }
            })
            .collect();
        edges.sort();
        GraphJson { vertices, edges }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        Graph::from_edges(
            j.vertices.iter().cloned(),
            j.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())),
        )
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph json serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: GraphJson = serde_json::from_str(s)?;
        Graph::from_json(&j)
    }

    /// Graphviz rendering with vertices and edges in canonical order.
    pub fn to_dot(&self) -> String {
        let j = self.to_json();
        let mut out = String::from("graph G {\n");
        for v in &j.vertices {
            out.push_str(&format!("  \"{}\";\n", v.replace('"', "\\\"")));
        }
        for [a, b] in &j.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\";\n",
                a.replace('"', "\\\""),
                b.replace('"', "\\\"")
            ));
        }
        out.push_str("}\n");
        out
    }

    pub(crate) fn edge_name_set(&self) -> BTreeSet<(String, String)> {
        self.to_json()
            .edges
            .into_iter()
            .map(|[a, b]| (a, b))
            .collect()
    }
}

/// Equality of labelled graphs: same vertex names and same edges, regardless
/// of in-memory order.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self.edge_count() == other.edge_count()
            && self.names.iter().all(|n| other.index.contains_key(n))
            && self.edge_name_set() == other.edge_name_set()
    }
}

impl Eq for Graph {}

/// Small builders for standard graphs.
pub mod build {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_index_edges((0..n).map(|i| format!("p{i}")), (1..n).map(|i| (i - 1, i)))
            .expect("path is simple")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_index_edges(
            (0..n).map(|i| format!("c{i}")),
            (0..n).map(|i| (i, (i + 1) % n)),
        )
        .expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::from_index_edges((0..n).map(|i| format!("k{i}")), edges).expect("complete is simple")
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_index_edges(
            std::iter::once("hub".to_string()).chain((0..leaves).map(|i| format!("l{i}"))),
            (1..=leaves).map(|i| (0, i)),
        )
        .expect("star is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let names = (0..a).map(|i| format!("a{i}")).chain((0..b).map(|j| format!("b{j}")));
        let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j)));
        Graph::from_index_edges(names, edges).expect("bipartite is simple")
    }

    pub fn hypercube(dim: u32) -> Graph {
        let n = 1usize << dim;
        let edges = (0..n).flat_map(|v| {
            (0..dim)
                .map(move |b| (v, v ^ (1 << b)))
                .filter(|&(u, w)| u < w)
        });
        Graph::from_index_edges((0..n).map(|v| format!("q{v:0width$b}", width = dim as usize)), edges)
            .expect("hypercube is simple")
    }

    /// Cartesian product; vertex `(a, b)` is named `a|b`.
    pub fn product(g: &Graph, h: &Graph) -> Graph {
        let (n, m) = (g.len(), h.len());
        let names = (0..n).flat_map(|a| (0..m).map(move |b| (a, b)));
        let names: Vec<String> = names
            .map(|(a, b)| format!("{}|{}", g.name(a), h.name(b)))
            .collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..m {
                for &a2 in g.neighbors(a) {
                    if a2 > a {
                        edges.push((a * m + b, a2 * m + b));
                    }
                }
                for &b2 in h.neighbors(b) {
                    if b2 > b {
                        edges.push((a * m + b, a * m + b2));
                    }
                }
            }
        }
        Graph::from_index_edges(names, edges).expect("product is simple")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_parallel_edges() {
        assert!(matches!(
            Graph::from_edges(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(Error::DuplicateVertex(_))
        ));
        assert!(matches!(
            Graph::from_edges(["a"], [("a", "a")]),
            Err(Error::SelfLoop(_))
        ));
        assert!(matches!(
            Graph::from_edges(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(Error::ParallelEdge(..))
        ));
        assert!(matches!(
            Graph::from_edges(["a"], [("a", "z")]),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn json_is_canonical() {
        let g = Graph::from_edges(["c", "a", "b"], [("c", "a"), ("b", "a")]).unwrap();
        let j = g.to_json();
        assert_eq!(j.vertices, ["a", "b", "c"]);
        assert_eq!(j.edges, [["a", "b"], ["a", "c"]]);
        assert_eq!(
            g.to_json_string(),
            r#"{"vertices":["a","b","c"],"edges":[["a","b"],["a","c"]]}"#
        );
        let back = Graph::from_json_str(&g.to_json_string()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn induced_keeps_names() {
        let g = build::cycle(6);
        let (h, map) = g.induced(&[0, 1, 2]);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.name(0), "c0");
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn hypercube_and_product_sizes() {
        let q3 = build::hypercube(3);
        assert_eq!((q3.len(), q3.edge_count()), (8, 12));
        let grid = build::product(&build::path(3), &build::path(3));
        assert_eq!((grid.len(), grid.edge_count()), (9, 12));
    }
}
