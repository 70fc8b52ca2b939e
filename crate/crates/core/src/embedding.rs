//! Exact coloring of split incompatibility graphs and isometric embeddings
//! into products of trees.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, Graph, GraphJson, Metric};
use crate::recognition::{classify_rims, require_squaregraph, RimKind};
use crate::splits::{halfspace_system_from, incompatibility_graph, theta_classes_with, SplitSystem};

/// Default color cap for squaregraph incompatibility graphs.
pub const TREE_CAP: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    /// Color of each vertex, in `0..k`.
    pub colors: Vec<usize>,
    pub k: usize,
}

impl Coloring {
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == c).collect()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<usize>,
    /// Per vertex, how many colored neighbors hold each color.
    seen: Vec<Vec<u32>>,
}

impl Dsatur<'_> {
    fn saturation(&self, v: usize) -> usize {
        self.seen[v].iter().filter(|&&c| c > 0).count()
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.len())
            .filter(|&v| self.colors[v] == usize::MAX)
            .max_by(|&a, &b| {
                (self.saturation(a), self.g.degree(a))
                    .cmp(&(self.saturation(b), self.g.degree(b)))
                    .then(b.cmp(&a))
            })
    }

    fn set(&mut self, v: usize, c: usize, delta: i32) {
        for &w in self.g.neighbors(v) {
            self.seen[w][c] = (self.seen[w][c] as i32 + delta) as u32;
        }
    }

    fn solve(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        for c in 0..self.k.min(used + 1) {
            if self.seen[v][c] > 0 {
                continue;
            }
            self.colors[v] = c;
            self.set(v, c, 1);
            if self.solve(used.max(c + 1)) {
                return true;
            }
            self.set(v, c, -1);
            self.colors[v] = usize::MAX;
        }
        false
    }
}

/// A proper coloring with `k` colors, if one exists.
pub fn color_with(g: &Graph, k: usize) -> Option<Coloring> {
    let mut s = Dsatur {
        g,
        k,
        colors: vec![usize::MAX; g.len()],
        seen: vec![vec![0; k.max(1)]; g.len()],
    };
    s.solve(0).then_some(Coloring { colors: s.colors, k })
}

/// Minimum proper coloring by exact saturation-ordered backtracking. Ties
/// on saturation go to higher degree and then lower index.
pub fn min_coloring(g: &Graph, cap: usize) -> Result<Coloring> {
    if g.is_empty() {
        return Ok(Coloring { colors: Vec::new(), k: 0 });
    }
    let lb = if g.edge_count() == 0 { 1 } else { 2 };
    for k in lb..=cap {
        if let Some(c) = color_with(g, k) {
            return Ok(c);
        }
    }
    Err(Error::ColorCapExceeded { cap })
}

/// Quotient of the vertices by the splits in `class`: vertices no split of
/// the class separates are identified. Nodes are named after their first
/// vertex; nodes are adjacent when exactly one split separates them.
pub fn tree_factor(g: &Graph, s: &SplitSystem, class: &[usize]) -> Result<(Graph, Vec<usize>)> {
    for (a, &i) in class.iter().enumerate() {
        for &j in &class[a + 1..] {
            if s.splits()[i].incompatible_with(&s.splits()[j]) {
                return Err(Error::IncompatibleClass(i, j));
            }
        }
    }
    let signature = |v: usize| -> Vec<bool> { class.iter().map(|&i| s.splits()[i].side_a().contains(v)).collect() };
    let mut node_of: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    let mut sigs: Vec<Vec<bool>> = Vec::new();
    let mut proj = Vec::with_capacity(g.len());
    for v in 0..g.len() {
        let sig = signature(v);
        let id = *node_of.entry(sig.clone()).or_insert_with(|| {
            reps.push(v);
            sigs.push(sig);
            reps.len() - 1
        });
        proj.push(id);
    }
    let mut edges = Vec::new();
    for a in 0..sigs.len() {
        for b in a + 1..sigs.len() {
            if sigs[a].iter().zip(&sigs[b]).filter(|(x, y)| x != y).count() == 1 {
                edges.push((a, b));
            }
        }
    }
    let tree = Graph::from_index_edges(reps.iter().map(|&v| g.name(v).to_string()), edges)?;
    if !tree.is_tree() || tree.edge_count() != class.len() {
        return Err(Error::Invariant(format!(
            "factor on {} splits is not a tree with that many edges",
            class.len()
        )));
    }
    Ok((tree, proj))
}

#[derive(Clone, Debug)]
pub struct TreeEmbedding {
    pub factors: Vec<Graph>,
    /// `coords[v][t]` is the node of factor `t` holding vertex `v`.
    pub coords: Vec<Vec<usize>>,
    pub coloring: Coloring,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub factors: Vec<GraphJson>,
    /// Vertex name to the names of its nodes, one per factor.
    pub coords: BTreeMap<String, Vec<String>>,
}

impl TreeEmbedding {
    pub fn to_json(&self, g: &Graph) -> EmbeddingJson {
        let coords = (0..g.len())
            .map(|v| {
                let nodes = self.coords[v].iter().enumerate().map(|(t, &x)| self.factors[t].name(x).to_string());
                (g.name(v).to_string(), nodes.collect())
            })
            .collect();
        EmbeddingJson { factors: self.factors.iter().map(Graph::to_json).collect(), coords }
    }

    /// Rebuilds an embedding of `g`; each split's color is the factor in
    /// which its edges change coordinate. The result is checked as usual.
    pub fn from_json(g: &Graph, j: &EmbeddingJson) -> Result<Self> {
        let factors: Vec<Graph> = j.factors.iter().map(Graph::from_json).collect::<Result<_>>()?;
        let mut coords = Vec::with_capacity(g.len());
        for v in 0..g.len() {
            let names = j.coords.get(g.name(v)).ok_or_else(|| Error::UnknownVertex(g.name(v).to_string()))?;
            if names.len() != factors.len() {
                return Err(Error::Invariant(format!("vertex `{}` has {} coordinates", g.name(v), names.len())));
            }
            coords.push(names.iter().zip(&factors).map(|(x, f)| f.index_of(x)).collect::<Result<Vec<_>>>()?);
        }
        let m = Metric::new(g)?;
        let theta = theta_classes_with(&m)?;
        let mut colors = Vec::with_capacity(theta.len());
        for class in &theta.classes {
            let (u, v) = class.edges[0];
            let t = (0..factors.len())
                .find(|&t| coords[u][t] != coords[v][t])
                .ok_or_else(|| Error::Invariant("an edge keeps every coordinate".into()))?;
            colors.push(t);
        }
        let emb = TreeEmbedding { coloring: Coloring { colors, k: factors.len() }, factors, coords };
        if !emb.factors.iter().all(Graph::is_tree) || !emb.is_isometric(g)? {
            return Err(Error::Invariant("tree embedding is not isometric".into()));
        }
        Ok(emb)
    }

    /// Whether graph distance equals the summed factor distances for all pairs.
    pub fn is_isometric(&self, g: &Graph) -> Result<bool> {
        let m = Metric::new(g)?;
        let fm: Vec<Metric> = self.factors.iter().map(Metric::new).collect::<Result<_>>()?;
        for u in 0..g.len() {
            for v in u + 1..g.len() {
                let sum: u32 = fm
                    .iter()
                    .enumerate()
                    .map(|(t, f)| f.d(self.coords[u][t], self.coords[v][t]))
                    .sum();
                if sum != m.d(u, v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Colors the incompatibility graph of the halfspaces with the fewest colors
/// (at most five) and builds one tree per color. The result is checked to be
/// an isometry before it is returned.
pub fn embed_in_trees(g: &Graph) -> Result<TreeEmbedding> {
    require_squaregraph(g)?;
    let m = Metric::new(g)?;
    let theta = theta_classes_with(&m)?;
    let s = halfspace_system_from(g, &theta);
    let inc = incompatibility_graph(&s);
    let mut coloring = min_coloring(&inc, TREE_CAP)?;
    if coloring.k == 0 {
        coloring.k = 1;
    }
    let mut factors = Vec::with_capacity(coloring.k);
    let mut coords = vec![Vec::with_capacity(coloring.k); g.len()];
    for c in 0..coloring.k {
        let (tree, proj) = tree_factor(g, &s, &coloring.class(c))?;
        factors.push(tree);
        for (v, &node) in proj.iter().enumerate() {
            coords[v].push(node);
        }
    }
    let emb = TreeEmbedding { factors, coords, coloring };
    if !emb.is_isometric(g)? {
        return Err(Error::Invariant("tree embedding is not isometric".into()));
    }
    Ok(emb)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinTrees {
    pub trees: usize,
    /// Every inner vertex has even degree.
    pub inner_even: bool,
    /// Hubs of induced odd cogwheels.
    pub odd_cogwheel_hubs: Vec<usize>,
    /// Inc has an induced 4-cycle (a convex 2×2 grid in the graph).
    pub inc_induced_c4: bool,
    pub coloring: Coloring,
}

/// Hubs `u` whose squares around `u` close up into an odd cycle of at least
/// five neighbors, checked to induce a cogwheel.
pub fn induced_odd_cogwheels(g: &Graph) -> Vec<usize> {
    let mut hubs = Vec::new();
    for u in 0..g.len() {
        let nb = g.neighbors(u);
        let k = nb.len();
        if k < 5 || k.is_multiple_of(2) {
            continue;
        }
        let mut corners: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
        for i in 0..k {
            for j in i + 1..k {
                if let Some(&w) = g.neighbors(nb[i]).iter().find(|&&w| w != u && g.has_edge(w, nb[j])) {
                    corners[i].push((j, w));
                    corners[j].push((i, w));
                }
            }
        }
        if corners.iter().any(|c| c.len() != 2) {
            continue;
        }
        let mut vs: Vec<usize> = std::iter::once(u).chain(nb.iter().copied()).collect();
        vs.extend(corners.iter().flatten().map(|&(_, w)| w));
        vs.sort_unstable();
        vs.dedup();
        let (sub, _) = g.induced(&vs);
        if let Ok(pattern) = crate::generators::cogwheel(k) {
            if are_isomorphic(&sub, &pattern) {
                hubs.push(u);
            }
        }
    }
    hubs
}

/// Whether some non-adjacent pair has two non-adjacent common neighbors.
pub fn has_induced_c4(g: &Graph) -> bool {
    (0..g.len()).any(|a| {
        (a + 1..g.len()).filter(|&b| !g.has_edge(a, b)).any(|b| {
            let common: Vec<usize> = g.neighbors(a).iter().copied().filter(|&x| g.has_edge(x, b)).collect();
            common
                .iter()
                .enumerate()
                .any(|(i, &x)| common[i + 1..].iter().any(|&y| !g.has_edge(x, y)))
        })
    })
}

/// Fewest trees whose product holds `g` isometrically, with the structural
/// facts that decide the small cases.
pub fn min_trees(g: &Graph) -> Result<MinTrees> {
    require_squaregraph(g)?;
    let m = Metric::new(g)?;
    let theta = theta_classes_with(&m)?;
    let s = halfspace_system_from(g, &theta);
    let inc = incompatibility_graph(&s);
    let rims = classify_rims(g);
    let inner_even = (0..g.len())
        .filter(|&v| rims.kind(v) == RimKind::CogwheelHub)
        .all(|v| g.degree(v).is_multiple_of(2));
    let odd_cogwheel_hubs = induced_odd_cogwheels(g);
    let inc_induced_c4 = has_induced_c4(&inc);
    let coloring = if g.is_tree() {
        Coloring { colors: vec![0; s.len()], k: 1 }
    } else if let Some(c) = color_with(&inc, 2) {
        c
    } else {
        min_coloring(&inc, TREE_CAP)?
    };
    Ok(MinTrees {
        trees: coloring.k.max(1),
        inner_even,
        odd_cogwheel_hubs,
        inc_induced_c4,
        coloring,
    })
}
