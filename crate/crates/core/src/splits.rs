//! Θ-classes and the split systems of their halfspaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Metric, VertexSet};

/// A bipartition of a ground set `0..n`, stored by the side holding element 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    a: VertexSet,
}

impl Split {
    /// Builds a split from one side; either side may be given.
    pub fn new(side: VertexSet, n: usize) -> Result<Self> {
        let mut a = side;
        a.grow(n);
        if a.len() > n {
            return Err(Error::InvalidSplit(format!("side mentions element beyond {n}")));
        }
        let size = a.count_ones(..);
        if size == 0 || size == n {
            return Err(Error::InvalidSplit("a side is empty".into()));
        }
        if !a.contains(0) {
            a.toggle_range(..);
        }
        Ok(Split { a })
    }

    pub fn ground_len(&self) -> usize {
        self.a.len()
    }

    /// The side containing element 0.
    pub fn side_a(&self) -> &VertexSet {
        &self.a
    }

    pub fn side_b(&self) -> VertexSet {
        let mut b = self.a.clone();
        b.toggle_range(..);
        b
    }

    /// Side 0 is `side_a`, side 1 is `side_b`.
    pub fn side(&self, which: usize) -> VertexSet {
        if which == 0 {
            self.a.clone()
        } else {
            self.side_b()
        }
    }

    /// Which side holds `x`: 0 for `side_a`, 1 otherwise.
    pub fn side_of(&self, x: usize) -> usize {
        usize::from(!self.a.contains(x))
    }

    pub fn separates(&self, x: usize, y: usize) -> bool {
        self.a.contains(x) != self.a.contains(y)
    }

    /// Whether one side is a singleton.
    pub fn is_trivial(&self) -> bool {
        let k = self.a.count_ones(..);
        k == 1 || k + 1 == self.a.len()
    }

    /// All four side intersections are nonempty.
    pub fn incompatible_with(&self, other: &Split) -> bool {
        let (a1, a2) = (&self.a, &other.a);
        // a1∩a2 holds element 0, so only the other three can be empty.
        !a1.is_subset(a2) && !a2.is_subset(a1) && a1.union_count(a2) < a1.len()
    }

    pub fn compatible_with(&self, other: &Split) -> bool {
        !self.incompatible_with(other)
    }
}

/// Splits over a shared named ground set. Duplicates are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSystem {
    ground: Vec<String>,
    splits: Vec<Split>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSystemJson {
    pub ground: Vec<String>,
    pub splits: Vec<[Vec<String>; 2]>,
}

impl SplitSystem {
    pub fn new(ground: Vec<String>, splits: Vec<Split>) -> Result<Self> {
        let n = ground.len();
        let mut names = std::collections::HashSet::new();
        for g in &ground {
            if !names.insert(g) {
                return Err(Error::DuplicateVertex(g.clone()));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for s in &splits {
            if s.ground_len() != n {
                return Err(Error::InvalidSplit("split over a different ground set".into()));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::InvalidSplit("duplicate split".into()));
            }
        }
        Ok(SplitSystem { ground, splits })
    }

    /// Like `new` but silently drops repeated splits, keeping first occurrences.
    pub fn new_dedup(ground: Vec<String>, splits: Vec<Split>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let splits = splits.into_iter().filter(|s| seen.insert(s.clone())).collect();
        SplitSystem::new(ground, splits)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.ground
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// First pair of ground elements no split separates.
    pub fn unseparated_pair(&self) -> Option<(usize, usize)> {
        let n = self.ground.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| !self.splits.iter().any(|s| s.separates(x, y)))
    }

    pub fn separates_points(&self) -> bool {
        self.unseparated_pair().is_none()
    }

    /// Restriction to the elements `x` (indices into the ground set, in the
    /// order given). Splits with an empty side are dropped and repeats merged.
    pub fn trace(&self, x: &[usize]) -> Result<SplitSystem> {
        let ground: Vec<String> = x.iter().map(|&i| self.ground[i].clone()).collect();
        let mut out = Vec::new();
        for s in &self.splits {
            let mut side = VertexSet::with_capacity(x.len());
            for (k, &i) in x.iter().enumerate() {
                if s.side_a().contains(i) {
                    side.insert(k);
                }
            }
            if let Ok(t) = Split::new(side, x.len()) {
                out.push(t);
            }
        }
        SplitSystem::new_dedup(ground, out)
    }

    pub fn to_json(&self) -> SplitSystemJson {
        let names = |s: &VertexSet| s.ones().map(|i| self.ground[i].clone()).collect::<Vec<_>>();
        SplitSystemJson {
            ground: self.ground.clone(),
            splits: self
                .splits
                .iter()
                .map(|s| [names(s.side_a()), names(&s.side_b())])
                .collect(),
        }
    }

    pub fn from_json(j: &SplitSystemJson) -> Result<Self> {
        let n = j.ground.len();
        let index: std::collections::HashMap<&str, usize> =
            j.ground.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        let mut splits = Vec::new();
        for [a, b] in &j.splits {
            let mut side = VertexSet::with_capacity(n);
            let mut cover = VertexSet::with_capacity(n);
            for (k, part) in [a, b].into_iter().enumerate() {
                for name in part {
                    let &i = index
                        .get(name.as_str())
                        .ok_or_else(|| Error::UnknownVertex(name.clone()))?;
                    if cover.put(i) {
                        return Err(Error::InvalidSplit(format!("`{name}` listed twice")));
                    }
                    if k == 0 {
                        side.insert(i);
                    }
                }
            }
            if cover.count_ones(..) != n {
                return Err(Error::InvalidSplit("sides do not cover the ground set".into()));
            }
            splits.push(Split::new(side, n)?);
        }
        SplitSystem::new(j.ground.clone(), splits)
    }
}

/// One Θ-class: its edges, each oriented `(u, v)` with `u` in `near`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaClass {
    pub edges: Vec<(usize, usize)>,
    /// W(u, v) for the first edge `(u, v)`.
    pub near: VertexSet,
    /// W(v, u) for the first edge.
    pub far: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaClasses {
    pub classes: Vec<ThetaClass>,
    /// Class of each edge of `Graph::edges()`, in that order.
    pub edge_class: Vec<usize>,
}

impl ThetaClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub(crate) fn edge_index(g: &Graph) -> std::collections::HashMap<(usize, usize), usize> {
    g.edges().into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Θ-classes computed by closing "opposite edges of a 4-cycle" under
/// transitivity. Checks that each class cuts the graph into its halfspaces;
/// does not check that the graph is median.
pub(crate) fn theta_classes_with(m: &Metric) -> Result<ThetaClasses> {
    let g = m.graph();
    let edges = g.edges();
    let idx = edge_index(g);
    let mut uf = UnionFind((0..edges.len()).collect());
    for a in 0..g.len() {
        let nb = g.neighbors(a);
        for (i, &b) in nb.iter().enumerate() {
            for &d in &nb[i + 1..] {
                for &c in g.neighbors(b) {
                    if c != a && g.has_edge(c, d) {
                        uf.union(idx[&key(a, b)], idx[&key(c, d)]);
                        uf.union(idx[&key(a, d)], idx[&key(b, c)]);
                    }
                }
            }
        }
    }
    let mut root_class = std::collections::HashMap::new();
    let mut edge_class = Vec::with_capacity(edges.len());
    let mut members: Vec<Vec<(usize, usize)>> = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        let r = uf.find(i);
        let c = *root_class.entry(r).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        edge_class.push(c);
        members[c].push(e);
    }
    let n = g.len();
    let mut classes = Vec::with_capacity(members.len());
    for es in members {
        let (u0, v0) = es[0];
        let mut near = VertexSet::with_capacity(n);
        near.extend((0..n).filter(|&x| m.d(x, u0) < m.d(x, v0)));
        let mut far = near.clone();
        far.toggle_range(..);
        let mut oriented = Vec::with_capacity(es.len());
        for &(x, y) in &es {
            match (near.contains(x), near.contains(y)) {
                (true, false) => oriented.push((x, y)),
                (false, true) => oriented.push((y, x)),
                _ => return Err(not_median_at(m, x, y)),
            }
        }
        classes.push(ThetaClass { edges: oriented, near, far });
    }
    // Every cut edge must belong to the class.
    for (i, &(x, y)) in edges.iter().enumerate() {
        for (c, class) in classes.iter().enumerate() {
            if c != edge_class[i] && class.near.contains(x) != class.near.contains(y) {
                return Err(not_median_at(m, x, y));
            }
        }
    }
    Ok(ThetaClasses { classes, edge_class })
}

fn not_median_at(m: &Metric, x: usize, y: usize) -> Error {
    let g = m.graph();
    match m.median_violation() {
        Some((a, b, c)) => Error::NotMedian(g.name(a).into(), g.name(b).into(), g.name(c).into()),
        None => Error::Invariant(format!(
            "edge `{}`-`{}` breaks the halfspace structure",
            g.name(x),
            g.name(y)
        )),
    }
}

fn require_median(m: &Metric) -> Result<()> {
    let g = m.graph();
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    match m.median_violation() {
        Some((a, b, c)) => Err(Error::NotMedian(g.name(a).into(), g.name(b).into(), g.name(c).into())),
        None => Ok(()),
    }
}

pub fn theta_classes(g: &Graph) -> Result<ThetaClasses> {
    let m = Metric::new(g)?;
    require_median(&m)?;
    theta_classes_with(&m)
}

pub(crate) fn halfspace_system_from(g: &Graph, theta: &ThetaClasses) -> SplitSystem {
    let splits = theta
        .classes
        .iter()
        .map(|c| Split::new(c.near.clone(), g.len()).expect("halfspaces are nonempty"))
        .collect();
    SplitSystem::new(g.names().to_vec(), splits).expect("distinct classes give distinct splits")
}

/// One split per Θ-class, over the vertex names in graph order.
pub fn halfspace_system(g: &Graph) -> Result<SplitSystem> {
    let theta = theta_classes(g)?;
    Ok(halfspace_system_from(g, &theta))
}

/// The ladder of a Θ-class: `near[i]`-`far[i]` are the rungs, in path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zone {
    pub class: usize,
    pub near: Vec<usize>,
    pub far: Vec<usize>,
}

impl Zone {
    pub fn rungs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.near.iter().copied().zip(self.far.iter().copied())
    }
}

/// Orders `vs` as an induced path of `g`, if it is one.
pub(crate) fn as_path(g: &Graph, vs: &[usize]) -> Option<Vec<usize>> {
    if vs.is_empty() {
        return Some(Vec::new());
    }
    let (sub, map) = g.induced(vs);
    if sub.edge_count() + 1 != sub.len() || !sub.is_connected() {
        return None;
    }
    if (0..sub.len()).any(|v| sub.degree(v) > 2) {
        return None;
    }
    let start = (0..sub.len()).find(|&v| sub.degree(v) <= 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = sub.neighbors(cur).iter().find(|&&w| w != prev) {
        prev = cur;
        cur = next;
        order.push(cur);
    }
    Some(order.into_iter().map(|i| map[i]).collect())
}

pub(crate) fn zone_of(g: &Graph, theta: &ThetaClasses, class: usize) -> Result<Zone> {
    let c = &theta.classes[class];
    let (u0, v0) = c.edges[0];
    let near: Vec<usize> = c.edges.iter().map(|e| e.0).collect();
    let ordered = as_path(g, &near).ok_or_else(|| {
        Error::NotLadder(
            g.name(u0).into(),
            g.name(v0).into(),
            "rung endpoints on one side do not induce a path".into(),
        )
    })?;
    let partner: std::collections::HashMap<usize, usize> = c.edges.iter().copied().collect();
    let far: Vec<usize> = ordered.iter().map(|x| partner[x]).collect();
    if far.len() != partner.len() || far.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return Err(Error::NotLadder(
            g.name(u0).into(),
            g.name(v0).into(),
            "the two sides are not matched paths".into(),
        ));
    }
    Ok(Zone { class, near: ordered, far })
}

/// The zone of the Θ-class containing edge `(u, v)`, oriented so that `u`
/// lies on the `near` path.
pub fn zone(g: &Graph, u: usize, v: usize) -> Result<Zone> {
    if u >= g.len() || v >= g.len() || !g.has_edge(u, v) {
        return Err(Error::InvalidSplit(format!("#{u}-#{v} is not an edge")));
    }
    let mut theta = theta_classes(g)?;
    let i = g.edges().iter().position(|&e| e == key(u, v)).expect("edge exists");
    let class = theta.edge_class[i];
    let c = &mut theta.classes[class];
    if !c.near.contains(u) {
        for e in &mut c.edges {
            *e = (e.1, e.0);
        }
        std::mem::swap(&mut c.near, &mut c.far);
    }
    let mut z = zone_of(g, &theta, class)?;
    if let Some(p) = z.near.iter().position(|&x| x == u) {
        if p != 0 && z.near.len() > 1 && p == z.near.len() - 1 {
            z.near.reverse();
            z.far.reverse();
        }
    }
    Ok(z)
}

/// Vertex per split, named `s{i}`; edges join incompatible splits.
pub fn incompatibility_graph(s: &SplitSystem) -> Graph {
    relation_graph(s, true)
}

/// Complement relation: edges join distinct compatible splits.
pub fn compatibility_graph(s: &SplitSystem) -> Graph {
    relation_graph(s, false)
}

fn relation_graph(s: &SplitSystem, incompatible: bool) -> Graph {
    let k = s.len();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if s.splits[i].incompatible_with(&s.splits[j]) == incompatible {
                edges.push((i, j));
            }
        }
    }
    Graph::from_index_edges((0..k).map(|i| format!("s{i}")), edges).expect("simple by construction")
}

/// No three pairwise incompatible splits.
pub fn is_two_compatible(s: &SplitSystem) -> bool {
    let k = s.len();
    let inc = |i: usize, j: usize| s.splits[i].incompatible_with(&s.splits[j]);
    for i in 0..k {
        for j in i + 1..k {
            if inc(i, j) && (j + 1..k).any(|l| inc(i, l) && inc(j, l)) {
                return false;
            }
        }
    }
    true
}

/// Whether both sides of every split are arcs of the cyclic `order`
/// (a permutation of ground indices).
pub fn is_circular(s: &SplitSystem, order: &[usize]) -> Result<bool> {
    let n = s.ground().len();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::InvalidOrder(format!(
            "expected a permutation of the {n} ground elements"
        )));
    }
    Ok(s.splits().iter().all(|sp| {
        let changes = (0..n)
            .filter(|&i| sp.side_a().contains(order[i]) != sp.side_a().contains(order[(i + 1) % n]))
            .count();
        changes <= 2
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build;

    fn grid(a: usize, b: usize) -> Graph {
        build::product(&build::path(a), &build::path(b))
    }

    /// Θ straight from the definition: xy Θ uv iff d(x,u)+d(y,v) ≠ d(x,v)+d(y,u).
    fn theta_by_definition(g: &Graph) -> Vec<Vec<(usize, usize)>> {
        let m = Metric::new(g).unwrap();
        let edges = g.edges();
        let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
        'outer: for &(x, y) in &edges {
            for c in classes.iter_mut() {
                let (u, v) = c[0];
                if m.d(x, u) + m.d(y, v) != m.d(x, v) + m.d(y, u) {
                    c.push((x, y));
                    continue 'outer;
                }
            }
            classes.push(vec![(x, y)]);
        }
        classes
    }

    fn class_partition(g: &Graph, t: &ThetaClasses) -> Vec<Vec<(usize, usize)>> {
        let edges = g.edges();
        let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t.len()];
        for (i, &e) in edges.iter().enumerate() {
            out[t.edge_class[i]].push(e);
        }
        out
    }

    #[test]
    fn theta_class_counts() {
        let c4 = theta_classes(&build::cycle(4)).unwrap();
        assert_eq!(c4.len(), 2);
        assert!(c4.classes.iter().all(|c| c.edges.len() == 2));
        let tree = build::star(5);
        assert_eq!(theta_classes(&tree).unwrap().len(), 5);
        let g = grid(3, 3);
        let t = theta_classes(&g).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.classes.iter().all(|c| c.edges.len() == 3));
    }

    #[test]
    fn psi_closure_matches_definition() {
        for g in [grid(3, 4), build::hypercube(3), build::star(3), grid(2, 5), build::product(&build::star(3), &build::path(2))] {
            let t = theta_classes(&g).unwrap();
            assert_eq!(class_partition(&g, &t), theta_by_definition(&g));
        }
    }

    #[test]
    fn non_median_is_rejected() {
        assert!(matches!(theta_classes(&build::cycle(6)), Err(Error::NotMedian(..))));
        assert!(matches!(theta_classes(&build::complete_bipartite(2, 3)), Err(Error::NotMedian(..))));
    }

    #[test]
    fn halfspaces() {
        let s = halfspace_system(&build::cycle(4)).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.splits().iter().all(|sp| sp.side_a().count_ones(..) == 2));
        let s = halfspace_system(&build::star(3)).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.splits().iter().all(|sp| sp.is_trivial()));
        assert!(s.separates_points());
    }

    #[test]
    fn split_distance_identity() {
        let g = grid(3, 4);
        let s = halfspace_system(&g).unwrap();
        let m = Metric::new(&g).unwrap();
        for u in 0..g.len() {
            for v in 0..g.len() {
                let k = s.splits().iter().filter(|sp| sp.separates(u, v)).count();
                assert_eq!(k as u32, m.d(u, v));
            }
        }
    }

    #[test]
    fn zones() {
        let c4 = build::cycle(4);
        let z = zone(&c4, 0, 1).unwrap();
        assert_eq!(z.near.len(), 2);
        let g = grid(3, 3);
        let (u, v) = (g.index_of("p0|p1").unwrap(), g.index_of("p1|p1").unwrap());
        let z = zone(&g, u, v).unwrap();
        assert_eq!(z.near.len(), 3);
        assert!(z.near.contains(&u) && z.far.contains(&v));
        for (a, b) in z.rungs() {
            assert!(g.has_edge(a, b));
        }
        let ladder = grid(2, 4);
        let z = zone(&ladder, 0, 4).unwrap();
        assert_eq!(z.near.len() + z.far.len(), ladder.len());
    }

    #[test]
    fn zone_failure_on_cube() {
        // Every class of the cube has rung endpoints forming a 4-cycle.
        let q = build::hypercube(3);
        assert!(matches!(zone(&q, 0, 1), Err(Error::NotLadder(..))));
    }

    #[test]
    fn incompatibility_examples() {
        let tree = halfspace_system(&build::star(4)).unwrap();
        assert_eq!(incompatibility_graph(&tree).edge_count(), 0);
        assert!(is_two_compatible(&tree));
        let g = halfspace_system(&grid(3, 3)).unwrap();
        assert!(crate::graph::are_isomorphic(&incompatibility_graph(&g), &build::cycle(4)));
        assert!(is_two_compatible(&g));
        let q = halfspace_system(&build::hypercube(3)).unwrap();
        assert!(!is_two_compatible(&q));
        assert_eq!(compatibility_graph(&q).edge_count(), 0);
    }

    #[test]
    fn circularity() {
        let ground: Vec<String> = (1..=4).map(|i| i.to_string()).collect();
        let mk = |xs: &[usize]| Split::new(xs.iter().copied().collect(), 4).unwrap();
        let s = SplitSystem::new(ground.clone(), vec![mk(&[0, 1]), mk(&[1, 2])]).unwrap();
        assert!(is_circular(&s, &[0, 1, 2, 3]).unwrap());
        let s = SplitSystem::new(ground, vec![mk(&[0, 2])]).unwrap();
        assert!(!is_circular(&s, &[0, 1, 2, 3]).unwrap());
        assert!(is_circular(&s, &[0, 2, 1, 3]).unwrap());
        assert!(matches!(is_circular(&s, &[0, 0, 1, 2]), Err(Error::InvalidOrder(_))));
    }

    #[test]
    fn grid_boundary_trace_is_circular() {
        let g = grid(3, 3);
        let s = halfspace_system(&g).unwrap();
        let ring = ["p0|p0", "p0|p1", "p0|p2", "p1|p2", "p2|p2", "p2|p1", "p2|p0", "p1|p0"]
            .map(|n| g.index_of(n).unwrap());
        let t = s.trace(&ring).unwrap();
        assert_eq!(t.len(), 4);
        let order: Vec<usize> = (0..8).collect();
        assert!(is_circular(&t, &order).unwrap());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = halfspace_system(&grid(2, 3)).unwrap();
        let j = s.to_json();
        assert_eq!(SplitSystem::from_json(&j).unwrap(), s);
        let bad = SplitSystemJson {
            ground: vec!["a".into(), "b".into()],
            splits: vec![[vec!["a".into(), "b".into()], vec![]]],
        };
        assert!(matches!(SplitSystem::from_json(&bad), Err(Error::InvalidSplit(_))));
        let dup = SplitSystemJson {
            ground: vec!["a".into(), "b".into()],
            splits: vec![[vec!["a".into()], vec!["b".into()]], [vec!["b".into()], vec!["a".into()]]],
        };
        assert!(matches!(SplitSystem::from_json(&dup), Err(Error::InvalidSplit(_))));
    }
}
