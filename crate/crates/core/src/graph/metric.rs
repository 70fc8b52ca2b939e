//! Shortest-path metric with intervals and medians on top.

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

const UNREACHABLE: u32 = u32::MAX;

/// Symmetric table of hop distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn eccentricity(&self, u: usize) -> u32 {
        self.row(u).iter().copied().max().unwrap_or(0)
    }
}

pub(crate) fn bfs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.len();
    let mut d = vec![UNREACHABLE; n * n];
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let du = row[u];
            for &w in g.neighbors(u) {
                if row[w] == UNREACHABLE {
                    row[w] = du + 1;
                    queue.push(w);
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

/// All-pairs distances by breadth-first layering from every vertex.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix> {
    let dm = bfs_distances(g);
    if let Some(v) = (0..g.len()).find(|&v| dm.get(0, v) == UNREACHABLE) {
        return Err(Error::Disconnected(g.name(0).into(), g.name(v).into()));
    }
    Ok(dm)
}

/// A connected graph paired with its distance matrix.
#[derive(Clone, Debug)]
pub struct Metric<'g> {
    g: &'g Graph,
    dist: DistanceMatrix,
}

impl<'g> Metric<'g> {
    pub fn new(g: &'g Graph) -> Result<Self> {
        Ok(Metric {
            g,
            dist: all_pairs_distances(g)?,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    #[inline]
    pub fn d(&self, u: usize, v: usize) -> u32 {
        self.dist.get(u, v)
    }

    #[inline]
    pub fn between(&self, u: usize, x: usize, v: usize) -> bool {
        self.d(u, x) + self.d(x, v) == self.d(u, v)
    }

    pub fn interval(&self, u: usize, v: usize) -> VertexSet {
        let mut s = VertexSet::with_capacity(self.g.len());
        s.extend((0..self.g.len()).filter(|&x| self.between(u, x, v)));
        s
    }

    /// All vertices lying on shortest paths between each pair of `a, b, c`.
    pub fn median_candidates(&self, a: usize, b: usize, c: usize) -> Vec<usize> {
        (0..self.g.len())
            .filter(|&x| self.between(a, x, b) && self.between(b, x, c) && self.between(a, x, c))
            .collect()
    }

    pub fn median(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        match self.median_candidates(a, b, c).as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// First triple (in index order) without a unique median, if any.
    ///
    /// Intervals are tabulated as bitsets so the O(n^3) triple sweep costs a
    /// few word operations per triple.
    pub fn median_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.g.len();
        let mut intervals = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                intervals.push(self.interval(u, v));
            }
        }
        let iv = |u: usize, v: usize| intervals[u * n + v].as_slice();
        for a in 0..n {
            for b in a + 1..n {
                let ab = iv(a, b);
                for c in b + 1..n {
                    let (bc, ac) = (iv(b, c), iv(a, c));
                    let count: u32 = ab
                        .iter()
                        .zip(bc)
                        .zip(ac)
                        .map(|((x, y), z)| (x & y & z).count_ones())
                        .sum();
                    if count != 1 {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_median(&self) -> bool {
        self.median_violation().is_none()
    }

    pub fn is_convex(&self, s: &VertexSet) -> bool {
        let members: Vec<usize> = s.ones().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if !self.interval(u, v).is_subset(s) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest superset of `s` closed under intervals.
    pub fn convex_hull(&self, s: &VertexSet) -> VertexSet {
        let mut hull = s.clone();
        hull.grow(self.g.len());
        let mut members: Vec<usize> = hull.ones().collect();
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            next += 1;
            for i in 0..next {
                let y = members[i];
                for z in self.interval(x, y).ones() {
                    if !hull.put(z) {
                        members.push(z);
                    }
                }
            }
        }
        hull
    }

    /// The gate of `x` in `s`: the member of `s` lying on a shortest path from
    /// `x` to every member of `s`. At most one vertex can qualify.
    pub fn gate(&self, x: usize, s: &VertexSet) -> Option<usize> {
        s.ones()
            .find(|&cand| s.ones().all(|y| self.between(x, cand, y)))
    }

    /// Whether every vertex of the graph has a gate in `s`.
    pub fn is_gated(&self, s: &VertexSet) -> bool {
        !s.is_clear() && (0..self.g.len()).all(|x| self.gate(x, s).is_some())
    }

    /// Fixpoint of adjoining medians of triples. Vertices of `x` whose triples
    /// lack a unique median contribute nothing for that triple.
    pub fn median_closure(&self, x: &VertexSet) -> VertexSet {
        let mut closed = x.clone();
        closed.grow(self.g.len());
        let mut members: Vec<usize> = closed.ones().collect();
        // Semi-naive: a triple is new iff its largest insertion index is new.
        let mut old = 0;
        while old < members.len() {
            let frontier = members.len();
            for k in old..frontier {
                for j in 0..k {
                    for i in 0..j {
                        let (a, b, c) = (members[i], members[j], members[k]);
                        if let Some(m) = self.median(a, b, c) {
                            if !closed.put(m) {
                                members.push(m);
                            }
                        }
                    }
                }
            }
            old = frontier;
        }
        closed
    }
}

pub fn interval(g: &Graph, u: usize, v: usize) -> Result<VertexSet> {
    check_ids(g, &[u, v])?;
    Ok(Metric::new(g)?.interval(u, v))
}

pub fn median(g: &Graph, a: usize, b: usize, c: usize) -> Result<Option<usize>> {
    check_ids(g, &[a, b, c])?;
    Ok(Metric::new(g)?.median(a, b, c))
}

/// Exhaustive triple check; disconnected graphs are not median.
pub fn is_median_graph(g: &Graph) -> bool {
    !g.is_empty() && Metric::new(g).map(|m| m.is_median()).unwrap_or(false)
}

pub fn convex_hull(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    Ok(Metric::new(g)?.convex_hull(s))
}

pub fn gate(g: &Graph, x: usize, s: &VertexSet) -> Result<Option<usize>> {
    check_ids(g, &[x])?;
    Ok(Metric::new(g)?.gate(x, s))
}

pub fn median_closure(g: &Graph, x: &VertexSet) -> Result<VertexSet> {
    Ok(Metric::new(g)?.median_closure(x))
}

fn check_ids(g: &Graph, ids: &[usize]) -> Result<()> {
    match ids.iter().find(|&&v| v >= g.len()) {
        Some(v) => Err(Error::UnknownVertex(format!("#{v}"))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build;

    fn grid3() -> Graph {
        build::product(&build::path(3), &build::path(3))
    }

    fn id(g: &Graph, name: &str) -> usize {
        g.index_of(name).unwrap()
    }

    #[test]
    fn distances_on_small_graphs() {
        let c4 = build::cycle(4);
        let d = all_pairs_distances(&c4).unwrap();
        assert_eq!(d.get(0, 2), 2);
        assert_eq!(d.get(0, 1), 1);
        let p = build::path(4);
        assert_eq!(all_pairs_distances(&p).unwrap().get(0, 3), 3);
        let g = grid3();
        let d = all_pairs_distances(&g).unwrap();
        assert_eq!(d.get(id(&g, "p0|p0"), id(&g, "p2|p2")), 4);
    }

    #[test]
    fn disconnected_graph_names_unreachable_pair() {
        let g = Graph::new(["a", "b"]).unwrap();
        match all_pairs_distances(&g) {
            Err(Error::Disconnected(a, b)) => assert_eq!((a.as_str(), b.as_str()), ("a", "b")),
            other => panic!("expected disconnected error, got {other:?}"),
        }
    }

    #[test]
    fn intervals() {
        let c4 = build::cycle(4);
        assert_eq!(interval(&c4, 1, 1).unwrap().ones().collect::<Vec<_>>(), [1]);
        assert_eq!(interval(&c4, 0, 2).unwrap().count_ones(..), 4);
        let g = grid3();
        let i = interval(&g, id(&g, "p0|p0"), id(&g, "p2|p2")).unwrap();
        assert_eq!(i.count_ones(..), 9);
        assert!(matches!(interval(&g, 0, 99), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn medians() {
        let c4 = build::cycle(4);
        assert_eq!(median(&c4, 0, 0, 1).unwrap(), Some(0));
        let c6 = build::cycle(6);
        assert_eq!(median(&c6, 0, 2, 4).unwrap(), None);
        let g = grid3();
        let m = median(&g, id(&g, "p0|p0"), id(&g, "p0|p2"), id(&g, "p2|p2")).unwrap();
        assert_eq!(m, Some(id(&g, "p0|p2")));
        let m = median(&g, id(&g, "p0|p0"), id(&g, "p2|p0"), id(&g, "p0|p2")).unwrap();
        assert_eq!(m, Some(id(&g, "p0|p0")));
    }

    #[test]
    fn median_graph_recognition() {
        assert!(is_median_graph(&build::star(4)));
        assert!(is_median_graph(&build::path(5)));
        assert!(is_median_graph(&build::hypercube(3)));
        assert!(is_median_graph(&grid3()));
        assert!(!is_median_graph(&build::complete_bipartite(2, 3)));
        assert!(!is_median_graph(&build::cycle(6)));
        assert!(!is_median_graph(&build::complete(3)));
    }

    #[test]
    fn hulls() {
        let g = grid3();
        let e = g.set_of([0, 1]);
        assert_eq!(convex_hull(&g, &e).unwrap(), e);
        let single = g.set_of([4]);
        assert_eq!(convex_hull(&g, &single).unwrap(), single);
        let corners = g.set_of([id(&g, "p0|p0"), id(&g, "p2|p2")]);
        assert_eq!(convex_hull(&g, &corners).unwrap().count_ones(..), 9);
    }

    #[test]
    fn gates() {
        let g = build::path(5);
        let s = g.set_of([2, 3, 4]);
        assert_eq!(gate(&g, 0, &s).unwrap(), Some(2));
        assert_eq!(gate(&g, 3, &s).unwrap(), Some(3));
        let c6 = build::cycle(6);
        let antipodes = c6.set_of([0, 3]);
        assert_eq!(gate(&c6, 1, &antipodes).unwrap(), None);
    }

    #[test]
    fn median_closures() {
        let c4 = build::cycle(4);
        assert_eq!(median_closure(&c4, &c4.vertex_set()).unwrap(), c4.vertex_set());
        let domino = build::product(&build::path(2), &build::path(3));
        let corners = domino.set_of(
            ["p0|p0", "p0|p2", "p1|p0", "p1|p2"].map(|n| id(&domino, n)),
        );
        assert_eq!(median_closure(&domino, &corners).unwrap().count_ones(..), 4);
        // Corner triples only ever produce corners; the two inner lines are
        // missed until one of their vertices is added.
        let g = grid3();
        let corners = g.set_of(["p0|p0", "p0|p2", "p2|p0", "p2|p2"].map(|n| id(&g, n)));
        assert_eq!(median_closure(&g, &corners).unwrap(), corners);
        let mut with_center = corners.clone();
        with_center.insert(id(&g, "p1|p1"));
        assert_eq!(median_closure(&g, &with_center).unwrap().count_ones(..), 9);
    }
}
