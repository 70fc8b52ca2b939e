//! Copair hypergraphs, the Helly triple test and Hellyfication of split
//! systems.
//!
//! A vertex of the Hellyfication is an orientation (one side per split)
//! whose chosen sides pairwise intersect. The consistent orientations are
//! connected under single flips, so they are enumerated by a search that
//! starts from the orientation of one ground element and never leaves the
//! consistent set. Cost is proportional to the output.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::splits::{Split, SplitSystem};

/// Splits per system the orientation search accepts.
pub const MAX_SPLITS: usize = 64;
/// Largest Hellyfication built before giving up.
pub const MAX_VERTICES: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopairHypergraph {
    pub ground: Vec<String>,
    /// Hyperedges `2k` and `2k + 1` are complementary.
    pub edges: Vec<VertexSet>,
}

impl CopairHypergraph {
    pub fn from_splits(s: &SplitSystem) -> Self {
        let edges = s
            .splits()
            .iter()
            .flat_map(|sp| [sp.side_a().clone(), sp.side_b()])
            .collect();
        CopairHypergraph { ground: s.ground().to_vec(), edges }
    }

    pub fn to_splits(&self) -> Result<SplitSystem> {
        let n = self.ground.len();
        let mut splits = Vec::new();
        for pair in self.edges.chunks(2) {
            let [a, b] = pair else {
                return Err(Error::InvalidSplit("odd number of hyperedges".into()));
            };
            let mut both = a.clone();
            both.grow(n);
            if !a.is_disjoint(b) || both.union_count(b) != n {
                return Err(Error::InvalidSplit("hyperedge pair is not complementary".into()));
            }
            splits.push(Split::new(a.clone(), n)?);
        }
        SplitSystem::new(self.ground.clone(), splits)
    }
}

/// Every ground triple: the hyperedges holding at least two of its members
/// have a common element.
pub fn is_helly(h: &CopairHypergraph) -> bool {
    helly_violation(h).is_none()
}

pub fn helly_violation(h: &CopairHypergraph) -> Option<(usize, usize, usize)> {
    let n = h.ground.len();
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                let mut common = VertexSet::with_capacity(n);
                common.insert_range(..);
                for e in &h.edges {
                    let hits = [u, v, w].iter().filter(|&&x| e.contains(x)).count();
                    if hits >= 2 {
                        common.intersect_with(e);
                    }
                }
                if common.is_clear() {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct HellyfiedGraph {
    pub graph: Graph,
    /// Vertex of each ground element.
    pub element: Vec<usize>,
    /// Orientation of every vertex: bit `k` set means side B of split `k`.
    pub orientation: Vec<u64>,
    /// Vertices not coming from ground elements.
    pub added: Vec<usize>,
}

impl HellyfiedGraph {
    /// Chosen sides of a vertex as labels `{k}a` / `{k}b`.
    pub fn transversal(&self, v: usize, splits: usize) -> Vec<String> {
        (0..splits)
            .map(|k| format!("{k}{}", if self.orientation[v] >> k & 1 == 1 { 'b' } else { 'a' }))
            .collect()
    }
}

/// Median graph of all pairwise-intersecting transversals of `s`. Ground
/// elements keep their names; added vertices are named by their sorted
/// transversal, e.g. `[0a,1b,2a]`.
pub fn hellyfy(s: &SplitSystem) -> Result<HellyfiedGraph> {
    let k = s.len();
    if k > MAX_SPLITS {
        return Err(Error::TooManySplits { found: k, cap: MAX_SPLITS });
    }
    if let Some((x, y)) = s.unseparated_pair() {
        return Err(Error::NotSeparating(s.ground()[x].clone(), s.ground()[y].clone()));
    }
    let n = s.ground().len();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let sides: Vec<[VertexSet; 2]> = s.splits().iter().map(|sp| [sp.side(0), sp.side(1)]).collect();
    // meets[i][b][j] = bitmask of sides of split j meeting side b of split i.
    let mut meets: Vec<[Vec<u8>; 2]> = (0..k).map(|_| [vec![0u8; k], vec![0u8; k]]).collect();
    for i in 0..k {
        for b in 0..2 {
            for j in 0..k {
                for c in 0..2 {
                    if !sides[i][b].is_disjoint(&sides[j][c]) {
                        meets[i][b][j] |= 1 << c;
                    }
                }
            }
        }
    }
    let bit = |o: u64, j: usize| (o >> j & 1) as usize;
    let orient = |x: usize| -> u64 {
        s.splits()
            .iter()
            .enumerate()
            .fold(0, |acc, (j, sp)| acc | (sp.side_of(x) as u64) << j)
    };
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut orientation = Vec::new();
    let mut element = Vec::with_capacity(n);
    for x in 0..n {
        let o = orient(x);
        index.insert(o, orientation.len());
        element.push(orientation.len());
        orientation.push(o);
    }
    // Search outward from element 0.
    let mut queue = vec![orientation[0]];
    let mut seen: std::collections::HashSet<u64> = std::collections::HashSet::from([orientation[0]]);
    let mut edges = Vec::new();
    let mut head = 0;
    while head < queue.len() {
        let o = queue[head];
        head += 1;
        for (i, row) in meets.iter().enumerate() {
            let nb = 1 - bit(o, i);
            let ok = (0..k).all(|j| j == i || row[nb][j] >> bit(o, j) & 1 == 1);
            if !ok {
                continue;
            }
            let p = o ^ (1 << i);
            if seen.insert(p) {
                if seen.len() > MAX_VERTICES {
                    return Err(Error::TooManyVertices { found: seen.len(), cap: MAX_VERTICES });
                }
                queue.push(p);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(p) {
                    e.insert(orientation.len());
                    orientation.push(p);
                }
            }
            if o < p {
                edges.push((index[&o], index[&p]));
            }
        }
    }
    let label = |o: u64| {
        let parts: Vec<String> = (0..k)
            .map(|j| format!("{j}{}", if bit(o, j) == 1 { 'b' } else { 'a' }))
            .collect();
        format!("[{}]", parts.join(","))
    };
    let names: Vec<String> = orientation
        .iter()
        .enumerate()
        .map(|(v, &o)| if v < n { s.ground()[v].clone() } else { label(o) })
        .collect();
    let mut taken: std::collections::HashSet<&str> = std::collections::HashSet::new();
    for name in &names {
        if !taken.insert(name) {
            return Err(Error::DuplicateVertex(name.clone()));
        }
    }
    let added = (n..orientation.len()).collect();
    let graph = Graph::from_index_edges(names, edges)?;
    Ok(HellyfiedGraph { graph, element, orientation, added })
}

/// Restriction of each split to `x`, dropping splits with an empty side.
pub fn trace(s: &SplitSystem, x: &[usize]) -> Result<SplitSystem> {
    s.trace(x)
}

/// All circular splits of `n` points on a circle: the arc `i..j` versus the
/// rest, for `0 <= i < j <= n - 1`, excluding the full circle.
pub fn circular_splits(n: usize) -> Vec<Split> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..=n {
            if j - i < n && (i > 0 || j < n) {
                let side: VertexSet = (i..j).collect();
                if let Ok(sp) = Split::new(side, n) {
                    if !out.contains(&sp) {
                        out.push(sp);
                    }
                }
            }
        }
    }
    out
}

/// Largest 2-compatible subsystem of the circular splits on `n` points,
/// by exhaustive branch and bound. Trivial splits cross nothing and are
/// always taken.
pub fn max_two_compatible_circular(n: usize) -> Result<(usize, SplitSystem)> {
    if !(3..=9).contains(&n) {
        return Err(Error::OutOfRange(format!("n = {n} outside 3..=9")));
    }
    let all = circular_splits(n);
    let (trivial, rest): (Vec<Split>, Vec<Split>) = all.into_iter().partition(|s| s.is_trivial());
    let m = rest.len();
    let inc: Vec<u64> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| rest[i].incompatible_with(&rest[j]))
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect();
    struct Search<'a> {
        inc: &'a [u64],
        best: u64,
        best_size: u32,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize, chosen: u64) {
            let m = self.inc.len();
            let size = chosen.count_ones();
            if size + (m - i) as u32 <= self.best_size {
                return;
            }
            if i == m {
                self.best = chosen;
                self.best_size = size;
                return;
            }
            let crossing = self.inc[i] & chosen;
            let triangle = (0..m).any(|x| crossing >> x & 1 == 1 && self.inc[x] & crossing != 0);
            if !triangle {
                self.go(i + 1, chosen | 1 << i);
            }
            self.go(i + 1, chosen);
        }
    }
    let mut search = Search { inc: &inc, best: 0, best_size: 0 };
    search.go(0, 0);
    let mut splits = trivial;
    splits.extend((0..m).filter(|&i| search.best >> i & 1 == 1).map(|i| rest[i].clone()));
    let size = splits.len();
    let ground = (1..=n).map(|i| i.to_string()).collect();
    Ok((size, SplitSystem::new(ground, splits)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{are_isomorphic, build, is_median_graph};
    use crate::recognition::check_squaregraph;
    use crate::splits::{halfspace_system, incompatibility_graph, is_two_compatible};

    fn system(n: usize, sides: &[&[usize]]) -> SplitSystem {
        let ground = (1..=n).map(|i| i.to_string()).collect();
        let splits = sides
            .iter()
            .map(|xs| Split::new(xs.iter().copied().collect(), n).unwrap())
            .collect();
        SplitSystem::new(ground, splits).unwrap()
    }

    /// Brute-force oracle: all 2^k orientations, kept when sides pairwise meet.
    fn brute_hellyfy(s: &SplitSystem) -> Graph {
        let k = s.len();
        let side = |j: usize, o: usize| s.splits()[j].side(o >> j & 1);
        let good: Vec<usize> = (0..1usize << k)
            .filter(|&o| (0..k).all(|i| (0..k).all(|j| !side(i, o).is_disjoint(&side(j, o)))))
            .collect();
        let mut edges = Vec::new();
        for (a, &x) in good.iter().enumerate() {
            for (b, &y) in good.iter().enumerate() {
                if a < b && (x ^ y).count_ones() == 1 {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_index_edges((0..good.len()).map(|i| i.to_string()), edges).unwrap()
    }

    #[test]
    fn helly_examples() {
        let one = system(3, &[&[0]]);
        assert!(is_helly(&CopairHypergraph::from_splits(&one)));
        let crossing = system(4, &[&[0, 1], &[0, 2], &[0, 3]]);
        let h = CopairHypergraph::from_splits(&crossing);
        assert!(!is_helly(&h));
        assert!(helly_violation(&h).is_some());
        let grid = build::product(&build::path(3), &build::path(4));
        assert!(is_helly(&CopairHypergraph::from_splits(&halfspace_system(&grid).unwrap())));
        assert_eq!(CopairHypergraph::from_splits(&crossing).to_splits().unwrap(), crossing);
    }

    #[test]
    fn three_singletons_give_a_star() {
        let s = system(3, &[&[0], &[1], &[2]]);
        let h = hellyfy(&s).unwrap();
        assert!(are_isomorphic(&h.graph, &build::star(3)));
        assert_eq!(h.added.len(), 1);
        assert_eq!(h.graph.name(h.added[0]), "[0b,1a,2a]");
    }

    #[test]
    fn buneman_tree_reconstruction() {
        // Five-leaf caterpillar: leaves a,b on x; c on y; d,e on z.
        let tree = Graph::from_edges(
            ["a", "b", "c", "d", "e", "x", "y", "z"],
            [("a", "x"), ("b", "x"), ("x", "y"), ("c", "y"), ("y", "z"), ("d", "z"), ("e", "z")],
        )
        .unwrap();
        let leaves: Vec<usize> = (0..5).collect();
        let s = halfspace_system(&tree).unwrap().trace(&leaves).unwrap();
        let h = hellyfy(&s).unwrap();
        assert!(are_isomorphic(&h.graph, &tree));
    }

    #[test]
    fn matches_brute_force_and_is_median() {
        let cases = [
            system(4, &[&[0, 1], &[1, 2]]),
            system(5, &[&[0], &[1], &[2], &[3], &[4], &[0, 1], &[1, 2], &[2, 3]]),
            system(6, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[0], &[1], &[2], &[3], &[4], &[5]]),
        ];
        for s in &cases {
            let h = hellyfy(s).unwrap();
            assert!(are_isomorphic(&h.graph, &brute_hellyfy(s)));
            assert!(is_median_graph(&h.graph));
            assert_eq!(halfspace_system(&h.graph).unwrap().len(), s.len());
            let back = halfspace_system(&h.graph).unwrap().trace(&h.element).unwrap();
            assert_eq!(back.len(), s.len());
        }
    }

    #[test]
    fn unseparated_input_is_rejected() {
        let s = system(3, &[&[0, 1]]);
        assert!(matches!(hellyfy(&s), Err(Error::NotSeparating(a, b)) if a == "1" && b == "2"));
    }

    #[test]
    fn circular_split_counts() {
        assert_eq!(circular_splits(7).len(), 21);
        assert_eq!(max_two_compatible_circular(3).unwrap().0, 3);
        assert_eq!(max_two_compatible_circular(4).unwrap().0, 6);
        assert!(max_two_compatible_circular(2).is_err());
        assert!(max_two_compatible_circular(10).is_err());
    }

    /// Oracle: every subset of the nontrivial circular splits.
    #[test]
    fn max_two_compatible_matches_subset_enumeration() {
        for n in 3..=6 {
            let all = circular_splits(n);
            let k = all.len();
            let mut best = 0;
            for mask in 0u32..1 << k {
                let chosen: Vec<Split> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
                let s = SplitSystem::new((0..n).map(|i| i.to_string()).collect(), chosen).unwrap();
                if is_two_compatible(&s) {
                    best = best.max(s.len());
                }
            }
            assert_eq!(max_two_compatible_circular(n).unwrap().0, best, "n = {n}");
        }
    }

    #[test]
    fn seven_points_eighteen_splits() {
        let (size, s) = max_two_compatible_circular(7).unwrap();
        assert_eq!(size, 18);
        assert!(is_two_compatible(&s));
        let h = hellyfy(&s).unwrap();
        assert!(check_squaregraph(&h.graph));
        assert_eq!(halfspace_system(&h.graph).unwrap().len(), 18);
        // Every edge is a bridge or lies on a 4-cycle.
        let g = &h.graph;
        for (u, v) in g.edges() {
            let on_square = g.neighbors(u).iter().any(|&a| {
                a != v && g.neighbors(v).iter().any(|&b| b != u && g.has_edge(a, b))
            });
            let rest: Vec<(usize, usize)> = g.edges().into_iter().filter(|&e| e != (u, v)).collect();
            let bridge = !Graph::from_index_edges(g.names().to_vec(), rest).unwrap().is_connected();
            assert!(on_square || bridge);
        }
        assert!(incompatibility_graph(&s).edge_count() > 0);
    }
}
