//! Minimum median-generating sets and hull parameters of squaregraphs.

pub mod matching;

use serde::Serialize;

use crate::embedding::color_with;
use crate::error::{Error, Result};
use crate::graph::{blocks, Graph, Metric, VertexSet};
use crate::recognition::{classify_rims, require_squaregraph, RimKind};
use crate::splits::{
    as_path, compatibility_graph, halfspace_system_from, incompatibility_graph, theta_classes_with, SplitSystem,
};

/// Vertex cap for the exhaustive oracles.
pub const BRUTE_CAP: usize = 14;
/// Split cap for exact compatibility statistics.
pub const STATS_CAP: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerLine {
    /// Vertices in path order, starting at the lower-indexed endpoint.
    pub path: Vec<usize>,
    /// The two halfspaces as `(split, side)`.
    pub halfspaces: [(usize, usize); 2],
}

fn split_system(g: &Graph) -> Result<SplitSystem> {
    let m = Metric::new(g)?;
    let theta = theta_classes_with(&m)?;
    Ok(halfspace_system_from(g, &theta))
}

fn inner_flags(g: &Graph) -> Vec<bool> {
    let rims = classify_rims(g);
    (0..g.len()).map(|v| rims.kind(v) == RimKind::CogwheelHub).collect()
}

/// Ids of the blocks with at least three vertices that hold each vertex.
fn block_ids(g: &Graph) -> Vec<Vec<usize>> {
    let mut ids = vec![Vec::new(); g.len()];
    for (b, block) in blocks(g).iter().enumerate().filter(|(_, b)| b.len() >= 3) {
        for &v in block {
            ids[v].push(b);
        }
    }
    ids
}

fn is_line_shape(g: &Graph, path: &[usize], inner: &[bool], ids: &[Vec<usize>]) -> bool {
    let (first, last) = (path[0], path[path.len() - 1]);
    let ends_ok = [first, last].iter().all(|&v| !inner[v] && g.degree(v) == 3);
    let mid_ok = path[1..path.len() - 1].iter().all(|&v| inner[v] && g.degree(v) == 4);
    let in_block = ids[first]
        .iter()
        .any(|b| path.iter().all(|&v| ids[v].contains(b)));
    path.len() >= 2 && ends_ok && mid_ok && in_block
}

/// All inner lines: convex paths between degree-3 boundary vertices through
/// degree-4 inner vertices, found as intersections of two halfspaces.
pub fn inner_lines(g: &Graph) -> Result<Vec<InnerLine>> {
    require_squaregraph(g)?;
    let s = split_system(g)?;
    let inner = inner_flags(g);
    let ids = block_ids(g);
    let mut lines: Vec<InnerLine> = Vec::new();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let mut both = s.splits()[i].side(a);
                both.intersect_with(&s.splits()[j].side(b));
                let vs: Vec<usize> = both.ones().collect();
                if vs.len() < 2 {
                    continue;
                }
                let Some(mut path) = as_path(g, &vs) else { continue };
                if !is_line_shape(g, &path, &inner, &ids) || seen.contains(&vs) {
                    continue;
                }
                if path[0] > path[path.len() - 1] {
                    path.reverse();
                }
                seen.push(vs);
                lines.push(InnerLine { path, halfspaces: [(i, a), (j, b)] });
            }
        }
    }
    lines.sort_by(|x, y| x.path.cmp(&y.path));
    Ok(lines)
}

/// Nodes are inner lines, adjacent when the lines share a vertex.
pub fn cross_graph(lines: &[InnerLine]) -> Graph {
    let mut edges = Vec::new();
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            if lines[a].path.iter().any(|v| lines[b].path.contains(v)) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_index_edges((0..lines.len()).map(|i| format!("l{i}")), edges).expect("distinct line names")
}

#[derive(Clone, Debug)]
pub struct GeneratingSet {
    pub vertices: Vec<usize>,
    pub lines: Vec<InnerLine>,
    /// Maximum matching in the cross graph, as pairs of line indices.
    pub matching: Vec<(usize, usize)>,
}

/// Minimum median-generating set: the vertices of degree at most two plus one
/// vertex per matched pair or unmatched inner line. Checked to generate.
pub fn min_generating_set(g: &Graph) -> Result<GeneratingSet> {
    let lines = inner_lines(g)?;
    let cross = cross_graph(&lines);
    let matching = matching::maximum_matching(&cross);
    let mut x = VertexSet::with_capacity(g.len());
    for v in (0..g.len()).filter(|&v| g.degree(v) <= 2) {
        x.insert(v);
    }
    let mut covered = vec![false; lines.len()];
    for &(a, b) in &matching {
        let shared = *lines[a].path.iter().find(|v| lines[b].path.contains(v)).expect("crossing lines share a vertex");
        x.insert(shared);
        covered[a] = true;
        covered[b] = true;
    }
    for (l, line) in lines.iter().enumerate() {
        if !covered[l] && !line.path.iter().any(|&v| x.contains(v)) {
            x.insert(line.path[0]);
        }
    }
    let m = Metric::new(g)?;
    if m.median_closure(&x).count_ones(..) != g.len() {
        return Err(Error::Invariant("generating set does not median-generate the graph".into()));
    }
    Ok(GeneratingSet { vertices: x.ones().collect(), lines, matching })
}

/// Calls `f` on each `k`-subset of `0..n` in lexicographic order until it
/// returns true.
fn first_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return Some(idx);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

fn smallest_generating(g: &Graph, cap: usize, closure: impl Fn(&VertexSet) -> VertexSet) -> Result<Vec<usize>> {
    let n = g.len();
    if n > cap {
        return Err(Error::TooManyVertices { found: n, cap });
    }
    for k in 0..=n {
        let hit = first_subset(n, k, |sub| {
            let mut x = VertexSet::with_capacity(n);
            sub.iter().for_each(|&v| x.insert(v));
            closure(&x).count_ones(..) == n
        });
        if let Some(sub) = hit {
            return Ok(sub);
        }
    }
    unreachable!("the full vertex set generates itself")
}

/// Smallest median-generating set by exhaustive search in order of size.
pub fn brute_min_genset(g: &Graph, bound: usize) -> Result<Vec<usize>> {
    let cap = bound.min(BRUTE_CAP);
    if g.len() > cap {
        return Err(Error::TooManyVertices { found: g.len(), cap });
    }
    let m = Metric::new(g)?;
    if let Some((a, b, c)) = m.median_violation() {
        return Err(Error::NotMedian(g.name(a).into(), g.name(b).into(), g.name(c).into()));
    }
    smallest_generating(g, cap, |x| m.median_closure(x))
}

/// Smallest set whose convex hull is everything, by exhaustive search.
pub fn brute_hull_number(g: &Graph) -> Result<usize> {
    let m = Metric::new(g)?;
    Ok(smallest_generating(g, BRUTE_CAP, |x| m.convex_hull(x))?.len().max(1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionShape {
    Cycle,
    Paths,
}

#[derive(Clone, Debug)]
pub struct HullReport {
    pub minimal: Vec<VertexSet>,
    /// Intersection graph of the minimal halfspaces, nodes `m{i}`.
    pub intersection: Graph,
    pub shape: IntersectionShape,
    pub h: usize,
    pub s: usize,
}

/// Components of `g` as vertex lists.
fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.len()];
    let mut out = Vec::new();
    for r in 0..g.len() {
        if comp[r] != usize::MAX {
            continue;
        }
        let mut stack = vec![r];
        comp[r] = out.len();
        let mut members = Vec::new();
        while let Some(v) = stack.pop() {
            members.push(v);
            for &w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = out.len();
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Hull number and star-contraction number read off the intersection graph
/// of minimal halfspaces, which is a single cycle or a union of paths.
pub fn hull_report(g: &Graph) -> Result<HullReport> {
    require_squaregraph(g)?;
    let s = split_system(g)?;
    let halves: Vec<VertexSet> = s.splits().iter().flat_map(|sp| [sp.side(0), sp.side(1)]).collect();
    let minimal: Vec<VertexSet> = halves
        .iter()
        .filter(|h| !halves.iter().any(|o| o != *h && o.is_subset(h)))
        .cloned()
        .collect();
    let mut edges = Vec::new();
    for a in 0..minimal.len() {
        for b in a + 1..minimal.len() {
            if !minimal[a].is_disjoint(&minimal[b]) {
                edges.push((a, b));
            }
        }
    }
    let inter = Graph::from_index_edges((0..minimal.len()).map(|i| format!("m{i}")), edges)?;
    let comps = components(&inter);
    let is_cycle = comps.len() == 1
        && inter.len() >= 3
        && (0..inter.len()).all(|v| inter.degree(v) == 2);
    let (shape, h, s) = if is_cycle {
        let n = inter.len();
        (IntersectionShape::Cycle, n.div_ceil(2), n / 2)
    } else {
        let mut h = 0;
        for c in &comps {
            let edges_in = c.iter().map(|&v| inter.degree(v)).sum::<usize>() / 2;
            if edges_in + 1 != c.len() || c.iter().any(|&v| inter.degree(v) > 2) {
                return Err(Error::Invariant("intersection graph is neither a cycle nor paths".into()));
            }
            h += c.len().div_ceil(2);
        }
        (IntersectionShape::Paths, h, h)
    };
    // A single vertex needs itself to span its hull.
    let h = if g.len() == 1 { 1 } else { h };
    Ok(HullReport { minimal, intersection: inter, shape, h, s })
}

/// Largest independent set size, by branching on a vertex of maximum degree.
pub fn independence_number(g: &Graph) -> usize {
    fn go(g: &Graph, alive: &mut Vec<bool>) -> usize {
        let pick = (0..g.len())
            .filter(|&v| alive[v])
            .max_by_key(|&v| (g.neighbors(v).iter().filter(|&&w| alive[w]).count(), std::cmp::Reverse(v)));
        let Some(v) = pick else { return 0 };
        let live_nb: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
        alive[v] = false;
        if live_nb.len() <= 1 {
            // Some maximum independent set takes a vertex of degree at most one.
            for &w in &live_nb {
                alive[w] = false;
            }
            let r = 1 + go(g, alive);
            for &w in &live_nb {
                alive[w] = true;
            }
            alive[v] = true;
            return r;
        }
        let without = go(g, alive);
        for &w in &live_nb {
            alive[w] = false;
        }
        let with = 1 + go(g, alive);
        for &w in &live_nb {
            alive[w] = true;
        }
        alive[v] = true;
        without.max(with)
    }
    go(g, &mut vec![true; g.len()])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityStats {
    /// Clique number of the compatibility graph.
    pub t: usize,
    /// Chromatic number of the compatibility graph.
    pub c: usize,
}

/// Clique and chromatic numbers of the split compatibility graph, both exact.
pub fn compatibility_stats(g: &Graph) -> Result<CompatibilityStats> {
    require_squaregraph(g)?;
    let s = split_system(g)?;
    if s.len() > STATS_CAP {
        return Err(Error::TooManySplits { found: s.len(), cap: STATS_CAP });
    }
    let t = independence_number(&incompatibility_graph(&s));
    let compat = compatibility_graph(&s);
    let c = if s.is_empty() {
        0
    } else {
        (t.max(1)..=s.len())
            .find(|&k| color_with(&compat, k).is_some())
            .expect("n colors always suffice")
    };
    Ok(CompatibilityStats { t, c })
}

/// The first cube found, as eight vertices.
fn find_cube(g: &Graph) -> Option<Vec<usize>> {
    let other_common = |a: usize, b: usize, not: usize| -> Option<usize> {
        g.neighbors(a).iter().copied().find(|&w| w != not && g.has_edge(w, b))
    };
    for u in 0..g.len() {
        let nb = g.neighbors(u);
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                for &c in &nb[j + 1..] {
                    let (Some(ab), Some(bc), Some(ac)) =
                        (other_common(a, b, u), other_common(b, c, u), other_common(a, c, u))
                    else {
                        continue;
                    };
                    if let Some(&w) = g.neighbors(ab).iter().find(|&&w| w != a && w != b && g.has_edge(w, bc) && g.has_edge(w, ac)) {
                        return Some(vec![u, a, b, c, ab, bc, ac, w]);
                    }
                }
            }
        }
    }
    None
}

/// Checks that distance vectors to the vertices of degree at most two
/// identify the vertices, and that each is a minimal parity-integer form.
pub fn parity_form_check(g: &Graph) -> Result<bool> {
    let m = Metric::new(g)?;
    if let Some((a, b, c)) = m.median_violation() {
        return Err(Error::NotMedian(g.name(a).into(), g.name(b).into(), g.name(c).into()));
    }
    if let Some(cube) = find_cube(g) {
        return Err(Error::NotCubeFree(cube.iter().map(|&v| g.name(v).to_string()).collect()));
    }
    let x: Vec<usize> = (0..g.len()).filter(|&v| g.degree(v) <= 2).collect();
    let forms: Vec<Vec<u32>> = (0..g.len()).map(|v| x.iter().map(|&p| m.d(v, p)).collect()).collect();
    let mut sorted = forms.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != forms.len() {
        return Ok(false);
    }
    let feasible = |f: &[u32]| {
        (0..x.len()).all(|i| {
            (0..x.len()).all(|j| {
                let d = m.d(x[i], x[j]);
                f[i] + f[j] >= d && (f[i] + f[j] + d).is_multiple_of(2)
            })
        })
    };
    for f in &forms {
        if !feasible(f) {
            return Ok(false);
        }
        for i in 0..x.len() {
            if f[i] >= 2 {
                let mut lower = f.clone();
                lower[i] -= 2;
                if feasible(&lower) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cogwheel, grid, simplex_graph};
    use crate::graph::build;

    fn names(g: &Graph, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| g.name(v).to_string()).collect()
    }

    /// Oracle: inner lines straight from the definition, over all pairs of
    /// degree-3 boundary vertices whose interval is a path that no neighbor
    /// of an endpoint extends to a longer convex path.
    fn lines_by_definition(g: &Graph) -> Vec<Vec<usize>> {
        let m = Metric::new(g).unwrap();
        let inner = inner_flags(g);
        let ids = block_ids(g);
        let mut out = Vec::new();
        for u in 0..g.len() {
            for v in u + 1..g.len() {
                let iv: Vec<usize> = m.interval(u, v).ones().collect();
                if iv.len() as u32 != m.d(u, v) + 1 {
                    continue;
                }
                let mut path = iv.clone();
                path.sort_by_key(|&w| m.d(u, w));
                let extends = |end: usize, other: usize| {
                    g.neighbors(end).iter().any(|&w| {
                        m.d(w, other) == m.d(u, v) + 1 && m.interval(w, other).count_ones(..) as u32 == m.d(u, v) + 2
                    })
                };
                if is_line_shape(g, &path, &inner, &ids) && !extends(u, v) && !extends(v, u) {
                    out.push(path);
                }
            }
        }
        out.sort();
        out
    }

    fn domino() -> Graph {
        grid(2, 3).unwrap()
    }

    #[test]
    fn inner_line_examples() {
        assert!(inner_lines(&build::cycle(4)).unwrap().is_empty());
        let d = domino();
        let lines = inner_lines(&d).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(names(&d, &lines[0].path), ["0,1", "1,1"]);
        let g = grid(3, 3).unwrap();
        let lines = inner_lines(&g).unwrap();
        assert_eq!(lines.len(), 2);
        assert!(lines.iter().all(|l| l.path.contains(&g.index_of("1,1").unwrap())));
        for g in [d, g, grid(4, 5).unwrap(), cogwheel(6).unwrap(), build::star(3)] {
            let found: Vec<Vec<usize>> = inner_lines(&g).unwrap().into_iter().map(|l| l.path).collect();
            assert_eq!(found, lines_by_definition(&g));
        }
    }

    #[test]
    fn generating_sets() {
        let c4 = build::cycle(4);
        assert_eq!(min_generating_set(&c4).unwrap().vertices.len(), 4);
        let d = domino();
        assert_eq!(min_generating_set(&d).unwrap().vertices.len(), 5);
        assert_eq!(brute_min_genset(&d, 14).unwrap().len(), 5);
        let g = grid(3, 3).unwrap();
        let x = min_generating_set(&g).unwrap();
        assert_eq!(x.vertices.len(), 5);
        assert!(x.vertices.contains(&g.index_of("1,1").unwrap()));
        assert_eq!(brute_min_genset(&g, 14).unwrap().len(), 5);
        for g in [grid(3, 4).unwrap(), cogwheel(5).unwrap(), cogwheel(6).unwrap(), grid(2, 5).unwrap()] {
            assert_eq!(min_generating_set(&g).unwrap().vertices.len(), brute_min_genset(&g, 14).unwrap().len());
        }
    }

    #[test]
    fn brute_oracle_examples() {
        let tree = build::star(4);
        let leaves: Vec<usize> = (0..tree.len()).filter(|&v| tree.degree(v) == 1).collect();
        assert_eq!(brute_min_genset(&tree, 14).unwrap(), leaves);
        assert_eq!(brute_min_genset(&build::cycle(4), 14).unwrap().len(), 4);
        // Triangle with a pendant at each corner: the three pendant singletons
        // have degree 2 and are never medians, so they join the three pendant
        // edges and the one covering clique.
        let f = Graph::from_index_edges(["a", "b", "c", "a'", "b'", "c'"], [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        let k = simplex_graph(&f).unwrap();
        assert_eq!(k.len(), 14);
        let x = brute_min_genset(&k, 14).unwrap();
        assert_eq!(x.len(), 7);
        for p in ["{a'}", "{b'}", "{c'}"] {
            assert_eq!(k.degree(k.index_of(p).unwrap()), 2);
            assert!(x.contains(&k.index_of(p).unwrap()));
        }
        assert!(matches!(brute_min_genset(&grid(3, 5).unwrap(), 14), Err(Error::TooManyVertices { found: 15, cap: 14 })));
        assert!(matches!(brute_min_genset(&build::cycle(6), 14), Err(Error::NotMedian(..))));
    }

    #[test]
    fn hull_examples() {
        let r = hull_report(&build::cycle(4)).unwrap();
        assert_eq!((r.shape.clone(), r.intersection.len(), r.h, r.s), (IntersectionShape::Cycle, 4, 2, 2));
        let r = hull_report(&cogwheel(5).unwrap()).unwrap();
        assert_eq!((r.shape.clone(), r.intersection.len(), r.h, r.s), (IntersectionShape::Cycle, 5, 3, 2));
        let r = hull_report(&grid(3, 3).unwrap()).unwrap();
        assert_eq!((r.intersection.len(), r.h, r.s), (4, 2, 2));
        let r = hull_report(&build::path(2)).unwrap();
        assert_eq!((r.shape.clone(), r.h, r.s), (IntersectionShape::Paths, 2, 2));
        let r = hull_report(&Graph::new(["v"]).unwrap()).unwrap();
        assert_eq!((r.h, r.s), (1, 0));
        for g in [build::cycle(4), cogwheel(5).unwrap(), grid(3, 3).unwrap(), build::path(2), build::star(3), domino(), cogwheel(6).unwrap()] {
            let r = hull_report(&g).unwrap();
            assert_eq!(r.h, brute_hull_number(&g).unwrap());
            assert_eq!(r.s, independence_number(&r.intersection));
        }
    }

    #[test]
    fn compatibility_examples() {
        let tree = build::star(5);
        assert_eq!(compatibility_stats(&tree).unwrap(), CompatibilityStats { t: 5, c: 5 });
        let c5 = simplex_graph(&build::cycle(5)).unwrap();
        assert_eq!(compatibility_stats(&c5).unwrap(), CompatibilityStats { t: 2, c: 3 });
        assert_eq!(compatibility_stats(&build::cycle(4)).unwrap(), CompatibilityStats { t: 1, c: 1 });
        let g = grid(3, 4).unwrap();
        let st = compatibility_stats(&g).unwrap();
        let s = halfspace_system_from(&g, &crate::splits::theta_classes(&g).unwrap());
        let nu = matching::maximum_matching(&incompatibility_graph(&s)).len();
        assert_eq!(st.c, s.len() - nu);
        assert_eq!(st.t, st.c);
    }

    #[test]
    fn parity_forms() {
        assert!(parity_form_check(&build::star(4)).unwrap());
        assert!(parity_form_check(&grid(3, 3).unwrap()).unwrap());
        assert!(parity_form_check(&cogwheel(7).unwrap()).unwrap());
        assert!(matches!(parity_form_check(&build::hypercube(3)), Err(Error::NotCubeFree(_))));
        assert!(matches!(parity_form_check(&build::cycle(6)), Err(Error::NotMedian(..))));
    }

    #[test]
    fn independence_numbers() {
        assert_eq!(independence_number(&build::cycle(7)), 3);
        assert_eq!(independence_number(&build::complete(4)), 1);
        assert_eq!(independence_number(&build::star(6)), 6);
        assert_eq!(independence_number(&build::hypercube(3)), 4);
    }
}
