//! Graph isomorphism by color refinement plus distance-checked backtracking.
//!
//! Vertices start colored by their sorted distance profile, colors are
//! refined by neighbor multisets, and the search only pairs same-colored
//! vertices whose distances to every already-mapped vertex agree. A
//! complete distance-preserving map is an isomorphism.

use std::collections::HashMap;

use super::metric::bfs_distances;
use super::{DistanceMatrix, Graph};

fn refine(g: &Graph, h: &Graph, dg: &DistanceMatrix, dh: &DistanceMatrix) -> (Vec<usize>, Vec<usize>) {
    let profile = |d: &DistanceMatrix, v: usize| {
        let mut row = d.row(v).to_vec();
        row.sort_unstable();
        row
    };
    let mut dict: HashMap<Vec<u32>, usize> = HashMap::new();
    let color_of = |key: Vec<u32>, dict: &mut HashMap<Vec<u32>, usize>| {
        let next = dict.len();
        *dict.entry(key).or_insert(next)
    };
    let mut cg: Vec<usize> = (0..g.len()).map(|v| color_of(profile(dg, v), &mut dict)).collect();
    let mut ch: Vec<usize> = (0..h.len()).map(|v| color_of(profile(dh, v), &mut dict)).collect();
    let mut classes = dict.len();
    loop {
        let mut dict: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let step = |graph: &Graph, col: &[usize], dict: &mut HashMap<(usize, Vec<usize>), usize>| {
            (0..graph.len())
                .map(|v| {
                    let mut nb: Vec<usize> = graph.neighbors(v).iter().map(|&w| col[w]).collect();
                    nb.sort_unstable();
                    let next = dict.len();
                    *dict.entry((col[v], nb)).or_insert(next)
                })
                .collect::<Vec<_>>()
        };
        let ng = step(g, &cg, &mut dict);
        let nh = step(h, &ch, &mut dict);
        cg = ng;
        ch = nh;
        if dict.len() == classes {
            break;
        }
        classes = dict.len();
    }
    (cg, ch)
}

/// A map from the vertices of `g` to those of `h` preserving adjacency, if
/// one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.len() != h.len() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let dg = bfs_distances(g);
    let dh = bfs_distances(h);
    let (cg, ch) = refine(g, h, &dg, &dh);
    let mut hist: HashMap<usize, isize> = HashMap::new();
    for &c in &cg {
        *hist.entry(c).or_default() += 1;
    }
    for &c in &ch {
        *hist.entry(c).or_default() -= 1;
    }
    if hist.values().any(|&x| x != 0) {
        return None;
    }
    let class_size = |c: usize| cg.iter().filter(|&&x| x == c).count();
    // Rarest colors first, then grow along adjacency so distance checks bite.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let seed = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (class_size(cg[v]), v))
            .expect("unplaced vertex");
        let mut queue = vec![seed];
        placed[seed] = true;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let mut nb: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| !placed[w]).collect();
            nb.sort_by_key(|&w| (class_size(cg[w]), w));
            for w in nb {
                placed[w] = true;
                queue.push(w);
            }
        }
        order.extend(queue);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(0, &order, &cg, &ch, &dg, &dh, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    depth: usize,
    order: &[usize],
    cg: &[usize],
    ch: &[usize],
    dg: &DistanceMatrix,
    dh: &DistanceMatrix,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for cand in 0..ch.len() {
        if used[cand] || ch[cand] != cg[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| dg.get(u, v) == dh.get(map[u], cand));
        if !consistent {
            continue;
        }
        map[v] = cand;
        used[cand] = true;
        if search(depth + 1, order, cg, ch, dg, dh, map, used) {
            return true;
        }
        used[cand] = false;
        map[v] = usize::MAX;
    }
    false
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build;

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        let names: Vec<String> = (0..g.len()).map(|i| format!("x{i}")).collect();
        Graph::from_index_edges(names, g.edges().into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap()
    }

    #[test]
    fn permuted_copies_are_isomorphic() {
        let g = build::product(&build::path(3), &build::path(4));
        let perm: Vec<usize> = (0..g.len()).map(|i| (i * 5) % g.len()).collect();
        let h = relabel(&g, &perm);
        let map = find_isomorphism(&g, &h).unwrap();
        for (u, v) in g.edges() {
            assert!(h.has_edge(map[u], map[v]));
        }
    }

    #[test]
    fn distinguishes_same_degree_sequences() {
        // C6 versus two triangles: both 2-regular on six vertices.
        let c6 = build::cycle(6);
        let two_triangles = Graph::from_index_edges(
            (0..6).map(|i| i.to_string()),
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
        )
        .unwrap();
        assert!(!are_isomorphic(&c6, &two_triangles));
        assert!(!are_isomorphic(&build::path(4), &build::star(3)));
        assert!(are_isomorphic(&build::cycle(4), &build::complete_bipartite(2, 2)));
    }

    #[test]
    fn cube_is_k2_times_c4() {
        let q3 = build::hypercube(3);
        let prism = build::product(&build::path(2), &build::cycle(4));
        assert!(are_isomorphic(&q3, &prism));
    }
}
