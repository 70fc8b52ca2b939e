//! Maximum cardinality matching in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

use crate::graph::Graph;

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Augmenting path search from the exposed vertex `root`; returns its far end.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom = vec![false; n];
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }
}

/// A maximum matching as a list of edges `(u, v)` with `u < v`, sorted.
pub fn maximum_matching(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.len();
    let mut b = Blossom {
        g,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    // Greedy start.
    for (u, v) in g.edges() {
        if b.mate[u] == NONE && b.mate[v] == NONE {
            b.mate[u] = v;
            b.mate[v] = u;
        }
    }
    for root in 0..n {
        if b.mate[root] != NONE {
            continue;
        }
        if let Some(mut v) = b.find_path(root) {
            while v != NONE {
                let pv = b.parent[v];
                let ppv = b.mate[pv];
                b.mate[v] = pv;
                b.mate[pv] = v;
                v = ppv;
            }
        }
    }
    let mut out: Vec<(usize, usize)> = (0..n).filter(|&u| b.mate[u] != NONE && u < b.mate[u]).map(|u| (u, b.mate[u])).collect();
    out.sort_unstable();
    out
}

/// Whether `m` is a set of pairwise disjoint edges of `g`.
pub fn is_matching(g: &Graph, m: &[(usize, usize)]) -> bool {
    let mut hit = vec![false; g.len()];
    m.iter().all(|&(u, v)| {
        let ok = g.has_edge(u, v) && !hit[u] && !hit[v];
        hit[u] = true;
        hit[v] = true;
        ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Lcg;
    use crate::graph::build;

    /// Oracle: best matching on the vertex subset `mask`, memoized over all subsets.
    fn brute(g: &Graph, mask: usize, memo: &mut [Option<usize>]) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(x) = memo[mask] {
            return x;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = brute(g, rest, memo);
        for &w in g.neighbors(v) {
            if rest & (1 << w) != 0 {
                best = best.max(1 + brute(g, rest & !(1 << w), memo));
            }
        }
        memo[mask] = Some(best);
        best
    }

    #[test]
    fn small_cases() {
        assert_eq!(maximum_matching(&build::cycle(5)).len(), 2);
        assert_eq!(maximum_matching(&build::cycle(6)).len(), 3);
        assert_eq!(maximum_matching(&build::star(5)).len(), 1);
        assert_eq!(maximum_matching(&build::complete(7)).len(), 3);
        assert_eq!(maximum_matching(&Graph::new(["x"]).unwrap()).len(), 0);
        // Two triangles joined by a path: needs blossom shrinking.
        let g = Graph::from_index_edges((0..8).map(|i| i.to_string()), [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)]).unwrap();
        assert_eq!(maximum_matching(&g).len(), 4);
    }

    #[test]
    fn random_graphs_match_brute_force() {
        let mut rng = Lcg::new(7);
        for round in 0..400 {
            let n = 1 + rng.below(16) as usize;
            let density = 1 + rng.below(6);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.below(10) < density {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_index_edges((0..n).map(|i| i.to_string()), edges.iter().copied()).unwrap();
            let m = maximum_matching(&g);
            assert!(is_matching(&g, &m), "round {round}");
            let mut memo = vec![None; 1 << n];
            assert_eq!(m.len(), brute(&g, (1 << n) - 1, &mut memo), "round {round}");
        }
    }
}
