//! Block (biconnected component) decomposition.

use super::Graph;

struct Dfs<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<Vec<usize>>,
    cut: Vec<bool>,
}

impl Dfs<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.time += 1;
        self.disc[u] = self.time;
        self.low[u] = self.time;
        let mut children = 0;
        for &w in self.g.neighbors(u) {
            if self.disc[w] == 0 {
                children += 1;
                self.stack.push((u, w));
                self.visit(w, Some(u));
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    if parent.is_some() || children > 1 {
                        self.cut[u] = true;
                    }
                    let mut block = Vec::new();
                    while let Some((a, b)) = self.stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    self.blocks.push(block);
                }
            } else if Some(w) != parent && self.disc[w] < self.disc[u] {
                self.stack.push((u, w));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }
}

fn decompose(g: &Graph) -> (Vec<Vec<usize>>, Vec<bool>) {
    let n = g.len();
    let mut dfs = Dfs {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cut: vec![false; n],
    };
    for s in 0..n {
        if dfs.disc[s] == 0 {
            if g.degree(s) == 0 {
                dfs.disc[s] = usize::MAX;
                dfs.blocks.push(vec![s]);
            } else {
                dfs.visit(s, None);
            }
        }
    }
    let mut blocks = dfs.blocks;
    blocks.sort();
    (blocks, dfs.cut)
}

/// Vertex sets of the blocks, each sorted, in lexicographic order. Bridges
/// are two-vertex blocks; isolated vertices are singleton blocks.
pub fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    decompose(g).0
}

pub fn articulation_points(g: &Graph) -> Vec<usize> {
    let cut = decompose(g).1;
    (0..g.len()).filter(|&v| cut[v]).collect()
}

/// Connected on at least three vertices without an articulation point.
pub fn is_biconnected(g: &Graph) -> bool {
    g.len() >= 3 && g.is_connected() && articulation_points(g).is_empty()
}
