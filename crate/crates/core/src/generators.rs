//! Named squaregraph families plus random ones grown by zone expansion.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{blocks, build, is_biconnected, Graph, Metric, VertexSet};
use crate::splits::{theta_classes_with, ThetaClasses};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplexBase {
    Cycle(usize),
    Complete(usize),
    Path(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// Vertex counts along each side.
    Grid { m: usize, n: usize },
    Cogwheel { k: usize },
    Polyomino { cells: Vec<(i64, i64)> },
    Simplex { base: SimplexBase },
    Random { seed: u64, steps: usize },
}

impl GeneratorSpec {
    /// The same spec with any random seed replaced.
    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            GeneratorSpec::Random { steps, .. } => GeneratorSpec::Random { seed, steps },
            other => other,
        }
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidSpec(format!("bad {what} `{s}`")))
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidSpec(format!("`{s}` lacks `kind:`")))?;
        let keyed = |args: &str| -> Result<Vec<(String, String)>> {
            args.split(',')
                .map(|kv| {
                    kv.split_once('=')
                        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                        .ok_or_else(|| Error::InvalidSpec(format!("expected key=value, got `{kv}`")))
                })
                .collect()
        };
        let spec = match kind.trim() {
            "grid" => {
                let (m, n) = args
                    .split_once('x')
                    .ok_or_else(|| Error::InvalidSpec(format!("grid wants MxN, got `{args}`")))?;
                GeneratorSpec::Grid { m: parse_num(m, "grid size")?, n: parse_num(n, "grid size")? }
            }
            "cogwheel" => GeneratorSpec::Cogwheel { k: parse_num(args, "cogwheel size")? },
            "polyomino" => {
                let cells = args
                    .split(';')
                    .map(|c| {
                        let (x, y) = c
                            .split_once(',')
                            .ok_or_else(|| Error::InvalidSpec(format!("cell `{c}` is not x,y")))?;
                        Ok((parse_num(x, "cell coordinate")?, parse_num(y, "cell coordinate")?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                GeneratorSpec::Polyomino { cells }
            }
            "simplex" => {
                let kv = keyed(args)?;
                let [(k, v)] = kv.as_slice() else {
                    return Err(Error::InvalidSpec("simplex wants one of cycle=, complete=, path=".into()));
                };
                let n = parse_num(v, "simplex size")?;
                let base = match k.as_str() {
                    "cycle" => SimplexBase::Cycle(n),
                    "complete" => SimplexBase::Complete(n),
                    "path" => SimplexBase::Path(n),
                    other => return Err(Error::InvalidSpec(format!("unknown simplex base `{other}`"))),
                };
                GeneratorSpec::Simplex { base }
            }
            "random" => {
                let (mut seed, mut steps) = (None, None);
                for (k, v) in keyed(args)? {
                    match k.as_str() {
                        "seed" => seed = Some(parse_num(&v, "seed")?),
                        "steps" => steps = Some(parse_num(&v, "steps")?),
                        other => return Err(Error::InvalidSpec(format!("unknown key `{other}`"))),
                    }
                }
                GeneratorSpec::Random {
                    seed: seed.ok_or_else(|| Error::InvalidSpec("random needs seed=".into()))?,
                    steps: steps.ok_or_else(|| Error::InvalidSpec("random needs steps=".into()))?,
                }
            }
            other => return Err(Error::InvalidSpec(format!("unknown generator `{other}`"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Grid { m, n } => write!(f, "grid:{m}x{n}"),
            GeneratorSpec::Cogwheel { k } => write!(f, "cogwheel:{k}"),
            GeneratorSpec::Polyomino { cells } => {
                let cells: Vec<String> = cells.iter().map(|(x, y)| format!("{x},{y}")).collect();
                write!(f, "polyomino:{}", cells.join(";"))
            }
            GeneratorSpec::Simplex { base } => match base {
                SimplexBase::Cycle(n) => write!(f, "simplex:cycle={n}"),
                SimplexBase::Complete(n) => write!(f, "simplex:complete={n}"),
                SimplexBase::Path(n) => write!(f, "simplex:path={n}"),
            },
            GeneratorSpec::Random { seed, steps } => write!(f, "random:seed={seed},steps={steps}"),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    match spec {
        GeneratorSpec::Grid { m, n } => grid(*m, *n),
        GeneratorSpec::Cogwheel { k } => cogwheel(*k),
        GeneratorSpec::Polyomino { cells } => polyomino(cells),
        GeneratorSpec::Simplex { base } => {
            let f = match *base {
                SimplexBase::Cycle(n) if n >= 3 => build::cycle(n),
                SimplexBase::Complete(n) if n >= 1 => build::complete(n),
                SimplexBase::Path(n) if n >= 1 => build::path(n),
                _ => return Err(Error::InvalidSpec("simplex base too small".into())),
            };
            simplex_graph(&f)
        }
        GeneratorSpec::Random { seed, steps } => random_squaregraph(*seed, *steps),
    }
}

/// m×n lattice points named `i,j`.
pub fn grid(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidSpec("grid sides must be at least 1".into()));
    }
    let names = (0..m).flat_map(|i| (0..n).map(move |j| format!("{i},{j}")));
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if i + 1 < m {
                edges.push((i * n + j, (i + 1) * n + j));
            }
            if j + 1 < n {
                edges.push((i * n + j, i * n + j + 1));
            }
        }
    }
    Graph::from_index_edges(names, edges)
}

/// Hub `h` plus the cycle `r0..r{2k-1}`; even rim vertices are spokes.
pub fn cogwheel(k: usize) -> Result<Graph> {
    if k < 4 {
        return Err(Error::InvalidSpec(format!("cogwheel needs k >= 4, got {k}")));
    }
    let names = std::iter::once("h".to_string()).chain((0..2 * k).map(|i| format!("r{i}")));
    let mut edges: Vec<(usize, usize)> = (0..2 * k).map(|i| (1 + i, 1 + (i + 1) % (2 * k))).collect();
    edges.extend((0..k).map(|i| (0, 1 + 2 * i)));
    Graph::from_index_edges(names, edges)
}

/// Corners and sides of unit cells; corner `(x, y)` is named `x,y`.
pub fn polyomino(cells: &[(i64, i64)]) -> Result<Graph> {
    let set: BTreeSet<(i64, i64)> = cells.iter().copied().collect();
    if set.is_empty() {
        return Err(Error::InvalidSpec("polyomino needs a cell".into()));
    }
    if set.len() != cells.len() {
        return Err(Error::InvalidSpec("repeated cell".into()));
    }
    // Cells must be connected through shared sides.
    let first = *set.iter().next().expect("nonempty");
    let mut seen = HashSet::from([first]);
    let mut stack = vec![first];
    while let Some((x, y)) = stack.pop() {
        for c in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
            if set.contains(&c) && seen.insert(c) {
                stack.push(c);
            }
        }
    }
    if seen.len() != set.len() {
        return Err(Error::InvalidSpec("cells are not edge-connected".into()));
    }
    let mut corners = BTreeSet::new();
    let mut sides = BTreeSet::new();
    for &(x, y) in &set {
        let c = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)];
        corners.extend(c);
        for i in 0..4 {
            let (a, b) = (c[i], c[(i + 1) % 4]);
            sides.insert((a.min(b), a.max(b)));
        }
    }
    let name = |(x, y): (i64, i64)| format!("{x},{y}");
    let g = Graph::from_edges(
        corners.iter().map(|&c| name(c)),
        sides.iter().map(|&(a, b)| (name(a), name(b))).collect::<Vec<_>>().iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )?;
    // Simple boundary: 2-connected and Euler's formula without holes.
    let euler = g.len() as i64 - g.edge_count() as i64 + set.len() as i64;
    if !is_biconnected(&g) || euler != 1 {
        return Err(Error::InvalidSpec("polyomino boundary is not a simple cycle".into()));
    }
    Ok(g)
}

/// Cliques of `f` (including the empty one) joined when they differ in one
/// vertex. Cliques are named `{a,b}` in the vertex order of `f`.
pub fn simplex_graph(f: &Graph) -> Result<Graph> {
    let mut cliques: Vec<Vec<usize>> = vec![Vec::new()];
    let mut head = 0;
    while head < cliques.len() {
        let c = cliques[head].clone();
        head += 1;
        let start = c.last().map_or(0, |&l| l + 1);
        for v in start..f.len() {
            if c.iter().all(|&u| f.has_edge(u, v)) {
                let mut d = c.clone();
                d.push(v);
                if d.len() >= 5 {
                    return Err(Error::CliqueTooLarge(d.iter().map(|&u| f.name(u).to_string()).collect()));
                }
                cliques.push(d);
            }
        }
    }
    let name = |c: &[usize]| format!("{{{}}}", c.iter().map(|&u| f.name(u)).collect::<Vec<_>>().join(","));
    let index: std::collections::HashMap<&[usize], usize> =
        cliques.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut edges = Vec::new();
    for (i, c) in cliques.iter().enumerate() {
        for k in 0..c.len() {
            let mut smaller = c.clone();
            smaller.remove(k);
            edges.push((index[smaller.as_slice()], i));
        }
    }
    Graph::from_index_edges(cliques.iter().map(|c| name(c)), edges)
}

fn fresh_name(taken: &HashSet<String>, base: &str) -> String {
    let mut name = format!("{base}'");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Expansion along `path` with `side` the part kept in place. Returns the
/// new graph, whose first `g.len()` vertices are those of `g`, followed by
/// the copies of the path vertices in path order.
pub(crate) fn expand_indexed(g: &Graph, path: &[usize], side: &VertexSet) -> Result<Graph> {
    let n = g.len();
    let bad = |msg: &str| Error::InvalidExpansion(msg.to_string());
    if path.is_empty() {
        return Err(bad("empty path"));
    }
    let mut on_path = VertexSet::with_capacity(n);
    for &p in path {
        if p >= n || on_path.put(p) {
            return Err(bad("path repeats or leaves the graph"));
        }
    }
    if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return Err(bad("consecutive path vertices are not adjacent"));
    }
    let mut g1 = side.clone();
    g1.grow(n);
    if !on_path.is_subset(&g1) {
        return Err(bad("side does not contain the path"));
    }
    let mut g2 = g1.clone();
    g2.toggle_range(..);
    g2.union_with(&on_path);
    for (u, v) in g.edges() {
        let cross = |a: usize, b: usize| g1.contains(a) && !on_path.contains(a) && !g1.contains(b);
        if cross(u, v) || cross(v, u) {
            return Err(Error::NotSeparating(g.name(u).into(), g.name(v).into()));
        }
    }
    let m = Metric::new(g)?;
    if !m.is_convex(&on_path) {
        return Err(bad("path is not convex"));
    }
    if !m.is_convex(&g1) || !m.is_convex(&g2) {
        return Err(bad("the two sides are not convex"));
    }
    let mut taken: HashSet<String> = g.names().iter().cloned().collect();
    let mut names = g.names().to_vec();
    let mut copy = vec![usize::MAX; n];
    for &p in path {
        let c = fresh_name(&taken, g.name(p));
        taken.insert(c.clone());
        copy[p] = names.len();
        names.push(c);
    }
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        match (on_path.contains(u), on_path.contains(v)) {
            (true, true) => {
                edges.push((u, v));
                edges.push((copy[u], copy[v]));
            }
            (true, false) if !g1.contains(v) => edges.push((copy[u], v)),
            (false, true) if !g1.contains(u) => edges.push((u, copy[v])),
            _ => edges.push((u, v)),
        }
    }
    edges.extend(path.iter().map(|&p| (p, copy[p])));
    Graph::from_index_edges(names, edges)
}

/// Pulls `g` apart along the convex path `path` and rejoins the sides with a
/// new ladder. `side` is the vertex set (containing the path) that keeps the
/// original names; the remaining vertices attach to primed path copies.
pub fn expand(g: &Graph, path: &[usize], side: &VertexSet) -> Result<Graph> {
    expand_indexed(g, path, side)
}

/// Quotient of `g` collapsing every rung of one Θ-class onto its near end.
pub fn contract_zone(g: &Graph, theta: &ThetaClasses, class: usize) -> Result<Graph> {
    let c = theta
        .classes
        .get(class)
        .ok_or_else(|| Error::OutOfRange(format!("class {class}")))?;
    let mut target: Vec<usize> = (0..g.len()).collect();
    for &(u, v) in &c.edges {
        target[v] = u;
    }
    let keep: Vec<usize> = (0..g.len()).filter(|&v| target[v] == v).collect();
    let mut local = vec![usize::MAX; g.len()];
    for (i, &v) in keep.iter().enumerate() {
        local[v] = i;
    }
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (u, v) in g.edges() {
        let (a, b) = (local[target[u]], local[target[v]]);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    Graph::from_index_edges(keep.iter().map(|&v| g.name(v).to_string()), edges)
}

/// 64-bit linear congruential generator:
/// state ← state·6364136223846793005 + 1442695040888963407 (mod 2^64).
/// A draw below `n` is the high word of the 128-bit product state·n.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        self.state
    }

    pub fn below(&mut self, n: u64) -> u64 {
        ((u128::from(self.next_u64()) * u128::from(n)) >> 64) as u64
    }
}

/// A squaregraph together with its closed outer boundary walk.
#[derive(Clone, Debug)]
pub(crate) struct Grower {
    pub g: Graph,
    pub walk: Vec<usize>,
}

impl Grower {
    pub fn square() -> Self {
        Grower { g: build::cycle(4), walk: vec![0, 1, 2, 3] }
    }

    /// Walk positions of each class: class of walk edge `p` (from `walk[p]`
    /// to `walk[p + 1]`).
    fn edge_classes(&self, theta: &ThetaClasses) -> Vec<usize> {
        let idx = crate::splits::edge_index(&self.g);
        let l = self.walk.len();
        (0..l)
            .map(|p| {
                let (a, b) = (self.walk[p], self.walk[(p + 1) % l]);
                theta.edge_class[idx[&(a.min(b), a.max(b))]]
            })
            .collect()
    }

    /// Adds a zone whose chord has its ends in the boundary arcs at walk
    /// positions `i <= j`. Returns false (and changes nothing) when the new
    /// chord would cross two crossing chords.
    pub fn grow(&mut self, i: usize, j: usize) -> Result<bool> {
        let l = self.walk.len();
        let m = Metric::new(&self.g)?;
        let theta = theta_classes_with(&m)?;
        let cls = self.edge_classes(&theta);
        let k = theta.len();
        let mut inside = vec![0u8; k];
        for &c in &cls[i..j] {
            inside[c] += 1;
        }
        let crossed: Vec<usize> = (0..k).filter(|&c| inside[c] == 1).collect();
        for (a, &x) in crossed.iter().enumerate() {
            for &y in &crossed[a + 1..] {
                let (cx, cy) = (&theta.classes[x], &theta.classes[y]);
                let incompatible = !cx.near.is_disjoint(&cy.near)
                    && !cx.near.is_disjoint(&cy.far)
                    && !cx.far.is_disjoint(&cy.near)
                    && !cx.far.is_disjoint(&cy.far);
                if incompatible {
                    return Ok(false);
                }
            }
        }
        let n = self.g.len();
        // Vertices whose region reaches the arc range on each side.
        let reach = |arcs: &[usize]| {
            let mut near_hit = vec![false; k];
            let mut far_hit = vec![false; k];
            for &a in arcs {
                let v = self.walk[a];
                for (c, class) in theta.classes.iter().enumerate() {
                    if class.near.contains(v) {
                        near_hit[c] = true;
                    } else {
                        far_hit[c] = true;
                    }
                }
            }
            let mut out = VertexSet::with_capacity(n);
            out.extend((0..n).filter(|&v| {
                theta.classes.iter().enumerate().all(|(c, class)| {
                    if class.near.contains(v) {
                        near_hit[c]
                    } else {
                        far_hit[c]
                    }
                })
            }));
            out
        };
        let range1: Vec<usize> = (i..=j).collect();
        let range2: Vec<usize> = (j..=i + l).map(|p| p % l).collect();
        let side1 = reach(&range1);
        let side2 = reach(&range2);
        let mut on_path = side1.clone();
        on_path.intersect_with(&side2);
        let members: Vec<usize> = on_path.ones().collect();
        let path = crate::splits::as_path(&self.g, &members)
            .ok_or_else(|| Error::Invariant("expansion region is not a path".into()))?;
        let mut cover = side1.clone();
        cover.union_with(&side2);
        if cover.count_ones(..) != n {
            return Err(Error::Invariant("expansion sides do not cover the graph".into()));
        }
        let keep_first = side1.count_ones(..) >= side2.count_ones(..);
        let kept = if keep_first { &side1 } else { &side2 };
        let g = expand_indexed(&self.g, &path, kept)?;
        let mut copy = vec![usize::MAX; n];
        for (t, &p) in path.iter().enumerate() {
            copy[p] = n + t;
        }
        let in1 = |v: usize| if on_path.contains(v) && !keep_first { copy[v] } else { v };
        let in2 = |v: usize| if on_path.contains(v) && keep_first { copy[v] } else { v };
        let mut walk: Vec<usize> = range1.iter().map(|&a| in1(self.walk[a])).collect();
        walk.extend(range2.iter().map(|&a| in2(self.walk[a])));
        self.g = g;
        self.walk = walk;
        Ok(true)
    }
}

/// Starts from a 4-cycle and adds `steps` zones. Each step draws a pair of
/// boundary arcs uniformly and retries while the chord joining them would
/// close a triangle of pairwise crossing chords.
pub fn random_squaregraph(seed: u64, steps: usize) -> Result<Graph> {
    Ok(random_grower(seed, steps)?.g)
}

pub(crate) fn random_grower(seed: u64, steps: usize) -> Result<Grower> {
    let mut rng = Lcg::new(seed);
    let mut gr = Grower::square();
    for _ in 0..steps {
        loop {
            let l = gr.walk.len() as u64;
            let pairs = l * (l + 1) / 2;
            let mut r = rng.below(pairs);
            let mut i = 0;
            while r >= l - i {
                r -= l - i;
                i += 1;
            }
            let j = i + r;
            if gr.grow(i as usize, j as usize)? {
                break;
            }
        }
    }
    Ok(gr)
}

/// Blocks with at least three vertices.
pub fn nontrivial_blocks(g: &Graph) -> Vec<Vec<usize>> {
    blocks(g).into_iter().filter(|b| b.len() >= 3).collect()
}
