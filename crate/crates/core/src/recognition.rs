//! Squaregraph recognition with rim and boundary data.
//!
//! A median graph is a squaregraph iff it contains no induced cube,
//! K2□K1,3 or suspended cogwheel. All three patterns show up in the
//! neighborhood structure of one vertex `u`: call two neighbors of `u`
//! linked when they span a square with `u`. A linked triangle gives a cube
//! and a neighbor linked to three others gives K2□K1,3; a linked cycle that
//! leaves out some neighbor gives a suspended cogwheel. Every witness is
//! checked by isomorphism against the pattern before it is reported.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, articulation_points, blocks, build, Graph, Metric};
use crate::splits::{halfspace_system, is_circular};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RimKind {
    CogwheelHub,
    Cogfan,
    ArticulationRim,
    Irregular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRim {
    pub kind: RimKind,
    /// Rim vertices in traversal order (path from an end, or cycle).
    pub rim: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RimClassification {
    pub rims: Vec<VertexRim>,
}

impl RimClassification {
    pub fn kind(&self, v: usize) -> RimKind {
        self.rims[v].kind
    }
}

/// N(u) plus every other vertex adjacent to at least two members of N(u).
pub fn rim(g: &Graph, u: usize) -> Vec<usize> {
    let mut count: HashMap<usize, usize> = HashMap::new();
    for &x in g.neighbors(u) {
        for &w in g.neighbors(x) {
            if w != u {
                *count.entry(w).or_default() += 1;
            }
        }
    }
    let mut r: Vec<usize> = g.neighbors(u).to_vec();
    r.extend(count.into_iter().filter(|&(w, c)| c >= 2 && !g.has_edge(u, w)).map(|(w, _)| w));
    r.sort_unstable();
    r
}

fn classify_one(g: &Graph, u: usize) -> VertexRim {
    let r = rim(g, u);
    if r.is_empty() {
        return VertexRim { kind: RimKind::Cogfan, rim: r };
    }
    let (sub, map) = g.induced(&r);
    let comps = sub.components();
    let is_path = |c: &[usize]| {
        c.iter().all(|&v| sub.degree(v) <= 2) && c.iter().map(|&v| sub.degree(v)).sum::<usize>() == 2 * (c.len() - 1)
    };
    let walk = |start: usize| {
        let mut order = vec![start];
        let (mut prev, mut cur) = (usize::MAX, start);
        while let Some(&next) = sub.neighbors(cur).iter().filter(|&&w| w != prev).min() {
            if next == start {
                break;
            }
            prev = cur;
            cur = next;
            order.push(cur);
        }
        order
    };
    let to_global = |vs: Vec<usize>| vs.into_iter().map(|i| map[i]).collect::<Vec<_>>();
    if comps.len() == 1 {
        let c = &comps[0];
        if c.iter().all(|&v| sub.degree(v) == 2) && c.len() >= 8 {
            return VertexRim { kind: RimKind::CogwheelHub, rim: to_global(walk(c[0])) };
        }
        if is_path(c) {
            let start = *c.iter().find(|&&v| sub.degree(v) <= 1).expect("path has an end");
            return VertexRim { kind: RimKind::Cogfan, rim: to_global(walk(start)) };
        }
    } else if comps.iter().all(|c| is_path(c)) {
        let mut order = Vec::new();
        for c in &comps {
            let start = *c.iter().find(|&&v| sub.degree(v) <= 1).expect("path has an end");
            order.extend(walk(start));
        }
        return VertexRim { kind: RimKind::ArticulationRim, rim: to_global(order) };
    }
    VertexRim { kind: RimKind::Irregular, rim: r }
}

pub fn classify_rims(g: &Graph) -> RimClassification {
    RimClassification {
        rims: (0..g.len()).map(|u| classify_one(g, u)).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    #[serde(rename = "K23")]
    K23,
    #[serde(rename = "cube")]
    Cube,
    #[serde(rename = "K2xK13")]
    K2xK13,
    #[serde(rename = "suspended-cogwheel")]
    SuspendedCogwheel,
    /// Not median, and no induced K2,3 to show for it: the three vertices
    /// of a triple without a unique median.
    #[serde(rename = "non-median-triple")]
    NonMedianTriple,
}

impl WitnessKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessKind::K23 => "K23",
            WitnessKind::Cube => "cube",
            WitnessKind::K2xK13 => "K2xK13",
            WitnessKind::SuspendedCogwheel => "suspended-cogwheel",
            WitnessKind::NonMedianTriple => "non-median-triple",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RimEntry {
    pub vertex: String,
    pub kind: RimKind,
    pub rim: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecognitionReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
    /// Closed boundary walk (a cycle when the graph is 2-connected).
    pub boundary: Option<Vec<String>>,
    pub rims: Vec<RimEntry>,
    /// Outcome of the independent block-wise rim criterion.
    pub rim_check: bool,
}

/// Pattern graphs the witnesses are checked against.
pub fn suspended_cogwheel(k: usize) -> Graph {
    let mut g = crate::generators::cogwheel(k).expect("k >= 4");
    let hub = g.index_of("h").expect("hub");
    let p = g.add_vertex("pendant").expect("fresh name");
    g.add_edge(hub, p).expect("fresh edge");
    g
}

fn k2_times_k13() -> Graph {
    build::product(&build::path(2), &build::star(3))
}

fn common_neighbor(g: &Graph, x: usize, y: usize, not: usize) -> Option<usize> {
    g.neighbors(x)
        .iter()
        .copied()
        .find(|&w| w != not && g.has_edge(w, y))
}

/// Induced-pattern check for a candidate vertex list.
fn verified(g: &Graph, mut vs: Vec<usize>, pattern: &Graph) -> Option<Vec<usize>> {
    vs.sort_unstable();
    vs.dedup();
    let (sub, _) = g.induced(&vs);
    are_isomorphic(&sub, pattern).then_some(vs)
}

/// Linked-neighbor graph at `u`: local index pairs plus their square corner.
fn linked(g: &Graph, u: usize) -> (Vec<usize>, Vec<Vec<(usize, usize)>>) {
    let nb = g.neighbors(u).to_vec();
    let mut adj = vec![Vec::new(); nb.len()];
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            if let Some(w) = common_neighbor(g, nb[i], nb[j], u) {
                adj[i].push((j, w));
                adj[j].push((i, w));
            }
        }
    }
    (nb, adj)
}

fn forbidden_at(g: &Graph, u: usize) -> Option<(WitnessKind, Vec<usize>)> {
    let (nb, adj) = linked(g, u);
    let corner = |i: usize, j: usize| adj[i].iter().find(|&&(k, _)| k == j).map(|&(_, w)| w);
    // Cube: three pairwise linked neighbors.
    for i in 0..nb.len() {
        for &(j, _) in &adj[i] {
            for &(k, _) in &adj[i] {
                if i < j && j < k && corner(j, k).is_some() {
                    let ws = [corner(i, j), corner(j, k), corner(i, k)].map(Option::unwrap);
                    let top = g.neighbors(ws[0]).iter().copied().find(|&t| {
                        t != nb[i] && t != nb[j] && t != nb[k] && ws.iter().all(|&w| g.has_edge(w, t))
                    });
                    if let Some(t) = top {
                        let vs = vec![u, nb[i], nb[j], nb[k], ws[0], ws[1], ws[2], t];
                        if let Some(vs) = verified(g, vs, &build::hypercube(3)) {
                            return Some((WitnessKind::Cube, vs));
                        }
                    }
                }
            }
        }
    }
    // K2□K1,3: one neighbor linked to three others.
    for i in 0..nb.len() {
        if adj[i].len() >= 3 {
            let three = &adj[i][..3];
            let mut vs = vec![u, nb[i]];
            for &(j, w) in three {
                vs.push(nb[j]);
                vs.push(w);
            }
            if let Some(vs) = verified(g, vs, &k2_times_k13()) {
                return Some((WitnessKind::K2xK13, vs));
            }
        }
    }
    // Suspended cogwheel: a linked cycle of length >= 4 missing some neighbor.
    if adj.iter().all(|a| a.len() <= 2) {
        let mut seen = vec![false; nb.len()];
        for s in 0..nb.len() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut head = 0;
            while head < comp.len() {
                let x = comp[head];
                head += 1;
                for &(y, _) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            let is_cycle = comp.len() >= 4 && comp.iter().all(|&x| adj[x].len() == 2);
            if is_cycle && comp.len() < nb.len() {
                let pendant = (0..nb.len()).find(|x| !comp.contains(x)).expect("outside neighbor");
                let mut vs = vec![u, nb[pendant]];
                for &x in &comp {
                    vs.push(nb[x]);
                    vs.extend(adj[x].iter().map(|&(_, w)| w));
                }
                if let Some(vs) = verified(g, vs, &suspended_cogwheel(comp.len())) {
                    return Some((WitnessKind::SuspendedCogwheel, vs));
                }
            }
        }
    }
    None
}

fn k23_witness(g: &Graph) -> Option<Vec<usize>> {
    let pattern = build::complete_bipartite(2, 3);
    for a in 0..g.len() {
        let na = g.neighbors(a);
        for b in a + 1..g.len() {
            let common: Vec<usize> = na.iter().copied().filter(|&x| g.has_edge(x, b)).collect();
            if common.len() < 3 {
                continue;
            }
            for i in 0..common.len() {
                for j in i + 1..common.len() {
                    for k in j + 1..common.len() {
                        let vs = vec![a, b, common[i], common[j], common[k]];
                        if let Some(vs) = verified(g, vs, &pattern) {
                            return Some(vs);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Forbidden pattern found in `g`, or `None` when `g` is a squaregraph.
pub(crate) fn find_obstruction(g: &Graph, m: &Metric) -> Option<(WitnessKind, Vec<usize>)> {
    if let Some((a, b, c)) = m.median_violation() {
        return Some(match k23_witness(g) {
            Some(vs) => (WitnessKind::K23, vs),
            None => (WitnessKind::NonMedianTriple, vec![a, b, c]),
        });
    }
    (0..g.len()).find_map(|u| forbidden_at(g, u))
}

/// Block-wise rim criterion: every block's rims are cogfans or cogwheels,
/// and articulation points are cogfans in each of their blocks.
pub(crate) fn rim_criterion(g: &Graph, m: &Metric) -> bool {
    if !m.is_median() {
        return false;
    }
    let cut = articulation_points(g);
    blocks(g).into_iter().filter(|b| b.len() >= 3).all(|b| {
        let (sub, map) = g.induced(&b);
        classify_rims(&sub).rims.iter().enumerate().all(|(i, r)| match r.kind {
            RimKind::Cogfan => true,
            RimKind::CogwheelHub => !cut.contains(&map[i]),
            _ => false,
        })
    })
}

pub fn is_squaregraph(g: &Graph) -> Result<RecognitionReport> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let m = Metric::new(g)?;
    let obstruction = find_obstruction(g, &m);
    let rim_check = rim_criterion(g, &m);
    let rims = classify_rims(g);
    let names = |vs: &[usize]| vs.iter().map(|&v| g.name(v).to_string()).collect::<Vec<_>>();
    let boundary = if obstruction.is_none() {
        Some(names(&boundary_walk_unchecked(g)?))
    } else {
        None
    };
    Ok(RecognitionReport {
        verdict: obstruction.is_none(),
        witness: obstruction.map(|(kind, vs)| Witness { kind, vertices: names(&vs) }),
        boundary,
        rims: rims
            .rims
            .iter()
            .enumerate()
            .map(|(v, r)| RimEntry {
                vertex: g.name(v).to_string(),
                kind: r.kind,
                rim: names(&r.rim),
            })
            .collect(),
        rim_check,
    })
}

/// Verdict only.
pub fn check_squaregraph(g: &Graph) -> bool {
    !g.is_empty() && Metric::new(g).map(|m| find_obstruction(g, &m).is_none()).unwrap_or(false)
}

pub(crate) fn require_squaregraph(g: &Graph) -> Result<()> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let m = Metric::new(g)?;
    match find_obstruction(g, &m) {
        None => Ok(()),
        Some((kind, vs)) => Err(Error::NotSquaregraph(format!(
            "contains {} on {:?}",
            kind.as_str(),
            vs.iter().map(|&v| g.name(v)).collect::<Vec<_>>()
        ))),
    }
}

pub(crate) fn require_biconnected(g: &Graph) -> Result<()> {
    if let Some(&a) = articulation_points(g).first() {
        return Err(Error::NotBiconnected(g.name(a).into()));
    }
    if g.len() < 3 || !g.is_connected() {
        return Err(Error::NotBiconnected(g.names().first().cloned().unwrap_or_default()));
    }
    Ok(())
}

/// Boundary of a 2-connected squaregraph, following fan ends from vertex to
/// vertex. No validation.
pub(crate) fn boundary_cycle_unchecked(g: &Graph) -> Result<Vec<usize>> {
    let rims = classify_rims(g);
    let start = (0..g.len())
        .find(|&v| g.degree(v) == 2)
        .ok_or_else(|| Error::NotSquaregraph("no vertex of degree 2".into()))?;
    let ends = |v: usize| -> Result<(usize, usize)> {
        let r = &rims.rims[v];
        match (r.kind, r.rim.first(), r.rim.last()) {
            (RimKind::Cogfan, Some(&a), Some(&b)) if a != b => Ok((a, b)),
            _ => Err(Error::NotSquaregraph(format!("`{}` is not on a fan", g.name(v)))),
        }
    };
    let (a, b) = ends(start)?;
    let mut cycle = vec![start];
    let (mut prev, mut cur) = (start, a.min(b));
    while cur != start {
        if cycle.len() > g.len() {
            return Err(Error::Invariant("boundary walk does not close".into()));
        }
        cycle.push(cur);
        let (x, y) = ends(cur)?;
        let next = if x == prev { y } else if y == prev { x } else {
            return Err(Error::Invariant(format!("boundary walk lost at `{}`", g.name(cur))));
        };
        prev = cur;
        cur = next;
    }
    Ok(cycle)
}

/// The boundary cycle of a 2-connected squaregraph, unique up to rotation
/// and reversal; checked against the halfspace traces.
pub fn boundary_cycle(g: &Graph) -> Result<Vec<usize>> {
    require_biconnected(g)?;
    require_squaregraph(g)?;
    let c = boundary_cycle_unchecked(g)?;
    let s = halfspace_system(g)?.trace(&c)?;
    let order: Vec<usize> = (0..c.len()).collect();
    if !is_circular(&s, &order)? {
        return Err(Error::Invariant("boundary traces are not arcs".into()));
    }
    Ok(c)
}

/// Closed walk around the outer face of a squaregraph; articulation points
/// repeat once per corner. Blocks are spliced in at the first occurrence of
/// their attachment vertex.
pub(crate) fn boundary_walk_unchecked(g: &Graph) -> Result<Vec<usize>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let bl = blocks(g);
    let mut seqs: Vec<Vec<usize>> = Vec::with_capacity(bl.len());
    for b in &bl {
        if b.len() <= 2 {
            seqs.push(b.clone());
        } else {
            let (sub, map) = g.induced(b);
            seqs.push(boundary_cycle_unchecked(&sub)?.into_iter().map(|i| map[i]).collect());
        }
    }
    let mut walk = seqs[0].clone();
    let mut in_walk = vec![false; g.len()];
    for &v in &walk {
        in_walk[v] = true;
    }
    let mut placed = vec![false; bl.len()];
    placed[0] = true;
    for _ in 1..bl.len() {
        let (bi, x) = (0..bl.len())
            .filter(|&i| !placed[i])
            .find_map(|i| bl[i].iter().find(|&&v| in_walk[v]).map(|&x| (i, x)))
            .ok_or_else(|| {
                let lost = (0..g.len()).find(|&v| !in_walk[v]).unwrap_or(0);
                Error::Disconnected(g.name(walk[0]).into(), g.name(lost).into())
            })?;
        placed[bi] = true;
        let seq = &seqs[bi];
        let p = seq.iter().position(|&v| v == x).expect("attachment in block");
        let mut insert: Vec<usize> = (1..seq.len()).map(|k| seq[(p + k) % seq.len()]).collect();
        insert.push(x);
        for &v in &insert {
            in_walk[v] = true;
        }
        let at = walk.iter().position(|&v| v == x).expect("attachment in walk");
        walk.splice(at + 1..at + 1, insert);
    }
    Ok(walk)
}

/// Outer boundary walk of any squaregraph.
pub fn boundary_walk(g: &Graph) -> Result<Vec<usize>> {
    require_squaregraph(g)?;
    boundary_walk_unchecked(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCurvature {
    pub vertex: usize,
    pub inner: bool,
    pub value: Ratio<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureMap {
    pub values: Vec<VertexCurvature>,
    pub all_nonpositive: bool,
    pub zeros: Vec<usize>,
}

/// Exact curvature of every vertex of a 2-connected squaregraph.
pub fn curvature(g: &Graph) -> Result<CurvatureMap> {
    require_biconnected(g)?;
    let c = boundary_cycle(g)?;
    let mut on_boundary = vec![false; g.len()];
    for &v in &c {
        on_boundary[v] = true;
    }
    let len = i64::try_from(c.len()).expect("small");
    let values: Vec<VertexCurvature> = (0..g.len())
        .map(|v| {
            let deg = Ratio::new(i64::try_from(g.degree(v)).expect("small"), 4);
            let value = if on_boundary[v] {
                Ratio::new(1, 4) - deg + Ratio::new(1, len)
            } else {
                Ratio::from_integer(1) - deg
            };
            VertexCurvature { vertex: v, inner: !on_boundary[v], value }
        })
        .collect();
    let zero = Ratio::from_integer(0);
    Ok(CurvatureMap {
        all_nonpositive: values.iter().all(|x| x.value <= zero),
        zeros: values.iter().filter(|x| x.value == zero).map(|x| x.vertex).collect(),
        values,
    })
}

/// Whether the ball of radius `r` around `v` induces a squaregraph.
pub fn ball_is_squaregraph(g: &Graph, v: usize, r: u32) -> Result<bool> {
    if v >= g.len() {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    let ball = ball(g, v, r);
    let (sub, _) = g.induced(&ball);
    Ok(check_squaregraph(&sub))
}

pub(crate) fn ball(g: &Graph, v: usize, r: u32) -> Vec<usize> {
    let mut dist = vec![u32::MAX; g.len()];
    dist[v] = 0;
    let mut queue = vec![v];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        if dist[x] == r {
            continue;
        }
        for &w in g.neighbors(x) {
            if dist[w] == u32::MAX {
                dist[w] = dist[x] + 1;
                queue.push(w);
            }
        }
    }
    queue.sort_unstable();
    queue
}
