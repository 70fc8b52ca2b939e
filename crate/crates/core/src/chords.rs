//! Chord diagrams and their duality with squaregraphs.
//!
//! Position `p` of a diagram is a chord endpoint; the arc `p` lies between
//! positions `p` and `p + 1` (cyclically). Going around a squaregraph's
//! outer boundary, each boundary edge is crossed by exactly one chord (its
//! Θ-class) and each boundary corner is an arc.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Metric};
use crate::hellyfication::hellyfy;
use crate::recognition::{boundary_walk_unchecked, require_squaregraph};
use crate::splits::{edge_index, theta_classes_with, Split, SplitSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    /// Chord index at each position.
    seq: Vec<usize>,
    /// Label of each chord, indexed by chord.
    labels: Vec<String>,
}

impl ChordDiagram {
    /// Builds a diagram from a label sequence; every label must occur twice.
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut names: Vec<String> = Vec::new();
        let mut count: Vec<usize> = Vec::new();
        let mut seq = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            if l.is_empty() || l.contains(',') {
                return Err(Error::MalformedDiagram(format!("bad label `{l}`")));
            }
            let c = *index.entry(l).or_insert_with(|| {
                names.push(l.to_string());
                count.push(0);
                names.len() - 1
            });
            count[c] += 1;
            seq.push(c);
        }
        if let Some(c) = count.iter().position(|&k| k != 2) {
            return Err(Error::MalformedDiagram(format!(
                "label `{}` occurs {} times",
                names[c], count[c]
            )));
        }
        Ok(ChordDiagram { seq, labels: names })
    }

    pub fn empty() -> Self {
        ChordDiagram { seq: Vec::new(), labels: Vec::new() }
    }

    pub fn chords(&self) -> usize {
        self.labels.len()
    }

    pub fn positions(&self) -> usize {
        self.seq.len()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn label(&self, chord: usize) -> &str {
        &self.labels[chord]
    }

    /// The two positions of each chord, in increasing order.
    pub fn endpoints(&self) -> Vec<(usize, usize)> {
        let mut ends = vec![(usize::MAX, usize::MAX); self.chords()];
        for (p, &c) in self.seq.iter().enumerate() {
            if ends[c].0 == usize::MAX {
                ends[c].0 = p;
            } else {
                ends[c].1 = p;
            }
        }
        ends
    }

    pub fn crosses(&self, a: usize, b: usize) -> bool {
        let e = self.endpoints();
        interleave(e[a], e[b])
    }

    /// Lexicographically least relabelled sequence over all rotations and
    /// both directions; chords are renumbered by first occurrence.
    pub fn canonical_form(&self) -> Vec<usize> {
        let l = self.seq.len();
        let mut best: Option<Vec<usize>> = None;
        for dir in [false, true] {
            for r in 0..l.max(1) {
                let mut relabel = vec![usize::MAX; self.chords()];
                let mut next = 0;
                let cand: Vec<usize> = (0..l)
                    .map(|i| {
                        let p = if dir { (r + l - i) % l } else { (r + i) % l };
                        let c = self.seq[p];
                        if relabel[c] == usize::MAX {
                            relabel[c] = next;
                            next += 1;
                        }
                        relabel[c]
                    })
                    .collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// The canonical form with chords labelled 1, 2, ...
    pub fn canonical(&self) -> ChordDiagram {
        let seq = self.canonical_form();
        let labels = (1..=self.chords()).map(|i| i.to_string()).collect();
        ChordDiagram { seq, labels }
    }

    /// First triple of pairwise crossing chords.
    pub fn triangle(&self) -> Option<(usize, usize, usize)> {
        let e = self.endpoints();
        let k = self.chords();
        for a in 0..k {
            for b in a + 1..k {
                if !interleave(e[a], e[b]) {
                    continue;
                }
                for c in b + 1..k {
                    if interleave(e[a], e[c]) && interleave(e[b], e[c]) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Splits of the arcs induced by the chords: chord at positions `p < q`
    /// puts arcs `p..q` on one side.
    pub fn arc_splits(&self) -> Vec<Split> {
        let l = self.seq.len();
        self.endpoints()
            .into_iter()
            .map(|(p, q)| Split::new((p..q).collect(), l).expect("both sides hold an arc"))
            .collect()
    }
}

fn interleave((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b) != (a < d && d < b)
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.seq.iter().map(|&c| self.labels[c].as_str()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for ChordDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(ChordDiagram::empty());
        }
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        ChordDiagram::new(&parts)
    }
}

/// No three chords occur in the cyclic pattern i,j,k,i,j,k.
pub fn is_triangle_free(d: &ChordDiagram) -> bool {
    d.triangle().is_none()
}

/// Vertex per chord (named by label); edges join crossing chords.
pub fn circle_graph(d: &ChordDiagram) -> Graph {
    let e = d.endpoints();
    let k = d.chords();
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            if interleave(e[a], e[b]) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_index_edges(d.labels.iter().cloned(), edges).expect("labels are distinct")
}

/// Reads the Θ-class of every boundary edge along the outer walk; chords
/// are labelled by class index.
pub fn diagram_from_squaregraph(g: &Graph) -> Result<ChordDiagram> {
    require_squaregraph(g)?;
    let walk = boundary_walk_unchecked(g)?;
    if walk.len() < 2 {
        return Ok(ChordDiagram::empty());
    }
    let m = Metric::new(g)?;
    let theta = theta_classes_with(&m)?;
    let idx = edge_index(g);
    let l = walk.len();
    let labels: Vec<String> = (0..l)
        .map(|p| {
            let (a, b) = (walk[p], walk[(p + 1) % l]);
            theta.edge_class[idx[&(a.min(b), a.max(b))]].to_string()
        })
        .collect();
    ChordDiagram::new(&labels)
}

/// The squaregraph whose zones are the chords: Hellyfication of the split
/// system the chords cut on the arcs. Arcs no chord separates are merged
/// and named after the first of them, `a{p}`.
pub fn squaregraph_from_diagram(d: &ChordDiagram) -> Result<Graph> {
    if let Some((a, b, c)) = d.triangle() {
        return Err(Error::DiagramTriangle(
            d.label(a).into(),
            d.label(b).into(),
            d.label(c).into(),
        ));
    }
    if d.chords() == 0 {
        return Graph::new(["a0"]);
    }
    let l = d.positions();
    let ground: Vec<String> = (0..l).map(|p| format!("a{p}")).collect();
    let all = SplitSystem::new_dedup(ground, d.arc_splits())?;
    let mut reps: Vec<usize> = Vec::new();
    for p in 0..l {
        let fresh = reps
            .iter()
            .all(|&q| all.splits().iter().any(|s| s.separates(p, q)));
        if fresh {
            reps.push(p);
        }
    }
    let s = all.trace(&reps)?;
    Ok(hellyfy(&s)?.graph)
}
