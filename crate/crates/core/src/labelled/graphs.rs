use crate::automata::Term;
use crate::graphcore::Graph;

use super::{LabelledError, Letter, GLUE_SYMBOL, LEAF_SYMBOL, MAX_LABELS};

/// Graph with k pairwise distinct labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraph {
    graph: Graph,
    labels: Vec<usize>,
}

/// Graph with k distinct in-labels and k distinct out-labels; the tuples may share vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilabelledGraph {
    graph: Graph,
    in_labels: Vec<usize>,
    out_labels: Vec<usize>,
}

fn check_tuple(g: &Graph, t: &[usize]) -> Result<(), LabelledError> {
    if t.is_empty() {
        return Err(LabelledError::NoLabels);
    }
    for (i, &v) in t.iter().enumerate() {
        if v >= g.n() {
            return Err(LabelledError::Label(format!("label vertex {v} outside the graph")));
        }
        if t[..i].contains(&v) {
            return Err(LabelledError::Label(format!("vertex {v} carries two labels")));
        }
    }
    Ok(())
}

impl LabelledGraph {
    pub fn new(graph: Graph, labels: Vec<usize>) -> Result<Self, LabelledError> {
        check_tuple(&graph, &labels)?;
        Ok(LabelledGraph { graph, labels })
    }

    /// k isolated labelled vertices, label i on vertex i.
    pub fn one(k: usize, directed: bool) -> Result<Self, LabelledError> {
        if k == 0 {
            return Err(LabelledError::NoLabels);
        }
        LabelledGraph::new(Graph::new(k, directed), (0..k).collect())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.labels.len()
    }
}

impl BilabelledGraph {
    pub fn new(graph: Graph, in_labels: Vec<usize>, out_labels: Vec<usize>) -> Result<Self, LabelledError> {
        check_tuple(&graph, &in_labels)?;
        check_tuple(&graph, &out_labels)?;
        if in_labels.len() != out_labels.len() {
            return Err(LabelledError::Arity(in_labels.len(), out_labels.len()));
        }
        Ok(BilabelledGraph {
            graph,
            in_labels,
            out_labels,
        })
    }

    /// No edges, in = out = (0..k): the neutral element of series composition.
    pub fn identity(k: usize, directed: bool) -> Result<Self, LabelledError> {
        if k == 0 {
            return Err(LabelledError::NoLabels);
        }
        let ids: Vec<usize> = (0..k).collect();
        BilabelledGraph::new(Graph::new(k, directed), ids.clone(), ids)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn in_labels(&self) -> &[usize] {
        &self.in_labels
    }

    pub fn out_labels(&self) -> &[usize] {
        &self.out_labels
    }

    pub fn k(&self) -> usize {
        self.in_labels.len()
    }
}

/// The generator set for k labels: `one`, the edge generators and the forget generators.
#[derive(Clone, Debug)]
pub struct Generators {
    pub one: LabelledGraph,
    pub edges: Vec<(Letter, BilabelledGraph)>,
    pub forgets: Vec<(Letter, BilabelledGraph)>,
}

pub fn generators(k: usize, directed: bool) -> Result<Generators, LabelledError> {
    let one = LabelledGraph::one(k, directed)?;
    let mut edges = Vec::new();
    let mut forgets = Vec::new();
    for l in super::letters(k, directed) {
        let g = generator(l, k, directed)?;
        match l {
            Letter::Edge(..) => edges.push((l, g)),
            Letter::Forget(_) => forgets.push((l, g)),
        }
    }
    Ok(Generators { one, edges, forgets })
}

/// The bilabelled graph of a single letter.
pub fn generator(letter: Letter, k: usize, directed: bool) -> Result<BilabelledGraph, LabelledError> {
    if k == 0 {
        return Err(LabelledError::NoLabels);
    }
    if k > MAX_LABELS {
        return Err(LabelledError::TooManyLabels(k));
    }
    if !letter.is_valid(k, directed) {
        return Err(LabelledError::Letter(format!("{letter} is not a letter for k={k}")));
    }
    let ids: Vec<usize> = (0..k).collect();
    match letter {
        Letter::Edge(i, j) => {
            let mut g = Graph::new(k, directed);
            g.add_edge(i, j)?;
            BilabelledGraph::new(g, ids.clone(), ids)
        }
        Letter::Forget(i) => {
            let g = Graph::new(k + 1, directed);
            let mut out = ids.clone();
            out[i] = k;
            BilabelledGraph::new(g, ids, out)
        }
    }
}

/// Copies `src` into `dst`, sending vertices in `merge` (src vertex -> dst vertex) onto
/// existing vertices and every other vertex to a fresh one. Returns the full vertex map.
fn embed(dst: &mut Graph, src: &Graph, merge: &[(usize, usize)]) -> Result<Vec<usize>, LabelledError> {
    if dst.is_directed() != src.is_directed() {
        return Err(LabelledError::Mode("directed and undirected operands".into()));
    }
    if dst.is_coloured() != src.is_coloured() {
        return Err(LabelledError::Mode("coloured and uncoloured operands".into()));
    }
    let mut map = vec![usize::MAX; src.n()];
    for &(s, d) in merge {
        if let (Some(a), Some(b)) = (src.colour(s), dst.colour(d)) {
            if a != b {
                return Err(LabelledError::Mode(format!("merging colours {a} and {b}")));
            }
        }
        map[s] = d;
    }
    for (v, slot) in map.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = dst.add_vertex(src.colour(v))?;
        }
    }
    for (u, v) in src.arcs() {
        dst.add_edge(map[u], map[v])?;
    }
    Ok(map)
}

/// Gluing: disjoint union with equally numbered labels identified.
pub fn glue(f: &LabelledGraph, h: &LabelledGraph) -> Result<LabelledGraph, LabelledError> {
    if f.k() != h.k() {
        return Err(LabelledError::Arity(f.k(), h.k()));
    }
    let mut g = f.graph.clone();
    let merge: Vec<(usize, usize)> = h.labels.iter().zip(&f.labels).map(|(&s, &d)| (s, d)).collect();
    embed(&mut g, &h.graph, &merge)?;
    LabelledGraph::new(g, f.labels.clone())
}

/// Series composition K·F: F's labels are identified with K's out-labels and the result
/// carries K's in-labels.
pub fn series(kk: &BilabelledGraph, f: &LabelledGraph) -> Result<LabelledGraph, LabelledError> {
    if kk.k() != f.k() {
        return Err(LabelledError::Arity(kk.k(), f.k()));
    }
    let mut g = kk.graph.clone();
    let merge: Vec<(usize, usize)> = f.labels.iter().zip(&kk.out_labels).map(|(&s, &d)| (s, d)).collect();
    embed(&mut g, &f.graph, &merge)?;
    LabelledGraph::new(g, kk.in_labels.clone())
}

/// Series composition of two bilabelled graphs.
pub fn series_bi(kk: &BilabelledGraph, other: &BilabelledGraph) -> Result<BilabelledGraph, LabelledError> {
    if kk.k() != other.k() {
        return Err(LabelledError::Arity(kk.k(), other.k()));
    }
    let mut g = kk.graph.clone();
    let merge: Vec<(usize, usize)> = other
        .in_labels
        .iter()
        .zip(&kk.out_labels)
        .map(|(&s, &d)| (s, d))
        .collect();
    let map = embed(&mut g, &other.graph, &merge)?;
    let out = other.out_labels.iter().map(|&v| map[v]).collect();
    BilabelledGraph::new(g, kk.in_labels.clone(), out)
}

/// Drops the labels.
pub fn soe(f: &LabelledGraph) -> Graph {
    f.graph.clone()
}

/// Decodes a word D1 D2 … Dl to D1·(D2·(…(Dl·1))).
pub fn pw_decode(word: &[Letter], k: usize, directed: bool) -> Result<LabelledGraph, LabelledError> {
    let mut f = LabelledGraph::one(k, directed)?;
    for &l in word.iter().rev() {
        f = series(&generator(l, k, directed)?, &f)?;
    }
    Ok(f)
}

/// Decodes a term over `1`/0, the letters/1 and `glue`/2.
pub fn tw_decode(t: &Term, k: usize, directed: bool) -> Result<LabelledGraph, LabelledError> {
    match (t.symbol.as_str(), t.children.as_slice()) {
        (LEAF_SYMBOL, []) => LabelledGraph::one(k, directed),
        (GLUE_SYMBOL, [a, b]) => glue(&tw_decode(a, k, directed)?, &tw_decode(b, k, directed)?),
        (sym, [child]) => {
            let l: Letter = sym.parse()?;
            series(&generator(l, k, directed)?, &tw_decode(child, k, directed)?)
        }
        (sym, ch) => Err(LabelledError::Term(format!("symbol {sym} applied to {} arguments", ch.len()))),
    }
}
