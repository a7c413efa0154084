use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::graphcore::{hom_count, optimal_path_decomposition, Graph, GraphJson};

use super::circuit_graph::CIRCUIT_COLOURS;
use super::ReductionError;

/// Colour given to every vertex of an uncoloured input.
pub const UNCOLOURED: &str = "*";

const FAMILY: [&[(usize, usize)]; 9] = [
    &[(0, 2), (0, 4), (0, 6), (0, 7), (1, 2), (1, 3), (1, 4), (1, 5), (1, 7), (2, 4), (3, 5), (3, 7), (4, 5), (4, 6), (6, 7)],
    &[(0, 1), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 5), (2, 6), (2, 7), (3, 4), (3, 7), (4, 6), (4, 7), (5, 6), (6, 7)],
    &[(0, 3), (0, 4), (0, 5), (0, 7), (1, 2), (1, 5), (1, 6), (1, 7), (2, 5), (2, 6), (3, 5), (3, 6), (4, 5), (4, 7), (6, 7)],
    &[(0, 2), (0, 3), (0, 4), (0, 6), (1, 2), (1, 3), (1, 7), (2, 4), (2, 7), (3, 5), (3, 6), (4, 5), (4, 7), (5, 6), (5, 7)],
    &[(0, 2), (0, 5), (0, 6), (1, 2), (1, 4), (1, 5), (2, 4), (2, 6), (3, 4), (3, 5), (3, 7), (4, 7), (5, 6), (5, 7), (6, 7)],
    &[(0, 2), (0, 4), (0, 5), (0, 7), (1, 3), (1, 4), (1, 6), (1, 7), (2, 3), (2, 5), (3, 5), (3, 6), (4, 5), (4, 6), (4, 7)],
    &[(0, 1), (0, 3), (0, 4), (0, 7), (1, 3), (1, 4), (2, 3), (2, 5), (2, 6), (2, 7), (3, 7), (4, 5), (4, 6), (5, 6), (6, 7)],
    &[(0, 4), (0, 5), (0, 6), (1, 2), (1, 3), (1, 4), (2, 4), (2, 7), (3, 4), (3, 5), (4, 5), (4, 6), (4, 7), (6, 7)],
    &[(0, 1), (0, 3), (0, 4), (0, 5), (1, 5), (1, 6), (1, 7), (2, 4), (2, 6), (2, 7), (3, 4), (3, 6), (4, 5), (5, 7), (6, 7)],
];

/// Nine connected 8-vertex graphs, pairwise without homomorphisms in either direction.
/// They were found by random search and the property is re-checked by the test suite.
pub fn default_gadget_family() -> Vec<Graph> {
    FAMILY.iter().map(|e| Graph::undirected(8, e)).collect()
}

/// First pair (i, j) with a homomorphism from graph i to graph j, if any.
pub fn comparable_pair(graphs: &[Graph]) -> Result<Option<(usize, usize)>, ReductionError> {
    for (i, a) in graphs.iter().enumerate() {
        for (j, b) in graphs.iter().enumerate() {
            if i != j && !hom_count(a, b)?.is_zero() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Gadget graphs for decolouring. Tips are vertex 0 of each graph; `ell` is the largest
/// vertex count. Paths P_m have m edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetParams {
    pub p: Graph,
    pub q: Graph,
    pub v: Graph,
    pub colours: BTreeMap<String, Graph>,
}

impl GadgetParams {
    /// Default parameters for a palette of at most six colours. Circuit colours keep fixed
    /// family members; other palettes take members in sorted colour order.
    pub fn default_for<S: AsRef<str>>(palette: &[S]) -> Result<GadgetParams, ReductionError> {
        let family = default_gadget_family();
        let names: BTreeSet<&str> = palette.iter().map(AsRef::as_ref).collect();
        if names.len() > 6 {
            return Err(ReductionError::Gadget(format!(
                "the default family covers 6 colours, got {}",
                names.len()
            )));
        }
        let circuit = names.iter().all(|c| CIRCUIT_COLOURS.contains(c));
        let colours = names
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let slot = if circuit { CIRCUIT_COLOURS.iter().position(|&x| x == c).expect("circuit colour") } else { i };
                (c.to_string(), family[slot].clone())
            })
            .collect();
        Ok(GadgetParams { p: family[6].clone(), q: family[7].clone(), v: family[8].clone(), colours })
    }

    pub fn to_json(&self) -> GadgetParamsJson {
        GadgetParamsJson {
            p: self.p.to_json(),
            q: self.q.to_json(),
            v: self.v.to_json(),
            colours: self.colours.iter().map(|(c, g)| (c.clone(), g.to_json())).collect(),
        }
    }

    pub fn from_json(j: &GadgetParamsJson) -> Result<GadgetParams, ReductionError> {
        let mut colours = BTreeMap::new();
        for (c, g) in &j.colours {
            colours.insert(c.clone(), Graph::from_json(g)?);
        }
        let params = GadgetParams { p: Graph::from_json(&j.p)?, q: Graph::from_json(&j.q)?, v: Graph::from_json(&j.v)?, colours };
        params.validate(false)?;
        Ok(params)
    }

    pub fn ell(&self) -> usize {
        self.all().map(Graph::n).max().unwrap_or(0)
    }

    fn all(&self) -> impl Iterator<Item = &Graph> {
        [&self.p, &self.q, &self.v].into_iter().chain(self.colours.values())
    }

    /// Shape checks, plus pairwise incomparability when `incomparable` is set.
    pub fn validate(&self, incomparable: bool) -> Result<(), ReductionError> {
        for g in self.all() {
            if g.is_directed() || g.is_coloured() || g.n() == 0 || !g.is_connected() {
                return Err(ReductionError::Gadget(
                    "gadget graphs must be connected, undirected and uncoloured".into(),
                ));
            }
        }
        if incomparable {
            let graphs: Vec<Graph> = self.all().cloned().collect();
            if let Some((i, j)) = comparable_pair(&graphs)? {
                return Err(ReductionError::Gadget(format!("gadget graphs {i} and {j} are comparable")));
            }
        }
        Ok(())
    }
}

/// JSON form: {"p": graph, "q": graph, "v": graph, "colours": {colour: graph}}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetParamsJson {
    pub p: GraphJson,
    pub q: GraphJson,
    pub v: GraphJson,
    pub colours: BTreeMap<String, GraphJson>,
}

/// A pendant: a path of 2ℓ edges from an attachment vertex to the tip of a graph copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pendant {
    /// Attachment vertex, internal path vertices, then the tip.
    pub path: Vec<usize>,
    /// copy[i] is the image of vertex i of the gadget graph; copy[0] is the tip.
    pub copy: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorGadget {
    pub vertex: usize,
    pub colour: String,
    pub colour_pendant: Pendant,
    pub v_pendant: Pendant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionGadget {
    pub from: usize,
    pub to: usize,
    /// u, internal vertices, v: 22ℓ edges with hubs after 10ℓ and 12ℓ edges.
    pub main: Vec<usize>,
    pub p_pendant: Pendant,
    pub q_pendant: Pendant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoloured {
    pub graph: Graph,
    pub ell: usize,
    pub indicators: Vec<IndicatorGadget>,
    pub directions: Vec<DirectionGadget>,
}

struct Builder {
    g: Graph,
    ell: usize,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.g.add_vertex(None).expect("uncoloured graph")
    }

    /// Path of `edges` edges from `start`; returns all its vertices.
    fn path(&mut self, start: usize, edges: usize, end: Option<usize>) -> Vec<usize> {
        let mut p = vec![start];
        for i in 0..edges {
            let next = match end {
                Some(e) if i + 1 == edges => e,
                _ => self.fresh(),
            };
            self.g.add_edge(*p.last().expect("non-empty"), next).expect("new edge");
            p.push(next);
        }
        p
    }

    fn copy(&mut self, h: &Graph) -> Vec<usize> {
        let ids: Vec<usize> = (0..h.n()).map(|_| self.fresh()).collect();
        for (a, b) in h.edges() {
            self.g.add_edge(ids[a], ids[b]).expect("new edge");
        }
        ids
    }

    fn pendant(&mut self, at: usize, h: &Graph) -> Pendant {
        let mut path = self.path(at, 2 * self.ell - 1, None);
        let copy = self.copy(h);
        self.g.add_edge(*path.last().expect("non-empty"), copy[0]).expect("new edge");
        path.push(copy[0]);
        Pendant { path, copy }
    }
}

/// Undirected uncoloured graph simulating a coloured digraph. Vertex v keeps id v and gets
/// pendants to K_colour(v) and V; each arc u→v becomes a path u–P_{10ℓ}–p1–P_{2ℓ}–p2–P_{10ℓ}–v
/// with pendants at p1 to P and at p2 to Q. Undirected inputs count each edge as two arcs
/// and uncoloured inputs use the colour `*`. Numbering: the input vertices, then the
/// indicator gadgets in vertex order, then the direction gadgets in arc order.
pub fn decolour(g: &Graph, params: &GadgetParams) -> Result<Decoloured, ReductionError> {
    params.validate(false)?;
    let colour = |v: usize| g.colour(v).unwrap_or(UNCOLOURED).to_string();
    for v in 0..g.n() {
        if !params.colours.contains_key(&colour(v)) {
            return Err(ReductionError::Gadget(format!("colour {:?} is outside the palette", colour(v))));
        }
    }
    let ell = params.ell();
    let mut b = Builder { g: Graph::new(g.n(), false), ell };
    let mut indicators = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let c = colour(v);
        let colour_pendant = b.pendant(v, &params.colours[&c]);
        let v_pendant = b.pendant(v, &params.v);
        indicators.push(IndicatorGadget { vertex: v, colour: c, colour_pendant, v_pendant });
    }
    let arcs: Vec<(usize, usize)> = g.arcs().collect();
    let mut directions = Vec::with_capacity(arcs.len());
    for (u, v) in arcs {
        let mut main = b.path(u, 10 * ell, None);
        let p1 = *main.last().expect("non-empty");
        main.extend(b.path(p1, 2 * ell, None).into_iter().skip(1));
        let p2 = *main.last().expect("non-empty");
        main.extend(b.path(p2, 10 * ell, Some(v)).into_iter().skip(1));
        let p_pendant = b.pendant(p1, &params.p);
        let q_pendant = b.pendant(p2, &params.q);
        directions.push(DirectionGadget { from: u, to: v, main, p_pendant, q_pendant });
    }
    Ok(Decoloured { graph: b.g, ell, indicators, directions })
}

impl Decoloured {
    /// Expected vertex count: n + Σ_v (2(2ℓ−1) + |K_c(v)| + |V|) + arcs·(22ℓ−1 + 2(2ℓ−1) + |P| + |Q|).
    pub fn expected_vertex_count(n: usize, params: &GadgetParams, colours: &[String], arcs: usize) -> usize {
        let ell = params.ell();
        let pendant = 2 * ell - 1;
        let per_vertex: usize = colours.iter().map(|c| 2 * pendant + params.colours[c].n() + params.v.n()).sum();
        n + per_vertex + arcs * (22 * ell - 1 + 2 * pendant + params.p.n() + params.q.n())
    }

    /// Checks gadget counts, the vertex-count formula, path shapes, copies and tip wiring.
    pub fn check_structure(&self, input: &Graph, params: &GadgetParams) -> Result<(), String> {
        let g = &self.graph;
        let ell = self.ell;
        if ell != params.ell() {
            return Err("ℓ differs from the parameters".into());
        }
        if self.indicators.len() != input.n() {
            return Err("one indicator gadget per vertex expected".into());
        }
        let arcs = input.arcs().count();
        if self.directions.len() != arcs {
            return Err(format!("{} direction gadgets for {arcs} arcs", self.directions.len()));
        }
        let colours: Vec<String> = self.indicators.iter().map(|i| i.colour.clone()).collect();
        let want = Self::expected_vertex_count(input.n(), params, &colours, arcs);
        if g.n() != want {
            return Err(format!("{} vertices, formula gives {want}", g.n()));
        }
        let check_path = |p: &[usize], edges: usize| -> Result<(), String> {
            if p.len() != edges + 1 {
                return Err(format!("path has {} edges, expected {edges}", p.len() - 1));
            }
            if let Some(w) = p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
                return Err(format!("path step {}-{} missing", w[0], w[1]));
            }
            Ok(())
        };
        let check_pendant = |pd: &Pendant, at: usize, h: &Graph| -> Result<(), String> {
            if pd.path[0] != at {
                return Err("pendant attached to the wrong vertex".into());
            }
            check_path(&pd.path, 2 * ell)?;
            if pd.copy.len() != h.n() || *pd.path.last().expect("non-empty") != pd.copy[0] {
                return Err("pendant does not end at the tip".into());
            }
            for a in 0..h.n() {
                for b in 0..h.n() {
                    if h.has_edge(a, b) != g.has_edge(pd.copy[a], pd.copy[b]) {
                        return Err("gadget copy differs from its graph".into());
                    }
                }
            }
            for &x in &pd.path[1..pd.path.len() - 1] {
                if g.degree(x) != 2 {
                    return Err(format!("internal path vertex {x} has degree {}", g.degree(x)));
                }
            }
            Ok(())
        };
        for ind in &self.indicators {
            let expected = input.colour(ind.vertex).unwrap_or(UNCOLOURED);
            if ind.colour != expected {
                return Err(format!("vertex {} carries the wrong colour gadget", ind.vertex));
            }
            check_pendant(&ind.colour_pendant, ind.vertex, &params.colours[&ind.colour])?;
            check_pendant(&ind.v_pendant, ind.vertex, &params.v)?;
        }
        for d in &self.directions {
            check_path(&d.main, 22 * ell)?;
            if d.main[0] != d.from || *d.main.last().expect("non-empty") != d.to {
                return Err("direction gadget endpoints are wrong".into());
            }
            check_pendant(&d.p_pendant, d.main[10 * ell], &params.p)?;
            check_pendant(&d.q_pendant, d.main[12 * ell], &params.q)?;
        }
        Ok(())
    }

    /// Path decomposition of the decoloured graph built from an optimal decomposition of
    /// the input's underlying graph. Indicator gadgets are inserted after the last bag
    /// holding their vertex and direction gadgets after the first bag holding both ends;
    /// inserted bags keep the whole original bag, walk along paths two vertices at a time
    /// and cover gadget copies by optimal decompositions of the gadget graphs.
    pub fn path_decomposition(&self, input: &Graph, params: &GadgetParams) -> Result<Vec<Vec<usize>>, ReductionError> {
        let base = optimal_path_decomposition(&input.underlying_undirected())?;
        let mut gadget_bags: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        let mut decomposition_of = |h: &Graph| -> Result<Vec<Vec<usize>>, ReductionError> {
            let key = h as *const Graph as usize;
            if let Some(d) = gadget_bags.get(&key) {
                return Ok(d.clone());
            }
            let d = optimal_path_decomposition(h)?;
            gadget_bags.insert(key, d.clone());
            Ok(d)
        };
        let mut after: Vec<Vec<Vec<usize>>> = vec![Vec::new(); base.len()];
        for ind in &self.indicators {
            let i = (0..base.len()).rev().find(|&i| base[i].contains(&ind.vertex)).expect("covered vertex");
            let keep = base[i].clone();
            let c = decomposition_of(&params.colours[&ind.colour])?;
            pendant_bags(&keep, &ind.colour_pendant, &c, &mut after[i]);
            let c = decomposition_of(&params.v)?;
            pendant_bags(&keep, &ind.v_pendant, &c, &mut after[i]);
        }
        for d in &self.directions {
            let i = (0..base.len())
                .find(|&i| base[i].contains(&d.from) && base[i].contains(&d.to))
                .expect("arc inside a bag");
            let keep = base[i].clone();
            let (p1, p2) = (d.main[10 * self.ell], d.main[12 * self.ell]);
            for t in 0..d.main.len() - 1 {
                if d.main[t] == p1 {
                    pendant_bags(&union(&keep, &[p1]), &d.p_pendant, &decomposition_of(&params.p)?, &mut after[i]);
                }
                if d.main[t] == p2 {
                    pendant_bags(&union(&keep, &[p2]), &d.q_pendant, &decomposition_of(&params.q)?, &mut after[i]);
                }
                after[i].push(union(&keep, &[d.main[t], d.main[t + 1]]));
            }
        }
        let mut bags = Vec::new();
        for (i, bag) in base.into_iter().enumerate() {
            bags.push(bag);
            bags.append(&mut after[i]);
        }
        Ok(bags)
    }
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut s: BTreeSet<usize> = a.iter().copied().collect();
    s.extend(b);
    s.into_iter().collect()
}

fn pendant_bags(keep: &[usize], pd: &Pendant, gadget: &[Vec<usize>], out: &mut Vec<Vec<usize>>) {
    for w in pd.path.windows(2) {
        out.push(union(keep, w));
    }
    let tip = pd.copy[0];
    for bag in gadget {
        let mapped: Vec<usize> = bag.iter().map(|&x| pd.copy[x]).collect();
        out.push(union(keep, &union(&mapped, &[tip])));
    }
}
