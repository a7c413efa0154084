use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::GraphError;

/// Finite simple graph on vertices `0..n`, directed or undirected, optionally with a colour
/// on every vertex. Undirected graphs store both orientations of each edge. Loops are only
/// allowed in directed graphs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    directed: bool,
    out: Vec<BTreeSet<usize>>,
    inc: Vec<BTreeSet<usize>>,
    colours: Option<Vec<String>>,
}

impl Graph {
    pub fn new(n: usize, directed: bool) -> Self {
        Graph {
            n,
            directed,
            out: vec![BTreeSet::new(); n],
            inc: vec![BTreeSet::new(); n],
            colours: None,
        }
    }

    pub fn from_edges(n: usize, directed: bool, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n, directed);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Undirected graph from an edge list; panics on invalid input. Meant for fixtures.
    pub fn undirected(n: usize, edges: &[(usize, usize)]) -> Self {
        Graph::from_edges(n, false, edges).expect("invalid undirected edge list")
    }

    /// Directed graph from an arc list; panics on invalid input. Meant for fixtures.
    pub fn directed(n: usize, arcs: &[(usize, usize)]) -> Self {
        Graph::from_edges(n, true, arcs).expect("invalid directed arc list")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_coloured(&self) -> bool {
        self.colours.is_some()
    }

    pub fn colours(&self) -> Option<&[String]> {
        self.colours.as_deref()
    }

    pub fn colour(&self, v: usize) -> Option<&str> {
        self.colours.as_ref().map(|c| c[v].as_str())
    }

    pub fn with_colours(mut self, colours: Vec<String>) -> Result<Self, GraphError> {
        self.set_colours(Some(colours))?;
        Ok(self)
    }

    pub fn set_colours(&mut self, colours: Option<Vec<String>>) -> Result<(), GraphError> {
        if let Some(c) = &colours {
            if c.len() != self.n {
                return Err(GraphError::Colours(format!(
                    "{} colours for {} vertices",
                    c.len(),
                    self.n
                )));
            }
        }
        self.colours = colours;
        Ok(())
    }

    pub fn set_colour(&mut self, v: usize, colour: &str) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        match &mut self.colours {
            Some(c) => {
                c[v] = colour.to_string();
                Ok(())
            }
            None => Err(GraphError::Colours("graph is uncoloured".into())),
        }
    }

    /// Appends an isolated vertex and returns its index. Coloured graphs need `colour`.
    pub fn add_vertex(&mut self, colour: Option<&str>) -> Result<usize, GraphError> {
        match (&mut self.colours, colour) {
            (Some(c), Some(col)) => c.push(col.to_string()),
            (None, None) => {}
            (Some(_), None) => return Err(GraphError::Colours("new vertex needs a colour".into())),
            (None, Some(_)) => return Err(GraphError::Colours("graph is uncoloured".into())),
        }
        self.out.push(BTreeSet::new());
        self.inc.push(BTreeSet::new());
        self.n += 1;
        Ok(self.n - 1)
    }

    /// Adds an edge (arc when directed). Re-adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v && !self.directed {
            return Err(GraphError::Loop(u));
        }
        self.out[u].insert(v);
        self.inc[v].insert(u);
        if !self.directed {
            self.out[v].insert(u);
            self.inc[u].insert(v);
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].contains(&v)
    }

    pub fn out_neighbours(&self, v: usize) -> &BTreeSet<usize> {
        &self.out[v]
    }

    pub fn in_neighbours(&self, v: usize) -> &BTreeSet<usize> {
        &self.inc[v]
    }

    /// Neighbours ignoring direction.
    pub fn neighbours(&self, v: usize) -> BTreeSet<usize> {
        self.out[v].union(&self.inc[v]).copied().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        if self.directed {
            self.out[v].len() + self.inc[v].len()
        } else {
            self.out[v].len()
        }
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|v| self.out[v].contains(&v))
    }

    /// All ordered pairs in the edge relation (both orientations when undirected).
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter().map(move |&v| (u, v)))
    }

    /// Edges listed once: arcs when directed, pairs u <= v when undirected.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.arcs()
            .filter(|&(u, v)| self.directed || u <= v)
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Weakly connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for w in self.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Graph obtained by sending vertex v to perm[v].
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.n, self.directed);
        for (u, v) in self.arcs() {
            g.out[perm[u]].insert(perm[v]);
            g.inc[perm[v]].insert(perm[u]);
        }
        if let Some(c) = &self.colours {
            let mut nc = vec![String::new(); self.n];
            for (v, col) in c.iter().enumerate() {
                nc[perm[v]] = col.clone();
            }
            g.colours = Some(nc);
        }
        g
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let pos: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::new(vertices.len(), self.directed);
        for (u, v) in self.arcs() {
            if let (Some(&a), Some(&b)) = (pos.get(&u), pos.get(&v)) {
                g.out[a].insert(b);
                g.inc[b].insert(a);
            }
        }
        if let Some(c) = &self.colours {
            g.colours = Some(vertices.iter().map(|&v| c[v].clone()).collect());
        }
        g
    }

    /// Same graph with colours removed.
    pub fn uncoloured(&self) -> Graph {
        Graph {
            colours: None,
            ..self.clone()
        }
    }

    /// Underlying undirected graph (loops dropped).
    pub fn underlying_undirected(&self) -> Graph {
        let mut g = Graph::new(self.n, false);
        for (u, v) in self.arcs() {
            if u != v {
                g.add_edge(u, v).expect("valid edge");
            }
        }
        g.colours = self.colours.clone();
        g
    }

    pub fn adjacency_i64(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.n]; self.n];
        for (u, v) in self.arcs() {
            a[u][v] = 1;
        }
        a
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            directed: self.directed,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            colours: self.colours.as_ref().map(|c| {
                c.iter()
                    .enumerate()
                    .map(|(v, col)| (v.to_string(), col.clone()))
                    .collect()
            }),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph, GraphError> {
        let mut g = Graph::new(j.n, j.directed);
        for &[u, v] in &j.edges {
            if g.has_edge(u, v) || (!j.directed && g.has_edge(v, u)) {
                return Err(GraphError::Json(format!("duplicate edge [{u},{v}]")));
            }
            g.add_edge(u, v)?;
        }
        if let Some(map) = &j.colours {
            let mut cols: Vec<Option<String>> = vec![None; j.n];
            for (k, c) in map {
                let v: usize = k
                    .parse()
                    .map_err(|_| GraphError::Json(format!("bad colour key {k:?}")))?;
                g.check_vertex(v)?;
                cols[v] = Some(c.clone());
            }
            let cols: Option<Vec<String>> = cols.into_iter().collect();
            let cols = cols.ok_or_else(|| GraphError::Json("colours must cover every vertex".into()))?;
            g.colours = Some(cols);
        }
        Ok(g)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph serialises")
    }

    pub fn from_json_str(s: &str) -> Result<Graph, GraphError> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        Graph::from_json(&j)
    }
}

/// Wire format shared with the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub directed: bool,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colours: Option<BTreeMap<String, String>>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::from_json(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_edges_are_symmetric() {
        let g = Graph::undirected(3, &[(0, 1), (2, 1)]);
        assert!(g.has_edge(1, 0) && g.has_edge(1, 2));
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.edge_count(), 2);
        assert!(Graph::from_edges(2, false, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(2, true, &[(1, 1)]).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::undirected(3, &[(0, 1)])
            .with_colours(vec!["a".into(), "b".into(), "a".into()])
            .unwrap();
        let s = g.to_json_string();
        assert_eq!(s, r#"{"n":3,"directed":false,"edges":[[0,1]],"colours":{"0":"a","1":"b","2":"a"}}"#);
        assert_eq!(Graph::from_json_str(&s).unwrap(), g);
        assert!(Graph::from_json_str(r#"{"n":2,"directed":false,"edges":[[0,2]]}"#).is_err());
        assert!(Graph::from_json_str(r#"{"n":2,"directed":false,"edges":[],"colours":{"0":"a"}}"#).is_err());
    }

    #[test]
    fn components_are_weak() {
        let g = Graph::directed(4, &[(0, 1), (2, 1)]);
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3]]);
    }
}
