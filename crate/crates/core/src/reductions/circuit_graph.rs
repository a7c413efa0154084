use num_bigint::BigUint;

use crate::graphcore::Graph;

use super::circuit::{Circuit, GateLabel, NormalisedCircuit};

pub const COLOUR_S: &str = "S";
pub const COLOUR_T: &str = "T";

/// The six colours used by circuit graphs, in palette order.
pub const CIRCUIT_COLOURS: [&str; 6] = ["0", "1", "+", "×", COLOUR_S, COLOUR_T];

/// Both graphs built from a normalised circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitGraphs {
    /// G(C): gate vertices first (same ids as the gates), then the S vertices of each
    /// internal gate in gate order.
    pub graph: Graph,
    /// Ĝ(C): G(C) plus a T vertex (the last one) with an arc to the output gate.
    pub hat: Graph,
}

/// Coloured digraph of a circuit. Every gate is a vertex coloured by its label; each of
/// the two child arcs of an internal gate is subdivided by an S vertex, and the two S
/// vertices of a × gate are joined in both directions.
pub fn circuit_to_graph(c: &NormalisedCircuit) -> CircuitGraphs {
    circuit_to_graph_unchecked(c.circuit())
}

/// The same construction for any circuit; the homomorphism identities need the normal form.
pub fn circuit_to_graph_unchecked(circuit: &Circuit) -> CircuitGraphs {
    let mut g = Graph::new(0, true).with_colours(Vec::new()).expect("empty palette");
    for gate in circuit.gates() {
        g.add_vertex(Some(gate.label.as_str())).expect("coloured graph");
    }
    for (i, gate) in circuit.gates().iter().enumerate() {
        let Some(children) = gate.children else { continue };
        let s: Vec<usize> = children
            .iter()
            .map(|&child| {
                let s = g.add_vertex(Some(COLOUR_S)).expect("coloured graph");
                g.add_edge(i, s).expect("fresh arc");
                g.add_edge(s, child).expect("fresh arc");
                s
            })
            .collect();
        if gate.label == GateLabel::Times {
            g.add_edge(s[0], s[1]).expect("fresh arc");
            g.add_edge(s[1], s[0]).expect("fresh arc");
        }
    }
    let hat = with_t(&g, circuit.output());
    CircuitGraphs { graph: g, hat }
}

fn with_t(g: &Graph, root: usize) -> Graph {
    let mut h = g.clone();
    let t = h.add_vertex(Some(COLOUR_T)).expect("coloured graph");
    h.add_edge(t, root).expect("fresh arc");
    h
}

/// Shapes in the pattern family: a leaf coloured 1, a × node over two subtrees, or a +
/// node over one subtree. F_h is the shape where every leaf sits at depth h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FShape {
    Leaf,
    Times(Box<FShape>, Box<FShape>),
    Plus(Box<FShape>),
}

impl FShape {
    pub fn strict(h: usize) -> FShape {
        match h {
            0 => FShape::Leaf,
            _ if h % 2 == 1 => FShape::Times(Box::new(FShape::strict(h - 1)), Box::new(FShape::strict(h - 1))),
            _ => FShape::Plus(Box::new(FShape::strict(h - 1))),
        }
    }

    /// A member of the relaxed family of height h: the second factor of every × node is
    /// cut down to a leaf, so leaves sit at different depths once h ≥ 3.
    pub fn relaxed(h: usize) -> FShape {
        match h {
            0 => FShape::Leaf,
            _ if h % 2 == 1 => FShape::Times(Box::new(FShape::relaxed(h - 1)), Box::new(FShape::Leaf)),
            _ => FShape::Plus(Box::new(FShape::relaxed(h - 1))),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            FShape::Leaf => 0,
            FShape::Times(a, b) => 1 + a.height().max(b.height()),
            FShape::Plus(a) => 1 + a.height(),
        }
    }

    /// Whether every leaf sits at the same depth.
    pub fn is_strict(&self) -> bool {
        *self == FShape::strict(self.height())
    }

    /// Coloured digraph of the shape; the root is vertex 0.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(0, true).with_colours(Vec::new()).expect("empty palette");
        build(self, &mut g);
        g
    }

    /// The shape's graph with a T vertex pointing at the root.
    pub fn to_hat_graph(&self) -> Graph {
        with_t(&self.to_graph(), 0)
    }
}

fn build(shape: &FShape, g: &mut Graph) -> usize {
    let add = |g: &mut Graph, c: &str| g.add_vertex(Some(c)).expect("coloured graph");
    match shape {
        FShape::Leaf => add(g, "1"),
        FShape::Plus(a) => {
            let r = add(g, "+");
            let s = add(g, COLOUR_S);
            let child = build(a, g);
            g.add_edge(r, s).expect("fresh arc");
            g.add_edge(s, child).expect("fresh arc");
            r
        }
        FShape::Times(a, b) => {
            let r = add(g, "×");
            let s1 = add(g, COLOUR_S);
            let s2 = add(g, COLOUR_S);
            let c1 = build(a, g);
            let c2 = build(b, g);
            for (x, y) in [(r, s1), (r, s2), (s1, s2), (s2, s1), (s1, c1), (s2, c2)] {
                g.add_edge(x, y).expect("fresh arc");
            }
            r
        }
    }
}

/// F_h (strict) or the relaxed family member of height h, without the T vertex.
pub fn build_f_h(h: usize, strict_depth: bool) -> Graph {
    if strict_depth {
        FShape::strict(h).to_graph()
    } else {
        FShape::relaxed(h).to_graph()
    }
}

/// F̂_h: F_h with the T vertex.
pub fn build_f_hat(h: usize, strict_depth: bool) -> Graph {
    with_t(&build_f_h(h, strict_depth), 0)
}

/// α(h) = 2^(2^⌈h/2⌉ − 1), the number of ways the × nodes of F_h can swap their S pairs.
pub fn alpha(h: usize) -> BigUint {
    let e = (1u64 << h.div_ceil(2)) - 1;
    BigUint::from(1u32) << e
}
