use super::{Graph, GraphError};

fn same_mode(g: &Graph, h: &Graph) -> Result<(), GraphError> {
    if g.is_directed() != h.is_directed() {
        return Err(GraphError::Mode("directed and undirected operands".into()));
    }
    if g.is_coloured() != h.is_coloured() {
        return Err(GraphError::Mode("coloured and uncoloured operands".into()));
    }
    Ok(())
}

/// G + H; vertices of H are shifted by |V(G)|.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    same_mode(g, h)?;
    let mut out = Graph::new(g.n() + h.n(), g.is_directed());
    for (u, v) in g.arcs() {
        out.add_edge(u, v)?;
    }
    for (u, v) in h.arcs() {
        out.add_edge(g.n() + u, g.n() + v)?;
    }
    if let (Some(a), Some(b)) = (g.colours(), h.colours()) {
        out.set_colours(Some(a.iter().chain(b).cloned().collect()))?;
    }
    Ok(out)
}

/// Disjoint union of all graphs in order. An empty list gives the empty undirected graph.
pub fn disjoint_union_all(parts: &[Graph]) -> Result<Graph, GraphError> {
    let Some((first, rest)) = parts.split_first() else {
        return Ok(Graph::new(0, false));
    };
    rest.iter().try_fold(first.clone(), |acc, g| disjoint_union(&acc, g))
}

/// G × H with vertex (u, x) numbered u·|V(H)| + x.
pub fn categorical_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    same_mode(g, h)?;
    if g.is_coloured() {
        return Err(GraphError::Mode("product of coloured graphs".into()));
    }
    let m = h.n();
    let mut out = Graph::new(g.n() * m, g.is_directed());
    for (u, v) in g.arcs() {
        for (x, y) in h.arcs() {
            out.add_edge(u * m + x, v * m + y)?;
        }
    }
    Ok(out)
}

/// Complement of an undirected, uncoloured, loopless graph.
pub fn complement(g: &Graph) -> Result<Graph, GraphError> {
    if g.is_directed() || g.is_coloured() {
        return Err(GraphError::Mode("complement needs an undirected uncoloured graph".into()));
    }
    let mut out = Graph::new(g.n(), false);
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                out.add_edge(u, v)?;
            }
        }
    }
    Ok(out)
}

/// `times` disjoint copies of `g`.
pub fn copies(g: &Graph, times: usize) -> Result<Graph, GraphError> {
    disjoint_union_all(&vec![g.clone(); times])
}

/// Cycle on k vertices. Directed: k >= 1, with C1 a loop and C2 a pair of opposite arcs.
/// Undirected: k >= 3.
pub fn make_cycle(k: usize, directed: bool) -> Result<Graph, GraphError> {
    let min = if directed { 1 } else { 3 };
    if k < min {
        return Err(GraphError::Param(format!("cycle length {k} below {min}")));
    }
    let mut g = Graph::new(k, directed);
    for i in 0..k {
        g.add_edge(i, (i + 1) % k)?;
    }
    Ok(g)
}

/// Path on k >= 1 vertices.
pub fn make_path(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::Param("path needs at least one vertex".into()));
    }
    let mut g = Graph::new(k, false);
    for i in 1..k {
        g.add_edge(i - 1, i)?;
    }
    Ok(g)
}

/// Directed path with k >= 1 vertices, arcs i -> i+1.
pub fn make_directed_path(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::Param("path needs at least one vertex".into()));
    }
    let mut g = Graph::new(k, true);
    for i in 1..k {
        g.add_edge(i - 1, i)?;
    }
    Ok(g)
}

pub fn make_complete(n: usize) -> Graph {
    let mut g = Graph::new(n, false);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).expect("valid edge");
        }
    }
    g
}

/// Star K_{1,m} with centre 0.
pub fn make_star(m: usize) -> Graph {
    let mut g = Graph::new(m + 1, false);
    for v in 1..=m {
        g.add_edge(0, v).expect("valid edge");
    }
    g
}

/// Kneser graph K(r, s): r-subsets of {0..s-1} in lexicographic order, adjacent when disjoint.
pub fn make_kneser(r: usize, s: usize) -> Result<Graph, GraphError> {
    if r == 0 || 2 * r > s {
        return Err(GraphError::Param(format!("Kneser graph needs 1 <= r <= s/2, got r={r}, s={s}")));
    }
    let subsets = combinations(s, r);
    let masks: Vec<u64> = subsets
        .iter()
        .map(|c| c.iter().fold(0u64, |m, &i| m | (1 << i)))
        .collect();
    let mut g = Graph::new(subsets.len(), false);
    for a in 0..masks.len() {
        for b in a + 1..masks.len() {
            if masks[a] & masks[b] == 0 {
                g.add_edge(a, b)?;
            }
        }
    }
    Ok(g)
}

/// All r-subsets of 0..s in lexicographic order.
pub fn combinations(s: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, s: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..s {
            cur.push(i);
            go(i + 1, s, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, s, r, &mut Vec::new(), &mut out);
    out
}
