use super::{Graph, GraphError};

pub const DEFAULT_ISO_BOUND: usize = 16;

/// Exhaustive isomorphism test with degree/colour pruning, for graphs up to `bound` vertices.
pub fn is_isomorphic_bounded(g: &Graph, h: &Graph, bound: usize) -> Result<bool, GraphError> {
    if g.n() > bound || h.n() > bound {
        return Err(GraphError::SizeBound {
            n: g.n().max(h.n()),
            bound,
        });
    }
    Ok(find_isomorphism(g, h).is_some())
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    is_isomorphic_bounded(g, h, DEFAULT_ISO_BOUND)
}

fn signature(g: &Graph, v: usize) -> (usize, usize, bool, Option<&str>) {
    (
        g.out_neighbours(v).len(),
        g.in_neighbours(v).len(),
        g.has_edge(v, v),
        g.colour(v),
    )
}

/// Some bijection p with uv in E(G) iff p(u)p(v) in E(H), or None.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n()
        || g.is_directed() != h.is_directed()
        || g.is_coloured() != h.is_coloured()
        || g.edge_count() != h.edge_count()
    {
        return None;
    }
    let mut sg: Vec<_> = (0..g.n()).map(|v| signature(g, v)).collect();
    let mut sh: Vec<_> = (0..h.n()).map(|v| signature(h, v)).collect();
    sg.sort();
    sh.sort();
    if sg != sh {
        return None;
    }
    // breadth-first order over G so mapped neighbours prune early
    let mut order = Vec::with_capacity(g.n());
    let mut seen = vec![false; g.n()];
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            for w in g.neighbours(order[i]) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let mut map = vec![usize::MAX; g.n()];
    let mut used = vec![false; h.n()];
    if extend(g, h, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(g: &Graph, h: &Graph, order: &[usize], i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let Some(&v) = order.get(i) else {
        return true;
    };
    let sig = signature(g, v);
    for x in 0..h.n() {
        if used[x] || signature(h, x) != sig {
            continue;
        }
        let consistent = order[..i].iter().all(|&u| {
            let y = map[u];
            g.has_edge(u, v) == h.has_edge(y, x) && g.has_edge(v, u) == h.has_edge(x, y)
        });
        if !consistent {
            continue;
        }
        map[v] = x;
        used[x] = true;
        if extend(g, h, order, i + 1, map, used) {
            return true;
        }
        used[x] = false;
        map[v] = usize::MAX;
    }
    false
}
