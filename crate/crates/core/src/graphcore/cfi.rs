use std::collections::HashMap;

use super::{Graph, GraphError};

/// CFI graph of a connected undirected base graph. Vertices are pairs (v, S) with S a set of
/// edges at v whose size is odd exactly when v is twisted; (u, S) ~ (v, T) when uv is an
/// edge and uv lies in both or neither of S and T. Parity 0 twists nothing, parity 1 twists
/// vertex 0. Vertices are numbered by base vertex, then by the bitmask of S over the
/// sorted incident edges.
pub fn cfi(g: &Graph, parity: u8) -> Result<Graph, GraphError> {
    if g.is_directed() || g.is_coloured() {
        return Err(GraphError::Mode("CFI needs an undirected uncoloured base".into()));
    }
    if parity > 1 {
        return Err(GraphError::Param(format!("parity must be 0 or 1, got {parity}")));
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let incident: Vec<Vec<usize>> = (0..g.n())
        .map(|v| g.out_neighbours(v).iter().copied().collect())
        .collect();
    let mut id: HashMap<(usize, u64), usize> = HashMap::new();
    let mut gadgets: Vec<(usize, u64)> = Vec::new();
    for (v, nbrs) in incident.iter().enumerate() {
        let want = u32::from(parity == 1 && v == 0);
        if nbrs.len() > 20 {
            return Err(GraphError::Param("CFI base degree above 20".into()));
        }
        for mask in 0u64..(1 << nbrs.len()) {
            if mask.count_ones() % 2 == want {
                id.insert((v, mask), gadgets.len());
                gadgets.push((v, mask));
            }
        }
    }
    let contains = |v: usize, mask: u64, w: usize| -> bool {
        let p = incident[v].iter().position(|&x| x == w).expect("w adjacent to v");
        mask >> p & 1 == 1
    };
    let mut out = Graph::new(gadgets.len(), false);
    for (a, &(u, s)) in gadgets.iter().enumerate() {
        for (b, &(v, t)) in gadgets.iter().enumerate().skip(a + 1) {
            if g.has_edge(u, v) && contains(u, s, v) == contains(v, t, u) {
                out.add_edge(a, b)?;
            }
        }
    }
    Ok(out)
}
