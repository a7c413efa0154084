//! Exact pathwidth/treewidth for small graphs and a path-decomposition checker.
//! Directions and loops are ignored throughout.

use super::{Graph, GraphError};

pub const WIDTH_BOUND: usize = 20;

fn neighbour_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| {
            g.neighbours(v)
                .into_iter()
                .filter(|&w| w != v)
                .fold(0u32, |m, w| m | (1 << w))
        })
        .collect()
}

/// Exact pathwidth via the vertex separation number, by dynamic programming over subsets.
pub fn pathwidth(g: &Graph) -> Result<usize, GraphError> {
    Ok(separation_layout(g)?.0)
}

/// A path decomposition of minimum width. Bag i holds the i-th vertex of an optimal
/// layout together with the earlier vertices that still have later neighbours.
pub fn optimal_path_decomposition(g: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
    let (_, order) = separation_layout(g)?;
    let nb = neighbour_masks(g);
    let mut placed = 0u32;
    let mut bags = Vec::with_capacity(order.len());
    for &v in &order {
        let mut bag: Vec<usize> = (0..g.n())
            .filter(|&u| placed >> u & 1 == 1 && nb[u] & !placed != 0)
            .collect();
        bag.push(v);
        bags.push(bag);
        placed |= 1 << v;
    }
    Ok(bags)
}

fn separation_layout(g: &Graph) -> Result<(usize, Vec<usize>), GraphError> {
    if g.n() > WIDTH_BOUND {
        return Err(GraphError::SizeBound { n: g.n(), bound: WIDTH_BOUND });
    }
    let n = g.n();
    let nb = neighbour_masks(g);
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut best = vec![u8::MAX; 1 << n];
    let mut last = vec![0u8; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let boundary = (0..n)
            .filter(|&v| s >> v & 1 == 1 && nb[v] & !s != 0)
            .count() as u8;
        for v in 0..n {
            if s >> v & 1 == 1 {
                let b = best[(s & !(1 << v)) as usize].max(boundary);
                if b < best[s as usize] {
                    best[s as usize] = b;
                    last[s as usize] = v as u8;
                }
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok((best[full as usize] as usize, order))
}

/// Exact treewidth by the elimination-ordering recurrence over subsets.
pub fn treewidth(g: &Graph) -> Result<usize, GraphError> {
    if g.n() > 16 {
        return Err(GraphError::SizeBound { n: g.n(), bound: 16 });
    }
    let n = g.n();
    let nb = neighbour_masks(g);
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    // q(s, v): vertices outside s + v reachable from v through s
    let q = |s: u32, v: usize| -> u32 {
        let mut visited = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut reach = 0u32;
        while frontier != 0 {
            let mut next = 0u32;
            for u in 0..n {
                if frontier >> u & 1 == 1 {
                    next |= nb[u];
                }
            }
            next &= !visited;
            visited |= next;
            reach |= next & !s;
            frontier = next & s;
        }
        reach
    };
    let mut best = vec![u8::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let mut b = u8::MAX;
        for v in 0..n {
            if s >> v & 1 == 1 {
                let rest = s & !(1 << v);
                let cost = q(rest, v).count_ones() as u8;
                b = b.min(best[rest as usize].max(cost));
            }
        }
        best[s as usize] = b;
    }
    Ok(best[full as usize] as usize)
}

/// Checks that `bags` is a path decomposition of `g` and returns its width.
pub fn check_path_decomposition(g: &Graph, bags: &[Vec<usize>]) -> Result<usize, String> {
    let n = g.n();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0usize; n];
    let mut count = vec![0usize; n];
    for (i, bag) in bags.iter().enumerate() {
        let mut sorted = bag.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != bag.len() {
            return Err(format!("bag {i} repeats a vertex"));
        }
        for &v in bag {
            if v >= n {
                return Err(format!("bag {i} names vertex {v} outside the graph"));
            }
            first[v] = first[v].min(i);
            last[v] = i;
            count[v] += 1;
        }
    }
    for v in 0..n {
        if count[v] == 0 {
            return Err(format!("vertex {v} is in no bag"));
        }
        if last[v] - first[v] + 1 != count[v] {
            return Err(format!("bags containing vertex {v} are not contiguous"));
        }
    }
    for (u, v) in g.arcs() {
        if u != v && (first[u].max(first[v]) > last[u].min(last[v])) {
            return Err(format!("edge {u}-{v} is in no bag"));
        }
    }
    Ok(bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1))
}
