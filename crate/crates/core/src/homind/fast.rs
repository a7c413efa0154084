use num_bigint::BigUint;
use num_traits::Zero;

use crate::graphcore::{make_cycle, make_path, Graph};

use super::decide::{HomIndVerdict, WitnessSource};
use super::HomIndError;

/// tr(A^j) for j = 0..=max, where A may have loops. Entry 0 is |V|.
pub fn closed_walk_counts(g: &Graph, max: usize) -> Vec<BigUint> {
    let n = g.n();
    let mut out = vec![BigUint::zero(); max + 1];
    for s in 0..n {
        let mut v = vec![BigUint::zero(); n];
        v[s] = BigUint::from(1u32);
        out[0] += 1u32;
        for count in out.iter_mut().skip(1) {
            v = step(g, &v);
            *count += &v[s];
        }
    }
    out
}

/// 1ᵀ A^j 1 for j = 0..=max: the number of walks with j edges.
pub fn walk_counts(g: &Graph, max: usize) -> Vec<BigUint> {
    let mut v = vec![BigUint::from(1u32); g.n()];
    let mut out = Vec::with_capacity(max + 1);
    out.push(v.iter().sum());
    for _ in 0..max {
        v = step(g, &v);
        out.push(v.iter().sum());
    }
    out
}

fn step(g: &Graph, v: &[BigUint]) -> Vec<BigUint> {
    (0..g.n())
        .map(|u| g.out_neighbours(u).iter().map(|&w| &v[w]).sum())
        .collect()
}

fn need(g: &Graph, h: &Graph, directed: bool) -> Result<(), HomIndError> {
    for x in [g, h] {
        if x.is_directed() != directed {
            return Err(HomIndError::Mode(format!(
                "expected {} graphs",
                if directed { "directed" } else { "undirected" }
            )));
        }
        if x.is_coloured() {
            return Err(HomIndError::Mode("expected uncoloured graphs".into()));
        }
    }
    Ok(())
}

fn differ(f: Graph, name: String, a: &BigUint, b: &BigUint) -> HomIndVerdict {
    HomIndVerdict::distinguished(f, a.clone(), b.clone(), WitnessSource::Family(name))
}

/// Indistinguishability over directed cycles. Agreement on |V| (the length-0 cycle) and on
/// tr(A^j) for j ≤ max(|V(G)|, |V(H)|) gives equal characteristic polynomials after
/// zero-padding, hence equal traces for every j.
pub fn decide_directed_cycles_fast(g: &Graph, h: &Graph) -> Result<HomIndVerdict, HomIndError> {
    need(g, h, true)?;
    let n = g.n().max(h.n());
    let (tg, th) = (closed_walk_counts(g, n), closed_walk_counts(h, n));
    for j in 0..=n {
        if tg[j] != th[j] {
            let f = if j == 0 { Graph::new(1, true) } else { make_cycle(j, true)? };
            return Ok(differ(f, format!("directed cycle of length {j}"), &tg[j], &th[j]));
        }
    }
    Ok(HomIndVerdict::indistinguishable())
}

/// Indistinguishability over {K1, K2} ∪ {C_m : m ≥ 3}, i.e. |V| and tr(A^j) for j ≥ 2.
pub fn decide_cycles_fast(g: &Graph, h: &Graph) -> Result<HomIndVerdict, HomIndError> {
    need(g, h, false)?;
    let n = g.n().max(h.n());
    let (tg, th) = (closed_walk_counts(g, n), closed_walk_counts(h, n));
    for j in [0].into_iter().chain(2..=n) {
        if tg[j] != th[j] {
            return Ok(differ(cycle_member(j)?, cycle_name(j), &tg[j], &th[j]));
        }
    }
    Ok(HomIndVerdict::indistinguishable())
}

fn cycle_member(j: usize) -> Result<Graph, HomIndError> {
    Ok(match j {
        0 => Graph::new(1, false),
        2 => make_path(2)?,
        _ => make_cycle(j, false)?,
    })
}

fn cycle_name(j: usize) -> String {
    match j {
        0 => "K1".into(),
        2 => "K2".into(),
        _ => format!("C{j}"),
    }
}

/// Indistinguishability over paths and cycles. Walk counts hom(P_{j+1}, G) = 1ᵀA^j1 are
/// compared for j ≤ 2n − 1 next to the cycle traces; witnesses are tried by vertex count.
pub fn decide_cycles_paths_fast(g: &Graph, h: &Graph) -> Result<HomIndVerdict, HomIndError> {
    need(g, h, false)?;
    let n = g.n().max(h.n());
    let (tg, th) = (closed_walk_counts(g, n), closed_walk_counts(h, n));
    let (wg, wh) = (walk_counts(g, 2 * n), walk_counts(h, 2 * n));
    for size in 1..=2 * n {
        if wg[size - 1] != wh[size - 1] {
            return Ok(differ(make_path(size)?, format!("P{size}"), &wg[size - 1], &wh[size - 1]));
        }
        if size >= 3 && size <= n && tg[size] != th[size] {
            return Ok(differ(make_cycle(size, false)?, format!("C{size}"), &tg[size], &th[size]));
        }
    }
    Ok(HomIndVerdict::indistinguishable())
}
