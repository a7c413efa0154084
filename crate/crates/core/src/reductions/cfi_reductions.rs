use crate::graphcore::{categorical_product, cfi, complement, disjoint_union_all, make_cycle, Graph};

use super::ReductionError;

fn plain(graphs: &[&Graph]) -> Result<(), ReductionError> {
    if graphs.iter().any(|g| g.is_directed() || g.is_coloured()) {
        return Err(ReductionError::Mode("expected undirected uncoloured graphs".into()));
    }
    Ok(())
}

/// (G² + H² + G'² + H'², 2·G×H + 2·G'×H'). For connected F the difference of hom counts is
/// (hom(F,G) − hom(F,H))² + (hom(F,G') − hom(F,H'))².
pub fn and_combine(g: &Graph, h: &Graph, g2: &Graph, h2: &Graph) -> Result<(Graph, Graph), ReductionError> {
    plain(&[g, h, g2, h2])?;
    let sq = |x: &Graph| categorical_product(x, x);
    let left = disjoint_union_all(&[sq(g)?, sq(h)?, sq(g2)?, sq(h2)?])?;
    let gh = categorical_product(g, h)?;
    let gh2 = categorical_product(g2, h2)?;
    let right = disjoint_union_all(&[gh.clone(), gh, gh2.clone(), gh2])?;
    Ok((left, right))
}

/// Pair that is cycle-indistinguishable iff G and H are indistinguishable over cycles and
/// paths: and_combine(G, H, Ḡ, H̄).
pub fn cyclespaths_to_cycles(g: &Graph, h: &Graph) -> Result<(Graph, Graph), ReductionError> {
    plain(&[g, h])?;
    and_combine(g, h, &complement(g)?, &complement(h)?)
}

/// Pair that is indistinguishable over cycles and paths iff G and H are over cycles.
/// Inputs with different vertex or edge counts are already told apart by K1 or K2 and are
/// returned unchanged. Otherwise the C_3 mixtures (G×C_3⁰ + H×C_3¹, H×C_3⁰ + G×C_3¹)
/// catch odd cycles, the C_4 mixtures catch even ones, and and_combine joins them.
pub fn cycles_to_cyclespaths(g: &Graph, h: &Graph) -> Result<(Graph, Graph), ReductionError> {
    plain(&[g, h])?;
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok((g.clone(), h.clone()));
    }
    let mix = |m: usize| -> Result<(Graph, Graph), ReductionError> {
        let base = make_cycle(m, false)?;
        let (even, odd) = (cfi(&base, 0)?, cfi(&base, 1)?);
        let p = |x: &Graph, y: &Graph| categorical_product(x, y);
        Ok((
            disjoint_union_all(&[p(g, &even)?, p(h, &odd)?])?,
            disjoint_union_all(&[p(h, &even)?, p(g, &odd)?])?,
        ))
    };
    let (a, b) = mix(3)?;
    let (c, d) = mix(4)?;
    and_combine(&a, &b, &c, &d)
}
