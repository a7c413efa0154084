use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Graph, GraphError};

/// Number of homomorphisms F -> G (direction- and colour-preserving).
pub fn hom_count(f: &Graph, g: &Graph) -> Result<BigUint, GraphError> {
    hom_count_pinned(f, g, &[])
}

/// Number of homomorphisms F -> G that send each pinned vertex of F to its given image.
pub fn hom_count_pinned(f: &Graph, g: &Graph, pins: &[(usize, usize)]) -> Result<BigUint, GraphError> {
    check_modes(f, g)?;
    let mut pinned: BTreeMap<usize, usize> = BTreeMap::new();
    for &(u, x) in pins {
        f.check_vertex(u)?;
        g.check_vertex(x)?;
        if pinned.insert(u, x).is_some_and(|old| old != x) {
            return Ok(BigUint::zero());
        }
    }
    let target = Target::new(g);
    let Some(colour_of) = colour_ids(f, g) else {
        return Ok(BigUint::zero());
    };
    let mut total = BigUint::one();
    for comp in f.components() {
        let plan = Plan::new(f, &comp, &pinned, &colour_of);
        let mut img = vec![usize::MAX; f.n()];
        let c = plan.count(0, &target, &mut img);
        if c == 0 {
            return Ok(BigUint::zero());
        }
        total *= BigUint::from(c);
    }
    Ok(total)
}

pub(crate) fn check_modes(f: &Graph, g: &Graph) -> Result<(), GraphError> {
    if f.is_directed() != g.is_directed() {
        return Err(GraphError::Mode("pattern and target differ in directedness".into()));
    }
    if f.is_coloured() && !g.is_coloured() {
        return Err(GraphError::Mode("coloured pattern needs a coloured target".into()));
    }
    Ok(())
}

/// Maps each vertex of F to the colour class index of G it must land in. `None` when some
/// colour of F is absent from G, so no homomorphism exists.
fn colour_ids(f: &Graph, g: &Graph) -> Option<Vec<Option<usize>>> {
    let (Some(fc), Some(gc)) = (f.colours(), g.colours()) else {
        return Some(vec![None; f.n()]);
    };
    let mut ids: HashMap<&str, usize> = HashMap::new();
    for c in gc {
        let next = ids.len();
        ids.entry(c.as_str()).or_insert(next);
    }
    fc.iter().map(|c| ids.get(c.as_str()).map(|&i| Some(i))).collect()
}

struct Target {
    n: usize,
    adj: Vec<bool>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    colour: Vec<usize>,
    by_colour: Vec<Vec<usize>>,
}

impl Target {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![false; n * n];
        for (u, v) in g.arcs() {
            adj[u * n + v] = true;
        }
        let mut colour = vec![0; n];
        let mut by_colour: Vec<Vec<usize>> = Vec::new();
        if let Some(gc) = g.colours() {
            let mut ids: HashMap<&str, usize> = HashMap::new();
            for (v, c) in gc.iter().enumerate() {
                let next = ids.len();
                let id = *ids.entry(c.as_str()).or_insert(next);
                if id == by_colour.len() {
                    by_colour.push(Vec::new());
                }
                by_colour[id].push(v);
                colour[v] = id;
            }
        }
        Target {
            n,
            adj,
            out: (0..n).map(|v| g.out_neighbours(v).iter().copied().collect()).collect(),
            inc: (0..n).map(|v| g.in_neighbours(v).iter().copied().collect()).collect(),
            colour,
            by_colour,
        }
    }

    fn arc(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }
}

struct Step {
    vertex: usize,
    fixed: Option<usize>,
    /// Earlier vertices u with an arc u -> vertex.
    preds: Vec<usize>,
    /// Earlier vertices u with an arc vertex -> u.
    succs: Vec<usize>,
    looped: bool,
    colour: Option<usize>,
    /// No later step constrains this vertex, so its choices multiply out.
    independent: bool,
}

struct Plan {
    steps: Vec<Step>,
}

impl Plan {
    fn new(f: &Graph, comp: &[usize], pinned: &BTreeMap<usize, usize>, colour_of: &[Option<usize>]) -> Self {
        // pinned vertices first, then breadth-first so each vertex has a mapped neighbour
        let mut order: Vec<usize> = comp.iter().copied().filter(|v| pinned.contains_key(v)).collect();
        if order.is_empty() {
            order.push(comp[0]);
        }
        let mut placed = vec![false; f.n()];
        for &v in &order {
            placed[v] = true;
        }
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in f.neighbours(v) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
        let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let steps = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let earlier = |u: &usize| pos[u] < i;
                let preds: Vec<usize> = f.in_neighbours(v).iter().filter(|u| earlier(u)).copied().collect();
                let succs: Vec<usize> = if f.is_directed() {
                    f.out_neighbours(v).iter().filter(|u| earlier(u)).copied().collect()
                } else {
                    Vec::new()
                };
                let independent = f.neighbours(v).iter().all(|u| pos[u] <= i);
                Step {
                    vertex: v,
                    fixed: pinned.get(&v).copied(),
                    preds,
                    succs,
                    looped: f.has_edge(v, v),
                    colour: colour_of[v],
                    independent,
                }
            })
            .collect();
        Plan { steps }
    }

    fn candidates(&self, step: &Step, t: &Target, img: &[usize]) -> Vec<usize> {
        let ok = |x: usize| {
            step.colour.is_none_or(|c| t.colour[x] == c)
                && (!step.looped || t.arc(x, x))
                && step.preds.iter().all(|&u| t.arc(img[u], x))
                && step.succs.iter().all(|&u| t.arc(x, img[u]))
        };
        if let Some(x) = step.fixed {
            return if ok(x) { vec![x] } else { Vec::new() };
        }
        let pool: &[usize] = if let Some(&u) = step.preds.first() {
            &t.out[img[u]]
        } else if let Some(&u) = step.succs.first() {
            &t.inc[img[u]]
        } else if let Some(c) = step.colour {
            &t.by_colour[c]
        } else {
            return (0..t.n).filter(|&x| ok(x)).collect();
        };
        pool.iter().copied().filter(|&x| ok(x)).collect()
    }

    fn count(&self, i: usize, t: &Target, img: &mut [usize]) -> u128 {
        let Some(step) = self.steps.get(i) else {
            return 1;
        };
        let cands = self.candidates(step, t, img);
        if cands.is_empty() {
            return 0;
        }
        if step.independent {
            let rest = self.count(i + 1, t, img);
            return (cands.len() as u128)
                .checked_mul(rest)
                .expect("homomorphism count exceeds u128");
        }
        let mut total: u128 = 0;
        for x in cands {
            img[step.vertex] = x;
            total = total
                .checked_add(self.count(i + 1, t, img))
                .expect("homomorphism count exceeds u128");
        }
        img[step.vertex] = usize::MAX;
        total
    }
}
