#![allow(dead_code)]

use homind::graphcore::Graph;
use homind::reductions::{Circuit, Gate, GateLabel};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random undirected graph with 1..=max_n vertices and edge probability p.
pub fn random_graph(rng: &mut impl Rng, max_n: usize, p: f64) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let mut g = Graph::new(n, false);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random digraph, loops allowed.
pub fn random_digraph(rng: &mut impl Rng, max_n: usize, p: f64) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let mut g = Graph::new(n, true);
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random graph with the same vertex and edge counts as g.
pub fn same_counts(rng: &mut impl Rng, g: &Graph) -> Graph {
    let n = g.n();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut h = Graph::new(n, false);
    for _ in 0..g.edge_count() {
        let (u, v) = pairs.swap_remove(rng.gen_range(0..pairs.len()));
        h.add_edge(u, v).unwrap();
    }
    h
}

/// g with its vertices shuffled.
pub fn shuffled(rng: &mut impl Rng, g: &Graph) -> Graph {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.permuted(&perm)
}

/// Non-isomorphic trees on 1..=max_n vertices, from Prüfer sequences.
pub fn trees_up_to(max_n: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = vec![Graph::new(1, false), Graph::undirected(2, &[(0, 1)])];
    for n in 3..=max_n {
        let mut reps: Vec<Graph> = Vec::new();
        let total = n.pow((n - 2) as u32);
        for code in 0..total {
            let mut seq = Vec::with_capacity(n - 2);
            let mut c = code;
            for _ in 0..n - 2 {
                seq.push(c % n);
                c /= n;
            }
            let g = prufer(n, &seq);
            if !reps.iter().any(|r| homind::graphcore::is_isomorphic(r, &g).unwrap()) {
                reps.push(g);
            }
        }
        out.extend(reps);
    }
    out
}

fn prufer(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut g = Graph::new(n, false);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        g.add_edge(leaf, x).unwrap();
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]).unwrap();
    g
}

/// Trees whose non-leaf vertices induce a path.
pub fn is_caterpillar(g: &Graph) -> bool {
    let spine: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 1).collect();
    let s = g.induced(&spine);
    spine.is_empty() || s.is_connected() && (0..s.n()).all(|v| s.degree(v) <= 2)
}

/// Random subtraction-free circuit with at most max_gates gates, trimmed to what the
/// output depends on.
pub fn random_circuit(rng: &mut impl Rng, max_gates: usize) -> Circuit {
    let leaves = rng.gen_range(1..=2);
    let total = rng.gen_range(leaves + 1..=max_gates.max(leaves + 1));
    let mut gates: Vec<Gate> = (0..leaves)
        .map(|_| Gate::leaf(if rng.gen_bool(0.7) { GateLabel::One } else { GateLabel::Zero }))
        .collect();
    while gates.len() < total {
        let label = if rng.gen_bool(0.5) { GateLabel::Plus } else { GateLabel::Times };
        let a = rng.gen_range(0..gates.len());
        let b = rng.gen_range(0..gates.len());
        gates.push(Gate::op(label, a, b));
    }
    // keep what the last gate depends on
    let out = gates.len() - 1;
    let mut keep = vec![false; gates.len()];
    keep[out] = true;
    for i in (0..gates.len()).rev() {
        if keep[i] {
            if let Some([a, b]) = gates[i].children {
                keep[a] = true;
                keep[b] = true;
            }
        }
    }
    let mut id = vec![usize::MAX; gates.len()];
    let mut kept = Vec::new();
    for (i, g) in gates.iter().enumerate() {
        if keep[i] {
            id[i] = kept.len();
            kept.push(Gate { label: g.label, children: g.children.map(|[a, b]| [id[a], id[b]]) });
        }
    }
    Circuit::new(kept, id[out]).unwrap()
}
