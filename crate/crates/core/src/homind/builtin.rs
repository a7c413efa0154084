use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graphcore::{is_isomorphic, make_cycle, make_path, Graph};
use crate::labelled::{letters, Letter};

use super::class::{accept_all, ClassAutomaton, ClassKind};
use super::HomIndError;

/// Largest k accepted for the width classes; their small members are enumerated explicitly.
pub const MAX_WIDTH_K: usize = 5;

/// Classes whose automata are derived by exploring compressed labelled summaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleFamily {
    /// K1, K2 and all cycles C_m with m ≥ 3.
    Cycles,
    /// All paths and all cycles.
    CyclesAndPaths,
    /// All directed cycles, with the one-vertex edgeless graph as the length-0 cycle.
    DirectedCycles,
}

impl CycleFamily {
    pub fn directed(self) -> bool {
        self == CycleFamily::DirectedCycles
    }

    pub fn name(self) -> &'static str {
        match self {
            CycleFamily::Cycles => "cycles",
            CycleFamily::CyclesAndPaths => "cycles-and-paths",
            CycleFamily::DirectedCycles => "directed-cycles",
        }
    }

    /// Direct membership test on a graph.
    pub fn contains(self, g: &Graph) -> bool {
        if g.is_directed() != self.directed() || g.n() == 0 || !g.is_connected() {
            return false;
        }
        let n = g.n();
        match self {
            CycleFamily::DirectedCycles => {
                n == 1 && g.edge_count() == 0
                    || (0..n).all(|v| g.out_neighbours(v).len() == 1 && g.in_neighbours(v).len() == 1)
            }
            CycleFamily::Cycles => {
                n <= 2 || (0..n).all(|v| g.degree(v) == 2)
            }
            CycleFamily::CyclesAndPaths => {
                (0..n).all(|v| g.degree(v) <= 2) && (g.edge_count() == n - 1 || g.edge_count() == n && n >= 3)
            }
        }
    }

    pub fn small_members(self) -> Vec<Graph> {
        let c = |m| make_cycle(m, self.directed()).expect("valid cycle");
        match self {
            CycleFamily::Cycles => vec![Graph::new(1, false), make_path(2).expect("path"), c(3)],
            CycleFamily::CyclesAndPaths => {
                vec![make_path(1).expect("path"), make_path(2).expect("path"), make_path(3).expect("path"), c(3)]
            }
            CycleFamily::DirectedCycles => vec![Graph::new(1, true), c(1), c(2), c(3)],
        }
    }
}

/// A k-labelled graph whose labels sit on vertices 0..k; other vertices are unlabelled.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Summary {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Summary {
    fn start(k: usize) -> Self {
        Summary { n: k, arcs: BTreeSet::new() }
    }

    fn arc(directed: bool, u: usize, v: usize) -> (usize, usize) {
        if directed {
            (u, v)
        } else {
            (u.min(v), u.max(v))
        }
    }

    fn apply(&self, letter: Letter, directed: bool) -> Summary {
        let mut s = self.clone();
        match letter {
            Letter::Edge(i, j) => {
                s.arcs.insert(Self::arc(directed, i, j));
            }
            Letter::Forget(i) => {
                let fresh = s.n;
                s.n += 1;
                let mv = |x: usize| if x == i { fresh } else { x };
                s.arcs = s.arcs.iter().map(|&(u, v)| Self::arc(directed, mv(u), mv(v))).collect();
            }
        }
        s
    }

    fn graph(&self, directed: bool) -> Graph {
        let arcs: Vec<_> = self.arcs.iter().copied().collect();
        Graph::from_edges(self.n, directed, &arcs).expect("summary arcs are valid")
    }
}

struct Explorer {
    family: CycleFamily,
    k: usize,
}

impl Explorer {
    fn directed(&self) -> bool {
        self.family.directed()
    }

    /// None when no extension can reach a class member.
    fn normalise(&self, s: &Summary) -> Option<Summary> {
        let g = s.graph(self.directed());
        for v in 0..s.n {
            let ok = if self.directed() {
                let (i, o) = (g.in_neighbours(v).len(), g.out_neighbours(v).len());
                if v < self.k {
                    i <= 1 && o <= 1
                } else {
                    i == 1 && o == 1
                }
            } else {
                let d = g.degree(v);
                match (v < self.k, self.family) {
                    (true, _) => d <= 2,
                    (false, CycleFamily::Cycles) => d == 2,
                    (false, _) => d == 1 || d == 2,
                }
            };
            if !ok {
                return None;
            }
        }
        if g.components().iter().any(|c| c.iter().all(|&v| v >= self.k)) {
            return None;
        }
        Some(self.canonical(&self.compress(&g)))
    }

    /// Shortens every unlabelled chain: one internal vertex between distinct labels, two
    /// (undirected) or one (directed) for a cycle through a single label, one for a tail.
    fn compress(&self, g: &Graph) -> Summary {
        let k = self.k;
        let directed = self.directed();
        let mut out = Summary::start(k);
        for (u, v) in g.arcs() {
            if u < k && v < k {
                out.arcs.insert(Summary::arc(directed, u, v));
            }
        }
        let mut seen = vec![false; g.n()];
        let add_vertex = |out: &mut Summary| {
            out.n += 1;
            out.n - 1
        };
        for a in 0..k {
            let starts: Vec<usize> = if directed {
                g.out_neighbours(a).iter().copied().collect()
            } else {
                g.neighbours(a).into_iter().collect()
            };
            for u in starts {
                if u < k || seen[u] {
                    continue;
                }
                let (mut prev, mut cur) = (a, u);
                let end = loop {
                    seen[cur] = true;
                    let next = if directed {
                        g.out_neighbours(cur).iter().next().copied()
                    } else {
                        g.neighbours(cur).into_iter().find(|&x| x != prev)
                    };
                    match next {
                        None => break None,
                        Some(x) if x < k => break Some(x),
                        Some(x) => {
                            prev = cur;
                            cur = x;
                        }
                    }
                };
                match end {
                    None => {
                        let p = add_vertex(&mut out);
                        out.arcs.insert(Summary::arc(directed, a, p));
                    }
                    Some(b) if b == a && !directed => {
                        let m1 = add_vertex(&mut out);
                        let m2 = add_vertex(&mut out);
                        out.arcs.insert(Summary::arc(false, a, m1));
                        out.arcs.insert(Summary::arc(false, m1, m2));
                        out.arcs.insert(Summary::arc(false, m2, a));
                    }
                    Some(b) => {
                        let m = add_vertex(&mut out);
                        out.arcs.insert(Summary::arc(directed, a, m));
                        out.arcs.insert(Summary::arc(directed, m, b));
                    }
                }
            }
        }
        out
    }

    /// Smallest arc list over all orderings of the unlabelled vertices.
    fn canonical(&self, s: &Summary) -> Summary {
        let k = self.k;
        let free: Vec<usize> = (k..s.n).collect();
        let mut best: Option<Summary> = None;
        let mut perm = free.clone();
        permute(&mut perm, 0, &mut |p| {
            let map = |x: usize| if x < k { x } else { p[x - k] };
            let cand = Summary {
                n: s.n,
                arcs: s.arcs.iter().map(|&(u, v)| Summary::arc(self.directed(), map(u), map(v))).collect(),
            };
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        });
        best.expect("at least one ordering")
    }

    fn build(&self) -> ClassAutomaton {
        let directed = self.directed();
        let alphabet = letters(self.k, directed);
        let start = self.normalise(&Summary::start(self.k)).expect("the start is alive");
        let mut index: BTreeMap<Summary, usize> = BTreeMap::new();
        // state 1 is the absorbing dead state
        let dead = 1;
        let mut summaries = vec![Some(start.clone()), None];
        index.insert(start, 0);
        let mut step: Vec<Vec<usize>> = vec![Vec::new(), vec![dead; alphabet.len()]];
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            let row = alphabet
                .iter()
                .map(|&l| match self.normalise(&summaries[s].as_ref().expect("live state").apply(l, directed)) {
                    None => dead,
                    Some(t) => *index.entry(t.clone()).or_insert_with(|| {
                        summaries.push(Some(t));
                        step.push(Vec::new());
                        queue.push_back(step.len() - 1);
                        step.len() - 1
                    }),
                })
                .collect();
            step[s] = row;
        }
        let states: Vec<String> = (0..step.len())
            .map(|i| if i == dead { "dead".into() } else { format!("q{i}") })
            .collect();
        let accepting = (0..step.len())
            .map(|i| summaries[i].as_ref().is_some_and(|s| self.family.contains(&s.graph(directed))))
            .collect();
        ClassAutomaton {
            kind: ClassKind::Word,
            k: self.k,
            directed,
            states,
            initial: 0,
            step,
            glue_step: None,
            accepting,
            small_members: self.family.small_members(),
        }
    }
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

/// Word automaton for a cycle family over k labels.
pub fn cycle_family_automaton(family: CycleFamily, k: usize) -> Result<ClassAutomaton, HomIndError> {
    if !(1..=4).contains(&k) {
        return Err(HomIndError::Spec(format!("cycle family automata support 1 ≤ k ≤ 4, got {k}")));
    }
    Ok(Explorer { family, k }.build())
}

/// Non-isomorphic undirected graphs on 1..=max_n vertices.
pub fn all_small_graphs(max_n: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut reps: Vec<Graph> = Vec::new();
        for mask in 0u64..(1 << pairs.len()) {
            let edges: Vec<_> = (0..pairs.len()).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
            let g = Graph::undirected(n, &edges);
            if !reps
                .iter()
                .any(|r| r.edge_count() == g.edge_count() && is_isomorphic(r, &g).unwrap_or(false))
            {
                reps.push(g);
            }
        }
        out.extend(reps);
    }
    out
}

fn parse_width(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let digits = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| rest.strip_prefix('-'))?;
    digits.parse().ok()
}

/// Built-in class by name: `directed-cycles`, `cycles`, `cycles-and-paths` (k = 3), or
/// `pathwidth-le(w)` / `treewidth-le(w)` (k = w + 1; `pathwidth-le-w` is accepted too).
pub fn builtin_class(name: &str) -> Result<ClassAutomaton, HomIndError> {
    let family = match name {
        "cycles" => Some(CycleFamily::Cycles),
        "cycles-and-paths" => Some(CycleFamily::CyclesAndPaths),
        "directed-cycles" => Some(CycleFamily::DirectedCycles),
        _ => None,
    };
    if let Some(f) = family {
        return cycle_family_automaton(f, 3);
    }
    let (kind, w) = match (parse_width(name, "pathwidth-le"), parse_width(name, "treewidth-le")) {
        (Some(w), _) => (ClassKind::Word, w),
        (_, Some(w)) => (ClassKind::Tree, w),
        _ => return Err(HomIndError::UnknownClass(name.to_string())),
    };
    let k = w + 1;
    if k > MAX_WIDTH_K {
        return Err(HomIndError::Spec(format!("width classes support w ≤ {}", MAX_WIDTH_K - 1)));
    }
    Ok(accept_all(kind, k, false, all_small_graphs(k - 1)))
}

pub const BUILTIN_NAMES: [&str; 5] =
    ["directed-cycles", "cycles", "cycles-and-paths", "pathwidth-le(w)", "treewidth-le(w)"];
