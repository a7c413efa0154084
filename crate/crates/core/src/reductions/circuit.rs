use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::ReductionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateLabel {
    Zero,
    One,
    Plus,
    Times,
    Minus,
}

impl GateLabel {
    pub fn is_leaf(self) -> bool {
        matches!(self, GateLabel::Zero | GateLabel::One)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GateLabel::Zero => "0",
            GateLabel::One => "1",
            GateLabel::Plus => "+",
            GateLabel::Times => "×",
            GateLabel::Minus => "-",
        }
    }
}

impl fmt::Display for GateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GateLabel {
    type Err = ReductionError;

    /// Accepts `×`, `*` and `x` for multiplication.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "0" => GateLabel::Zero,
            "1" => GateLabel::One,
            "+" => GateLabel::Plus,
            "×" | "*" | "x" => GateLabel::Times,
            "-" | "−" => GateLabel::Minus,
            _ => return Err(ReductionError::Circuit(format!("unknown gate label {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub label: GateLabel,
    /// Ordered children; both may be the same gate.
    pub children: Option<[usize; 2]>,
}

impl Gate {
    pub fn leaf(label: GateLabel) -> Self {
        Gate { label, children: None }
    }

    pub fn op(label: GateLabel, a: usize, b: usize) -> Self {
        Gate { label, children: Some([a, b]) }
    }
}

/// Variable-free arithmetic circuit over {0, 1, +, ×} (and `-`, which only `eval_circuit`
/// accepts). Every gate other than the output feeds some other gate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    gates: Vec<Gate>,
    output: usize,
    order: Vec<usize>,
}

impl Circuit {
    pub fn new(gates: Vec<Gate>, output: usize) -> Result<Self, ReductionError> {
        let bad = |m: String| Err(ReductionError::Circuit(m));
        let n = gates.len();
        if output >= n {
            return bad(format!("output {output} out of range"));
        }
        let mut parents = vec![0usize; n];
        for (i, g) in gates.iter().enumerate() {
            match (g.label.is_leaf(), g.children) {
                (true, Some(_)) => return bad(format!("leaf gate {i} has children")),
                (false, None) => return bad(format!("gate {i} needs two children")),
                (false, Some(cs)) => {
                    for c in cs {
                        if c >= n {
                            return bad(format!("gate {i} has child {c} out of range"));
                        }
                    }
                    parents[cs[0]] += 1;
                    if cs[1] != cs[0] {
                        parents[cs[1]] += 1;
                    }
                }
                (true, None) => {}
            }
        }
        if parents[output] != 0 {
            return bad("the output gate has outgoing edges".into());
        }
        if let Some(i) = (0..n).find(|&i| i != output && parents[i] == 0) {
            return bad(format!("gate {i} is a second output"));
        }
        let order = topological(&gates).ok_or_else(|| ReductionError::Circuit("circuit has a cycle".into()))?;
        Ok(Circuit { gates, output, order })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn internal_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.label.is_leaf()).count()
    }

    /// Gates in an order where children precede parents.
    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    /// Leaves have height 0; an internal gate is one above its highest child.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.gates.len()];
        for &i in &self.order {
            if let Some([a, b]) = self.gates[i].children {
                h[i] = 1 + h[a].max(h[b]);
            }
        }
        h
    }

    pub fn height(&self) -> usize {
        self.heights()[self.output]
    }

    /// Values of all gates.
    pub fn values(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); self.gates.len()];
        for &i in &self.order {
            let g = &self.gates[i];
            v[i] = match (g.label, g.children) {
                (GateLabel::Zero, _) => BigInt::from(0),
                (GateLabel::One, _) => BigInt::from(1),
                (GateLabel::Plus, Some([a, b])) => &v[a] + &v[b],
                (GateLabel::Times, Some([a, b])) => &v[a] * &v[b],
                (GateLabel::Minus, Some([a, b])) => &v[a] - &v[b],
                _ => unreachable!("validated on construction"),
            };
        }
        v
    }

    /// Why the circuit violates the normal form, if it does: no subtraction, children one
    /// level below their parent, `+` at even and `×` at odd height, output at even height.
    pub fn normal_form_violation(&self) -> Option<String> {
        let h = self.heights();
        for (i, g) in self.gates.iter().enumerate() {
            match (g.label, g.children) {
                (GateLabel::Minus, _) => return Some(format!("gate {i} subtracts")),
                (_, Some([a, b])) if h[a] + 1 != h[i] || h[b] + 1 != h[i] => {
                    return Some(format!("gate {i} has a child below height {}", h[i] - 1))
                }
                (GateLabel::Plus, _) if h[i] % 2 != 0 => return Some(format!("+ gate {i} at odd height")),
                (GateLabel::Times, _) if h[i] % 2 != 1 => return Some(format!("× gate {i} at even height")),
                _ => {}
            }
        }
        (h[self.output] % 2 != 0).then(|| "output at odd height".to_string())
    }

    pub fn to_json(&self) -> CircuitJson {
        CircuitJson {
            gates: self
                .gates
                .iter()
                .map(|g| GateJson { label: g.label.to_string(), children: g.children })
                .collect(),
            output: self.output,
        }
    }

    pub fn from_json(j: &CircuitJson) -> Result<Circuit, ReductionError> {
        let gates = j
            .gates
            .iter()
            .map(|g| Ok(Gate { label: g.label.parse()?, children: g.children }))
            .collect::<Result<Vec<_>, ReductionError>>()?;
        Circuit::new(gates, j.output)
    }
}

fn topological(gates: &[Gate]) -> Option<Vec<usize>> {
    // 0 = unseen, 1 = on the stack, 2 = done
    let mut state = vec![0u8; gates.len()];
    let mut order = Vec::with_capacity(gates.len());
    for root in 0..gates.len() {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (g, ref mut next)) = stack.last_mut() {
            let cs = gates[g].children.map(|c| c.to_vec()).unwrap_or_default();
            if *next < cs.len() {
                let c = cs[*next];
                *next += 1;
                match state[c] {
                    0 => {
                        state[c] = 1;
                        stack.push((c, 0));
                    }
                    1 => return None,
                    _ => {}
                }
            } else {
                state[g] = 2;
                order.push(g);
                stack.pop();
            }
        }
    }
    Some(order)
}

/// Circuit JSON: `{"gates": [{"label": "+", "children": [i, j]}, ...], "output": k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitJson {
    pub gates: Vec<GateJson>,
    pub output: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateJson {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub children: Option<[usize; 2]>,
}

pub fn eval_circuit(c: &Circuit) -> BigInt {
    c.values().swap_remove(c.output)
}

/// A circuit in the layered normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalisedCircuit(Circuit);

impl NormalisedCircuit {
    pub fn new(c: Circuit) -> Result<Self, ReductionError> {
        match c.normal_form_violation() {
            Some(m) => Err(ReductionError::NotNormalised(m)),
            None => Ok(NormalisedCircuit(c)),
        }
    }

    pub fn circuit(&self) -> &Circuit {
        &self.0
    }

    pub fn height(&self) -> usize {
        self.0.height()
    }
}

struct Builder {
    gates: Vec<Gate>,
    memo: BTreeMap<Gate, usize>,
    /// Constant towers: ones[i] and zeros[i] sit at height i.
    ones: Vec<usize>,
    zeros: Vec<usize>,
}

impl Ord for Gate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.label, self.children).cmp(&(other.label, other.children))
    }
}

impl PartialOrd for Gate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Builder {
    fn add(&mut self, g: Gate) -> usize {
        if let Some(&i) = self.memo.get(&g) {
            return i;
        }
        self.gates.push(g.clone());
        self.memo.insert(g, self.gates.len() - 1);
        self.gates.len() - 1
    }

    fn constant(&mut self, one: bool, level: usize) -> usize {
        while self.ones.len() <= level {
            let i = self.ones.len();
            let (o, z) = if i == 0 {
                (self.add(Gate::leaf(GateLabel::One)), self.add(Gate::leaf(GateLabel::Zero)))
            } else if i % 2 == 1 {
                let (o, z) = (self.ones[i - 1], self.zeros[i - 1]);
                (self.add(Gate::op(GateLabel::Times, o, o)), self.add(Gate::op(GateLabel::Times, z, z)))
            } else {
                let (o, z) = (self.ones[i - 1], self.zeros[i - 1]);
                (self.add(Gate::op(GateLabel::Plus, o, z)), self.add(Gate::op(GateLabel::Plus, z, z)))
            };
            self.ones.push(o);
            self.zeros.push(z);
        }
        if one {
            self.ones[level]
        } else {
            self.zeros[level]
        }
    }

    /// Raises gate x from height `from` to height `to` without changing its value:
    /// x × 1 onto odd heights and x + 0 onto even heights.
    fn lift(&mut self, mut x: usize, from: usize, to: usize) -> usize {
        for level in from..to {
            x = if level % 2 == 0 {
                let one = self.constant(true, level);
                self.add(Gate::op(GateLabel::Times, x, one))
            } else {
                let zero = self.constant(false, level);
                self.add(Gate::op(GateLabel::Plus, x, zero))
            };
        }
        x
    }
}

/// Value-preserving rewrite into the layered normal form. Each `+` gate moves to the
/// smallest even height above its children and each `×` gate to the smallest odd one;
/// children are raised with ×1 and +0 steps built from towers of constant gates.
pub fn normalise_circuit(c: &Circuit) -> Result<NormalisedCircuit, ReductionError> {
    normalise_circuit_to_height(c, 0)
}

/// As normalise_circuit, with the output raised to height at least `min_height`.
pub fn normalise_circuit_to_height(c: &Circuit, min_height: usize) -> Result<NormalisedCircuit, ReductionError> {
    if c.gates.iter().any(|g| g.label == GateLabel::Minus) {
        return Err(ReductionError::Subtraction);
    }
    let mut b = Builder { gates: Vec::new(), memo: BTreeMap::new(), ones: Vec::new(), zeros: Vec::new() };
    let mut placed: Vec<(usize, usize)> = vec![(0, 0); c.len()];
    for &i in &c.order {
        let g = &c.gates[i];
        placed[i] = match g.children {
            None => (b.add(g.clone()), 0),
            Some([x, y]) => {
                let ((gx, hx), (gy, hy)) = (placed[x], placed[y]);
                let parity = usize::from(g.label == GateLabel::Times);
                let mut level = hx.max(hy) + 1;
                if level % 2 != parity {
                    level += 1;
                }
                let cx = b.lift(gx, hx, level - 1);
                let cy = b.lift(gy, hy, level - 1);
                (b.add(Gate::op(g.label, cx, cy)), level)
            }
        };
    }
    let (out, h) = placed[c.output];
    let target = (h + h % 2).max(min_height + min_height % 2);
    let out = b.lift(out, h, target);
    NormalisedCircuit::new(prune(&b.gates, out)?)
}

/// A normalised circuit computing `value`, built by doubling along the binary expansion,
/// with output height at least `min_height`.
pub fn circuit_for_value(value: &BigUint, min_height: usize) -> NormalisedCircuit {
    let mut gates = vec![Gate::leaf(if value.is_zero() { GateLabel::Zero } else { GateLabel::One })];
    let bits = value.bits();
    let mut acc = 0;
    for i in (0..bits.saturating_sub(1)).rev() {
        gates.push(Gate::op(GateLabel::Plus, acc, acc));
        acc = gates.len() - 1;
        if value.bit(i) {
            gates.push(Gate::op(GateLabel::Plus, acc, 0));
            acc = gates.len() - 1;
        }
    }
    let c = Circuit::new(gates, acc).expect("doubling circuit is well formed");
    normalise_circuit_to_height(&c, min_height).expect("no subtraction")
}

/// Keeps the gates reachable from `out`, renumbered in their original order.
fn prune(gates: &[Gate], out: usize) -> Result<Circuit, ReductionError> {
    let mut keep = vec![false; gates.len()];
    let mut stack = vec![out];
    while let Some(g) = stack.pop() {
        if !std::mem::replace(&mut keep[g], true) {
            if let Some(cs) = gates[g].children {
                stack.extend(cs);
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
    Circuit::new(kept, id[out])
}

/// Every normalised circuit with at most `max_gates` gates and output height at most
/// `max_height`, with each gate listed after its children and the output last. Two children
/// of a gate are listed in non-decreasing order, which loses nothing since + and × commute.
pub fn enumerate_normalised(max_gates: usize, max_height: usize) -> Vec<NormalisedCircuit> {
    let mut out = Vec::new();
    for leaves in [vec![GateLabel::One], vec![GateLabel::Zero], vec![GateLabel::Zero, GateLabel::One]] {
        if leaves.len() > max_gates {
            continue;
        }
        let gates: Vec<Gate> = leaves.iter().map(|&l| Gate::leaf(l)).collect();
        let heights = vec![0; gates.len()];
        extend(gates, heights, max_gates, max_height, &mut out);
    }
    out
}

fn extend(gates: Vec<Gate>, heights: Vec<usize>, max_gates: usize, max_height: usize, out: &mut Vec<NormalisedCircuit>) {
    let last = gates.len() - 1;
    if heights[last] % 2 == 0 {
        if let Ok(c) = Circuit::new(gates.clone(), last) {
            out.push(NormalisedCircuit::new(c).expect("built in normal form"));
        }
    }
    if gates.len() == max_gates {
        return;
    }
    // new gates go at the current top height or one above, keeping the list sorted by height
    let top = heights[last];
    for level in [top, top + 1] {
        if level == 0 || level > max_height {
            continue;
        }
        let label = if level % 2 == 1 { GateLabel::Times } else { GateLabel::Plus };
        let below: Vec<usize> = (0..gates.len()).filter(|&i| heights[i] + 1 == level).collect();
        for (p, &a) in below.iter().enumerate() {
            for &b in &below[p..] {
                let g = Gate::op(label, a, b);
                // gates at one height are kept in increasing order to avoid relabelled copies
                if level == top && gates[last] >= g {
                    continue;
                }
                let mut gs = gates.clone();
                gs.push(g);
                let mut hs = heights.clone();
                hs.push(level);
                extend(gs, hs, max_gates, max_height, out);
            }
        }
    }
}
