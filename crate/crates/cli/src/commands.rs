use std::path::Path;

use homind::automata::{Mta, MtaJson, Mwa, MwaJson};
use homind::equivalence::{mta_equiv, mta_equiv_randomised, mwa_equiv, mwa_equiv_rank, EquivVerdict};
use homind::graphcore::{cfi, hom_count_pinned, Graph, WeightedDigraph};
use homind::homind::{
    builtin_class, decide_cycles_fast, decide_cycles_paths_fast, decide_directed_cycles_fast, decide_homind,
    ClassAutomaton, ClassAutomatonJson, HomIndVerdict,
};
use homind::ratlinalg::{QMatrix, Rational};
use homind::reductions::{
    build_f_h, build_f_hat, circuit_for_value, circuit_to_graph, cycles_to_cyclespaths, cyclespaths_to_cycles, decolour,
    eval_circuit, normalise_circuit_to_height, posdet_lift, vcp_to_pair, weighted_to_simple, Circuit, CircuitJson,
    GadgetParams, GadgetParamsJson, NormalisedCircuit, UNCOLOURED,
};
use serde_json::{json, Value};

use crate::input::{self, Error};
use crate::{Command, DecideArgs, DecideMethod, EqArgs, EqMethod, GadgetCommand, OracleArgs, ReduceCommand};

/// Runs one command; returns the JSON line and the exit code.
pub fn run(cmd: &Command) -> Result<(String, u8), Error> {
    match cmd {
        Command::Decide(a) => decide(a),
        Command::Eq(a) => eq(a),
        Command::Oracle(a) => oracle(a),
        Command::Gadget(g) => gadget(g).map(|v| (v.to_string(), 0)),
        Command::Reduce(r) => reduce(r).map(|v| (v.to_string(), 0)),
    }
}

fn class(arg: &str) -> Result<ClassAutomaton, Error> {
    match builtin_class(arg) {
        Ok(c) => Ok(c),
        Err(e) if Path::new(arg).exists() => {
            let j: ClassAutomatonJson = input::read_json(Path::new(arg)).map_err(|_| e)?;
            Ok(ClassAutomaton::from_json(&j)?)
        }
        Err(e) => Err(e.into()),
    }
}

fn decide(a: &DecideArgs) -> Result<(String, u8), Error> {
    let g = input::graph(&a.g)?;
    let h = input::graph(&a.h)?;
    input::bounded(&g, a.max_vertices, "G")?;
    input::bounded(&h, a.max_vertices, "H")?;
    let verdict: HomIndVerdict = match a.method {
        DecideMethod::Automaton => decide_homind(&class(&a.class)?, &g, &h)?,
        DecideMethod::Fast => match a.class.as_str() {
            "directed-cycles" => decide_directed_cycles_fast(&g, &h)?,
            "cycles" => decide_cycles_fast(&g, &h)?,
            "cycles-and-paths" => decide_cycles_paths_fast(&g, &h)?,
            other => return Err(format!("no fast decider for class {other:?}").into()),
        },
    };
    Ok((verdict.to_json_string(), if verdict.indistinguishable { 0 } else { 1 }))
}

fn eq(a: &EqArgs) -> Result<(String, u8), Error> {
    let verdict: EquivVerdict = if a.mwa {
        let x = Mwa::from_json(&input::read_json::<MwaJson>(&a.a)?)?;
        let y = Mwa::from_json(&input::read_json::<MwaJson>(&a.b)?)?;
        match a.method.unwrap_or(EqMethod::Basis) {
            EqMethod::Basis => mwa_equiv(&x, &y)?,
            EqMethod::Rank => mwa_equiv_rank(&x, &y)?,
            m => return Err(format!("method {m:?} is for tree automata").into()),
        }
    } else {
        let x = Mta::from_json(&input::read_json::<MtaJson>(&a.a)?)?;
        let y = Mta::from_json(&input::read_json::<MtaJson>(&a.b)?)?;
        match a.method.unwrap_or(EqMethod::Closure) {
            EqMethod::Closure => mta_equiv(&x, &y)?,
            EqMethod::Randomised => {
                let seed = a.seed.ok_or("the randomised method needs an explicit --seed")?;
                mta_equiv_randomised(&x, &y, a.trials, seed)?
            }
            m => return Err(format!("method {m:?} is for word automata").into()),
        }
    };
    Ok((verdict.to_json_string(), if verdict.equivalent { 0 } else { 1 }))
}

fn oracle(a: &OracleArgs) -> Result<(String, u8), Error> {
    let f = input::graph(&a.f)?;
    let g = input::graph(&a.g)?;
    input::bounded(&f, a.max_vertices, "F")?;
    input::bounded(&g, a.max_vertices, "G")?;
    let count = hom_count_pinned(&f, &g, &a.pins)?;
    Ok((json!({ "hom_count": count.to_string() }).to_string(), 0))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn circuit_value(c: &NormalisedCircuit) -> Value {
    let graphs = circuit_to_graph(c);
    json!({
        "circuit": to_value(&c.circuit().to_json()),
        "value": eval_circuit(c.circuit()).to_string(),
        "height": c.height(),
        "graph": to_value(&graphs.graph),
        "hat": to_value(&graphs.hat),
    })
}

fn gadget(cmd: &GadgetCommand) -> Result<Value, Error> {
    Ok(match cmd {
        GadgetCommand::Cfi { base, parity } => to_value(&cfi(&input::graph(base)?, *parity)?),
        GadgetCommand::Circuit { value, height } => circuit_value(&circuit_for_value(value, *height)),
        GadgetCommand::Fh { height, relaxed, no_hat } => {
            let g = if *no_hat { build_f_h(*height, !relaxed) } else { build_f_hat(*height, !relaxed) };
            to_value(&g)
        }
        GadgetCommand::Graph { name } => to_value(&input::graph(name)?),
        GadgetCommand::Params { colours } => to_value(&GadgetParams::default_for(colours)?.to_json()),
    })
}

fn matrix_value(m: &QMatrix) -> Value {
    to_value(&m.to_rows())
}

fn pair(l: Graph, r: Graph) -> Value {
    json!({ "left": to_value(&l), "right": to_value(&r) })
}

fn reduce(cmd: &ReduceCommand) -> Result<Value, Error> {
    Ok(match cmd {
        ReduceCommand::Posdet { a, b } => {
            let (d, e) = posdet_lift(&input::matrix(a)?, &input::matrix(b)?)?;
            json!({ "D": matrix_value(&d), "E": matrix_value(&e) })
        }
        ReduceCommand::Vcp { a, coeffs } => {
            let coeffs: Vec<Rational> = coeffs.iter().map(|c| c.parse()).collect::<Result<_, _>>()?;
            let (d, e) = vcp_to_pair(&input::matrix(a)?, &coeffs)?;
            json!({ "D": matrix_value(&d), "E": matrix_value(&e) })
        }
        ReduceCommand::Weighted { a } => {
            let (g, b) = weighted_to_simple(&WeightedDigraph::new(input::matrix(a)?)?)?;
            json!({ "graph": to_value(&g), "b": b })
        }
        ReduceCommand::Cp2c { g, h } => {
            let (l, r) = cyclespaths_to_cycles(&input::graph(g)?, &input::graph(h)?)?;
            pair(l, r)
        }
        ReduceCommand::C2cp { g, h } => {
            let (l, r) = cycles_to_cyclespaths(&input::graph(g)?, &input::graph(h)?)?;
            pair(l, r)
        }
        ReduceCommand::Decolour { g, params, decomposition } => {
            let g = input::graph(g)?;
            let params = match params {
                Some(p) => GadgetParams::from_json(&input::read_json::<GadgetParamsJson>(p)?)?,
                None => {
                    let mut palette: Vec<String> =
                        g.colours().map(<[String]>::to_vec).unwrap_or_else(|| vec![UNCOLOURED.to_string()]);
                    palette.sort();
                    palette.dedup();
                    GadgetParams::default_for(&palette)?
                }
            };
            let d = decolour(&g, &params)?;
            let mut out = json!({ "graph": to_value(&d.graph), "ell": d.ell });
            if *decomposition {
                out["decomposition"] = to_value(&d.path_decomposition(&g, &params)?);
            }
            out
        }
        ReduceCommand::Circuit { c, min_height } => {
            let raw = Circuit::from_json(&input::read_json::<CircuitJson>(c)?)?;
            circuit_value(&normalise_circuit_to_height(&raw, *min_height)?)
        }
    })
}
