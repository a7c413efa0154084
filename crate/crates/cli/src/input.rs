use std::fs;
use std::path::Path;

use homind::graphcore::{make_complete, make_cycle, make_kneser, make_path, make_star, Graph};
use homind::ratlinalg::{QMatrix, Rational};
use serde::de::DeserializeOwned;

pub type Error = Box<dyn std::error::Error>;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

/// A graph file, or a name such as C5, P3, K4, S4, DC3 or Kneser5,2.
pub fn graph(arg: &str) -> Result<Graph, Error> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        return Ok(Graph::from_json_str(&text).map_err(|e| format!("{arg}: {e}"))?);
    }
    named_graph(arg).ok_or_else(|| format!("{arg}: no such file and not a graph name").into())
}

fn named_graph(name: &str) -> Option<Graph> {
    if let Some(rest) = name.strip_prefix("Kneser") {
        let (r, s) = rest.split_once(',')?;
        return make_kneser(r.parse().ok()?, s.parse().ok()?).ok();
    }
    let split = name.find(|c: char| c.is_ascii_digit())?;
    let (kind, n) = name.split_at(split);
    let n: usize = n.parse().ok()?;
    match kind {
        "K" => Some(make_complete(n)),
        "C" => make_cycle(n, false).ok(),
        "P" => make_path(n).ok(),
        "S" => Some(make_star(n)),
        "DC" => make_cycle(n, true).ok(),
        _ => None,
    }
}

pub fn matrix(path: &Path) -> Result<QMatrix, Error> {
    let rows: Vec<Vec<Rational>> = read_json(path)?;
    Ok(QMatrix::from_rows(rows).map_err(|e| format!("{}: {e}", path.display()))?)
}

pub fn parse_pin(s: &str) -> Result<(usize, usize), String> {
    let (f, g) = s.split_once(':').ok_or("pins are written f:g")?;
    let f = f.trim().parse().map_err(|_| format!("bad vertex {f:?}"))?;
    let g = g.trim().parse().map_err(|_| format!("bad vertex {g:?}"))?;
    Ok((f, g))
}

pub fn bounded(g: &Graph, bound: u64, what: &str) -> Result<(), Error> {
    if g.n() as u64 > bound {
        return Err(format!("{what} has {} vertices, above --max-vertices {bound}", g.n()).into());
    }
    Ok(())
}
